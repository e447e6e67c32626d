import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from drgtight.scalar import Approx, close, deviation, is_exact, parse_number, sign, to_json


def test_approx_encloses_sqrt5_products():
    r = Approx(math.sqrt(5), 1e-15)
    sq = r * r
    assert abs(sq.value - 5) <= sq.error + 1e-15
    assert close(sq, 5)


def test_approx_rejects_floats():
    with pytest.raises(TypeError):
        Approx(1.0) + 0.5


def test_division_by_enclosure_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        Approx(1.0) / Approx(0.0, 1e-12)


def test_fraction_interop():
    a = Approx.from_exact(Fraction(1, 3))
    assert close(a * 3, 1)
    assert close(Fraction(2) / Approx(2.0), 1)
    assert close(1 - a, Fraction(2, 3))


def test_parse_number_forms():
    assert parse_number("3/2") == (Fraction(3, 2), True)
    assert parse_number("-4") == (Fraction(-4), True)
    assert parse_number("0.25") == (Fraction(1, 4), False)
    with pytest.raises(ValueError):
        parse_number("")
    with pytest.raises(ZeroDivisionError):
        parse_number("1/0")


def test_to_json_shapes():
    assert to_json(Fraction(-3, 2)) == "-3/2"
    assert to_json(None) is None
    j = to_json(Approx(1.5, 1e-12))
    assert j == {"value": 1.5, "error": 1e-12}


def test_sign_and_deviation():
    assert sign(Fraction(-1, 7)) == -1
    assert sign(Approx(0.0, 1e-15)) == 0
    assert deviation(Fraction(1, 2), Fraction(1, 2)) == 0.0
    assert is_exact(Fraction(1)) and not is_exact(Approx(1.0))


@given(st.fractions(min_value=-100, max_value=100, max_denominator=1000),
       st.fractions(min_value=-100, max_value=100, max_denominator=1000))
def test_enclosure_arithmetic_contains_exact_result(x, y):
    ax, ay = Approx.from_exact(x), Approx.from_exact(y)
    for got, want in ((ax + ay, x + y), (ax - ay, x - y), (ax * ay, x * y)):
        # compare against the exact rational, not its rounded float
        assert abs(Fraction(got.value) - want) <= Fraction(got.error)
    if y != 0:
        q = ax / ay
        assert abs(Fraction(q.value) - x / y) <= Fraction(q.error)


# ----- quadratic surds ------------------------------------------------------------

from drgtight.scalar import Surd, is_symbolic, to_approx  # noqa: E402

_fr = st.fractions(min_value=-50, max_value=50, max_denominator=60)


def _sym(x):
    import sympy

    if isinstance(x, Surd):
        return sympy.Rational(x.a.numerator, x.a.denominator) + sympy.Rational(x.b.numerator, x.b.denominator) * sympy.sqrt(x.D)
    return sympy.Rational(x.numerator, x.denominator)


def test_surd_simplifies_radicand():
    assert Surd.make(0, 1, 20) == Surd.make(0, 2, 5)
    assert Surd.make(1, 3, 16) == Fraction(13)
    assert Surd.make(2, 0, 7) == 2 and isinstance(Surd.make(2, 0, 7), Fraction)


def test_golden_ratio_identities():
    phi = Surd.make(Fraction(1, 2), Fraction(1, 2), 5)
    assert phi * phi - phi == 1
    assert 1 / phi == phi - 1
    assert str(phi) == "1/2+1/2*sqrt(5)"
    assert close(to_approx(phi), phi) and abs(to_approx(phi).value - (1 + math.sqrt(5)) / 2) < 1e-15
    assert is_symbolic(phi) and not is_exact(phi)
    with pytest.raises(TypeError):
        phi + Surd.make(0, 1, 2)


@settings(max_examples=60, deadline=None)
@given(_fr, _fr, _fr, _fr, st.sampled_from([2, 3, 5, 6, 7, 13]))
def test_surd_field_operations_match_sympy(a, b, c, e, D):
    import sympy

    x, y = Surd.make(a, b, D), Surd.make(c, e, D)
    sx, sy = _sym(x), _sym(y)
    assert sympy.simplify(_sym(x + y) - (sx + sy)) == 0
    assert sympy.simplify(_sym(x * y) - sx * sy) == 0
    if not (c == 0 and e == 0):
        assert sympy.simplify(_sym(x / y) - sx / sy) == 0
    expected_sign = int(bool(sx > 0)) - int(bool(sx < 0))
    assert sign(x) == expected_sign
    assert (x < y) == bool(sx < sy)
