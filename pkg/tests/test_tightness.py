from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

import known_drgs
from drgtight import catalog, tightness as T
from drgtight.core import IntersectionArray, cosine_sequence, spectrum
from drgtight.errors import (
    A1Zero,
    AuxBoundViolation,
    DegenerateDenominator,
    NotTight,
    PreconditionViolated,
)
from drgtight.scalar import Approx, close, is_exact, is_zero

J84 = IntersectionArray.parse("16,9,4,1;1,4,9,16")
CS = IntersectionArray.parse("10,6,4,1;1,2,6,10")  # 3.Sym(7)
H33 = IntersectionArray.parse("6,4,2;1,2,3")
ICOSA = IntersectionArray.parse("5,2,1;1,2,5")
TIGHT_ROWS = [e.array for e in catalog.ENTRIES]
POOL = known_drgs.valid_pool()
# non-tight, non-bipartite controls with a_1 > 0
CONTROLS = [a for a in POOL if a.a[1] > 0 and not T.is_tight(a)][:25]


def sympy_extremal(arr):
    """theta_1, theta_d as exact algebraic numbers, from sympy alone."""
    d = arr.d
    M = sympy.zeros(d + 1, d + 1)
    for i in range(d + 1):
        M[i, i] = arr.a[i]
        if i < d:
            M[i, i + 1] = arr.b[i]
            M[i + 1, i] = arr.c[i]
    x = sympy.Symbol("x")
    roots = sorted(sympy.Poly(M.charpoly(x).as_expr(), x).real_roots(), key=lambda r: -float(r))
    return roots[1], roots[-1]


def sympy_slack(arr):
    t1, td = sympy_extremal(arr)
    k, a1, b1 = arr.k, arr.a[1], arr.b[1]
    c = sympy.Rational(k, a1 + 1)
    return sympy.nsimplify(sympy.expand((t1 + c) * (td + c) + sympy.Rational(k * a1 * b1, (a1 + 1) ** 2)))


# ----- Fundamental Bound ---------------------------------------------------------


def test_fb_johnson_tight():
    fb = T.fundamental_bound(J84)
    assert fb.exact and fb.slack == 0
    assert T.classify(J84).label == T.TIGHT


def test_fb_hamming_control_slack_six():
    fb = T.fundamental_bound(H33)
    assert fb.slack == 6 == sympy_slack(H33)
    assert T.classify(H33).label == T.NON_TIGHT


def test_fb_icosahedron_exact_through_quadratic_factor():
    fb = T.fundamental_bound(ICOSA)
    assert fb.exact and fb.slack == 0
    c = T.classify(ICOSA)
    assert c.label == T.TIGHT and not c.numerically_tight


def test_bipartite_label():
    assert T.classify(IntersectionArray(*known_drgs.hamming(4, 2))).label == T.BIPARTITE


def test_diameter_two_rejected():
    with pytest.raises(PreconditionViolated):
        T.fundamental_bound(IntersectionArray.parse("5,2;1,2"))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(POOL))
def test_fb_slack_matches_sympy(arr):
    ours = T.fundamental_bound(arr)
    ref = sympy_slack(arr)
    assert abs(float(ours.slack if is_exact(ours.slack) else ours.slack.value) - float(ref)) < 1e-8
    assert float(ref) > -1e-9
    if ours.exact:
        assert (ours.slack == 0) == (ref == 0)


def test_fb_equality_pairs_on_tight_rows():
    for arr in TIGHT_ROWS:
        assert T.fb_equality_pairs(arr) == [(1, arr.d)]
        assert T.extremal_pair_indices(arr) == [(1, arr.d)]


# ----- auxiliary parameter ---------------------------------------------------------


def test_epsilon_values():
    assert T.epsilon(J84) == Fraction(3, 2)
    assert T.epsilon(CS) == Fraction(4, 3)
    t1, td = sympy_extremal(ICOSA)
    ref = (5 ** 2 - t1 * td) / (5 * (t1 - td))
    assert abs(T.epsilon(ICOSA).value - float(ref)) < 1e-12


def test_epsilon_at_thetad_is_negative():
    e = T.epsilon(J84, at="thetad")
    assert e < 0 and abs(e) > 1


def test_aux_bound_violation():
    with pytest.raises(AuxBoundViolation):
        # epsilon = (256 + 240) / (16 * 31) = 1
        T.auxiliary_parameter(16, Fraction(15), Fraction(-16))
    with pytest.raises(PreconditionViolated):
        T.auxiliary_parameter(16, 3, 3)


def test_rho_from_sigma_reproduces_table():
    for e in catalog.ENTRIES:
        rho = T.rho_from_sigma(e.expected_sigma, e.expected_epsilon).sigma
        for got, want in zip(rho, e.expected_rho):
            assert close(got, want)


def test_rho_from_sigma_carries_theta():
    sig = cosine_sequence(J84, 8)
    rho = T.rho_from_sigma(sig, Fraction(3, 2))
    assert rho.theta == -4


def test_rho_from_sigma_degenerate_denominator():
    with pytest.raises(DegenerateDenominator) as info:
        T.rho_from_sigma([1, Fraction(1, 2), 0], Fraction(1, 2))  # sigma_1 - eps sigma_0 = 0
    assert info.value.index == 1


def test_epsilon_identity_separates_tight_from_controls():
    for arr in TIGHT_ROWS:
        spec = spectrum(arr)
        s, r = cosine_sequence(arr, spec.theta1), cosine_sequence(arr, spec.thetad)
        assert T.epsilon_identity_holds(s, r, T.epsilon(arr, spec))
    assert CONTROLS
    for arr in CONTROLS:
        spec = spectrum(arr)
        s, r = cosine_sequence(arr, spec.theta1), cosine_sequence(arr, spec.thetad)
        assert not T.epsilon_identity_holds(s, r, T.epsilon(arr, spec, check=False))


def test_feasibility():
    spec = spectrum(J84)
    assert T.is_feasible(cosine_sequence(J84, 8), spec)
    # rho_1 = rho_3 = -1/4 for J(8,4)
    assert not T.is_feasible(cosine_sequence(J84, -4), spec)
    assert not T.is_feasible(cosine_sequence(J84, 2), spec)


def test_degenerate_indices_agree_on_tight_rows():
    for arr in TIGHT_ROWS:
        for row in T.degenerate_indices(arr):
            assert len(set(row)) == 1


# ----- parametrizations ------------------------------------------------------------


def test_parametrize_johnson_and_conway_smith():
    p = T.parametrize(cosine_sequence(J84, 8), Fraction(3, 2))
    assert p.array.to_array() == J84 and p.h == 8 and p.g == 8 and p.consistent
    assert (p.theta1, p.thetad) == (8, -4)
    q = T.parametrize([1, Fraction(1, 2), 0, Fraction(-1, 4), Fraction(-1, 2)], Fraction(4, 3))
    assert q.array.to_array() == CS and q.h == 6 and q.g == 4


def test_parametrize_roundtrip_all_exact_rows():
    for arr in TIGHT_ROWS:
        spec = spectrum(arr)
        if not spec.exact:
            continue
        sig = cosine_sequence(arr, spec.theta1)
        p = T.parametrize(sig, T.epsilon(arr, spec))
        assert p.array.to_array() == arr and p.consistent
        rho = cosine_sequence(arr, spec.thetad)
        assert T.two_eigenvalue_parametrize(sig, rho).to_array() == arr


def test_parametrize_from_thetad_side():
    pat = catalog.get("Patterson").array
    spec = spectrum(pat)
    p = T.parametrize(cosine_sequence(pat, spec.thetad), T.epsilon(pat, spec, at="thetad"))
    assert p.array.to_array() == pat
    assert (p.theta1, p.thetad) == (80, -28)


def test_parametrize_needs_feasible_sequence():
    # rho_1 = rho_3 for J(8,4): a denominator vanishes
    with pytest.raises(PreconditionViolated):
        T.parametrize(cosine_sequence(J84, -4), T.epsilon(J84, at="thetad"))


def test_parametrize_icosahedron_enclosures():
    spec = spectrum(ICOSA)
    p = T.parametrize(cosine_sequence(ICOSA, spec.theta1), T.epsilon(ICOSA, spec))
    assert p.array.rounded() == ICOSA


def test_parametrize_rejects_floats():
    with pytest.raises(TypeError):
        T.parametrize([1.0, 0.5, 0, -0.5, -1], Fraction(3, 2))


def test_parametrize_preconditions():
    with pytest.raises(PreconditionViolated):
        T.parametrize([1, Fraction(1, 2), 0, Fraction(-1, 2), -1], -1)
    with pytest.raises(PreconditionViolated):
        T.parametrize([2, Fraction(1, 2), 0, Fraction(-1, 2), -1], Fraction(3, 2))


def test_parametrize_nonintegral_output():
    p = T.parametrize([1, Fraction(1, 2), 0, Fraction(-1, 2), -1], Fraction(7, 5))
    assert not p.integral


# ----- f bounds, local graph, labels ---------------------------------------------


def test_f_bounds():
    assert T.f_bounds(J84) == (3, 3)
    assert T.f_bounds(H33) == (0, Fraction(4, 3))
    with pytest.raises(A1Zero):
        T.f_bounds(IntersectionArray(*known_drgs.odd_graph(4)))


def test_local_srg_values():
    loc = T.local_srg(J84)
    assert loc.params() == (16, 6, 2, 2) and (loc.r, loc.s) == (2, -2)
    loc = T.local_srg(CS)
    assert loc.params() == (10, 3, 0, 1) and (loc.mult_r, loc.mult_s) == (5, 4)
    with pytest.raises(NotTight):
        T.local_srg(H33)


def test_local_srg_matches_table_for_all_rows():
    for e in catalog.ENTRIES:
        loc = T.local_srg(e.array)
        got = (loc.nu, loc.kappa, loc.lam, loc.mu, loc.r, loc.s)
        for a, b in zip(got, e.local_srg_expected):
            assert close(a, b)
        assert close(loc.r, T.b_plus(e.array)) and close(loc.s, T.b_minus(e.array))


def test_at4_labels():
    assert T.at4_label(J84) == (2, 2, 2)
    assert T.at4_label(CS) == (1, 2, 3)
    assert T.at4_label(catalog.get("Patterson").array) is None
    assert T.at4_label(H33) is None


def test_tight_inequalities_on_rows():
    for arr in TIGHT_ROWS:
        assert all(T.tight_inequalities(arr).values())
        assert all(T.tight_cosine_inequalities(arr).values())


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(POOL))
def test_sign_patterns_and_basic_identities(arr):
    spec = spectrum(arr)
    assert all(T.cosine_sign_patterns(arr, spec).values())
    for theta in spec.eigenvalues:
        assert all(is_zero(v, tol=1e-6 * arr.k ** 3) for v in T.basic_identities(arr, theta))


def test_analyze_report_json():
    js = T.analyze(J84).to_json()
    assert js["classification"] == "Tight" and js["epsilon"] == "3/2"
    assert js["local_srg"]["kappa"] == 6 and js["at4"] == [2, 2, 2]
    js = T.analyze(H33).to_json()
    assert js["classification"] == "NonTightSlack" and js["fb"]["slack"] == "6"
    assert js["epsilon"] is None and js["f_bounds"] == ["0", "4/3"]
    js = T.analyze(ICOSA).to_json()
    assert js["exact"] == {"spectrum": False, "fb": True}
    assert not js["numerically_tight"]


@pytest.mark.parametrize("q", [5, 13, 17, 29, 37])
def test_taylor_round_trip_is_exact_with_surds(q):
    from drgtight.scalar import Surd

    arr = IntersectionArray((q, (q - 1) // 2, 1), (1, (q - 1) // 2, q))
    t1, td = T.exact_extremal_pair(arr)
    assert isinstance(t1, Surd) and isinstance(td, Surd)
    # oracle: the eigenvalues are the roots of x^2 - q
    roots = sorted(sympy.solve(sympy.Symbol("x") ** 2 - q), key=float)
    assert float(t1) == pytest.approx(float(roots[1]), abs=1e-12)
    assert t1 * t1 == q and t1 + td == 0
    sig = cosine_sequence(arr, t1)
    p = T.parametrize(sig, T.auxiliary_parameter(arr.k, t1, td))
    assert p.integral and p.consistent and p.array.to_array() == arr
    two = T.two_eigenvalue_parametrize(sig, cosine_sequence(arr, td))
    assert two.to_array() == arr
    loc = T.local_srg(arr)
    assert isinstance(loc.lam, Fraction) and isinstance(loc.mu, Fraction)
