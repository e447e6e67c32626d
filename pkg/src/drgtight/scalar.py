"""Exact-or-enclosed real numbers.

Every real quantity in the package is either a :class:`fractions.Fraction`
(exact) or an :class:`Approx` (a float carrying a certified absolute error
bound).  The two mix freely under ``+ - * /`` and the result is exact only
when both operands are.

Equality between approximate values follows one policy, used everywhere:
``x == y`` iff ``|x - y| <= max(ABS_TOL, err(x) + err(y))``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

ABS_TOL = 1e-9
# unit roundoff for one float64 operation
_U = 2.0 ** -53


class Approx:
    """A float64 value with an absolute error bound ``|true - value| <= error``."""

    __slots__ = ("value", "error")

    def __init__(self, value: float, error: float = 0.0):
        if isinstance(value, Fraction):
            raise TypeError("use Approx.from_exact for rationals")
        self.value = float(value)
        self.error = float(error)

    @classmethod
    def from_exact(cls, x) -> "Approx":
        v = float(x)
        return cls(v, abs(v) * _U)

    @classmethod
    def from_interval(cls, lo, hi) -> "Approx":
        lo, hi = Fraction(lo), Fraction(hi)
        mid = (lo + hi) / 2
        v = float(mid)
        return cls(v, float((hi - lo) / 2) + abs(v) * _U + float(abs(mid - Fraction(v))))

    # ----- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Approx):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Approx.from_exact(other)
        return None

    def _round(self, v: float, err: float) -> "Approx":
        return Approx(v, err + abs(v) * _U)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._round(self.value + o.value, self.error + o.error)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._round(self.value - o.value, self.error + o.error)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        err = abs(self.value) * o.error + abs(o.value) * self.error + self.error * o.error
        return self._round(self.value * o.value, err)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if abs(o.value) <= o.error or o.value == 0.0:
            raise ZeroDivisionError("divisor is indistinguishable from zero")
        err = (abs(self.value) * o.error + abs(o.value) * self.error) / (
            abs(o.value) * (abs(o.value) - o.error)
        )
        return self._round(self.value / o.value, err)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Approx(1.0)
        for _ in range(n):
            out = out * self
        return out

    def __neg__(self):
        return Approx(-self.value, self.error)

    def __pos__(self):
        return self

    def __abs__(self):
        return Approx(abs(self.value), self.error)

    def __float__(self):
        return self.value

    # ----- comparison ---------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return close(self, o)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None  # tolerance equality is not transitive

    def __lt__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.value < o.value

    def __le__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else (self.value < o.value or close(self, o))

    def __gt__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.value > o.value

    def __ge__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else (self.value > o.value or close(self, o))

    def __repr__(self):
        return f"Approx({self.value!r} ± {self.error:.1e})"

    def __str__(self):
        return f"{self.value:.12g}"


def _squarefree_part(n: int):
    """n = f^2 D with D squarefree; returns (f, D)."""
    f, D, p = 1, n, 2
    while p * p <= D:
        while D % (p * p) == 0:
            D //= p * p
            f *= p
        p += 1
    return f, D


class Surd:
    """Exact a + b sqrt(D) with rational a, b and squarefree D > 1.

    Used where an irrational conjugate pair is known exactly (Taylor rows);
    results with b = 0 collapse to Fraction, so a computation that should
    land in the rationals does so visibly.
    """

    __slots__ = ("a", "b", "D")

    def __init__(self, a, b, D: int):
        self.a, self.b, self.D = Fraction(a), Fraction(b), D

    @staticmethod
    def make(a, b, radicand: int):
        """a + b sqrt(radicand), simplified; a Fraction when irrationality vanishes."""
        if radicand < 0:
            raise ValueError("negative radicand")
        f, D = _squarefree_part(radicand)
        b = Fraction(b) * f
        if b == 0 or D == 1:
            return Fraction(a) + b * (1 if D == 1 else 0)
        return Surd(a, b, D)

    def _parts(self, other):
        if isinstance(other, Surd):
            if other.D != self.D:
                raise TypeError(f"cannot mix sqrt({self.D}) and sqrt({other.D})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Fraction(other), Fraction(0)
        return None

    def _new(self, a, b):
        return Fraction(a) if b == 0 else Surd(a, b, self.D)

    def __add__(self, other):
        if isinstance(other, Approx):
            return to_approx(self) + other
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self._new(self.a + p[0], self.b + p[1])

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.D)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, Approx):
            return to_approx(self) - other
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self._new(self.a - p[0], self.b - p[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Approx):
            return to_approx(self) * other
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = p
        return self._new(self.a * a + self.b * b * self.D, self.a * b + self.b * a)

    __rmul__ = __mul__

    def _inverse(self):
        n = self.a * self.a - self.b * self.b * self.D
        return Surd(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        if isinstance(other, Approx):
            return to_approx(self) / other
        p = self._parts(other)
        if p is None:
            return NotImplemented
        if p == (0, 0):
            raise ZeroDivisionError("division by zero")
        o = other if isinstance(other, Surd) else Fraction(other)
        if isinstance(o, Fraction):
            return self._new(self.a / o, self.b / o)
        return self * o._inverse()

    def __rtruediv__(self, other):
        if isinstance(other, Approx):
            return other / to_approx(self)
        if self._parts(other) is None:
            return NotImplemented
        return self._inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Fraction(1)
        for _ in range(n):
            out = out * self
        return out

    def sign(self) -> int:
        sa, sb = (self.a > 0) - (self.a < 0), (self.b > 0) - (self.b < 0)
        if sa * sb >= 0:
            return sa or sb
        return sa if self.a * self.a > self.b * self.b * self.D else sb

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.D)

    def __eq__(self, other):
        if isinstance(other, Approx):
            return close(self, other)
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return (self.a, self.b) == p

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.a, self.b, self.D))

    def _cmp(self, other):
        if isinstance(other, Approx):
            return sign(to_approx(self) - other)
        if self._parts(other) is None:
            return None
        return _exact_sign(self - other)

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __repr__(self):
        return f"Surd({self.a}, {self.b}, {self.D})"

    def __str__(self):
        mag = abs(self.b)
        r = f"sqrt({self.D})" if mag == 1 else f"{mag}*sqrt({self.D})"
        if self.a == 0:
            return r if self.b > 0 else "-" + r
        return f"{self.a}{'+' if self.b > 0 else '-'}{r}"


def _exact_sign(x) -> int:
    if isinstance(x, Surd):
        return x.sign()
    return (x > 0) - (x < 0)


Scalar = Union[Fraction, Approx, Surd]


def is_exact(x) -> bool:
    """Rational: int or Fraction."""
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def is_symbolic(x) -> bool:
    """Exact but possibly irrational: rational or Surd."""
    return is_exact(x) or isinstance(x, Surd)


def exact(x) -> Fraction:
    """Coerce ints to Fraction; reject anything inexact."""
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise TypeError(f"expected an exact rational, got {type(x).__name__}")
    return Fraction(x)


def to_approx(x) -> Approx:
    if isinstance(x, Approx):
        return x
    if isinstance(x, Surd):
        root = Approx(math.sqrt(x.D), math.sqrt(x.D) * _U)
        return Approx.from_exact(x.a) + Approx.from_exact(x.b) * root
    return Approx.from_exact(x)


def close(x, y, tol: float = ABS_TOL) -> bool:
    if is_symbolic(x) and is_symbolic(y):
        return x == y
    diff = to_approx(x) - to_approx(y)
    return abs(diff.value) <= max(tol, diff.error)


def is_zero(x, tol: float = ABS_TOL) -> bool:
    return close(x, 0, tol)


def sign(x) -> int:
    """-1, 0 or 1; approximate values inside the tolerance band report 0."""
    if is_symbolic(x):
        return _exact_sign(x)
    if is_zero(x):
        return 0
    return 1 if x.value > 0 else -1


def deviation(x, y) -> float:
    """|x - y| as a float (0.0 when both are exact and equal)."""
    if is_exact(x) and is_exact(y):
        return float(abs(Fraction(x) - Fraction(y)))
    if is_symbolic(x) and is_symbolic(y):
        return abs(float(x - y))
    return abs((to_approx(x) - to_approx(y)).value)


def nearest_int(x) -> int:
    if is_exact(x):
        return round(Fraction(x))
    return int(round(x.value))


def as_float(x) -> float:
    return float(x)


def parse_number(text: str) -> tuple[Fraction, bool]:
    """Parse ``"p/q"``, an integer or a decimal literal.

    Returns ``(value, exact)``.  Decimals are converted to the rational they
    denote, but flagged inexact: the caller typed a rounded number.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty number")
    if "/" in s:
        p, q = s.split("/", 1)
        return Fraction(int(p), int(q)), True
    try:
        return Fraction(int(s)), True
    except ValueError:
        pass
    value = Fraction(s)
    if not math.isfinite(float(value)):
        raise ValueError(f"not a finite number: {text!r}")
    return value, False


def to_json(x):
    if x is None:
        return None
    if is_exact(x):
        return str(Fraction(x))
    if isinstance(x, Surd):
        return str(x)
    return {"value": x.value, "error": x.error}
