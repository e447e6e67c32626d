"""Intersection arrays, derived counts, spectra and cosine sequences."""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import poly
from .errors import (
    InconsistentSpectrum,
    InvalidArray,
    MultiplicityNotIntegral,
    NonIntegral,
)
from .scalar import Approx, close, is_exact, is_zero, sign

MULT_TOL = 1e-6


def _as_int(v, what):
    if isinstance(v, bool):
        raise InvalidArray(f"{what} must be an integer, got {v!r}")
    if isinstance(v, Fraction):
        if v.denominator != 1:
            raise NonIntegral(f"{what} = {v} is not an integer")
        return int(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    raise InvalidArray(f"{what} must be an integer, got {v!r}")


@dataclass(frozen=True)
class IntersectionArray:
    """{b_0, ..., b_{d-1}; c_1, ..., c_d} of a putative distance-regular graph.

    Construction validates the array: positive entries, c_1 = 1, a_i >= 0,
    integral k_i, and the triangle condition that a_1 != 0 forces
    a_i != 0 for 1 <= i <= d-1.
    """

    b: tuple
    c: tuple

    def __post_init__(self):
        b = tuple(_as_int(v, f"b_{i}") for i, v in enumerate(self.b))
        c = tuple(_as_int(v, f"c_{i + 1}") for i, v in enumerate(self.c))
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if len(b) != len(c):
            raise InvalidArray(f"need as many b's as c's, got {len(b)} and {len(c)}")
        if len(b) < 2:
            raise InvalidArray("diameter must be at least 2")
        if any(v <= 0 for v in b) or any(v <= 0 for v in c):
            raise InvalidArray("all entries must be positive")
        if c[0] != 1:
            raise InvalidArray(f"c_1 must be 1, got {c[0]}")
        k = b[0]
        for i in range(1, len(b) + 1):
            ai = k - self.bi(i) - c[i - 1]
            if ai < 0:
                raise InvalidArray(f"a_{i} = {ai} is negative")
        ki = 1
        for i in range(len(b)):
            num = ki * b[i]
            if num % c[i]:
                raise NonIntegral(f"k_{i + 1} = {Fraction(num, c[i])} is not an integer", i + 1)
            ki = num // c[i]
        a = self.a
        if a[1] != 0 and any(a[i] == 0 for i in range(1, self.d)):
            raise InvalidArray("a_1 != 0 but some a_i = 0 with 1 <= i <= d-1")

    # ----- construction and text form ----------------------------------------

    @classmethod
    def parse(cls, text: str) -> "IntersectionArray":
        """Parse ``"b0,b1,...;c1,...,cd"`` (spaces and braces tolerated)."""
        s = text.strip().strip("{}[]() ")
        parts = s.split(";")
        if len(parts) != 2:
            raise InvalidArray(f"expected 'b0,...;c1,...', got {text!r}")
        try:
            b = [int(t) for t in re.split(r"[,\s]+", parts[0].strip()) if t]
            c = [int(t) for t in re.split(r"[,\s]+", parts[1].strip()) if t]
        except ValueError as exc:
            raise InvalidArray(f"non-integer entry in {text!r}") from exc
        return cls(tuple(b), tuple(c))

    @classmethod
    def of(cls, b: Sequence[int], c: Sequence[int]) -> "IntersectionArray":
        return cls(tuple(b), tuple(c))

    def __str__(self):
        return ",".join(map(str, self.b)) + ";" + ",".join(map(str, self.c))

    # ----- parameters ----------------------------------------------------------

    @property
    def d(self) -> int:
        return len(self.b)

    @property
    def k(self) -> int:
        return self.b[0]

    def bi(self, i: int) -> int:
        """b_i with b_d = 0."""
        return self.b[i] if i < len(self.b) else 0

    def ci(self, i: int) -> int:
        """c_i with c_0 = 0."""
        return self.c[i - 1] if i >= 1 else 0

    def ai(self, i: int) -> int:
        return self.k - self.bi(i) - self.ci(i)

    @functools.cached_property
    def a(self) -> tuple:
        return tuple(self.ai(i) for i in range(self.d + 1))

    @functools.cached_property
    def ki(self) -> tuple:
        out = [1]
        for i in range(self.d):
            out.append(out[-1] * self.b[i] // self.c[i])
        return tuple(out)

    @property
    def n(self) -> int:
        return sum(self.ki)

    def is_bipartite(self) -> bool:
        return all(v == 0 for v in self.a)

    def is_antipodal(self) -> bool:
        """b_i = c_{d-i} for all i except i = floor(d/2)."""
        d = self.d
        return all(self.bi(i) == self.ci(d - i) for i in range(d) if i != d // 2)

    def tridiagonal(self) -> np.ndarray:
        d = self.d
        L = np.zeros((d + 1, d + 1))
        for i in range(d + 1):
            L[i, i] = self.a[i]
            if i > 0:
                L[i, i - 1] = self.ci(i)
            if i < d:
                L[i, i + 1] = self.bi(i)
        return L


@dataclass(frozen=True)
class DerivedCounts:
    a: tuple
    ki: tuple
    n: int
    p1_ii: tuple  # p^1_{ii}, index 0..d
    p1_prev: tuple  # p^1_{i-1,i}, index 0..d (entry 0 unused, set to 0)


def derive_counts(array: IntersectionArray) -> DerivedCounts:
    d = array.d
    p1_ii = [Fraction(0)]
    p1_prev = [Fraction(0)]
    bprod = Fraction(1)  # b_1 ... b_{i-1}
    cprod = Fraction(1)  # c_1 ... c_{i-1}
    for i in range(1, d + 1):
        p1_prev.append(bprod / cprod)
        p1_ii.append(bprod / (cprod * array.ci(i)) * array.a[i])
        bprod *= array.bi(i)
        cprod *= array.ci(i)
    for i, v in enumerate(p1_ii + p1_prev):
        if v.denominator != 1:
            raise NonIntegral(f"derived count {v} is not an integer")
    return DerivedCounts(
        a=array.a,
        ki=array.ki,
        n=array.n,
        p1_ii=tuple(int(v) for v in p1_ii),
        p1_prev=tuple(int(v) for v in p1_prev),
    )


def p1(array: IntersectionArray, i: int, j: int) -> int:
    """|Gamma_i(x) ∩ Gamma_j(y)| for adjacent x, y."""
    counts = derive_counts(array)
    if i == j:
        return counts.p1_ii[i] if 0 <= i <= array.d else 0
    if abs(i - j) == 1 and min(i, j) >= 0 and max(i, j) <= array.d:
        return counts.p1_prev[max(i, j)]
    return 0


# ----- cosines --------------------------------------------------------------


@dataclass(frozen=True)
class CosineSequence:
    theta: object
    sigma: tuple

    @property
    def d(self) -> int:
        return len(self.sigma) - 1

    def __getitem__(self, i):
        return self.sigma[i]

    def __len__(self):
        return len(self.sigma)

    def __iter__(self):
        return iter(self.sigma)


def cosine_sequence(array: IntersectionArray, theta) -> CosineSequence:
    """sigma_0 = 1, sigma_1 = theta/k and the three-term recurrence.

    Works for any scalar theta; the result is only an eigenvector of the
    tridiagonal matrix when theta is an eigenvalue.
    """
    if isinstance(theta, int):
        theta = Fraction(theta)
    k = array.k
    sig = [Fraction(1), theta / k]
    for i in range(1, array.d):
        nxt = ((theta - array.a[i]) * sig[i] - array.ci(i) * sig[i - 1]) / array.bi(i)
        sig.append(nxt)
    return CosineSequence(theta, tuple(sig))


# ----- spectrum -------------------------------------------------------------


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in decreasing order, theta_0 = k > theta_1 > ... > theta_d."""

    eigenvalues: tuple
    multiplicities: tuple
    charpoly: tuple
    roots: tuple  # poly.RealRoot per eigenvalue, same order

    @property
    def d(self) -> int:
        return len(self.eigenvalues) - 1

    @property
    def theta1(self):
        return self.eigenvalues[1]

    @property
    def thetad(self):
        return self.eigenvalues[-1]

    @property
    def exact(self) -> bool:
        return all(is_exact(t) for t in self.eigenvalues)

    def index(self, theta) -> int:
        for i, t in enumerate(self.eigenvalues):
            if close(t, theta):
                return i
        raise ValueError(f"{theta} is not an eigenvalue")

    def multiplicity(self, theta) -> int:
        return self.multiplicities[self.index(theta)]


def _multiplicity(array, sigma) -> object:
    norm = sum(ki * s * s for ki, s in zip(array.ki, sigma.sigma))
    return array.n / norm


@functools.lru_cache(maxsize=4096)
def spectrum(array: IntersectionArray) -> Spectrum:
    """Exact eigenvalues where rational, certified enclosures otherwise.

    Multiplicities come from m(theta) = n / sum_i k_i sigma_i(theta)^2 and
    must be integers.  The three trace identities are checked, and for
    d >= 3 the extremal eigenvalues must satisfy 0 < theta_1 < k and
    a_1 - k <= theta_d < -1.
    """
    cp = poly.tridiagonal_charpoly(array.a, array.b, array.c)
    roots = poly.real_roots(cp, array.k + 1)
    if len(roots) != array.d + 1:
        raise InconsistentSpectrum(
            f"expected {array.d + 1} distinct real eigenvalues, found {len(roots)}"
        )
    roots = roots[::-1]
    thetas = [r.enclosure() for r in roots]
    if not (is_exact(thetas[0]) and thetas[0] == array.k):
        raise InconsistentSpectrum(f"largest eigenvalue {thetas[0]} is not k = {array.k}")

    mults = []
    for theta in thetas:
        m = _multiplicity(array, cosine_sequence(array, theta))
        if is_exact(m):
            if m.denominator != 1:
                raise MultiplicityNotIntegral(theta, m)
            mults.append(int(m))
        else:
            r = round(m.value)
            if abs(m.value - r) >= MULT_TOL or r <= 0:
                raise MultiplicityNotIntegral(theta, m)
            mults.append(r)

    n, k = array.n, array.k
    checks = [
        (sum(mults), n, "sum of multiplicities"),
        (sum(m * t for m, t in zip(mults, thetas)), 0, "trace of A"),
        (sum(m * t * t for m, t in zip(mults, thetas)), n * k, "trace of A^2"),
    ]
    for got, want, what in checks:
        if not close(got, want, tol=1e-6 * max(1, abs(want))):
            raise InconsistentSpectrum(f"{what}: {got} != {want}")

    if array.d >= 3:
        t1, td = thetas[1], thetas[-1]
        if not (sign(t1) > 0 and t1 < k):
            raise InvalidArray(f"theta_1 = {t1} outside (0, k)")
        if not (td >= array.a[1] - k and td < -1 and not close(td, -1)):
            raise InvalidArray(f"theta_d = {td} outside [a_1 - k, -1)")
    return Spectrum(tuple(thetas), tuple(mults), tuple(cp), tuple(roots))


def spectrum_float(array: IntersectionArray) -> np.ndarray:
    """Eigenvalues of the tridiagonal matrix by LAPACK, decreasing.

    Independent of the exact path; used for screening and as a cross-check.
    """
    vals = np.linalg.eigvals(array.tridiagonal()).real
    return np.sort(vals)[::-1]


def multiplicities_float(array: IntersectionArray, thetas) -> np.ndarray:
    ki = np.array(array.ki, dtype=float)
    out = []
    for t in thetas:
        s = [1.0, t / array.k]
        for i in range(1, array.d):
            s.append(((t - array.a[i]) * s[i] - array.ci(i) * s[i - 1]) / array.bi(i))
        s = np.array(s)
        out.append(array.n / float(ki @ (s * s)))
    return np.array(out)


# ----- bipartite test -------------------------------------------------------


@dataclass(frozen=True)
class BipartiteResult:
    bipartite: bool
    witnesses: dict


def bipartite_test(array: IntersectionArray, spec: Optional[Spectrum] = None) -> BipartiteResult:
    """Four equivalent characterisations; all must agree."""
    spec = spec or spectrum(array)
    k = array.k
    sig = cosine_sequence(array, spec.thetad)
    w = {
        "theta_d_eq_minus_k": close(spec.thetad, -k),
        "sigma1_eq_minus_1": close(sig[1], -1),
        "sigma2_eq_1": array.d >= 2 and close(sig[2], 1),
        "all_a_zero": array.is_bipartite(),
    }
    if len(set(w.values())) != 1:
        raise InconsistentSpectrum(f"bipartite characterisations disagree: {w}")
    if w["all_a_zero"]:
        for i, s in enumerate(sig):
            if not close(s, (-1) ** i):
                raise InconsistentSpectrum(f"bipartite sigma_{i} = {s} != (-1)^{i}")
    return BipartiteResult(w["all_a_zero"], w)


def is_eigenvalue_sequence(array: IntersectionArray, sig: CosineSequence) -> bool:
    """Does sig satisfy the last row of the recurrence (closing condition)?"""
    d = array.d
    lhs = array.ci(d) * sig[d - 1] + array.a[d] * sig[d]
    return is_zero(lhs - sig.theta * sig[d])


__all__ = [
    "Approx",
    "BipartiteResult",
    "CosineSequence",
    "DerivedCounts",
    "IntersectionArray",
    "Spectrum",
    "bipartite_test",
    "cosine_sequence",
    "derive_counts",
    "multiplicities_float",
    "p1",
    "spectrum",
    "spectrum_float",
]
