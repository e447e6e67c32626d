"""Array-level tightness: the Fundamental Bound and everything derived from it.

All functions are pure and take an :class:`IntersectionArray` (plus an
optional precomputed :class:`Spectrum`).  Values are exact Fractions when
the relevant eigenvalues are rational and :class:`Approx` enclosures
otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import poly
from .core import CosineSequence, IntersectionArray, Spectrum, bipartite_test, cosine_sequence, spectrum
from .errors import (
    A1Zero,
    AuxBoundViolation,
    DegenerateDenominator,
    InconsistentSpectrum,
    NonIntegral,
    NotTight,
    PreconditionViolated,
    ZeroDenominator,
)
from .scalar import Approx, Surd, close, is_exact, is_zero, sign, to_json

TIGHT = "Tight"
BIPARTITE = "Bipartite"
NON_TIGHT = "NonTightSlack"
NUMERIC_TIGHT_TOL = 1e-9


def _require_diameter(array: IntersectionArray):
    if array.d < 3:
        raise PreconditionViolated(f"tightness needs diameter >= 3, got {array.d}", "d>=3")


def _spec(array, spec):
    _require_diameter(array)
    return spec if spec is not None else spectrum(array)


def _div(num, den, index=None, what="denominator"):
    if is_zero(den):
        raise ZeroDenominator(f"{what} vanishes" + (f" at i={index}" if index is not None else ""), index)
    return num / den


# ----- Fundamental Bound ----------------------------------------------------


@dataclass(frozen=True)
class FundamentalBound:
    lhs: object
    rhs: Fraction
    slack: object
    exact: bool

    def to_json(self):
        return {"lhs": to_json(self.lhs), "rhs": to_json(self.rhs), "slack": to_json(self.slack), "exact": self.exact}


def fundamental_bound(array: IntersectionArray, spec: Optional[Spectrum] = None) -> FundamentalBound:
    """(theta_1 + k/(a_1+1))(theta_d + k/(a_1+1)) >= -k a_1 b_1/(a_1+1)^2.

    When theta_1 and theta_d are conjugate roots of an integer quadratic
    factor of the characteristic polynomial, the left side is evaluated
    from their sum and product, so it stays exact.
    """
    spec = _spec(array, spec)
    k, a1, b1 = array.k, array.a[1], array.b[1]
    c = Fraction(k, a1 + 1)
    rhs = Fraction(-k * a1 * b1, (a1 + 1) ** 2)
    t1, td = spec.theta1, spec.thetad
    if is_exact(t1) and is_exact(td):
        lhs = (t1 + c) * (td + c)
    else:
        pair = poly.quadratic_factor(list(spec.charpoly), spec.roots[1], spec.roots[-1])
        if pair is not None:
            S, P = pair
            lhs = P + c * S + c * c
        else:
            lhs = (t1 + c) * (td + c)
    return FundamentalBound(lhs, rhs, lhs - rhs, is_exact(lhs))


def exact_extremal_pair(array: IntersectionArray, spec: Optional[Spectrum] = None):
    """(theta_1, theta_d) as exact scalars, or None.

    Rational eigenvalues come back as Fractions.  An irrational pair that
    are conjugate roots of an integer quadratic factor comes back as Surds.
    """
    spec = _spec(array, spec)
    t1, td = spec.theta1, spec.thetad
    if is_exact(t1) and is_exact(td):
        return t1, td
    pair = poly.quadratic_factor(list(spec.charpoly), spec.roots[1], spec.roots[-1])
    if pair is None:
        return None
    S, P = pair
    disc = S * S - 4 * P
    if disc.denominator != 1:
        return None
    root = Surd.make(0, 1, int(disc))
    return (S + root) / 2, (S - root) / 2


@dataclass(frozen=True)
class Classification:
    label: str
    slack: object
    numerically_tight: bool = False

    def __str__(self):
        return self.label


def classify(array: IntersectionArray, spec: Optional[Spectrum] = None) -> Classification:
    spec = _spec(array, spec)
    fb = fundamental_bound(array, spec)
    if bipartite_test(array, spec).bipartite:
        return Classification(BIPARTITE, fb.slack)
    if fb.exact:
        return Classification(TIGHT if fb.slack == 0 else NON_TIGHT, fb.slack)
    if abs(fb.slack.value) < NUMERIC_TIGHT_TOL:
        return Classification(TIGHT, fb.slack, numerically_tight=True)
    return Classification(NON_TIGHT, fb.slack)


def is_tight(array: IntersectionArray, spec: Optional[Spectrum] = None) -> bool:
    return classify(array, spec).label == TIGHT


def fb_equality_pairs(array: IntersectionArray, spec: Optional[Spectrum] = None):
    """Index pairs (i, j), i <= j (so theta_i >= theta_j), of nontrivial
    eigenvalues that satisfy the Fundamental Bound with equality.

    For a tight array the only such pair is (1, d)."""
    spec = _spec(array, spec)
    k, a1, b1 = array.k, array.a[1], array.b[1]
    c = Fraction(k, a1 + 1)
    rhs = Fraction(-k * a1 * b1, (a1 + 1) ** 2)
    th = spec.eigenvalues
    out = []
    for i in range(1, array.d + 1):
        for j in range(i, array.d + 1):
            if close((th[i] + c) * (th[j] + c), rhs):
                out.append((i, j))
    return out


# ----- auxiliary parameter and the second sequence ------------------------------


def auxiliary_parameter(k, theta, theta_prime, check: bool = True):
    """epsilon = (k^2 - theta theta') / (k (theta - theta')).

    With ``check`` the bounds 1 < |epsilon| < min(k/theta_1, -k/theta_d)
    forced by tightness are asserted, taking theta_1, theta_d to be the
    larger and smaller of the two arguments, and epsilon > 0 iff
    theta > theta'."""
    if close(theta, theta_prime):
        raise PreconditionViolated("theta and theta' must differ", "distinct")
    eps = (k * k - theta * theta_prime) / (k * (theta - theta_prime))
    if check:
        t1, td = (theta, theta_prime) if theta > theta_prime else (theta_prime, theta)
        mag = abs(eps)
        upper = min(k / t1, -k / td) if sign(t1) > 0 and sign(td) < 0 else None
        ok = mag > 1 and not close(mag, 1)
        if upper is not None:
            ok = ok and mag < upper and not close(mag, upper)
        else:
            ok = False
        if ok and (sign(eps) > 0) != (theta > theta_prime):
            ok = False
        if not ok:
            raise AuxBoundViolation(f"epsilon = {eps} violates 1 < |epsilon| < {upper}")
    return eps


def epsilon(array: IntersectionArray, spec: Optional[Spectrum] = None, at: str = "theta1", check=True):
    """Auxiliary parameter attached to theta_1 (positive) or theta_d."""
    spec = _spec(array, spec)
    t1, td = spec.theta1, spec.thetad
    if at == "theta1":
        return auxiliary_parameter(array.k, t1, td, check)
    if at == "thetad":
        return auxiliary_parameter(array.k, td, t1, check)
    raise ValueError("at must be 'theta1' or 'thetad'")


def _seq(sigma) -> tuple:
    if isinstance(sigma, CosineSequence):
        return sigma.sigma
    return tuple(sigma)


def rho_from_sigma(sigma, eps) -> CosineSequence:
    """rho_i = prod_{j=1..i} (sigma_{j-1} - eps sigma_j) / (sigma_j - eps sigma_{j-1}).

    When ``sigma`` carries its eigenvalue, the result carries the
    complementary one, k rho_1 with k = theta / sigma_1.
    """
    s = _seq(sigma)
    rho = [Fraction(1) if is_exact(s[0]) else s[0] * 1]
    for j in range(1, len(s)):
        den = s[j] - eps * s[j - 1]
        if is_zero(den):
            raise DegenerateDenominator(f"sigma_{j} - eps sigma_{j - 1} = 0", j)
        rho.append(rho[-1] * (s[j - 1] - eps * s[j]) / den)
    for i in range(1, len(s)):
        lhs = s[i] * rho[i] - s[i - 1] * rho[i - 1]
        rhs = eps * (s[i - 1] * rho[i] - rho[i - 1] * s[i])
        if not close(lhs, rhs):
            raise InconsistentSpectrum(f"epsilon identity fails at i={i}")
    theta = None
    if isinstance(sigma, CosineSequence) and not is_zero(s[1]):
        theta = sigma.theta / s[1] * rho[1]
    return CosineSequence(theta, tuple(rho))


def epsilon_identity_residuals(sigma, rho, eps) -> list:
    """sigma_i rho_i - sigma_{i-1} rho_{i-1} - eps (sigma_{i-1} rho_i - rho_{i-1} sigma_i), i = 1..d."""
    s, r = _seq(sigma), _seq(rho)
    return [
        s[i] * r[i] - s[i - 1] * r[i - 1] - eps * (s[i - 1] * r[i] - r[i - 1] * s[i])
        for i in range(1, len(s))
    ]


def epsilon_identity_holds(sigma, rho, eps) -> bool:
    return all(is_zero(v) for v in epsilon_identity_residuals(sigma, rho, eps))


def extremal_pair_residual(sigma, rho):
    """(s2 r2 - s r)(r - s) - (s r2 - s2 r)(s r - 1); zero exactly for the
    extremal pair of a tight array."""
    s, r = _seq(sigma), _seq(rho)
    return (s[2] * r[2] - s[1] * r[1]) * (r[1] - s[1]) - (s[1] * r[2] - s[2] * r[1]) * (s[1] * r[1] - 1)


def extremal_pair_indices(array: IntersectionArray, spec: Optional[Spectrum] = None):
    """Index pairs i < j of nontrivial eigenvalues whose cosine sequences
    satisfy the extremal-pair identity."""
    spec = _spec(array, spec)
    seqs = [cosine_sequence(array, t) for t in spec.eigenvalues]
    return [
        (i, j)
        for i in range(1, array.d + 1)
        for j in range(i + 1, array.d + 1)
        if is_zero(extremal_pair_residual(seqs[i], seqs[j]))
    ]


def is_feasible(sigma: CosineSequence, spec: Spectrum) -> bool:
    theta = sigma.theta
    if not (close(theta, spec.theta1) or close(theta, spec.thetad)):
        return False
    s = sigma.sigma
    return all(not close(s[i - 1], s[i + 1]) for i in range(1, len(s) - 1))


feasibility = is_feasible


def degenerate_indices(array: IntersectionArray, spec: Optional[Spectrum] = None, at: str = "thetad"):
    """For each 1 <= i <= d-1 the four truth values
    (sigma_{i-1} = eps sigma_i, sigma_{i+1} = eps sigma_i,
    sigma_{i-1} = sigma_{i+1}, rho_i = 0); all four agree on tight arrays."""
    spec = _spec(array, spec)
    if at == "thetad":
        theta, other = spec.thetad, spec.theta1
    else:
        theta, other = spec.theta1, spec.thetad
    s = cosine_sequence(array, theta).sigma
    r = cosine_sequence(array, other).sigma
    eps = auxiliary_parameter(array.k, theta, other, check=False)
    out = []
    for i in range(1, array.d):
        out.append(
            (
                close(s[i - 1], eps * s[i]),
                close(s[i + 1], eps * s[i]),
                close(s[i - 1], s[i + 1]),
                is_zero(r[i]),
            )
        )
    return out


# ----- parametrizations -----------------------------------------------------


@dataclass(frozen=True)
class RationalArray:
    """Intersection numbers as scalars; integral only for realizable input."""

    b: tuple  # b_0 .. b_{d-1}
    c: tuple  # c_1 .. c_d
    a: tuple  # a_0 .. a_d

    @property
    def k(self):
        return self.b[0]

    @property
    def d(self):
        return len(self.b)

    @property
    def integral(self) -> bool:
        return all(is_exact(v) and Fraction(v).denominator == 1 and v > 0 for v in self.b + self.c)

    def to_array(self) -> IntersectionArray:
        if not self.integral:
            raise NonIntegral(f"not a positive integral array: {self}")
        return IntersectionArray(tuple(int(v) for v in self.b), tuple(int(v) for v in self.c))

    def rounded(self, tol=1e-9) -> IntersectionArray:
        """Nearest integral array; for enclosure-valued input."""
        vals = []
        for v in self.b + self.c:
            r = round(float(v))
            if not close(v, r, tol):
                raise NonIntegral(f"{v} is not within {tol} of an integer")
            vals.append(r)
        d = self.d
        return IntersectionArray(tuple(vals[:d]), tuple(vals[d:]))

    def __str__(self):
        f = lambda v: str(v) if is_exact(v) else f"{float(v):.12g}"
        return ",".join(map(f, self.b)) + ";" + ",".join(map(f, self.c))


@dataclass(frozen=True)
class Parametrization:
    array: RationalArray
    h: object
    g: object
    theta1: object
    thetad: object
    a_from_g: tuple  # a_1..a_{d-1} from the g-formula, for cross-checking
    consistent: bool

    @property
    def integral(self) -> bool:
        return self.array.integral


def _check_input(values):
    out = []
    for v in values:
        if isinstance(v, float):
            raise TypeError("float input is not accepted; pass Fractions, Surds or Approx enclosures")
        if isinstance(v, bool) or not isinstance(v, (int, Fraction, Approx, Surd)):
            raise TypeError(f"unsupported scalar {v!r}")
        out.append(Fraction(v) if isinstance(v, int) else v)
    return out


def parametrize(sigma: Sequence, eps) -> Parametrization:
    """Rebuild the intersection numbers of a tight graph from the cosine
    sequence of one extremal eigenvalue and its auxiliary parameter.

    Preconditions: sigma_0 = 1, sigma_{d-1} = sigma sigma_d, eps != -1 and
    every denominator nonzero.  Floats are rejected.
    """
    s = _check_input(_seq(sigma))
    (eps,) = _check_input([eps])
    d = len(s) - 1
    if d < 3:
        raise PreconditionViolated("need sigma_0..sigma_d with d >= 3", "d>=3")
    if not close(s[0], 1):
        raise PreconditionViolated("sigma_0 must be 1", "sigma0")
    sg, s2 = s[1], s[2]
    if not close(s[d - 1], sg * s[d]):
        raise PreconditionViolated("need sigma_{d-1} = sigma sigma_d", "last")
    if close(eps, -1):
        raise PreconditionViolated("eps must differ from -1", "eps")

    def den(v, what, i=None):
        if is_zero(v):
            raise PreconditionViolated(f"denominator {what} vanishes" + (f" at i={i}" if i else ""), "denominator")
        return v

    base = den(sg * sg - s2, "sigma^2 - sigma_2") * den(1 - eps * sg, "1 - eps sigma")
    h = (1 - sg) * (1 - s2) / base
    g = (eps - 1) * (1 - s2) / base
    k = h * (sg - eps) / den(sg - 1, "sigma - 1")
    b, c, a_g = [k], [], []
    for i in range(1, d):
        sm, si, sp = s[i - 1], s[i], s[i + 1]
        dpm = den(sm - sp, "sigma_{i-1} - sigma_{i+1}", i)
        dpi = den(sp - si, "sigma_{i+1} - sigma_i", i)
        dmi = den(sm - si, "sigma_{i-1} - sigma_i", i)
        b.append(h * (sm - sg * si) * (sp - eps * si) / (dpm * dpi))
        c.append(h * (sp - sg * si) * (sm - eps * si) / ((sp - sm) * dmi))
        a_g.append(g * (sp - sg * si) * (sm - sg * si) / (dpi * dmi))
    c.append(k)
    a = [0 * k] + [k - b[i] - c[i - 1] for i in range(1, d)] + [k - c[-1]]
    consistent = close(c[0], 1) and all(close(x, y) for x, y in zip(a_g, a[1:d]))
    other = (1 - s2) / den(s2 - sg * sg, "sigma_2 - sigma^2")
    this = k * sg
    t1, td = (this, other) if sign(eps) > 0 else (other, this)
    return Parametrization(RationalArray(tuple(b), tuple(c), tuple(a)), h, g, t1, td, tuple(a_g), consistent)


def two_eigenvalue_parametrize(sigma: Sequence, rho: Sequence) -> RationalArray:
    """Intersection numbers from the cosine sequences of theta_1 and theta_d."""
    s = _check_input(_seq(sigma))
    r = _check_input(_seq(rho))
    if len(s) != len(r):
        raise PreconditionViolated("sequences must have equal length", "length")
    d = len(s) - 1
    sg, s2, rg, r2 = s[1], s[2], r[1], r[2]
    kden = (rg - r2) * (1 - sg) * sg - (sg - s2) * (1 - rg) * rg
    k = _div((sg - s2) * (1 - rg) - (rg - r2) * (1 - sg), kden, 0, "k denominator")
    b, c = [k], []
    for i in range(1, d):
        D = (r[i] - r[i + 1]) * (s[i - 1] - s[i]) - (s[i] - s[i + 1]) * (r[i - 1] - r[i])
        if is_zero(D):
            raise ZeroDenominator(f"D_{i} vanishes", i)
        b.append(k * ((s[i - 1] - s[i]) * (1 - rg) * r[i] - (r[i - 1] - r[i]) * (1 - sg) * s[i]) / D)
        c.append(k * ((s[i] - s[i + 1]) * (1 - rg) * r[i] - (r[i] - r[i + 1]) * (1 - sg) * s[i]) / D)
    cd_s = _div(k * s[d] * (sg - 1), s[d - 1] - s[d], d, "sigma_{d-1} - sigma_d")
    cd_r = _div(k * r[d] * (rg - 1), r[d - 1] - r[d], d, "rho_{d-1} - rho_d")
    if not close(cd_s, cd_r):
        raise InconsistentSpectrum(f"c_d from the two sequences disagree: {cd_s} vs {cd_r}")
    c.append(cd_s)
    a = [0 * k] + [k - b[i] - c[i - 1] for i in range(1, d)] + [k - cd_s]
    return RationalArray(tuple(b), tuple(c), tuple(a))


# ----- f bounds and local graph -------------------------------------------------


def _f_bound(array, theta):
    k, a1, b1 = array.k, array.a[1], array.b[1]
    return b1 * (k + theta * (a1 + 1)) / ((k + theta) * (1 + theta))


def f_bounds(array: IntersectionArray, spec: Optional[Spectrum] = None):
    """Lower and upper bound on f(x,y) over all edges (theta_d and theta_1 forms)."""
    spec = _spec(array, spec)
    if array.a[1] == 0:
        raise A1Zero()
    return _f_bound(array, spec.thetad), _f_bound(array, spec.theta1)


def _extremal(array, spec):
    """theta_1, theta_d exactly when possible, else the enclosures."""
    pair = exact_extremal_pair(array, spec)
    return pair if pair is not None else (spec.theta1, spec.thetad)


def b_minus(array: IntersectionArray, spec: Optional[Spectrum] = None):
    spec = _spec(array, spec)
    return -1 - array.b[1] / (1 + _extremal(array, spec)[0])


def b_plus(array: IntersectionArray, spec: Optional[Spectrum] = None):
    spec = _spec(array, spec)
    return -1 - array.b[1] / (1 + _extremal(array, spec)[1])


@dataclass(frozen=True)
class LocalSRG:
    nu: int
    kappa: int
    lam: object
    mu: object
    r: object
    s: object
    mult_r: object
    mult_s: object

    def params(self):
        return (self.nu, self.kappa, self.lam, self.mu)

    def to_json(self):
        return {
            "nu": self.nu,
            "kappa": self.kappa,
            "lambda": to_json(self.lam),
            "mu": to_json(self.mu),
            "r": to_json(self.r),
            "s": to_json(self.s),
            "mult_r": to_json(self.mult_r),
            "mult_s": to_json(self.mult_s),
        }


def local_srg_from_cosines(k, sigma, eps) -> LocalSRG:
    """Local graph parameters from the first two cosines of an extremal
    eigenvalue and its auxiliary parameter."""
    s = _seq(sigma)
    sg, s2 = s[1], s[2]
    a1 = -(1 - s2) * (1 + sg) * (1 - eps) / ((sg - s2) * (1 - eps * sg))
    lam = a1 * 2 * sg / (1 + sg) - a1 * (1 - sg) / (1 + sg) * s2 / (sg - s2) - (1 - s2) / (sg - s2)
    mu = a1 / (1 + sg) * (sg * sg - s2) / (sg - s2)
    r = a1 * sg / (1 + sg)
    sv = -(1 - s2) / (sg - s2)
    mult_r = (1 + sg) * (sg - eps) / (s2 - sg * sg)
    mult_s = -(1 - eps) * (1 + sg) * (s2 - eps * sg) / ((s2 - sg * sg) * (1 - eps * sg))
    return LocalSRG(k, a1, lam, mu, r, sv, mult_r, mult_s)


def local_srg(array: IntersectionArray, spec: Optional[Spectrum] = None) -> LocalSRG:
    spec = _spec(array, spec)
    if classify(array, spec).label != TIGHT:
        raise NotTight()
    k = array.k
    # exact surds for an irrational pair keep lambda and mu rational
    t1, td = _extremal(array, spec)
    sig = cosine_sequence(array, t1)
    eps = auxiliary_parameter(k, t1, td)
    loc = local_srg_from_cosines(k, sig, eps)
    a1 = array.a[1]
    if not close(loc.kappa, a1):
        raise InconsistentSpectrum(f"local valency formula gives {loc.kappa}, a_1 = {a1}")
    r, s = loc.r, loc.s
    bp, bm = b_plus(array, spec), b_minus(array, spec)
    checks = [
        (r, bp, "r = b+"),
        (s, bm, "s = b-"),
        (loc.lam, a1 + r + s + r * s, "lambda = kappa + r + s + rs"),
        (loc.mu, a1 + r * s, "mu = kappa + rs"),
        (k * (a1 + r * s), (a1 - r) * (a1 - s), "nu = (kappa-r)(kappa-s)/(kappa+rs)"),
        (loc.mult_r + loc.mult_s + 1, k, "mult_r + mult_s + 1 = nu"),
        (loc.mult_r * r + loc.mult_s * s + a1, 0, "trace"),
    ]
    for got, want, what in checks:
        if not close(got, want, tol=1e-7):
            raise InconsistentSpectrum(f"local SRG check failed: {what} ({got} vs {want})")
    if is_zero(loc.mu):
        raise InconsistentSpectrum("mu = 0 for a tight array")
    # the formula-level a_1 is replaced by the exact integer
    return LocalSRG(k, a1, loc.lam, loc.mu, r, s, loc.mult_r, loc.mult_s)


def at4_label(array: IntersectionArray, spec: Optional[Spectrum] = None, local: Optional[LocalSRG] = None):
    """(r, -s, k_4 + 1) for antipodal tight arrays of diameter four, else None."""
    spec = _spec(array, spec)
    if array.d != 4 or classify(array, spec).label != TIGHT:
        return None
    if not array.is_antipodal():
        return None
    t = array.ki[4] + 1
    if array.n % t:
        return None
    local = local or local_srg(array, spec)
    r, s = local.r, -local.s
    if not (is_exact(r) and is_exact(s)) or Fraction(r).denominator != 1 or Fraction(s).denominator != 1:
        return None
    return (int(r), int(s), t)


# ----- sign patterns and inequalities -------------------------------------------


def tight_inequalities(array: IntersectionArray, spec: Optional[Spectrum] = None) -> dict:
    """Strict inequalities every tight array satisfies; maps name -> bool."""
    spec = _spec(array, spec)
    k, a1, b1 = array.k, array.a[1], array.b[1]
    s = cosine_sequence(array, spec.theta1).sigma
    r = cosine_sequence(array, spec.thetad).sigma
    lo, hi = f_bounds(array, spec) if a1 else (None, None)
    return {
        "thetad_below_minus_k_over_a1p1": spec.thetad < Fraction(-k, a1 + 1) and not close(spec.thetad, Fraction(-k, a1 + 1)),
        "rho_sq_below_rho2": sign(r[2] - r[1] * r[1]) > 0,
        "sigma_sq_above_sigma2": sign(s[1] * s[1] - s[2]) > 0,
        "f_strictly_between_0_and_b1": lo is not None and sign(hi) > 0 and sign(b1 - hi) > 0,
    }


def cosine_sign_patterns(array: IntersectionArray, spec: Optional[Spectrum] = None) -> dict:
    """Monotonicity of the theta_1 sequence and sign alternation of the
    theta_d sequence; hold for every distance-regular graph."""
    spec = spec or spectrum(array)
    s = cosine_sequence(array, spec.theta1).sigma
    r = cosine_sequence(array, spec.thetad).sigma
    d = array.d
    return {
        "theta1_decreasing": all(sign(s[i] - s[i + 1]) > 0 for i in range(d)),
        "thetad_alternating": all(sign(r[i]) == (-1) ** i for i in range(d + 1)),
    }


def tight_cosine_inequalities(array: IntersectionArray, spec: Optional[Spectrum] = None) -> dict:
    """Sign conditions on both extremal sequences of a tight array."""
    spec = _spec(array, spec)
    d = array.d
    s = cosine_sequence(array, spec.theta1).sigma
    r = cosine_sequence(array, spec.thetad).sigma
    sg, rg = s[1], r[1]
    return {
        "theta1_prev_gt_sigma_cur": all(sign(s[i - 1] - sg * s[i]) > 0 for i in range(1, d)),
        "theta1_sigma_prev_gt_cur": all(sign(sg * s[i - 1] - s[i]) > 0 for i in range(2, d + 1)),
        "thetad_alt_a": all(sign((-1) ** i * (rg * r[i] - r[i - 1])) > 0 for i in range(1, d)),
        "thetad_alt_b": all(sign((-1) ** i * (r[i] - rg * r[i - 1])) > 0 for i in range(2, d + 1)),
    }


def basic_identities(array: IntersectionArray, theta) -> list:
    """Residuals of six identities tying the first cosines to k, a_1, b_1
    and the last cosines to c_d, a_d.  All vanish when theta is an eigenvalue."""
    k, a1, b1, d = array.k, array.a[1], array.b[1], array.d
    s = cosine_sequence(array, theta).sigma
    sg, s2 = s[1], s[2]
    cd, ad = array.ci(d), array.a[d]
    return [
        k * b1 * s2 - (theta * theta - a1 * theta - k),
        k * b1 * (sg - s2) - (k - theta) * (1 + theta),
        k * b1 * (1 - s2) - (k - theta) * (theta + k - a1),
        k * k * b1 * (sg * sg - s2) - (k - theta) * (k + theta * (a1 + 1)),
        cd * (s[d - 1] - s[d]) - k * (sg - 1) * s[d],
        ad * (s[d - 1] - s[d]) - k * (s[d - 1] - sg * s[d]),
    ]


# ----- full report ----------------------------------------------------------------


@dataclass(frozen=True)
class TightnessReport:
    array: IntersectionArray
    theta1: object
    thetad: object
    fb: FundamentalBound
    classification: Classification
    epsilon: object = None
    f_lower: object = None
    f_upper: object = None
    local_srg: Optional[LocalSRG] = None
    b_plus: object = None
    b_minus: object = None
    at4: Optional[tuple] = None
    notes: tuple = field(default_factory=tuple)
    exact_pair: Optional[tuple] = None  # (theta_1, theta_d) as Fractions or Surds

    @property
    def tight(self) -> bool:
        return self.classification.label == TIGHT

    def to_json(self) -> dict:
        exact_eigs = is_exact(self.theta1) and is_exact(self.thetad)
        return {
            "array": str(self.array),
            "theta1": to_json(self.theta1),
            "thetad": to_json(self.thetad),
            "fb": self.fb.to_json(),
            "classification": self.classification.label,
            "numerically_tight": self.classification.numerically_tight,
            "epsilon": to_json(self.epsilon),
            "f_bounds": None if self.f_lower is None else [to_json(self.f_lower), to_json(self.f_upper)],
            "local_srg": None if self.local_srg is None else self.local_srg.to_json(),
            "b_plus": to_json(self.b_plus),
            "b_minus": to_json(self.b_minus),
            "at4": None if self.at4 is None else list(self.at4),
            "exact": {"spectrum": exact_eigs, "fb": self.fb.exact},
            "exact_pair": None if self.exact_pair is None else [to_json(t) for t in self.exact_pair],
            "notes": list(self.notes),
        }


def analyze(array: IntersectionArray, spec: Optional[Spectrum] = None) -> TightnessReport:
    """Everything array-level; non-tight arrays still get slack and f bounds."""
    spec = _spec(array, spec)
    fb = fundamental_bound(array, spec)
    cls = classify(array, spec)
    notes = []
    if cls.numerically_tight:
        notes.append("tightness decided numerically at 1e-9")
    pair = exact_extremal_pair(array, spec)
    lo = hi = None
    if array.a[1]:
        lo, hi = (_f_bound(array, pair[1]), _f_bound(array, pair[0])) if pair else f_bounds(array, spec)
    eps = loc = at4 = None
    if cls.label == TIGHT:
        eps = auxiliary_parameter(array.k, *pair) if pair else epsilon(array, spec)
        loc = local_srg(array, spec)
        at4 = at4_label(array, spec, loc)
        if not close(lo, hi):
            raise InconsistentSpectrum("tight array with unequal f bounds")
    return TightnessReport(
        array=array,
        theta1=spec.theta1,
        thetad=spec.thetad,
        fb=fb,
        classification=cls,
        epsilon=eps,
        f_lower=lo,
        f_upper=hi,
        local_srg=loc,
        b_plus=b_plus(array, spec),
        b_minus=b_minus(array, spec),
        at4=at4,
        notes=tuple(notes),
        exact_pair=pair,
    )
