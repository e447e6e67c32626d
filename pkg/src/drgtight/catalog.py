"""The twelve tight examples as embedded data, with a validator that
recomputes every stored column from the intersection array alone.

Johnson J(2d,d) and halved cube 1/2 H(2d,2) are families and are
instantiated at d = 3, 4, 5.  The Taylor family is stored through (k, c_2)
and instantiated only for the icosahedron (k = 5, c_2 = 2).  Expected
values for families come from their closed forms; the sporadic rows are
literal constants.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction as F
from typing import Optional

from .core import IntersectionArray, cosine_sequence, spectrum
from .scalar import Surd, close, deviation, is_exact, to_json
from .tightness import TIGHT, at4_label, classify, epsilon, fundamental_bound, local_srg, rho_from_sigma

TAYLOR_TOL = 1e-9


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    array: IntersectionArray
    expected_theta1: object
    expected_thetad: object
    expected_sigma: tuple
    expected_rho: tuple
    expected_epsilon: object
    local_srg_expected: tuple  # (nu, kappa, lambda, mu, r, s)
    constructible: bool = False
    construct: Optional[str] = None  # spec string for graphs.construct
    at4_expected: Optional[tuple] = None
    family: Optional[str] = None
    params: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in (self.expected_theta1, self.expected_thetad, self.expected_epsilon))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "array": str(self.array),
            "family": self.family,
            "params": dict(self.params),
            "expected_theta1": to_json(self.expected_theta1),
            "expected_thetad": to_json(self.expected_thetad),
            "expected_sigma": [to_json(v) for v in self.expected_sigma],
            "expected_rho": [to_json(v) for v in self.expected_rho],
            "expected_epsilon": to_json(self.expected_epsilon),
            "local_srg_expected": [to_json(v) for v in self.local_srg_expected],
            "constructible": self.constructible,
            "construct": self.construct,
            "at4_expected": None if self.at4_expected is None else list(self.at4_expected),
            "exact": self.exact,
        }


# ----- family closed forms ---------------------------------------------------


def johnson_entry(d: int, at4=None) -> CatalogEntry:
    arr = IntersectionArray([(d - i) ** 2 for i in range(d)], [i * i for i in range(1, d + 1)])
    sigma = tuple(F(d - 2 * i, d) for i in range(d + 1))
    rho = []
    for i in range(d + 1):
        num = math.factorial(i)
        den = math.prod(range(d - i + 1, d + 1))
        rho.append(F((-1) ** i * num, den))
    local = (d * d, 2 * (d - 1), d - 2, 2, d - 2, -2)
    return CatalogEntry(
        name=f"J({2 * d},{d})",
        array=arr,
        expected_theta1=F(d * (d - 2)),
        expected_thetad=F(-d),
        expected_sigma=sigma,
        expected_rho=tuple(rho),
        expected_epsilon=F(d + 2, d),
        local_srg_expected=local,
        constructible=True,
        construct=f"johnson:{2 * d},{d}",
        at4_expected=at4,
        family="johnson",
        params={"d": d},
    )


def halved_cube_entry(d: int, at4=None) -> CatalogEntry:
    n = 2 * d
    arr = IntersectionArray(
        [(n - 2 * i) * (n - 2 * i - 1) // 2 for i in range(d)],
        [i * (2 * i - 1) for i in range(1, d + 1)],
    )
    sigma = tuple(F(d - 2 * i, d) for i in range(d + 1))
    rho = []
    for i in range(d + 1):
        num = math.prod(range(1, 2 * i, 2))
        den = math.prod(range(2 * d - 2 * i + 1, 2 * d, 2))
        rho.append(F((-1) ** i * num, den))
    local = (d * (2 * d - 1), 4 * (d - 1), 2 * (d - 1), 4, 2 * d - 4, -2)
    return CatalogEntry(
        name=f"1/2 H({n},2)",
        array=arr,
        expected_theta1=F((2 * d - 1) * (d - 2)),
        expected_thetad=F(-d),
        expected_sigma=sigma,
        expected_rho=tuple(rho),
        expected_epsilon=F(d + 1, d - 1),
        local_srg_expected=local,
        constructible=True,
        construct=f"halved_cube:{n}",
        at4_expected=at4,
        family="halved_cube",
        params={"d": d},
    )


def taylor_entry(k: int, c2: int, name=None, construct=None) -> CatalogEntry:
    """Taylor graph {k, c2, 1; 1, c2, k}.  theta_1 and theta_d are the roots
    alpha > beta of x^2 - (k - 2 c2 - 1) x - k."""
    s = k - 2 * c2 - 1
    root = Surd.make(0, 1, s * s + 4 * k)  # a Fraction when the discriminant is square
    alpha, beta = (s + root) / 2, (s - root) / 2
    a1 = k - c2 - 1
    local = (k, a1, F(3 * a1 - k - 1, 2), F(a1, 2), (alpha - 1) / 2, (beta - 1) / 2)
    return CatalogEntry(
        name=name or f"Taylor({k},{c2})",
        array=IntersectionArray([k, c2, 1], [1, c2, k]),
        expected_theta1=alpha,
        expected_thetad=beta,
        expected_sigma=(F(1), alpha / k, -alpha / k, F(-1)),
        expected_rho=(F(1), beta / k, -beta / k, F(-1)),
        expected_epsilon=F(k + 1) / (alpha - beta),
        local_srg_expected=local,
        constructible=construct is not None,
        construct=construct,
        family="taylor",
        params={"k": k, "c2": c2},
    )


def _sporadic(name, b, c, theta1, thetad, sigma, rho, eps, local, at4=None) -> CatalogEntry:
    fr = lambda seq: tuple(F(v) for v in seq)
    return CatalogEntry(
        name=name,
        array=IntersectionArray(b, c),
        expected_theta1=F(theta1),
        expected_thetad=F(thetad),
        expected_sigma=fr(sigma),
        expected_rho=fr(rho),
        expected_epsilon=F(eps),
        local_srg_expected=tuple(F(v) for v in local),
        at4_expected=at4,
        family="sporadic",
    )


def _build():
    entries = [
        johnson_entry(3),
        johnson_entry(4, at4=(2, 2, 2)),
        johnson_entry(5),
        halved_cube_entry(3),
        halved_cube_entry(4, at4=(4, 2, 2)),
        halved_cube_entry(5),
        taylor_entry(5, 2, name="icosahedron", construct="icosahedron"),
    ]
    spor = [
        ("3.Sym(7)", [10, 6, 4, 1], [1, 2, 6, 10], 5, -4,
         ["1", "1/2", "0", "-1/4", "-1/2"], ["1", "-2/5", "3/10", "-2/5", "1"], "4/3",
         [10, 3, 0, 1, 1, -2], (1, 2, 3)),
        ("3.O6-(3)", [45, 32, 12, 1], [1, 6, 32, 45], 15, -9,
         ["1", "1/3", "0", "-1/6", "-1/2"], ["1", "-1/5", "1/10", "-1/5", "1"], "2",
         [45, 12, 3, 3, 3, -3], (3, 3, 3)),
        ("3.O7(3)", [117, 80, 24, 1], [1, 12, 80, 117], 39, -9,
         ["1", "1/3", "0", "-1/6", "-1/2"], ["1", "-1/13", "2/65", "-1/13", "1"], "5/2",
         [117, 36, 15, 9, 9, -3], (9, 3, 3)),
        ("3.Fi24", [31671, 28160, 2160, 1], [1, 1080, 28160, 31671], 3519, -81,
         ["1", "1/9", "0", "-1/18", "-1/2"], ["1", "-1/391", "5/17204", "-1/391", "1"], "44/5",
         [31671, 3510, 693, 351, 351, -9], (351, 9, 3)),
        ("Soicher1", [56, 45, 16, 1], [1, 8, 45, 56], 14, -16,
         ["1", "1/4", "0", "-1/8", "-1/2"], ["1", "-2/7", "1/7", "-2/7", "1"], "2",
         [56, 10, 0, 2, 2, -4], (2, 4, 3)),
        ("Soicher2", [416, 315, 64, 1], [1, 32, 315, 416], 104, -16,
         ["1", "1/4", "0", "-1/8", "-1/2"], ["1", "-1/26", "1/91", "-1/26", "1"], "7/2",
         [416, 100, 36, 20, 20, -4], (20, 4, 3)),
        ("Meixner1", [176, 135, 24, 1], [1, 24, 135, 176], 44, -16,
         ["1", "1/4", "0", "-1/4", "-1"], ["1", "-1/11", "1/33", "-1/11", "1"], "3",
         [176, 40, 12, 8, 8, -4], (8, 4, 2)),
        ("Meixner2", [176, 135, 36, 1], [1, 12, 135, 176], 44, -16,
         ["1", "1/4", "0", "-1/12", "-1/3"], ["1", "-1/11", "1/33", "-1/11", "1"], "3",
         [176, 40, 12, 8, 8, -4], (8, 4, 4)),
        ("Patterson", [280, 243, 144, 10], [1, 8, 90, 280], 80, -28,
         ["1", "2/7", "1/21", "-2/63", "-1/9"], ["1", "-1/10", "1/45", "-1/54", "5/27"], "8/3",
         [280, 36, 8, 4, 8, -4], None),
    ]
    entries += [_sporadic(*row) for row in spor]
    return tuple(entries)


ENTRIES = _build()

# the (i)..(xii) examples of the table, in table order
NAMED = (
    "J(2d,d)", "1/2 H(2d,2)", "Taylor", "3.Sym(7)", "3.O6-(3)", "3.O7(3)",
    "3.Fi24", "Soicher1", "Soicher2", "Meixner1", "Meixner2", "Patterson",
)


def list_entries(constructible_only: bool = False) -> list:
    return [e for e in ENTRIES if e.constructible or not constructible_only]


def get(name: str) -> CatalogEntry:
    for e in ENTRIES:
        if e.name == name:
            return e
    raise KeyError(name)


# ----- validation ------------------------------------------------------------


@dataclass(frozen=True)
class FieldCheck:
    field: str
    expected: object
    actual: object
    ok: bool
    deviation: Optional[float] = None

    def to_json(self):
        def conv(v):
            if isinstance(v, (tuple, list)):
                return [conv(u) for u in v]
            if v is None or isinstance(v, (bool, str)):
                return v
            return to_json(v)

        return {
            "field": self.field,
            "expected": conv(self.expected),
            "actual": conv(self.actual),
            "ok": self.ok,
            "deviation": self.deviation,
        }


@dataclass(frozen=True)
class EntryValidation:
    name: str
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failed(self) -> list:
        return [c.field for c in self.checks if not c.ok]

    def to_json(self):
        return {"name": self.name, "ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def _match(expected, actual, exact: bool):
    """Exact rows need identical Fractions; surd rows are compared with the
    computed enclosures at 1e-9."""
    if exact and is_exact(expected):
        return is_exact(actual) and expected == actual, 0.0 if is_exact(actual) and expected == actual else None
    dev = deviation(expected, actual)
    return dev <= TAYLOR_TOL, dev


def _compare(name, expected, actual, exact) -> FieldCheck:
    if isinstance(expected, tuple):
        if actual is None or len(expected) != len(actual):
            return FieldCheck(name, expected, actual, False)
        results = [_match(e, a, exact) for e, a in zip(expected, actual)]
        ok = all(r[0] for r in results)
        devs = [r[1] for r in results if r[1] is not None]
        return FieldCheck(name, expected, tuple(actual), ok, max(devs) if devs else None)
    ok, dev = _match(expected, actual, exact)
    return FieldCheck(name, expected, actual, ok, dev)


def validate_entry(entry: CatalogEntry) -> EntryValidation:
    """Recompute every column of one row from its intersection array."""
    arr = entry.array
    spec = spectrum(arr)
    exact = entry.exact
    checks = []
    try:
        sig = cosine_sequence(arr, spec.theta1).sigma
        rho = cosine_sequence(arr, spec.thetad).sigma
        eps = epsilon(arr, spec)
        checks.append(_compare("theta1", entry.expected_theta1, spec.theta1, exact))
        checks.append(_compare("thetad", entry.expected_thetad, spec.thetad, exact))
        checks.append(_compare("sigma", entry.expected_sigma, tuple(sig), exact))
        checks.append(_compare("rho", entry.expected_rho, tuple(rho), exact))
        checks.append(_compare("epsilon", entry.expected_epsilon, eps, exact))
        fb = fundamental_bound(arr, spec)
        checks.append(FieldCheck("fb_slack", 0, fb.slack, fb.exact and fb.slack == 0))
        cls = classify(arr, spec)
        checks.append(FieldCheck("classification", TIGHT, cls.label, cls.label == TIGHT and not cls.numerically_tight))
        loc = local_srg(arr, spec)
        got = (loc.nu, loc.kappa, loc.lam, loc.mu, loc.r, loc.s)
        checks.append(_compare("local_srg", tuple(entry.local_srg_expected), got, exact))
        at4 = at4_label(arr, spec, loc)
        checks.append(FieldCheck("at4", entry.at4_expected, at4, at4 == entry.at4_expected))
        # the table's own rho must follow from its sigma and epsilon
        derived = rho_from_sigma(entry.expected_sigma, entry.expected_epsilon).sigma
        checks.append(_compare("rho_from_table_sigma", entry.expected_rho, tuple(derived), exact))
        d = arr.d
        shape = arr.a[d] == 0 and all(arr.a[i] != 0 for i in range(1, d))
        checks.append(FieldCheck("a_pattern", True, shape, shape))
    except Exception as exc:  # report-based: a crash is a failed field, not an abort
        checks.append(FieldCheck("exception", None, f"{type(exc).__name__}: {exc}", False))
    return EntryValidation(entry.name, tuple(checks))


def validate(entry: Optional[CatalogEntry] = None) -> list:
    """Validate one entry, or the whole catalog when called without one."""
    targets = [entry] if entry is not None else list(ENTRIES)
    return [validate_entry(e) for e in targets]


def to_json_list(entries=None) -> list:
    return [e.to_json() for e in (entries if entries is not None else ENTRIES)]


def export_json(path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        json.dump(to_json_list(), fh, indent=2, sort_keys=True)
        fh.write("\n")
