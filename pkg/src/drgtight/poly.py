"""Integer polynomials and exact real-root isolation by Sturm sequences.

Polynomials are lists of coefficients, lowest degree first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .scalar import Approx


def trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def degree(p) -> int:
    return len(trim(p)) - 1


def evaluate(p, x):
    acc = 0
    for coef in reversed(p):
        acc = acc * x + coef
    return acc


def derivative(p):
    return trim([i * p[i] for i in range(1, len(p))] or [0])


def mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, u in enumerate(p):
        if u:
            for j, v in enumerate(q):
                out[i + j] += u * v
    return trim(out)


def sub(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def scale(p, s):
    return trim([s * u for u in p])


def divmod_poly(p, q):
    """Long division over the rationals."""
    p = [Fraction(u) for u in trim(p)]
    q = [Fraction(u) for u in trim(q)]
    if q == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(q):
        return [Fraction(0)], p
    quot = [Fraction(0)] * (len(p) - len(q) + 1)
    rem = p[:]
    lead = q[-1]
    for shift in range(len(p) - len(q), -1, -1):
        coef = rem[shift + len(q) - 1] / lead
        quot[shift] = coef
        if coef:
            for j, v in enumerate(q):
                rem[shift + j] -= coef * v
    return trim(quot), trim(rem[: len(q) - 1] or [Fraction(0)])


def tridiagonal_charpoly(a: Sequence[int], b: Sequence[int], c: Sequence[int]):
    """det(xI - L) for the tridiagonal matrix with diagonal a_0..a_d,
    superdiagonal b_0..b_{d-1} and subdiagonal c_1..c_d."""
    prev = [1]
    cur = [-a[0], 1]
    for i in range(1, len(a)):
        nxt = sub(mul([-a[i], 1], cur), scale(prev, b[i - 1] * c[i - 1]))
        prev, cur = cur, nxt
    return cur


def sturm_chain(p):
    chain = [trim(p), derivative(p)]
    while degree(chain[-1]) > 0:
        _, r = divmod_poly(chain[-2], chain[-1])
        if r == [0]:
            break
        chain.append(scale(r, -1))
    return chain


def _variations(chain, x) -> int:
    count = 0
    last = 0
    for q in chain:
        v = evaluate(q, x)
        if v:
            s = 1 if v > 0 else -1
            if last and s != last:
                count += 1
            last = s
    return count


def count_roots(chain, lo, hi) -> int:
    """Distinct real roots in (lo, hi], lo and hi not roots."""
    return _variations(chain, lo) - _variations(chain, hi)


@dataclass(frozen=True)
class RealRoot:
    """A real root, either exact or bracketed by a rational interval (lo, hi)."""

    exact: Optional[Fraction]
    lo: Fraction
    hi: Fraction

    def enclosure(self):
        if self.exact is not None:
            return self.exact
        return Approx.from_interval(self.lo, self.hi)


def _nonroot_point(p, lo, hi):
    """A point strictly inside (lo, hi) where p does not vanish."""
    mid = (lo + hi) / 2
    step = (hi - lo) / 1024
    while evaluate(p, mid) == 0:
        mid += step
        step /= 2
    return mid


def real_roots(p, bound, width=Fraction(1, 10**12) * 2) -> list[RealRoot]:
    """All real roots of a squarefree integer polynomial, ascending.

    Every root must lie in ``(-bound, bound)``.  Rational roots of a monic
    integer polynomial are integers; those are returned exactly.  The others
    are refined by bisection until the bracket is narrower than ``width``.
    """
    p = trim(p)
    chain = sturm_chain(p)
    lo0 = Fraction(-bound) - Fraction(1, 3)
    hi0 = Fraction(bound) + Fraction(1, 7)
    while evaluate(p, lo0) == 0:
        lo0 -= 1
    while evaluate(p, hi0) == 0:
        hi0 += 1
    isolated = []
    stack = [(lo0, hi0, count_roots(chain, lo0, hi0))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            isolated.append((lo, hi))
            continue
        mid = _nonroot_point(p, lo, hi)
        stack.append((lo, mid, count_roots(chain, lo, mid)))
        stack.append((mid, hi, count_roots(chain, mid, hi)))
    isolated.sort()
    monic = abs(p[-1]) == 1 and all(Fraction(u).denominator == 1 for u in p)
    return [_refine(p, lo, hi, width, monic) for lo, hi in isolated]


def _refine(p, lo, hi, width, monic) -> RealRoot:
    slo = evaluate(p, lo) > 0
    # narrow to below unit width so at most one integer candidate remains
    while hi - lo >= 1:
        mid = (lo + hi) / 2
        v = evaluate(p, mid)
        if v == 0:
            return RealRoot(mid, mid, mid)
        if (v > 0) == slo:
            lo = mid
        else:
            hi = mid
    if monic:
        cand = Fraction(math.ceil(lo))
        if lo < cand < hi and evaluate(p, cand) == 0:
            return RealRoot(cand, cand, cand)
    while hi - lo >= width:
        mid = (lo + hi) / 2
        v = evaluate(p, mid)
        if v == 0:
            return RealRoot(mid, mid, mid)
        if (v > 0) == slo:
            lo = mid
        else:
            hi = mid
    return RealRoot(None, lo, hi)


def quadratic_factor(p, r1: RealRoot, r2: RealRoot):
    """If the two irrational roots are conjugate roots of an integer quadratic
    ``x^2 - S x + P`` dividing ``p``, return ``(S, P)``; otherwise None."""
    if r1.exact is not None or r2.exact is not None:
        return None
    e1, e2 = r1.enclosure(), r2.enclosure()
    S = round((e1 + e2).value)
    P = round((e1 * e2).value)
    q = [Fraction(P), Fraction(-S), Fraction(1)]
    _, rem = divmod_poly(p, q)
    if rem != [0]:
        return None
    # the quadratic's two roots must be the bracketed ones
    for r in (r1, r2):
        if (evaluate(q, r.lo) > 0) == (evaluate(q, r.hi) > 0):
            return None
    return Fraction(S), Fraction(P)
