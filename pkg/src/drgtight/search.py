"""Enumerate intersection arrays of a given diameter that are tight.

Candidates are generated with c_1 = 1 <= c_2 <= ... and k = b_0 >= b_1 >= ...
(the usual monotonicity, used here as heuristic pruning), a_d = 0,
a_i != 0 for 0 < i < d and integral k_i.  Survivors are screened in bulk
with floating eigenvalues and every screened hit is re-decided exactly.
The ``prune=False`` mode drops monotonicity and the generator-side
constraints and applies them as filters instead; it exists to validate the
pruner on small boxes.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Optional

import numpy as np

from .core import IntersectionArray, cosine_sequence, spectrum
from .errors import BudgetExceeded, InvalidArray, ParamOutOfRange
from .tightness import TIGHT, TightnessReport, analyze, classify, is_feasible
from .scalar import to_json

log = logging.getLogger(__name__)

DEFAULT_CAP = 10**8
PROGRESS_EVERY = 10**6
SCREEN_TOL = 1e-6


@dataclass(frozen=True)
class SearchConfig:
    d: int
    max_k: int
    require_antipodal: bool = False
    require_feasible: bool = False  # also demand the theta_d sequence be feasible
    tolerance: str = "exact"  # or "numeric": accept numerically tight hits
    prune: bool = True
    cap: int = DEFAULT_CAP
    workers: Optional[int] = None
    min_k: int = 3

    def __post_init__(self):
        if self.d < 3:
            raise ParamOutOfRange(f"d must be >= 3, got {self.d}")
        if self.max_k < 3:
            raise ParamOutOfRange(f"max_k must be >= 3, got {self.max_k}")
        if self.tolerance not in ("exact", "numeric"):
            raise ParamOutOfRange(f"tolerance must be 'exact' or 'numeric', got {self.tolerance!r}")
        if self.cap < 1:
            raise ParamOutOfRange("cap must be positive")

    def worker_count(self) -> int:
        if self.workers is not None:
            return max(1, self.workers)
        env = os.environ.get("DRGT_THREADS")
        if env:
            try:
                return max(1, int(env))
            except ValueError:
                pass
        return 1


# ----- generation ---------------------------------------------------------------


def _pruned(k, d, b1, c2):
    """Monotone candidates with b_1, c_2 fixed; yields (b, c) tuples."""
    # middle a_i >= 1 means b_i + c_i <= k - 1
    if b1 + 1 > k - 1:
        return
    b = [k, b1]
    c = [1]
    ki = [1, k]

    def rec(i):
        # choose c_i then b_i for i = len(c) + 1 ... d - 1
        if i == d:
            # a_d = 0 forces c_d = k; k_d must be integral
            if (ki[-1] * b[-1]) % k == 0:
                yield tuple(b), tuple(c) + (k,)
            return
        lo_c = c[-1]
        cs = [c2] if i == 2 else range(lo_c, k)
        for ci in cs:
            if ci < lo_c:
                continue
            num = ki[-1] * b[-1]
            if num % ci:
                continue
            for bi in range(min(b[-1], k - 1 - ci), 0, -1):
                c.append(ci)
                b.append(bi)
                ki.append(num // ci)
                yield from rec(i + 1)
                c.pop()
                b.pop()
                ki.pop()

    yield from rec(2)


def _unpruned(k, d, b1, c2):
    """Everything in the box with b_1, c_2 fixed; constraints become filters."""
    rest = d - 2
    for tail_b in product(range(1, k + 1), repeat=rest):
        for tail_c in product(range(1, k + 1), repeat=rest):
            b = (k, b1) + tail_b
            c = (1, c2) + tail_c
            yield b, c


def _passes_filters(b, c, k, d) -> bool:
    """The generator-side constraints, stated directly; used in both modes."""
    if c[-1] != k:  # a_d = 0
        return False
    for i in range(1, d):
        if b[i] + c[i - 1] >= k:  # a_i >= 1
            return False
    ki = 1
    for i in range(d):
        num = ki * b[i]
        if num % c[i]:
            return False
        ki = num // c[i]
    return True


def prefixes(cfg: SearchConfig):
    """Work units (k, b_1, c_2) in deterministic order."""
    out = []
    for k in range(cfg.min_k, cfg.max_k + 1):
        b1_range = range(1, k - 1) if cfg.prune else range(1, k + 1)
        for b1 in b1_range:
            c2_range = range(1, k) if cfg.prune else range(1, k + 1)
            for c2 in c2_range:
                out.append((k, b1, c2))
    return out


# ----- screening ------------------------------------------------------------------


def _numeric_screen(cands, d):
    """Keep candidates whose floating Fundamental Bound slack is near zero."""
    if not cands:
        return []
    arr_b = np.array([b for b, _ in cands], dtype=float)
    arr_c = np.array([c for _, c in cands], dtype=float)
    k = arr_b[:, 0]
    n = len(cands)
    a = np.zeros((n, d + 1))
    a[:, 1:d] = k[:, None] - arr_b[:, 1:] - arr_c[:, :-1]
    a[:, d] = k - arr_c[:, -1]
    M = np.zeros((n, d + 1, d + 1))
    idx = np.arange(d + 1)
    M[:, idx, idx] = a
    off = np.sqrt(arr_b * arr_c)
    M[:, idx[:-1], idx[1:]] = off
    M[:, idx[1:], idx[:-1]] = off
    w = np.linalg.eigvalsh(M)
    thd, th1 = w[:, 0], w[:, -2]
    a1 = a[:, 1]
    b1 = arr_b[:, 1]
    K = k / (a1 + 1)
    slack = (th1 + K) * (thd + K) + k * a1 * b1 / (a1 + 1) ** 2
    keep = np.abs(slack) <= SCREEN_TOL * np.maximum(1.0, k * k)
    return [cands[i] for i in np.nonzero(keep)[0]]


def _exact_accept(b, c, cfg: SearchConfig) -> bool:
    try:
        arr = IntersectionArray(b, c)
        spec = spectrum(arr)
    except InvalidArray:
        return False
    cls = classify(arr, spec)
    if cls.label != TIGHT:
        return False
    if cls.numerically_tight and cfg.tolerance == "exact":
        return False
    if cfg.require_antipodal and not arr.is_antipodal():
        return False
    if cfg.require_feasible and not is_feasible(cosine_sequence(arr, spec.thetad), spec):
        return False
    return True


def scan_prefix(cfg: SearchConfig, prefix, cap: Optional[int] = None):
    """Scan one work unit.  Returns (candidate count, hits as (b, c) tuples)."""
    k, b1, c2 = prefix
    d = cfg.d
    cap = cfg.cap if cap is None else cap
    gen = _pruned(k, d, b1, c2) if cfg.prune else _unpruned(k, d, b1, c2)
    count = 0
    batch, hits = [], []
    for b, c in gen:
        count += 1
        if count > cap:
            hits += _finish(batch, cfg)
            raise BudgetExceeded(count - 1, hits)
        if count % PROGRESS_EVERY == 0:
            log.info("prefix %s: %d candidates", prefix, count)
        if not cfg.prune and not _passes_filters(b, c, k, d):
            continue
        batch.append((b, c))
        if len(batch) >= 4096:
            hits += _finish(batch, cfg)
            batch = []
    hits += _finish(batch, cfg)
    return count, hits


def _finish(batch, cfg):
    return [bc for bc in _numeric_screen(batch, cfg.d) if _exact_accept(*bc, cfg)]


def _scan_task(args):
    cfg, prefix, cap = args
    return scan_prefix(cfg, prefix, cap)


# ----- driver -------------------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    hits: tuple  # (IntersectionArray, TightnessReport) in lexicographic order
    candidates: int

    def arrays(self) -> list:
        return [a for a, _ in self.hits]

    def to_ndjson(self) -> str:
        return "".join(json.dumps(hit_json(r), sort_keys=True) + "\n" for _, r in self.hits)


def hit_json(report: TightnessReport) -> dict:
    return {
        "array": str(report.array),
        "slack": to_json(report.fb.slack),
        "epsilon": to_json(report.epsilon),
        "theta1": to_json(report.theta1),
        "thetad": to_json(report.thetad),
        "exact_pair": None if report.exact_pair is None else [to_json(t) for t in report.exact_pair],
    }


def _sort_key(bc):
    return (bc[0], bc[1])


def run_search(cfg: SearchConfig) -> SearchResult:
    units = prefixes(cfg)
    total = 0
    found = []
    workers = cfg.worker_count()
    if workers == 1:
        for p in units:
            try:
                n, hits = scan_prefix(cfg, p, cfg.cap - total)
            except BudgetExceeded as exc:
                raise BudgetExceeded(total + exc.count, _reports(found + exc.partial)) from None
            total += n
            found += hits
            if total // PROGRESS_EVERY != (total - n) // PROGRESS_EVERY:
                log.info("%d candidates scanned, %d hits", total, len(found))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(_scan_task, [(cfg, p, cfg.cap) for p in units], chunksize=8)
            try:
                for n, hits in results:
                    total += n
                    found += hits
                    if total > cfg.cap:
                        raise BudgetExceeded(total, found)
            except BudgetExceeded as exc:
                pool.shutdown(cancel_futures=True)
                raise BudgetExceeded(max(total, exc.count), _reports(found + list(exc.partial))) from None
    return SearchResult(tuple(_reports(found)), total)


def _reports(found) -> list:
    out = []
    for b, c in sorted(set(found), key=_sort_key):
        arr = IntersectionArray(b, c)
        out.append((arr, analyze(arr)))
    return out


def search_tight_arrays(cfg: SearchConfig) -> list:
    """List of (array, TightnessReport), sorted lexicographically on (b, c)."""
    return list(run_search(cfg).hits)
