"""Concrete graphs: constructors, edge-list I/O, distance-regularity checks,
edge partitions and brute-force cross-checks of the counting formulas."""

from __future__ import annotations

import functools
import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .core import IntersectionArray, Spectrum, cosine_sequence, derive_counts, p1, spectrum
from .errors import (
    A1Zero,
    Disconnected,
    FormulaMismatch,
    GraphTooLarge,
    InconsistentSpectrum,
    LoopError,
    MultiEdgeError,
    NotAdjacent,
    NotDistanceRegular,
    NotStronglyRegular,
    ParamOutOfRange,
    ParseError,
    TrivialEigenvalue,
)
from .scalar import close, deviation, is_exact, is_zero, to_json
from . import tightness

MAX_VERTICES = 5000


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with sorted neighbor tuples."""

    n: int
    adjacency: tuple

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "Graph":
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise LoopError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParamOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
            if v in nbrs[u]:
                raise MultiEdgeError(f"repeated edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self):
        return hash((self.n, self.adjacency))

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_adjacent(self, u: int, v: int) -> bool:
        return v in self._sets[u]

    @functools.cached_property
    def _sets(self):
        return tuple(frozenset(a) for a in self.adjacency)

    @functools.cached_property
    def matrix(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.int64)
        for u, nb in enumerate(self.adjacency):
            A[u, list(nb)] = 1
        return A

    def bfs(self, source: int) -> np.ndarray:
        dist = np.full(self.n, -1, dtype=np.int64)
        dist[source] = 0
        q = deque([source])
        while q:
            u = q.popleft()
            for v in self.adjacency[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    q.append(v)
        return dist

    @functools.cached_property
    def distances(self) -> np.ndarray:
        """All-pairs distance matrix (-1 for unreachable)."""
        return np.stack([self.bfs(v) for v in range(self.n)]) if self.n else np.zeros((0, 0), int)

    def is_connected(self) -> bool:
        return self.n == 0 or bool((self.bfs(0) >= 0).all())

    def induced(self, vertices) -> "Graph":
        vs = list(vertices)
        index = {v: i for i, v in enumerate(vs)}
        edges = [(index[u], index[w]) for u in vs for w in self.adjacency[u] if w in index and u < w]
        return Graph.from_edges(len(vs), edges)


def _guard(g: Graph, force: bool):
    if g.n > MAX_VERTICES and not force:
        raise GraphTooLarge(f"{g.n} vertices exceeds {MAX_VERTICES}; pass force=True")


# ----- constructors -------------------------------------------------------------


def _from_vertices(verts, adjacent) -> Graph:
    verts = list(verts)
    edges = [(i, j) for i, j in itertools.combinations(range(len(verts)), 2) if adjacent(verts[i], verts[j])]
    return Graph.from_edges(len(verts), edges)


def johnson(n: int, d: int) -> Graph:
    """d-subsets of an n-set, adjacent when they share d-1 points."""
    if not (1 <= d < n <= 16):
        raise ParamOutOfRange(f"johnson({n},{d}) needs 1 <= d < n <= 16")
    verts = [frozenset(s) for s in itertools.combinations(range(n), d)]
    return _from_vertices(verts, lambda s, t: len(s & t) == d - 1)


def hamming(d: int, q: int) -> Graph:
    """Words of length d over q symbols, adjacent when they differ in one place."""
    if d < 1 or q < 2 or q**d > MAX_VERTICES:
        raise ParamOutOfRange(f"hamming({d},{q}) out of range")
    verts = list(itertools.product(range(q), repeat=d))
    index = {w: i for i, w in enumerate(verts)}
    edges = []
    for w in verts:
        for pos in range(d):
            for sym in range(w[pos] + 1, q):
                u = w[:pos] + (sym,) + w[pos + 1 :]
                edges.append((index[w], index[u]))
    return Graph.from_edges(len(verts), edges)


def hypercube(n: int) -> Graph:
    if not (1 <= n <= 12):
        raise ParamOutOfRange(f"hypercube({n}) needs 1 <= n <= 12")
    return hamming(n, 2)


def halved_cube(n: int) -> Graph:
    """Even-weight binary words of length n, adjacent at Hamming distance 2."""
    if not (2 <= n <= 12):
        raise ParamOutOfRange(f"halved_cube({n}) needs 2 <= n <= 12")
    verts = [v for v in range(2**n) if bin(v).count("1") % 2 == 0]
    index = {v: i for i, v in enumerate(verts)}
    edges = []
    for v in verts:
        for i, j in itertools.combinations(range(n), 2):
            u = v ^ (1 << i) ^ (1 << j)
            if v < u:
                edges.append((index[v], index[u]))
    return Graph.from_edges(len(verts), edges)


def icosahedron() -> Graph:
    # apex 0, upper ring 1..5, lower ring 6..10, apex 11
    edges = [(0, i) for i in range(1, 6)]
    edges += [(i, i % 5 + 1) for i in range(1, 6)]
    edges += [(i, 5 + i) for i in range(1, 6)]
    edges += [(i, 5 + i % 5 + 1) for i in range(1, 6)]
    edges += [(5 + i, 5 + i % 5 + 1) for i in range(1, 6)]
    edges += [(11, 5 + i) for i in range(1, 6)]
    return Graph.from_edges(12, edges)


FAMILIES = {
    "johnson": (johnson, 2),
    "hamming": (hamming, 2),
    "hypercube": (hypercube, 1),
    "halved_cube": (halved_cube, 1),
    "icosahedron": (icosahedron, 0),
}


def construct(spec: str) -> Graph:
    """Build a graph from ``"family:p1,p2"``, e.g. ``"johnson:8,4"``."""
    name, _, params = spec.partition(":")
    name = name.strip().lower().replace("-", "_")
    if name not in FAMILIES:
        raise ParamOutOfRange(f"unknown family {name!r}; choose from {sorted(FAMILIES)}")
    fn, arity = FAMILIES[name]
    try:
        args = [int(p) for p in params.split(",") if p.strip()]
    except ValueError as exc:
        raise ParamOutOfRange(f"bad parameters in {spec!r}") from exc
    if len(args) != arity:
        raise ParamOutOfRange(f"{name} takes {arity} parameter(s), got {len(args)}")
    return fn(*args)


# ----- edge-list I/O ------------------------------------------------------------


def dumps(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def loads(text: str, require_connected: bool = True) -> Graph:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty file", 1)
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError("header must be 'n m'", 1)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("header must be two integers", 1) from None
    if n < 0 or m < 0:
        raise ParseError("negative count in header", 1)
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges, file has {len(body)}", 1)
    edges = []
    seen = set()
    for lineno, line in enumerate(body, start=2):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("vertex ids must be integers", lineno) from None
        if u == v:
            raise LoopError(f"line {lineno}: loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range 0..{n - 1}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise MultiEdgeError(f"line {lineno}: repeated edge {key}")
        seen.add(key)
        edges.append(key)
    g = Graph.from_edges(n, edges)
    if require_connected and not g.is_connected():
        raise Disconnected("graph is not connected")
    return g


def load_graph(path) -> Graph:
    return loads(Path(path).read_text(encoding="ascii"))


def export_graph(g: Graph, path) -> None:
    Path(path).write_text(dumps(g), encoding="ascii")


# ----- distance regularity ------------------------------------------------------


def verify_distance_regular(g: Graph, strict: bool = False, force: bool = False) -> IntersectionArray:
    """Intersection array of ``g`` or NotDistanceRegular with a witness.

    c_i, a_i, b_i are checked for every ordered pair of vertices.  With
    ``strict`` every p^h_{ij} is also checked to be constant over pairs at
    distance h.
    """
    _guard(g, force)
    if g.n < 2:
        raise NotDistanceRegular("need at least two vertices")
    if not g.is_connected():
        raise NotDistanceRegular("graph is not connected")
    D = g.distances
    A = g.matrix
    d = int(D.max())
    levels = np.arange(d + 1)
    found = {}
    sizes = np.bincount(D[0], minlength=d + 1)
    for x in range(g.n):
        row = D[x]
        here = np.bincount(row, minlength=d + 1)
        if not np.array_equal(here, sizes):
            h = int(np.argmax(here != sizes))
            raise NotDistanceRegular(
                f"k_{h} not constant: vertices 0 and {x} have {int(sizes[h])} and {int(here[h])} vertices at distance {h}",
                witness={"vertices": [0, x], "parameter": f"k_{h}"},
            )
        # M[y, i] = |Gamma(y) ∩ Gamma_i(x)|
        M = A @ (row[:, None] == levels[None, :]).astype(np.int64)
        padded = np.zeros((g.n, d + 3), dtype=np.int64)
        padded[:, 1 : d + 2] = M
        ys = np.arange(g.n)
        for name, off in (("c", -1), ("a", 0), ("b", 1)):
            vals = padded[ys, row + off + 1]
            for h in range(d + 1):
                sel = vals[row == h]
                lo, hi = int(sel.min()), int(sel.max())
                key = (name, h)
                if key not in found:
                    found[key] = (lo, (x, int(ys[row == h][0])))
                if lo != hi or lo != found[key][0]:
                    bad = int(ys[row == h][np.argmax(sel != found[key][0])]) if (sel != found[key][0]).any() else int(ys[row == h][0])
                    raise NotDistanceRegular(
                        f"{name}_{h} not constant: pairs {found[key][1]} and {(x, bad)} differ",
                        witness={"pairs": [found[key][1], (x, bad)], "parameter": f"{name}_{h}"},
                    )
    b = tuple(found[("b", i)][0] for i in range(d))
    c = tuple(found[("c", i)][0] for i in range(1, d + 1))
    try:
        array = IntersectionArray(b, c)
    except Exception as exc:
        raise NotDistanceRegular(f"counts {b};{c} do not form a valid array: {exc}") from exc
    if strict:
        _check_pij(g, D, d)
    return array


def _check_pij(g, D, d, max_pairs=20000):
    levels = np.arange(d + 1)
    onehot = lambda v: (D[v][:, None] == levels[None, :]).astype(np.int64)
    ref = {}
    pairs = [(x, y) for x in range(g.n) for y in range(g.n)]
    if len(pairs) > max_pairs:
        rng = np.random.default_rng(0)
        pairs = [pairs[i] for i in rng.choice(len(pairs), size=max_pairs, replace=False)]
    for x, y in pairs:
        h = int(D[x, y])
        P = onehot(x).T @ onehot(y)
        if h not in ref:
            ref[h] = (P, (x, y))
        elif not np.array_equal(ref[h][0], P):
            raise NotDistanceRegular(
                f"p^{h}_ij differs between {ref[h][1]} and {(x, y)}",
                witness={"pairs": [ref[h][1], (x, y)], "parameter": f"p^{h}"},
            )


# ----- edge partitions ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EdgePartition:
    graph: Graph
    array: IntersectionArray
    x: int
    y: int
    cells: dict  # (i, j) -> tuple of vertices in Gamma_i(x) ∩ Gamma_j(y)
    cell_of: tuple  # vertex -> (i, j)
    counts: np.ndarray  # counts[z, idx] = |Gamma(z) ∩ cell idx|
    cell_index: dict  # (i, j) -> column of counts

    def count(self, z: int, cell) -> int:
        idx = self.cell_index.get(cell)
        return 0 if idx is None else int(self.counts[z, idx])

    def cell(self, i: int, j: int) -> tuple:
        return self.cells.get((i, j), ())


def _bookkeeping(array: IntersectionArray, cell, gamma=None, delta=None):
    """Expected neighbor counts of a vertex in ``cell``, as {cell: count}.

    ``gamma`` = |Gamma(z) ∩ D_{i-1}^{i-1}| and ``delta`` = |Gamma(z) ∩
    D_{i+1}^{i+1}| are the free parameters; everything else is forced.
    """
    i, j = cell
    b, c, a = array.bi, array.ci, array.a
    if i == j:
        g_, dl = gamma, delta
        out = {
            (i - 1, i): c(i) - g_,
            (i, i - 1): c(i) - g_,
            (i, i + 1): b(i) - dl,
            (i + 1, i): b(i) - dl,
            (i, i): a[i] - b(i) - c(i) + g_ + dl,
            (i - 1, i - 1): g_,
            (i + 1, i + 1): dl,
        }
    else:
        lo = min(i, j)  # cell is D_{lo}^{lo+1} or its mirror
        hi = lo + 1

        def cellpair(p, q):
            # orient (p,q) relative to D_{lo}^{hi}; mirror for D_{hi}^{lo}
            return (p, q) if i < j else (q, p)

        g_ = gamma
        out = {
            cellpair(lo - 1, lo): c(lo),
            cellpair(hi, lo): c(hi) - c(lo) - g_,
            cellpair(lo, hi): a[lo] - g_,
            cellpair(hi, hi + 1): b(hi),
            cellpair(hi, hi): a[hi] - a[lo] + g_,
            cellpair(lo, lo): g_,
        }
    return out


def edge_partition(g: Graph, array: IntersectionArray, x: int, y: int, check: bool = True) -> EdgePartition:
    if not g.is_adjacent(x, y):
        raise NotAdjacent(f"{x} and {y} are not adjacent")
    D = g.distances
    dx, dy = D[x], D[y]
    cells: dict = {}
    for z in range(g.n):
        cells.setdefault((int(dx[z]), int(dy[z])), []).append(z)
    cells = {key: tuple(v) for key, v in sorted(cells.items())}
    keys = list(cells)
    cell_index = {key: n for n, key in enumerate(keys)}
    ind = np.zeros((g.n, len(keys)), dtype=np.int64)
    for key, vs in cells.items():
        ind[list(vs), cell_index[key]] = 1
    counts = g.matrix @ ind
    cell_of = tuple((int(dx[z]), int(dy[z])) for z in range(g.n))
    part = EdgePartition(g, array, x, y, cells, cell_of, counts, cell_index)
    if check:
        _check_partition(part)
    return part


def _check_partition(part: EdgePartition):
    array, g = part.array, part.graph
    k = array.k
    for (i, j), vs in part.cells.items():
        if abs(i - j) > 1:
            raise NotDistanceRegular(f"vertex at distances ({i},{j}) from an edge")
        if len(vs) != p1(array, i, j):
            raise NotDistanceRegular(f"|D_{i}^{j}| = {len(vs)}, expected {p1(array, i, j)}")
    for z in range(g.n):
        row = part.counts[z]
        if row.sum() != k:
            raise NotDistanceRegular(f"neighbor counts of {z} sum to {row.sum()}, not k")
        cell = part.cell_of[z]
        if cell in ((0, 1), (1, 0)):
            continue
        i, j = cell
        if i == j:
            gamma = part.count(z, (i - 1, i - 1))
            delta = part.count(z, (i + 1, i + 1))
        else:
            lo = min(i, j)
            gamma = part.count(z, (lo, lo))
            delta = None
        expected = _bookkeeping(array, cell, gamma, delta)
        for cl, want in expected.items():
            got = part.count(z, cl)
            if got != want:
                raise NotDistanceRegular(
                    f"vertex {z} in D_{i}^{j} has {got} neighbors in D_{cl[0]}^{cl[1]}, expected {want}",
                    witness={"z": z, "cell": cell, "target": cl},
                )


# ----- f(x, y) and tight edges ----------------------------------------------------


@dataclass(frozen=True)
class FValue:
    f: Fraction
    edges_11_12: int
    internal_11: int
    internal_12: int


def compute_f(part: EdgePartition) -> FValue:
    """f(x,y): ordered pairs in D_1^1 at distance 2, divided by a_1."""
    a1 = part.array.a[1]
    if a1 == 0:
        raise A1Zero()
    b1 = part.array.b[1]
    D11 = list(part.cell(1, 1))
    D12 = list(part.cell(1, 2))
    D = part.graph.distances
    sub = D[np.ix_(D11, D11)]
    pairs2 = int((sub == 2).sum())
    f = Fraction(pairs2, a1)
    A = part.graph.matrix
    e_11_12 = int(A[np.ix_(D11, D12)].sum())
    int_11 = int(A[np.ix_(D11, D11)].sum()) // 2
    int_12 = int(A[np.ix_(D12, D12)].sum()) // 2
    for got, want, what in (
        (e_11_12, a1 * f, "edges between D_1^1 and D_1^2"),
        (int_11, a1 * (a1 - 1 - f) / 2, "edges inside D_1^1"),
        (int_12, a1 * (b1 - f) / 2, "edges inside D_1^2"),
    ):
        if got != want:
            raise NotDistanceRegular(f"{what}: counted {got}, expected {want}")
    if f > a1 - 1 or f > b1 or f < 0:
        raise NotDistanceRegular(f"f = {f} out of range")
    return FValue(f, e_11_12, int_11, int_12)


@dataclass(frozen=True)
class TightEdge:
    theta: object
    gram_det: object
    expression: object
    is_tight: bool
    f: Fraction


def gram_matrix_scaled(array: IntersectionArray, sigma, f) -> list:
    """Gram matrix of E x, E y, E w up to the factor m/n, w the sum over D_1^1."""
    a1 = array.a[1]
    s, s2 = sigma[1], sigma[2]
    return [
        [1, s, a1 * s],
        [s, 1, a1 * s],
        [a1 * s, a1 * s, a1 * (1 + (a1 - f - 1) * s + f * s2)],
    ]


def _det3(M):
    return (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )


def tight_edge_test(g: Graph, array: IntersectionArray, x: int, y: int, theta, spec: Optional[Spectrum] = None,
                    part: Optional[EdgePartition] = None) -> TightEdge:
    spec = spec or spectrum(array)
    if close(theta, array.k):
        raise TrivialEigenvalue()
    a1 = array.a[1]
    if a1 == 0:
        raise A1Zero()
    part = part or edge_partition(g, array, x, y)
    f = compute_f(part).f
    sig = cosine_sequence(array, theta).sigma
    s, s2 = sig[1], sig[2]
    expr = (s - s2) * (1 + s) * f - (1 - s) * (a1 * s + 1 + s)
    m, n = spec.multiplicity(theta), array.n
    det = Fraction(m, n) ** 3 * a1 * (s - 1) * expr
    direct = Fraction(m, n) ** 3 * _det3(gram_matrix_scaled(array, sig, f))
    if not close(det, direct, tol=1e-9):
        raise InconsistentSpectrum(f"Gram determinant closed form {det} != direct {direct}")
    tight = is_zero(expr)
    # only the extremal eigenvalues can be tight, and exactly at the f bounds
    idx = spec.index(theta)
    lo, hi = tightness._f_bound(array, spec.thetad), tightness._f_bound(array, spec.theta1)
    if idx == 1:
        expected = close(f, hi)
    elif idx == array.d:
        expected = close(f, lo)
    else:
        expected = False
    if tight != expected:
        raise InconsistentSpectrum(f"tightness at theta={theta} disagrees with the f bounds")
    return TightEdge(theta, det, expr, tight, f)


@dataclass(frozen=True)
class RankResult:
    t: int
    dim_MH: int
    singular_values: tuple


def tightness_rank(g: Graph, array: IntersectionArray, x: int, y: int, spec: Optional[Spectrum] = None) -> RankResult:
    """t = 3d + 1 - dim M H with H spanned by x, y and the sum over D_1^1."""
    if array.a[1] == 0:
        raise A1Zero()
    spec = spec or spectrum(array)
    part = edge_partition(g, array, x, y)
    D = g.distances
    d = array.d
    w = np.zeros(g.n)
    w[list(part.cell(1, 1))] = 1.0
    vecs = []
    for i in range(d + 1):
        Ai = (D == i).astype(float)
        ex = np.zeros(g.n)
        ex[x] = 1
        ey = np.zeros(g.n)
        ey[y] = 1
        vecs += [Ai @ ex, Ai @ ey, Ai @ w]
    M = np.array(vecs).T
    norms = np.linalg.norm(M, axis=0)
    M = M / np.where(norms == 0, 1, norms)
    sv = np.linalg.svd(M, compute_uv=False)
    rank = int((sv > 1e-8 * sv.max()).sum())
    t = 3 * d + 1 - rank
    tight_count = sum(
        tight_edge_test(g, array, x, y, th, spec, part).is_tight for th in (spec.theta1, spec.thetad)
    )
    if t != tight_count:
        raise InconsistentSpectrum(f"rank gives t={t} but {tight_count} extremal eigenvalues are tight")
    return RankResult(t, rank, tuple(float(v) for v in sv))


# ----- 1-homogeneity --------------------------------------------------------------


def admissible_cells(array: IntersectionArray) -> list:
    """Pairs (i, j) with p^1_{ij} != 0."""
    d = array.d
    return [(i, j) for i in range(d + 1) for j in range(d + 1) if p1(array, i, j) != 0]


@dataclass
class HomogeneityCertificate:
    edge: tuple
    L: list
    count_matrix: dict  # (cell, cell) -> constant, where constant
    violations: list  # (z, cell, target, expected, actual)
    reduced_consistent: Optional[bool] = None

    @property
    def homogeneous(self) -> bool:
        return not self.violations

    def to_json(self):
        return {
            "edge": list(self.edge),
            "L_size": len(self.L),
            "homogeneous": self.homogeneous,
            "violations": [
                {"z": z, "cell": list(c), "target": list(t), "expected": e, "actual": a}
                for z, c, t, e, a in self.violations[:50]
            ],
            "violation_count": len(self.violations),
            "reduced_consistent": self.reduced_consistent,
        }


def check_one_homogeneous(g: Graph, array: IntersectionArray, edge, spec: Optional[Spectrum] = None) -> HomogeneityCertificate:
    x, y = edge
    part = edge_partition(g, array, x, y)
    L = admissible_cells(array)
    if array.a[1] != 0:
        want = 3 * array.d if array.a[array.d] else 3 * array.d - 1
        if len(L) != want:
            raise InconsistentSpectrum(f"|L| = {len(L)}, expected {want}")
    if sorted(part.cells) != sorted(L):
        raise NotDistanceRegular(f"cells {sorted(part.cells)} differ from admissible {L}")
    matrix, violations = {}, []
    for cell in L:
        for target in L:
            col = part.counts[list(part.cells[cell]), part.cell_index[target]]
            ref = int(col[0])
            matrix[(cell, target)] = ref
            for z, v in zip(part.cells[cell], col):
                if int(v) != ref:
                    violations.append((z, cell, target, ref, int(v)))
    cert = HomogeneityCertificate((x, y), L, matrix, violations)
    if not violations:
        cert.reduced_consistent = _reduced_prediction_matches(array, part, matrix)
    return cert


def _reduced_prediction_matches(array, part, matrix) -> bool:
    """Predict every row of the count matrix from the constants
    |Gamma(z) ∩ D_{i-1}^{i-1}|, |Gamma(z) ∩ D_{i+1}^{i+1}| via the
    bookkeeping rules and compare with the measured matrix."""
    for cell in part.cells:
        if cell in ((0, 1), (1, 0)):
            continue
        i, j = cell
        if i == j:
            gamma = matrix.get((cell, (i - 1, i - 1)), 0)
            delta = matrix.get((cell, (i + 1, i + 1)), 0)
        else:
            lo = min(i, j)
            gamma, delta = matrix.get((cell, (lo, lo)), 0), None
        predicted = _bookkeeping(array, cell, gamma, delta)
        for target in part.cells:
            if predicted.get(target, 0) != matrix[(cell, target)]:
                return False
    return True


def check_one_homogeneous_all(g: Graph, array: IntersectionArray, sample: Optional[int] = None, seed: int = 0):
    edges = g.edges()
    if sample is not None and sample < len(edges):
        rng = np.random.default_rng(seed)
        idx = sorted(rng.choice(len(edges), size=sample, replace=False))
        edges = [edges[i] for i in idx]
    return [check_one_homogeneous(g, array, e) for e in edges]


# ----- closed-form count formulas -------------------------------------------------


@dataclass
class FormulaCheck:
    formula: str
    i: int
    z: int
    expected: object
    actual: int

    @property
    def deviation(self) -> float:
        return deviation(self.expected, self.actual)


@dataclass
class CountFormulaReport:
    theta: object
    edge: tuple
    checks: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def max_deviation(self) -> float:
        return max((c.deviation for c in self.checks), default=0.0)

    @property
    def covered(self) -> list:
        return sorted({c.formula for c in self.checks})

    def to_json(self):
        return {
            "theta": to_json(self.theta),
            "edge": list(self.edge),
            "checks": len(self.checks),
            "max_deviation": self.max_deviation,
            "formulas": self.covered,
            "skipped": self.skipped,
        }


def verify_count_formulas(g: Graph, array: IntersectionArray, theta, edge, strict: bool = True,
                          spec: Optional[Spectrum] = None) -> CountFormulaReport:
    """Compare brute-force counts relative to an edge with their closed forms.

    The edge-level formulas need the edge to be tight with respect to theta;
    the cell-to-cell formulas need the whole graph to be tight.  Families
    whose hypotheses fail are listed in ``skipped``.
    """
    spec = spec or spectrum(array)
    x, y = edge
    part = edge_partition(g, array, x, y)
    d, a1 = array.d, array.a[1]
    sig = cosine_sequence(array, theta).sigma
    s = sig[1]
    D = g.distances
    D11 = list(part.cell(1, 1))
    report = CountFormulaReport(theta, (x, y))

    def toward_d11(z, dist):
        return int((D[z, D11] == dist).sum())

    def record(name, i, z, expected, actual):
        chk = FormulaCheck(name, i, z, expected, actual)
        report.checks.append(chk)
        if strict and not close(expected, actual):
            raise FormulaMismatch(name, i, z, expected, actual)

    edge_tight = tight_edge_test(g, array, x, y, theta, spec, part).is_tight
    if edge_tight:
        for i in range(1, d + 1):
            den = sig[i - 1] - sig[i]
            e_prev = a1 / (1 + s) * (s * sig[i - 1] - sig[i]) / den
            e_same = a1 / (1 + s) * (sig[i - 1] - s * sig[i]) / den
            for z in part.cell(i - 1, i) + part.cell(i, i - 1):
                record("edge-tight: Gamma_{i-1}(z) ∩ D11, z in D_{i-1}^i", i, z, e_prev, toward_d11(z, i - 1))
                record("edge-tight: Gamma_i(z) ∩ D11, z in D_{i-1}^i", i, z, e_same, toward_d11(z, i))
        for i in range(1, d):
            den = sig[i] - sig[i + 1]
            for z in part.cell(i, i):
                g_prev = toward_d11(z, i - 1)
                nxt = g_prev * (sig[i - 1] - sig[i]) / den + a1 * (1 - s) / (1 + s) * sig[i] / den
                same = (
                    -g_prev * (sig[i - 1] - sig[i + 1]) / den
                    + a1 * 2 * s / (1 + s)
                    - a1 * (1 - s) / (1 + s) * sig[i + 1] / den
                )
                record("edge-tight: Gamma_{i+1}(z) ∩ D11, z in D_i^i", i, z, nxt, toward_d11(z, i + 1))
                record("edge-tight: Gamma_i(z) ∩ D11, z in D_i^i", i, z, same, toward_d11(z, i))
        if array.a[d] != 0:
            term = a1 * (1 - s) / (1 + s) * sig[d] / (sig[d - 1] - sig[d])
            for z in part.cell(d, d):
                record("edge-tight: Gamma_{d-1}(z) ∩ D11, z in D_d^d", d, z, -term, toward_d11(z, d - 1))
                record("edge-tight: Gamma_d(z) ∩ D11, z in D_d^d", d, z, a1 + term, toward_d11(z, d))
        else:
            report.skipped.append("D_d^d formulas (a_d = 0, cell empty)")
    else:
        report.skipped.append("edge formulas (edge not tight for theta)")

    if tightness.classify(array, spec).label == tightness.TIGHT:
        s2 = sig[2]
        for i in range(1, d):
            for z in part.cell(i, i):
                e_prev = array.ci(i) * (s * s - s2) * (sig[i] - sig[i + 1]) / ((s - s2) * (s * sig[i] - sig[i + 1]))
                e_next = array.bi(i) * (s * s - s2) * (sig[i - 1] - sig[i]) / ((s - s2) * (sig[i - 1] - s * sig[i]))
                record("tight: Gamma_{i-1}(z) ∩ D11, z in D_i^i", i, z, e_prev, toward_d11(z, i - 1))
                record("tight: Gamma_{i+1}(z) ∩ D11, z in D_i^i", i, z, e_next, toward_d11(z, i + 1))
                down = (
                    array.ci(i) * (sig[i] - sig[i + 1]) * (s * sig[i - 1] - sig[i])
                    / ((sig[i - 1] - sig[i]) * (s * sig[i] - sig[i + 1]))
                )
                up = (
                    array.bi(i) * (sig[i - 1] - sig[i]) * (sig[i] - s * sig[i + 1])
                    / ((sig[i] - sig[i + 1]) * (sig[i - 1] - s * sig[i]))
                )
                record("tight: Gamma(z) ∩ D_{i-1}^{i-1}, z in D_i^i", i, z, down, part.count(z, (i - 1, i - 1)))
                record("tight: Gamma(z) ∩ D_{i+1}^{i+1}, z in D_i^i", i, z, up, part.count(z, (i + 1, i + 1)))
        for i in range(2, d + 1):
            val = (
                array.a[i - 1] * (1 - s) * (sig[i - 1] ** 2 - sig[i - 2] * sig[i])
                / ((sig[i - 1] - sig[i]) * (sig[i - 2] - s * sig[i - 1]))
            )
            for z in part.cell(i - 1, i) + part.cell(i, i - 1):
                record("tight: Gamma(z) ∩ D_{i-1}^{i-1}, z in D_{i-1}^i", i, z, val, part.count(z, (i - 1, i - 1)))
    else:
        report.skipped.append("cell-to-cell formulas (graph not tight)")
    return report


# ----- local graphs ---------------------------------------------------------------


def local_graph(g: Graph, x: int) -> Graph:
    return g.induced(g.adjacency[x])


def srg_parameters(g: Graph):
    """(nu, kappa, lambda, mu) by brute force, or NotStronglyRegular."""
    n = g.n
    degs = {len(a) for a in g.adjacency}
    if len(degs) != 1:
        raise NotStronglyRegular("not regular", witness=None)
    kappa = degs.pop()
    A = g.matrix
    common = A @ A
    lam = mu = None
    lam_w = mu_w = None
    for u in range(n):
        for v in range(u + 1, n):
            c = int(common[u, v])
            if A[u, v]:
                if lam is None:
                    lam, lam_w = c, (u, v)
                elif c != lam:
                    raise NotStronglyRegular(f"adjacent pairs {lam_w} and {(u, v)} differ", witness=(lam_w, (u, v)))
            else:
                if mu is None:
                    mu, mu_w = c, (u, v)
                elif c != mu:
                    raise NotStronglyRegular(f"non-adjacent pairs {mu_w} and {(u, v)} differ", witness=(mu_w, (u, v)))
    if mu is None:
        raise NotStronglyRegular("complete graph: mu undefined")
    return (n, kappa, lam if lam is not None else 0, mu)


@dataclass(frozen=True)
class LocalCheck:
    vertex: int
    params: tuple
    eigenvalues: tuple  # distinct local eigenvalues other than kappa, numerically
    matches_formula: Optional[bool]


def check_local_graph(g: Graph, x: int, array: Optional[IntersectionArray] = None,
                      spec: Optional[Spectrum] = None) -> LocalCheck:
    """Brute-force the local graph at x; when the host array is tight,
    compare against the formula-level parameters and b+, b-."""
    loc = local_graph(g, x)
    params = srg_parameters(loc)
    ev = np.linalg.eigvalsh(loc.matrix.astype(float))
    distinct = sorted({round(float(v), 8) for v in ev if abs(v - params[1]) > 1e-6}, reverse=True)
    match = None
    if array is not None and array.d >= 3:
        spec = spec or spectrum(array)
        if tightness.classify(array, spec).label == tightness.TIGHT:
            f = tightness.local_srg(array, spec)
            nu, kappa, lam, mu = params
            r, s = f.r, f.s
            match = (
                nu == f.nu and kappa == f.kappa and close(f.lam, lam) and close(f.mu, mu)
                # r, s are the roots of x^2 - (lam - mu) x - (kappa - mu)
                and close(r + s, lam - mu) and close(r * s, mu - kappa)
                and r == tightness.b_plus(array, spec) and s == tightness.b_minus(array, spec)
            )
            if not match:
                raise FormulaMismatch("local strongly regular parameters", 1, x, f.params(), params)
    return LocalCheck(x, params, tuple(distinct), match)


# ----- combined report ------------------------------------------------------------


def combinatorial_report(g: Graph, strict: bool = False, force: bool = False, homogeneous: bool = False,
                         formulas: bool = False, sample: Optional[int] = None, seed: int = 0) -> dict:
    """Run the graph-level pipeline and collect a JSON-ready report.

    ``ok`` is false when the graph is not distance-regular or when any
    requested check finds a discrepancy.
    """
    out = {"n": g.n, "m": g.m, "ok": True}
    try:
        array = verify_distance_regular(g, strict=strict, force=force)
    except NotDistanceRegular as exc:
        out.update(distance_regular=False, ok=False, error=str(exc), witness=_jsonable(exc.witness))
        return out
    out.update(distance_regular=True, array=str(array), diameter=array.d)
    edges = g.edges()
    if sample is not None and sample < len(edges):
        rng = np.random.default_rng(seed)
        edges = [edges[i] for i in sorted(rng.choice(len(edges), size=sample, replace=False))]
    out["edges_checked"] = len(edges)
    if array.d < 3 or array.a[1] == 0:
        out["notes"] = ["edge-level tightness needs diameter >= 3 and a_1 > 0"]
        return out
    spec = spectrum(array)
    cls = tightness.classify(array, spec)
    out["classification"] = cls.label
    lo, hi = tightness.f_bounds(array, spec)
    out["f_bounds"] = [to_json(lo), to_json(hi)]
    fvals, tight_counts = set(), {}
    for x, y in edges:
        part = edge_partition(g, array, x, y)
        f = compute_f(part).f
        fvals.add(f)
        t = sum(tight_edge_test(g, array, x, y, th, spec, part).is_tight for th in (spec.theta1, spec.thetad))
        tight_counts[t] = tight_counts.get(t, 0) + 1
    out["f_values"] = [to_json(v) for v in sorted(fvals)]
    out["tight_edge_counts"] = {str(t): c for t, c in sorted(tight_counts.items())}
    rank = tightness_rank(g, array, *edges[0], spec=spec)
    out["rank"] = {"edge": list(edges[0]), "t": rank.t, "dim_MH": rank.dim_MH}
    try:
        loc = check_local_graph(g, 0, array, spec)
        out["local_graph"] = {"vertex": 0, "params": list(loc.params), "eigenvalues": list(loc.eigenvalues),
                              "matches_formula": loc.matches_formula}
    except NotStronglyRegular as exc:
        out["local_graph"] = {"vertex": 0, "strongly_regular": False, "error": str(exc)}
    except FormulaMismatch as exc:
        out["local_graph"] = {"vertex": 0, "matches_formula": False, "error": str(exc)}
        out["ok"] = False
    if homogeneous:
        certs = [check_one_homogeneous(g, array, e, spec) for e in edges]
        bad = [c for c in certs if not c.homogeneous]
        out["homogeneity"] = {
            "edges": len(certs),
            "L_size": len(certs[0].L),
            "all_homogeneous": not bad,
            "violations": sum(len(c.violations) for c in certs),
            "first_failure": bad[0].to_json() if bad else None,
        }
        if bad and cls.label == tightness.TIGHT:
            out["ok"] = False
    if formulas:
        reps = []
        for th in (spec.theta1, spec.thetad):
            rep = verify_count_formulas(g, array, th, edges[0], strict=False, spec=spec)
            reps.append(rep.to_json())
            if rep.max_deviation > 1e-9:
                out["ok"] = False
        out["formulas"] = reps
    return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj
