from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
import sympy

from drgtight import graphs as G, tightness as T
from drgtight.core import IntersectionArray, spectrum
from drgtight.scalar import close
from drgtight.errors import (
    A1Zero,
    Disconnected,
    GraphTooLarge,
    LoopError,
    MultiEdgeError,
    NotAdjacent,
    NotDistanceRegular,
    NotStronglyRegular,
    ParamOutOfRange,
    ParseError,
    TrivialEigenvalue,
)

TIGHT_GRAPHS = {
    "johnson:6,3": "9,4,1;1,4,9",
    "johnson:8,4": "16,9,4,1;1,4,9,16",
    "halved_cube:8": "28,15,6,1;1,6,15,28",
    "icosahedron": "5,2,1;1,2,5",
}


@pytest.fixture(scope="module")
def built():
    out = {}
    for spec in list(TIGHT_GRAPHS) + ["hamming:3,3", "johnson:7,3"]:
        g = G.construct(spec)
        out[spec] = (g, G.verify_distance_regular(g))
    return out


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


# ----- constructors and distance-regularity -----------------------------------------


@pytest.mark.parametrize("spec", list(TIGHT_GRAPHS) + ["hamming:3,3", "hypercube:4", "halved_cube:6"])
def test_arrays_agree_with_networkx(spec):
    g = G.construct(spec)
    arr = G.verify_distance_regular(g, strict=True)
    b, c = nx.intersection_array(_nx(g))
    assert (list(arr.b), list(arr.c)) == (list(b), list(c))


def test_sizes(built):
    assert built["johnson:6,3"][0].n == 20
    assert built["johnson:8,4"][0].n == 70
    assert built["halved_cube:8"][0].n == 128
    assert built["icosahedron"][0].n == 12
    for spec, text in TIGHT_GRAPHS.items():
        assert str(built[spec][1]) == text


def test_icosahedron_isomorphic_to_networkx():
    assert nx.is_isomorphic(_nx(G.icosahedron()), nx.icosahedral_graph())


def test_deleted_edge_not_distance_regular():
    g = G.hypercube(4)
    edges = g.edges()[1:]
    h = G.Graph.from_edges(16, edges)
    with pytest.raises(NotDistanceRegular) as info:
        G.verify_distance_regular(h)
    assert info.value.witness is not None


def test_size_guard():
    n = G.MAX_VERTICES + 1
    g = G.Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    with pytest.raises(GraphTooLarge):
        G.verify_distance_regular(g)


def test_construct_errors():
    with pytest.raises(ParamOutOfRange):
        G.construct("petersen:1")
    with pytest.raises(ParamOutOfRange):
        G.construct("johnson:8")


# ----- edge-list I/O --------------------------------------------------------------


def test_roundtrip_bytes(tmp_path):
    g = G.construct("johnson:6,3")
    path = tmp_path / "j63.txt"
    G.export_graph(g, path)
    text = path.read_text()
    assert text.splitlines()[0] == "20 90"
    h = G.load_graph(path)
    assert h == g
    assert G.dumps(h) == text


@pytest.mark.parametrize(
    "text, exc",
    [
        ("3 2\n0 1\n1 x\n", ParseError),
        ("3 2\n0 0\n1 2\n", LoopError),
        ("3 3\n0 1\n0 1\n1 2\n", MultiEdgeError),
        ("4 2\n0 1\n2 3\n", Disconnected),
        ("3 3\n0 1\n1 2\n", ParseError),
    ],
)
def test_load_errors(text, exc):
    with pytest.raises(exc):
        G.loads(text)


def test_parse_error_line_number():
    with pytest.raises(ParseError) as info:
        G.loads("3 2\n0 1\n1 x\n")
    assert info.value.line == 3


# ----- edge partition and f --------------------------------------------------------


def test_not_adjacent(built):
    g, arr = built["johnson:8,4"]
    far = int(np.nonzero(g.distances[0] == 2)[0][0])
    with pytest.raises(NotAdjacent):
        G.edge_partition(g, arr, 0, far)


@pytest.mark.parametrize("spec, f", [("johnson:6,3", 2), ("johnson:8,4", 3), ("halved_cube:8", 5),
                                     ("icosahedron", 1), ("hamming:3,3", 0)])
def test_f_constant_on_edges(built, spec, f):
    g, arr = built[spec]
    values = {G.compute_f(G.edge_partition(g, arr, x, y)).f for x, y in g.edges()[:60]}
    assert values == {f}
    lo, hi = T.f_bounds(arr)
    if T.is_tight(arr):
        assert close(lo, f) and close(hi, f)


def test_compute_f_needs_triangles():
    g = G.hypercube(3)
    arr = G.verify_distance_regular(g)
    with pytest.raises(A1Zero):
        G.compute_f(G.edge_partition(g, arr, *g.edges()[0]))


def test_tight_edge_rejects_trivial_eigenvalue(built):
    g, arr = built["johnson:8,4"]
    with pytest.raises(TrivialEigenvalue):
        G.tight_edge_test(g, arr, *g.edges()[0], theta=16)


# ----- rank ---------------------------------------------------------------------


def _exact_rank(g, arr, x, y):
    part = G.edge_partition(g, arr, x, y)
    D = g.distances
    w = [1 if v in set(part.cell(1, 1)) else 0 for v in range(g.n)]
    cols = []
    for i in range(arr.d + 1):
        Ai = (D == i).astype(int)
        cols += [list(Ai[:, x]), list(Ai[:, y]), list(Ai @ np.array(w))]
    return sympy.Matrix(cols).T.rank()


@pytest.mark.parametrize("spec", ["johnson:6,3", "icosahedron"])
def test_rank_matches_exact_rank(built, spec):
    g, arr = built[spec]
    x, y = g.edges()[0]
    r = G.tightness_rank(g, arr, x, y)
    assert r.dim_MH == _exact_rank(g, arr, x, y) == 3 * arr.d - 1
    assert r.t == 2


def test_rank_hamming_control(built):
    g, arr = built["hamming:3,3"]
    x, y = g.edges()[0]
    r = G.tightness_rank(g, arr, x, y)
    # f = 0 equals the lower f bound, so exactly theta_d is tight on this edge
    assert (r.t, r.dim_MH) == (1, 9) and _exact_rank(g, arr, x, y) == 9


# ----- 1-homogeneity -----------------------------------------------------------------


def test_admissible_cells_size():
    assert len(G.admissible_cells(IntersectionArray.parse("16,9,4,1;1,4,9,16"))) == 11
    assert len(G.admissible_cells(IntersectionArray.parse("6,4,2;1,2,3"))) == 9


@pytest.mark.parametrize("spec", list(TIGHT_GRAPHS))
def test_tight_graphs_homogeneous(built, spec):
    g, arr = built[spec]
    for cert in G.check_one_homogeneous_all(g, arr, sample=20, seed=1):
        assert cert.homogeneous and len(cert.L) == 3 * arr.d - 1
        assert cert.reduced_consistent


def test_violations_detected_on_johnson_7_3(built):
    g, arr = built["johnson:7,3"]
    cert = G.check_one_homogeneous(g, arr, g.edges()[0])
    assert not cert.homogeneous and len(cert.L) == 3 * arr.d
    z, cell, target, expected, actual = cert.violations[0]
    assert expected != actual and z in G.edge_partition(g, arr, *g.edges()[0]).cell(*cell)


def test_hamming_control_has_3d_cells(built):
    g, arr = built["hamming:3,3"]
    cert = G.check_one_homogeneous(g, arr, g.edges()[0])
    assert len(cert.L) == 9


# ----- count formulas ---------------------------------------------------------------


def test_count_formulas_johnson_8_4(built):
    g, arr = built["johnson:8,4"]
    for theta in (8, -4):
        rep = G.verify_count_formulas(g, arr, Fraction(theta), g.edges()[0])
        assert rep.max_deviation == 0 and len(rep.covered) == 9


def test_count_formulas_icosahedron(built):
    g, arr = built["icosahedron"]
    spec = spectrum(arr)
    for theta in (spec.theta1, spec.thetad):
        rep = G.verify_count_formulas(g, arr, theta, g.edges()[0])
        assert rep.max_deviation < 1e-9


def test_last_cell_formulas_on_hamming_control(built):
    # a_d != 0 here, so the D_d^d formulas are exercised; the edge is tight for theta_d only
    g, arr = built["hamming:3,3"]
    rep = G.verify_count_formulas(g, arr, Fraction(-3), g.edges()[0])
    assert any("D_d^d" in name for name in rep.covered)
    assert rep.max_deviation == 0
    assert "cell-to-cell formulas (graph not tight)" in rep.skipped
    rep = G.verify_count_formulas(g, arr, Fraction(3), g.edges()[0])
    assert not rep.checks


# ----- local graphs -----------------------------------------------------------------


@pytest.mark.parametrize("spec, params", [("johnson:6,3", (9, 4, 1, 2)), ("johnson:8,4", (16, 6, 2, 2)),
                                          ("halved_cube:8", (28, 12, 6, 4)), ("icosahedron", (5, 2, 0, 1))])
def test_local_graphs(built, spec, params):
    g, arr = built[spec]
    chk = G.check_local_graph(g, 0, arr)
    assert chk.params == params and chk.matches_formula


def test_local_graph_of_j63_is_lattice(built):
    g, _ = built["johnson:6,3"]
    loc = G.local_graph(g, 0)
    lattice = nx.cartesian_product(nx.complete_graph(3), nx.complete_graph(3))
    assert nx.is_isomorphic(_nx(loc), lattice)


def test_srg_parameters_errors():
    with pytest.raises(NotStronglyRegular):
        G.srg_parameters(G.Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]))
    with pytest.raises(NotStronglyRegular):
        G.srg_parameters(G.Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]))


def test_combinatorial_report(built):
    rep = G.combinatorial_report(built["johnson:6,3"][0], homogeneous=True, formulas=True)
    assert rep["ok"] and rep["f_values"] == ["2"] and rep["rank"]["t"] == 2
    assert rep["homogeneity"]["all_homogeneous"]
    bad = G.Graph.from_edges(16, G.hypercube(4).edges()[1:])
    rep = G.combinatorial_report(bad)
    assert not rep["ok"] and not rep["distance_regular"]
