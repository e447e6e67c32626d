"""Graph-level checks on J(6,3): distance-regularity, f per edge,
1-homogeneity, the local graph and the closed-form counts."""

from collections import Counter

from drgtight import graphs, tightness
from drgtight.core import spectrum

# %% build the graph and read its intersection array off the BFS layers
g = graphs.johnson(6, 3)
arr = graphs.verify_distance_regular(g)
print("J(6,3):", g.n, "vertices,", g.m, "edges, array", arr)

# %% f(x, y) counts pairs in D_1^1 at distance 2; tight means it is constant
fs = Counter(graphs.compute_f(graphs.edge_partition(g, arr, x, y)).f for x, y in g.edges())
print("f over all edges:", dict(fs), " bounds from the spectrum:", tightness.f_bounds(arr))

# %% every edge has the same count pattern between cells of the partition
certs = graphs.check_one_homogeneous_all(g, arr)
print("edges checked:", len(certs), " violations:", sum(len(c.violations) for c in certs), " |L| =", len(certs[0].L))

r = graphs.tightness_rank(g, arr, *g.edges()[0])
print("rank: t =", r.t, " dim MH =", r.dim_MH)

# %% local graph: brute force against the formula
chk = graphs.check_local_graph(g, 0, arr)
print("local graph parameters:", chk.params, " matches formula:", chk.matches_formula)

# %% closed-form counts relative to an edge, for both extremal eigenvalues
spec = spectrum(arr)
for theta in (spec.theta1, spec.thetad):
    rep = graphs.verify_count_formulas(g, arr, theta, g.edges()[0])
    print(f"theta = {theta}: {len(rep.checks)} counts, max deviation {rep.max_deviation}")

# %% a graph that is distance-regular but not tight, for contrast
j73 = graphs.johnson(7, 3)
arr73 = graphs.verify_distance_regular(j73)
cert = graphs.check_one_homogeneous(j73, arr73, j73.edges()[0])
print("\nJ(7,3):", arr73, tightness.classify(arr73), " homogeneity violations on one edge:", len(cert.violations))
