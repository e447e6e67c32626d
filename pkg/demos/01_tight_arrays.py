"""Array-level tour: spectra, the Fundamental Bound and rebuilding an array
from its cosines.  Run with ``python3 demos/01_tight_arrays.py``."""

from drgtight import tightness
from drgtight.core import IntersectionArray, cosine_sequence, spectrum

# %% J(8,4) has rational eigenvalues, so everything below is exact
j84 = IntersectionArray.parse("16,9,4,1;1,4,9,16")
spec = spectrum(j84)
print("J(8,4) eigenvalues:", [str(t) for t in spec.eigenvalues])
print("multiplicities:    ", spec.multiplicities)

fb = tightness.fundamental_bound(j84)
print("FB lhs, rhs, slack:", fb.lhs, fb.rhs, fb.slack)
print("classification:    ", tightness.classify(j84))

# %% H(3,3) is distance-regular but not tight; the slack measures by how much
h33 = IntersectionArray.parse("6,4,2;1,2,3")
print("\nH(3,3) slack:", tightness.fundamental_bound(h33).slack, tightness.classify(h33))

# %% cosines of theta_1 plus epsilon are enough to get the array back
sigma = cosine_sequence(j84, spec.theta1)
eps = tightness.epsilon(j84, spec)
p = tightness.parametrize(sigma, eps)
print("\nsigma:", [str(s) for s in sigma.sigma], " epsilon:", eps)
print("rebuilt:", p.array, " h =", p.h, " g =", p.g)

# %% the icosahedron has theta = +-sqrt(5); surds keep the round trip exact
ico = IntersectionArray.parse("5,2,1;1,2,5")
t1, td = tightness.exact_extremal_pair(ico)
print("\nicosahedron extremal pair:", t1, td)
print("enclosure of theta_1:      ", spectrum(ico).theta1)
p = tightness.parametrize(cosine_sequence(ico, t1), tightness.auxiliary_parameter(5, t1, td))
print("rebuilt:", p.array, " integral:", p.integral, " h =", p.h)

# %% the local graph of a tight graph is strongly regular
loc = tightness.local_srg(ico)
print("local SRG (nu, kappa, lambda, mu):", loc.nu, loc.kappa, loc.lam, loc.mu, " r, s:", loc.r, loc.s)
