"""Tightness of distance-regular graphs: spectra of intersection arrays, the
Fundamental Bound, the cosine-sequence parametrization of tight arrays and
combinatorial checks on concrete graphs."""

from .core import (
    CosineSequence,
    IntersectionArray,
    Spectrum,
    bipartite_test,
    cosine_sequence,
    derive_counts,
    p1,
    spectrum,
)
from .errors import DRGError
from .scalar import Approx
from .tightness import (
    TightnessReport,
    analyze,
    at4_label,
    auxiliary_parameter,
    classify,
    epsilon,
    f_bounds,
    feasibility,
    fundamental_bound,
    is_tight,
    local_srg,
    parametrize,
    rho_from_sigma,
    two_eigenvalue_parametrize,
)

__version__ = "0.1.0"

__all__ = [
    "Approx",
    "CosineSequence",
    "DRGError",
    "IntersectionArray",
    "Spectrum",
    "TightnessReport",
    "analyze",
    "at4_label",
    "auxiliary_parameter",
    "bipartite_test",
    "classify",
    "cosine_sequence",
    "derive_counts",
    "epsilon",
    "f_bounds",
    "feasibility",
    "fundamental_bound",
    "is_tight",
    "local_srg",
    "p1",
    "parametrize",
    "rho_from_sigma",
    "spectrum",
    "two_eigenvalue_parametrize",
]
