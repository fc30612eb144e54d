"""Exact-integer computation of geometric bases for equivariant K-theory of
nilpotent cones, and associated cycles of virtual modules, for complex
reductive groups given by Cartan type."""

from .assocvar import (
    AssociatedCycle,
    BoundTooSmallError,
    InternalConsistencyError,
    VirtualModule,
    associated_cycle,
    express_in_geometric_basis,
    module_to_kclass,
)
from .ktheory import (
    HnfExtraction,
    IntMatrix,
    KClass,
    SubsetCapExceededError,
    gamma_class,
    hnf_basis_extract,
    kclass_add,
    kclass_from_terms,
    kclass_scale,
    pushforward,
    skyscraper_class,
    std_to_class,
)
from .nilpotent import (
    ClosurePoset,
    GradingData,
    NilpotentOrbit,
    OrbitTableUnavailableError,
    classify_orbits,
    closure_poset,
    grading_data,
)
from .orbitalg import (
    GeometricBasis,
    GeometricBasisVector,
    InconsistentBoundError,
    full_basis,
    norm_constant,
    orbital_basis,
    spanning_set,
)
from .repcalc import (
    MultiplicityVector,
    restrict_gamma_class,
    restrict_kclass,
    weight_multiplicity,
    weyl_dim,
)
from .rootdata import (
    RootDatum,
    UnknownTypeError,
    Weight,
    build_root_datum,
    dominant_conjugate,
    enumerate_dominant,
    enumerate_levi_dominant,
    is_dominant,
    simple_reflection,
    subset_root_sum,
    weight_add,
    weight_form,
    weight_neg,
    weight_norm_sq,
    weight_sub,
)

__version__ = "0.1.0"

__all__ = [
    "AssociatedCycle",
    "BoundTooSmallError",
    "ClosurePoset",
    "GeometricBasis",
    "GeometricBasisVector",
    "GradingData",
    "HnfExtraction",
    "InconsistentBoundError",
    "IntMatrix",
    "InternalConsistencyError",
    "KClass",
    "MultiplicityVector",
    "NilpotentOrbit",
    "OrbitTableUnavailableError",
    "RootDatum",
    "SubsetCapExceededError",
    "UnknownTypeError",
    "VirtualModule",
    "Weight",
    "associated_cycle",
    "build_root_datum",
    "classify_orbits",
    "closure_poset",
    "dominant_conjugate",
    "enumerate_dominant",
    "enumerate_levi_dominant",
    "express_in_geometric_basis",
    "full_basis",
    "gamma_class",
    "grading_data",
    "hnf_basis_extract",
    "is_dominant",
    "kclass_add",
    "kclass_from_terms",
    "kclass_scale",
    "module_to_kclass",
    "norm_constant",
    "orbital_basis",
    "pushforward",
    "restrict_gamma_class",
    "restrict_kclass",
    "simple_reflection",
    "skyscraper_class",
    "spanning_set",
    "std_to_class",
    "subset_root_sum",
    "weight_add",
    "weight_form",
    "weight_multiplicity",
    "weight_neg",
    "weight_norm_sq",
    "weight_sub",
    "weyl_dim",
]
