"""Causal order, spectral distances, and Lorentzian distance functionals for
a 2D Minkowski space-time coupled to a two-level internal space."""

from .clifford import (
    CliffordBasis,
    causal_symbol,
    ensure_hermitian,
    hermitian_eigenvalues,
    is_nsd,
    standard_basis,
    steep_symbol,
)
from .errors import (
    GradientMismatch,
    GridTooSmall,
    NonCausalSegment,
    NotCausallyRelated,
    NotHermitian,
    NotUnitary,
    PoleState,
    SceneError,
    UnknownState,
    ZeroVector,
)
from .finite_geometry import (
    DistanceResult,
    FiniteDirac,
    InternalState,
    OptimizerOptions,
    commutator_norm,
    divergence_witness,
    is_pole,
    latitude,
    longitude,
    make_state,
    parallel_distance_closed_form,
    spectral_distance,
    spectral_distance_general,
    state_eval,
    state_on_parallel,
    states_close,
    unitary_conjugate,
)
from .product_causality import (
    CausalElement,
    CausalVerdict,
    ElementDictionary,
    LongitudeArc,
    NotRelatedReason,
    ProductCurve,
    ProductState,
    SearchOptions,
    causally_related,
    curve_oracle,
    default_dictionary,
    minimal_angle_gap,
    product_symbol,
    reachable_longitudes,
    separating_element_search,
    speed_bound,
)
from .scene import Scene, default_scene, load_scene, save_scene
from .spacetime import (
    Curve,
    Event,
    Grid,
    ScalarField,
    affine_field,
    boost_field,
    causally_precedes,
    default_boost_grid,
    is_causal_function,
    is_steep_function,
    lorentz_distance_functional,
    lorentzian_distance,
    max_proper_time,
    proper_time,
)

__version__ = "0.1.0"

__all__ = [
    "CausalElement",
    "CausalVerdict",
    "CliffordBasis",
    "Curve",
    "DistanceResult",
    "ElementDictionary",
    "Event",
    "FiniteDirac",
    "GradientMismatch",
    "Grid",
    "GridTooSmall",
    "InternalState",
    "LongitudeArc",
    "NonCausalSegment",
    "NotCausallyRelated",
    "NotHermitian",
    "NotRelatedReason",
    "NotUnitary",
    "OptimizerOptions",
    "PoleState",
    "ProductCurve",
    "ProductState",
    "ScalarField",
    "Scene",
    "SceneError",
    "SearchOptions",
    "UnknownState",
    "ZeroVector",
    "affine_field",
    "boost_field",
    "causal_symbol",
    "causally_precedes",
    "causally_related",
    "commutator_norm",
    "curve_oracle",
    "default_boost_grid",
    "default_dictionary",
    "default_scene",
    "divergence_witness",
    "ensure_hermitian",
    "hermitian_eigenvalues",
    "is_causal_function",
    "is_nsd",
    "is_pole",
    "is_steep_function",
    "latitude",
    "load_scene",
    "longitude",
    "lorentz_distance_functional",
    "lorentzian_distance",
    "make_state",
    "max_proper_time",
    "minimal_angle_gap",
    "parallel_distance_closed_form",
    "product_symbol",
    "proper_time",
    "reachable_longitudes",
    "save_scene",
    "separating_element_search",
    "spectral_distance",
    "spectral_distance_general",
    "speed_bound",
    "standard_basis",
    "state_eval",
    "state_on_parallel",
    "states_close",
    "steep_symbol",
    "unitary_conjugate",
]
