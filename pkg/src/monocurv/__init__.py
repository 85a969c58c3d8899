"""monocurv: scalar curvature of monotone Riemannian metrics on quantum states.

Monotone statistical metrics on density-matrix manifolds correspond to
normalized symmetric operator monotone functions (equivalently, to
mirror-symmetric probability measures on [0, 1]).  This package evaluates
their scalar curvature -- by closed form, by eigenvalue sums and by
explicit Riemannian geometry on the qubit manifold, and by the spectral
formula for n-level states -- and classifies the curvature extremum at
the maximally mixed state, including the two-pair measure family whose
curvature has a minimum there and is therefore non-monotone under
majorization.
"""

from .extremum import (
    BoundaryCurves,
    Classification,
    DecidedBy,
    FamilyParams,
    SeriesExpansion,
    Verdict,
    boundary_curves,
    classical_fisher_distance,
    classify_origin,
    family_function,
    family_measure,
    geodesic_ball_volume,
    origin_curvature_from_measure,
    series_coefficients,
    t_double_pair,
    t_double_pair_uv,
    t_functional,
    t_single_pair,
)
from .monotone import (
    CATALOG_NAMES,
    DEFAULT_CATALOG,
    MomentSummary,
    MonotoneFunction,
    SymmetricMeasure,
    TaylorJet,
    catalog,
    default_catalog,
    derivatives_at_one,
    dump_measure,
    eval_jet,
    function_from_measure,
    load_measure,
    pushforward_moments,
    symmetry_residual,
)
from .nlevel import (
    MonotonicityViolation,
    Spectrum,
    curvature_second_difference,
    h_value,
    is_more_mixed,
    monotonicity_scan,
    qubit_grid_pairs,
    scalar_curvature,
)
from .qubit import (
    ChristoffelSymbols,
    CurvatureSample,
    MetricComponents,
    QubitState,
    christoffel,
    curvature_closed_form,
    curvature_geometric,
    curvature_profile,
    curvature_series,
    curvature_via_sums,
    five_summands,
    mc_function,
    metric_eval,
    metric_tensor,
    ricci_components,
    riemann_components,
    summand_series,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryCurves",
    "CATALOG_NAMES",
    "ChristoffelSymbols",
    "Classification",
    "CurvatureSample",
    "DEFAULT_CATALOG",
    "DecidedBy",
    "FamilyParams",
    "MetricComponents",
    "MomentSummary",
    "MonotoneFunction",
    "MonotonicityViolation",
    "QubitState",
    "SeriesExpansion",
    "Spectrum",
    "SymmetricMeasure",
    "TaylorJet",
    "Verdict",
    "boundary_curves",
    "catalog",
    "christoffel",
    "classical_fisher_distance",
    "classify_origin",
    "curvature_closed_form",
    "curvature_geometric",
    "curvature_profile",
    "curvature_second_difference",
    "curvature_series",
    "curvature_via_sums",
    "default_catalog",
    "derivatives_at_one",
    "dump_measure",
    "eval_jet",
    "family_function",
    "family_measure",
    "five_summands",
    "function_from_measure",
    "geodesic_ball_volume",
    "h_value",
    "is_more_mixed",
    "load_measure",
    "mc_function",
    "metric_eval",
    "metric_tensor",
    "monotonicity_scan",
    "origin_curvature_from_measure",
    "pushforward_moments",
    "qubit_grid_pairs",
    "ricci_components",
    "riemann_components",
    "scalar_curvature",
    "series_coefficients",
    "summand_series",
    "symmetry_residual",
    "t_double_pair",
    "t_double_pair_uv",
    "t_functional",
    "t_single_pair",
]
