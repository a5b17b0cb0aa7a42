"""Exact LULU smoothing operators on piecewise-linear functions and finite
sequences: envelopes, the L/U semigroup, variation analysis, and verification
of the operator laws."""

from .core import (
    DiscreteSignal,
    Domain,
    OutsideDomainError,
    PiecewiseLinearFunction,
    Tolerance,
    jump_tolerant_distance,
    plf_evaluate,
    plf_from_samples,
    plf_normalize,
    plf_sup_distance,
    sample,
    violation_above,
)
from .envelopes import (
    lower_envelope,
    lsc_regularization,
    upper_envelope,
    usc_regularization,
    windowed_max,
    windowed_min,
)
from .laws import LAW_NAMES, LawReport, run_laws
from .semigroup import (
    CanonicalOperator,
    OperatorExpr,
    apply_L,
    apply_L_discrete,
    apply_U,
    apply_U_discrete,
    apply_canonical,
    apply_pipeline,
    canonicalize,
    semigroup_compare,
)
from .variation import (
    SamplingBridgeReport,
    TVDecompositionReport,
    WitnessInterval,
    check_trend_preservation,
    is_locally_delta_monotone,
    is_monotone_on,
    is_n_monotone,
    monotone_runs,
    total_variation_plf,
    total_variation_seq,
    tv_decomposition,
    verify_sampling_bridge,
)

__version__ = "0.1.0"

__all__ = [
    "Domain",
    "Tolerance",
    "PiecewiseLinearFunction",
    "DiscreteSignal",
    "OutsideDomainError",
    "plf_evaluate",
    "plf_normalize",
    "plf_sup_distance",
    "plf_from_samples",
    "sample",
    "violation_above",
    "jump_tolerant_distance",
    "lower_envelope",
    "upper_envelope",
    "lsc_regularization",
    "usc_regularization",
    "windowed_min",
    "windowed_max",
    "OperatorExpr",
    "CanonicalOperator",
    "apply_L",
    "apply_U",
    "apply_L_discrete",
    "apply_U_discrete",
    "apply_pipeline",
    "apply_canonical",
    "canonicalize",
    "semigroup_compare",
    "TVDecompositionReport",
    "WitnessInterval",
    "SamplingBridgeReport",
    "total_variation_plf",
    "total_variation_seq",
    "is_locally_delta_monotone",
    "is_n_monotone",
    "is_monotone_on",
    "monotone_runs",
    "check_trend_preservation",
    "tv_decomposition",
    "verify_sampling_bridge",
    "run_laws",
    "LawReport",
    "LAW_NAMES",
]
