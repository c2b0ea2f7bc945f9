"""Hyperbolic growth analysis for historical time series.

Identifies first-order hyperbolic growth S(t) = 1/(a - k*t) by linear
regression on reciprocal values, discovers piecewise-hyperbolic structure,
tests the stagnation-to-growth takeoff hypothesis, and analyses ratios of
hyperbolic trajectories (income per capita).
"""

__version__ = "0.1.0"

from .errors import (
    DegenerateModelError,
    DomainError,
    FitError,
    HypergrowthError,
    IngestError,
    SegmentationError,
    SeriesError,
)
from .fitting import (
    FitDiagnostics,
    FitReport,
    ModelComparison,
    compare_models,
    fit_exponential,
    fit_hyperbolic,
)
from .models import (
    ExponentialModel,
    HyperbolicModel,
    SyntheticSpec,
    exponential_value,
    generate,
    growth_rate,
    hyperbolic_value,
    milestone_time,
    reciprocal_residual_magnification,
    singularity_time,
    speed_ratio,
)
from .percapita import (
    MonotonicityVerdict,
    RatioModel,
    build_ratio,
    ratio_growth_rate,
    ratio_monotonicity,
    ratio_value,
)
from .segmentation import (
    Departure,
    Segment,
    SegmentationResult,
    TakeoffVerdict,
    TransitionEvent,
    TransitionKind,
    classify_transition,
    default_penalty,
    detect_departure,
    detect_takeoff,
    proximity,
    segment,
)
from .series import (
    TimePoint,
    TimeSeries,
    Unit,
    ingest_csv,
    reciprocal_series,
    to_csv_text,
    window,
    write_csv,
)

__all__ = [
    "__version__",
    "DegenerateModelError",
    "DomainError",
    "FitError",
    "HypergrowthError",
    "IngestError",
    "SegmentationError",
    "SeriesError",
    "FitDiagnostics",
    "FitReport",
    "ModelComparison",
    "compare_models",
    "fit_exponential",
    "fit_hyperbolic",
    "ExponentialModel",
    "HyperbolicModel",
    "SyntheticSpec",
    "exponential_value",
    "generate",
    "growth_rate",
    "hyperbolic_value",
    "milestone_time",
    "reciprocal_residual_magnification",
    "singularity_time",
    "speed_ratio",
    "MonotonicityVerdict",
    "RatioModel",
    "build_ratio",
    "ratio_growth_rate",
    "ratio_monotonicity",
    "ratio_value",
    "Departure",
    "Segment",
    "SegmentationResult",
    "TakeoffVerdict",
    "TransitionEvent",
    "TransitionKind",
    "classify_transition",
    "default_penalty",
    "detect_departure",
    "detect_takeoff",
    "proximity",
    "segment",
    "TimePoint",
    "TimeSeries",
    "Unit",
    "ingest_csv",
    "reciprocal_series",
    "to_csv_text",
    "window",
    "write_csv",
]
