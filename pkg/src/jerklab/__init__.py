"""jerklab: a deterministic quadratic-jerk chaos simulator and a
reproducibility-analysis pipeline for time-series traces."""

from .align import CommonGrid, build_common_grid, resample_linear
from .core import (
    CHAOTIC_A_LOWER,
    CHAOTIC_A_UPPER,
    DEFAULT_A,
    DEFAULT_INITIAL_STATE,
    DEFAULT_TIME_SCALE_S,
    JerkParams,
    Sign,
    SystemState,
    circuit_time_scale,
    in_chaotic_range,
    jerk_rhs,
)
from .errors import (
    DataError,
    DegenerateDataError,
    DegenerateSeparationError,
    ExtrapolationError,
    InsufficientDataError,
    IntegrationOverflowError,
    JerkLabError,
    NoOverlapError,
    ParseError,
    ValidationError,
)
from .ingest import (
    CsvOptions,
    format_float,
    load_trace,
    parse_spice_export,
    parse_trace_csv,
    sniff_format,
    write_series_csv,
)
from .integrate import (
    IntegratorConfig,
    Method,
    SimulationResult,
    euler_step,
    rk4_step,
    simulate,
)
from .metrics import (
    CandidateScore,
    ComparisonReport,
    HorizonResult,
    MeanFrom,
    WindowedNrmse,
    build_comparison,
    compensated_sum,
    cumulative_nrmse,
    divergence_rate,
    nrmse,
    prediction_horizon,
    select_reference,
)
from .series import SeriesMeta, TimeSeries, UniformSeries

__version__ = "0.1.0"

__all__ = [
    "CHAOTIC_A_LOWER",
    "CHAOTIC_A_UPPER",
    "CandidateScore",
    "CommonGrid",
    "ComparisonReport",
    "CsvOptions",
    "DEFAULT_A",
    "DEFAULT_INITIAL_STATE",
    "DEFAULT_TIME_SCALE_S",
    "DataError",
    "DegenerateDataError",
    "DegenerateSeparationError",
    "ExtrapolationError",
    "HorizonResult",
    "InsufficientDataError",
    "IntegrationOverflowError",
    "IntegratorConfig",
    "JerkLabError",
    "JerkParams",
    "MeanFrom",
    "Method",
    "NoOverlapError",
    "ParseError",
    "SeriesMeta",
    "Sign",
    "SimulationResult",
    "SystemState",
    "TimeSeries",
    "UniformSeries",
    "ValidationError",
    "WindowedNrmse",
    "build_common_grid",
    "build_comparison",
    "circuit_time_scale",
    "compensated_sum",
    "cumulative_nrmse",
    "divergence_rate",
    "euler_step",
    "format_float",
    "in_chaotic_range",
    "jerk_rhs",
    "load_trace",
    "nrmse",
    "parse_spice_export",
    "parse_trace_csv",
    "prediction_horizon",
    "resample_linear",
    "rk4_step",
    "select_reference",
    "simulate",
    "sniff_format",
    "write_series_csv",
    "__version__",
]
