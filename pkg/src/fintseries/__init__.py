"""Benchmark process generators and time-series diagnostics for financial data."""

__version__ = "0.1.0"

from .apen import ApEnParams, apen, chebyshev_distance, phi_m, rolling_apen
from .errors import (
    DataError,
    DegenerateSeriesError,
    DegenerateTailError,
    DegenerateVariableError,
    DomainError,
    InsufficientDataError,
    InsufficientScalesError,
    NonstationaryParametersError,
    NumericError,
    ParseError,
    ShapeError,
    ToolkitError,
    ValidationError,
)
from .generators import (
    BENCHMARK_GARCH,
    CmlParams,
    GarchParams,
    SeriesPanel,
    gen_cml,
    gen_garch11,
    gen_gaussian,
    gen_random_walk,
)
from .rmt import (
    CorrelationMatrix,
    CorrelationSpectrum,
    RmtBounds,
    RmtComparison,
    correlation_matrix,
    eigen_spectrum,
    market_mode,
    mp_density,
    spectrum_vs_rmt,
)
from .scaling import (
    BoxSchedule,
    ScalingResult,
    classify_exponent,
    dfa_exponent,
    dfa_fluctuation,
    hurst_exponent,
    power_spectrum,
    rs_statistic,
    spectrum_exponent,
    two_segment_fit,
)
from .series import (
    PriceSeries,
    ReturnSeries,
    Series,
    aggregate_returns,
    excess_kurtosis,
    log_returns,
    zscore,
)
from .stylized import (
    AcfResult,
    TailFit,
    acf,
    fit_acf_power_law,
    tail_exponent,
    volatility_clustering_exponent,
)
