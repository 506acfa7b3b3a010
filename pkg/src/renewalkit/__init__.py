"""Renewal waiting-time analytics for event-driven price series.

Pipeline: raw ticks -> first-exit rate filter -> inter-update durations ->
Weibull fit -> analytic waiting-time statistics, cross-checked by a seeded
Monte Carlo oracle.
"""

from .distributions import (
    DurationLaw,
    Empirical,
    EmpiricalObservation,
    Exponential,
    GammaDist,
    ObservationLaw,
    PowerWindow,
    TruncatedExponential,
    UniformImproper,
    Weibull,
)
from .errors import (
    CrossCheckError,
    FitError,
    HeavyTailWarning,
    QuadratureError,
    RenewalKitError,
    SamplingError,
    TickDataError,
    ValidationError,
)
from .estimators import FirstExitFilter, WeibullMLE
from .fitting import (
    FitResult,
    GoodnessOfFit,
    empirical_waiting_stats_from_durations,
    fit_weibull,
    goodness_of_fit,
    sample_raw_moment,
)
from .quadrature import (
    QuadratureSpec,
    gamma_fn,
    integrate_box,
    integrate_semi_infinite,
)
from .ratefilter import (
    FilteredSeries,
    TickSeries,
    durations_of,
    first_exit_filter,
    ingest_csv,
    synth_ticks,
)
from .simulate import (
    RenewalSample,
    empirical_waiting_stats,
    ks_distance,
    sample_waiting_general,
    sample_waiting_uniform,
)
from .waiting import (
    GeneralWaiting,
    WaitingTimeAnalysis,
    analyze_uniform,
    delta_n,
    inspection_gap,
    mean_waiting_uniform,
    paradox_sweep,
    std_waiting_uniform,
    waiting_cdf_uniform,
    waiting_moments_general,
    waiting_pdf_general,
    waiting_pdf_uniform,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # laws
    "DurationLaw",
    "Weibull",
    "Exponential",
    "GammaDist",
    "Empirical",
    "ObservationLaw",
    "UniformImproper",
    "TruncatedExponential",
    "PowerWindow",
    "EmpiricalObservation",
    # waiting-time analytics
    "WaitingTimeAnalysis",
    "waiting_pdf_uniform",
    "waiting_cdf_uniform",
    "waiting_pdf_general",
    "waiting_moments_general",
    "mean_waiting_uniform",
    "std_waiting_uniform",
    "analyze_uniform",
    "delta_n",
    "GeneralWaiting",
    "inspection_gap",
    "paradox_sweep",
    # Monte Carlo oracle
    "RenewalSample",
    "sample_waiting_uniform",
    "sample_waiting_general",
    "empirical_waiting_stats",
    "ks_distance",
    # tick filtering
    "TickSeries",
    "FilteredSeries",
    "first_exit_filter",
    "durations_of",
    "synth_ticks",
    "ingest_csv",
    # fitting
    "FitResult",
    "GoodnessOfFit",
    "fit_weibull",
    "goodness_of_fit",
    "sample_raw_moment",
    "empirical_waiting_stats_from_durations",
    # estimator API
    "FirstExitFilter",
    "WeibullMLE",
    # numerics
    "QuadratureSpec",
    "gamma_fn",
    "integrate_semi_infinite",
    "integrate_box",
    # errors
    "RenewalKitError",
    "ValidationError",
    "TickDataError",
    "QuadratureError",
    "CrossCheckError",
    "FitError",
    "SamplingError",
    "HeavyTailWarning",
]
