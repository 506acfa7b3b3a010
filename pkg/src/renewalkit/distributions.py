"""Duration laws and observation-offset laws.

Duration laws model the interval tau between consecutive updates of the
filtered rate.  The Weibull law uses the stretched-exponential
parameterization

    pdf(tau) = (m / a) * tau**(m - 1) * exp(-tau**m / a)

where ``a`` is *not* the conventional Weibull scale lambda: they relate via
``a = lambda**m``.  All closed-form waiting-time results downstream assume
this parameterization, so it is kept throughout and a conversion property
(:attr:`Weibull.conventional_scale`) is provided.

Observation laws model the offset t of a random inspection inside the
current duration.  The improper uniform law (constant weight 1, not
normalizable) is a distinguished variant rather than a limit of proper
densities: it only ever appears inside ratio formulas where normalization
cancels.  Proper laws additionally expose the pieces needed by the
correction-term integrals: the a.e. derivative of the density, its interior
jump discontinuities, and the density at zero offset.

All laws are immutable; sampling takes an explicit seed (or Generator), so
no generator state is shared between calls.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc, gammaincc, gammaln

from .errors import ValidationError
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_semi_infinite
from .validation import (
    as_nonnegative_times,
    as_positive_array,
    check_count,
    check_positive,
)

__all__ = [
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
]


def _rng_for(seed, stream: int | None = None) -> np.random.Generator:
    """Deterministic generator for a (seed, stream) pair."""
    if isinstance(seed, np.random.Generator):
        return seed
    if stream is None:
        return np.random.default_rng(int(seed))
    return np.random.default_rng([int(seed), int(stream)])


# ---------------------------------------------------------------------------
# Duration laws
# ---------------------------------------------------------------------------


class DurationLaw(ABC):
    """Law of the inter-update duration tau (tau > 0)."""

    @abstractmethod
    def pdf(self, tau):
        """Probability density at tau (tau >= 0)."""

    @abstractmethod
    def survival(self, s):
        """P(tau > s) for s >= 0; equals 1 at s = 0."""

    @abstractmethod
    def raw_moment(self, n: int) -> float:
        """E[tau**n] for integer n >= 1."""

    @abstractmethod
    def _draw(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """count i.i.d. draws using the provided generator."""

    @abstractmethod
    def _draw_length_biased(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """count draws with density tau * pdf(tau) / E[tau]."""

    def cdf(self, s):
        s, scalar = as_nonnegative_times(s, "s")
        out = 1.0 - self.survival(s)
        return float(out) if scalar else out

    def mean(self) -> float:
        return self.raw_moment(1)

    def sample(self, count: int, seed) -> np.ndarray:
        """Deterministic sample of ``count`` durations for the given seed."""
        count = check_count(count, "count")
        return self._draw(_rng_for(seed), count)

    def partial_moment(self, n: int, shift: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
        """E[((tau - shift)^+)**n], the shifted upper partial moment."""
        return integrate_semi_infinite(
            lambda t: (t - shift) ** n * float(self.pdf(t)), lower=shift, spec=spec
        )


@dataclass(frozen=True)
class Weibull(DurationLaw):
    """Stretched-exponential duration law with shape m and scale-like a."""

    m: float
    a: float

    def __post_init__(self):
        check_positive(self.m, "m")
        check_positive(self.a, "a")

    @property
    def conventional_scale(self) -> float:
        """The usual Weibull scale lambda, with a = lambda**m."""
        return self.a ** (1.0 / self.m)

    def pdf(self, tau):
        tau, scalar = as_nonnegative_times(tau, "tau")
        with np.errstate(divide="ignore", over="ignore"):
            out = (self.m / self.a) * tau ** (self.m - 1.0) * np.exp(-(tau**self.m) / self.a)
        # tau = 0: density is 0 for m > 1, 1/a for m = 1, +inf for m < 1
        if self.m == 1.0:
            out = np.where(tau == 0.0, 1.0 / self.a, out)
        return float(out) if scalar else out

    def survival(self, s):
        s, scalar = as_nonnegative_times(s, "s")
        out = np.exp(-(s**self.m) / self.a)
        return float(out) if scalar else out

    def raw_moment(self, n: int) -> float:
        n = check_count(n, "n")
        log_val = (n / self.m) * math.log(self.a) + float(gammaln(1.0 + n / self.m))
        value = math.exp(log_val) if log_val < 709.0 else math.inf
        if math.isinf(value):
            raise OverflowError(
                f"E[tau^{n}] for Weibull(m={self.m}, a={self.a}) exceeds the double range"
            )
        return value

    def ppf(self, q):
        q = np.asarray(q, dtype=float)
        if np.any((q < 0.0) | (q >= 1.0)):
            raise ValidationError("quantile levels must lie in [0, 1)")
        return (self.a * (-np.log1p(-q))) ** (1.0 / self.m)

    def _draw(self, rng, count):
        # inverse CDF: tau = (a * (-ln u))**(1/m), u ~ U(0, 1)
        u = rng.uniform(size=count)
        return (self.a * (-np.log(u))) ** (1.0 / self.m)

    def _draw_length_biased(self, rng, count):
        # tau * pdf(tau) transforms, via u = tau**m / a, to a Gamma(1 + 1/m)
        # weight in u; exact draw with no rejection step.
        u = rng.gamma(1.0 + 1.0 / self.m, 1.0, size=count)
        return (self.a * u) ** (1.0 / self.m)


@dataclass(frozen=True)
class Exponential(DurationLaw):
    """Memoryless duration law; equivalent to Weibull(m=1, a=mean)."""

    mean_duration: float

    def __post_init__(self):
        check_positive(self.mean_duration, "mean")

    def pdf(self, tau):
        tau, scalar = as_nonnegative_times(tau, "tau")
        out = np.exp(-tau / self.mean_duration) / self.mean_duration
        return float(out) if scalar else out

    def survival(self, s):
        s, scalar = as_nonnegative_times(s, "s")
        out = np.exp(-s / self.mean_duration)
        return float(out) if scalar else out

    def raw_moment(self, n: int) -> float:
        n = check_count(n, "n")
        return self.mean_duration**n * math.factorial(n)

    def ppf(self, q):
        q = np.asarray(q, dtype=float)
        return -self.mean_duration * np.log1p(-q)

    def _draw(self, rng, count):
        return -self.mean_duration * np.log(rng.uniform(size=count))

    def _draw_length_biased(self, rng, count):
        return rng.gamma(2.0, self.mean_duration, size=count)


@dataclass(frozen=True)
class GammaDist(DurationLaw):
    """Gamma duration law with shape k and scale theta."""

    k: float
    theta: float

    def __post_init__(self):
        check_positive(self.k, "k")
        check_positive(self.theta, "theta")

    def pdf(self, tau):
        tau, scalar = as_nonnegative_times(tau, "tau")
        with np.errstate(divide="ignore"):
            log_pdf = (
                (self.k - 1.0) * np.log(tau)
                - tau / self.theta
                - gammaln(self.k)
                - self.k * math.log(self.theta)
            )
        out = np.exp(log_pdf)
        if self.k == 1.0:
            out = np.where(tau == 0.0, 1.0 / self.theta, out)
        return float(out) if scalar else out

    def survival(self, s):
        s, scalar = as_nonnegative_times(s, "s")
        out = gammaincc(self.k, s / self.theta)
        return float(out) if scalar else out

    def raw_moment(self, n: int) -> float:
        n = check_count(n, "n")
        return self.theta**n * math.exp(gammaln(self.k + n) - gammaln(self.k))

    def _draw(self, rng, count):
        return rng.gamma(self.k, self.theta, size=count)

    def _draw_length_biased(self, rng, count):
        # tau * pdf is again Gamma, with shape k + 1
        return rng.gamma(self.k + 1.0, self.theta, size=count)


class Empirical(DurationLaw):
    """Duration law given by raw samples; moments use the sample directly.

    The sample is kept as-is (no density smoothing): moments are sample
    means of tau**n, the survival function is the empirical one, and
    sampling resamples with replacement.  There is deliberately no ``pdf``.
    """

    def __init__(self, samples):
        arr = as_positive_array(samples, "duration samples", min_size=2)
        self.samples = np.sort(arr)
        self.samples.flags.writeable = False

    def __repr__(self):
        return f"Empirical(n={self.samples.size})"

    def pdf(self, tau):
        raise ValidationError(
            "the empirical duration law is a discrete sample and has no density; "
            "use survival/raw_moment/sample"
        )

    def survival(self, s):
        s, scalar = as_nonnegative_times(s, "s")
        idx = np.searchsorted(self.samples, s, side="right")
        out = 1.0 - idx / self.samples.size
        return float(out) if scalar else out

    def raw_moment(self, n: int) -> float:
        n = check_count(n, "n")
        return math.fsum((self.samples**n).tolist()) / self.samples.size

    def partial_moment(self, n: int, shift: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
        excess = np.clip(self.samples - shift, 0.0, None)
        return math.fsum((excess**n).tolist()) / self.samples.size

    def _draw(self, rng, count):
        return rng.choice(self.samples, size=count, replace=True)

    def _draw_length_biased(self, rng, count):
        weights = self.samples / self.samples.sum()
        return rng.choice(self.samples, size=count, replace=True, p=weights)


# ---------------------------------------------------------------------------
# Observation laws
# ---------------------------------------------------------------------------


class ObservationLaw(ABC):
    """Law (or improper weight) of the observation offset t >= 0."""

    proper: bool = True

    @abstractmethod
    def density(self, t):
        """Density (proper laws) or dimensionless weight (improper uniform)."""

    @abstractmethod
    def cdf(self, t):
        """Integral of the density from 0 to t (proper laws only)."""

    @abstractmethod
    def _draw(self, rng: np.random.Generator, count: int) -> np.ndarray:
        ...

    def sample(self, count: int, seed) -> np.ndarray:
        count = check_count(count, "count")
        if not self.proper:
            raise ValidationError(f"{type(self).__name__} is not normalizable; cannot sample")
        return self._draw(_rng_for(seed), count)

    # pieces consumed by the waiting-time correction terms ------------------

    def density_at_origin(self) -> float:
        """Right limit of the density at t = 0."""
        return float(self.density(0.0))

    def density_grad(self, t):
        """Classical derivative of the density where it exists (a.e.)."""
        return np.zeros_like(np.asarray(t, dtype=float))

    def jumps(self) -> list[tuple[float, float]]:
        """Interior jump discontinuities as (location, right - left limit)."""
        return []

    def support_upper(self) -> float:
        """Upper end of the support (inf when unbounded)."""
        return math.inf


class UniformImproper(ObservationLaw):
    """Constant observation weight 1 for all t >= 0 (not normalizable).

    Valid only inside ratio formulas, where its missing normalization
    cancels; sampling and the CDF are therefore refused.
    """

    proper = False

    def __repr__(self):
        return "UniformImproper()"

    def __eq__(self, other):
        return isinstance(other, UniformImproper)

    def __hash__(self):
        return hash("UniformImproper")

    def density(self, t):
        t, scalar = as_nonnegative_times(t, "t")
        out = np.ones_like(t)
        return float(out) if scalar else out

    def cdf(self, t):
        raise ValidationError("the improper uniform law has no CDF")

    def _draw(self, rng, count):
        raise ValidationError("the improper uniform law cannot be sampled")


@dataclass(frozen=True)
class TruncatedExponential(ObservationLaw):
    """Exponential observation offsets on [0, inf) with rate lam."""

    lam: float

    def __post_init__(self):
        check_positive(self.lam, "lambda")

    def density(self, t):
        t, scalar = as_nonnegative_times(t, "t")
        out = self.lam * np.exp(-self.lam * t)
        return float(out) if scalar else out

    def density_grad(self, t):
        t, scalar = as_nonnegative_times(t, "t")
        out = -self.lam**2 * np.exp(-self.lam * t)
        return float(out) if scalar else out

    def cdf(self, t):
        t, scalar = as_nonnegative_times(t, "t")
        out = -np.expm1(-self.lam * t)
        return float(out) if scalar else out

    def _draw(self, rng, count):
        return rng.standard_exponential(size=count) / self.lam


@dataclass(frozen=True)
class PowerWindow(ObservationLaw):
    """Density proportional to t**p on the window [0, T]: (p+1) t**p / T**(p+1)."""

    p: float
    T: float

    def __post_init__(self):
        if self.p < 0.0 or not np.isfinite(self.p):
            raise ValidationError(f"window exponent p must be >= 0, got {self.p!r}")
        check_positive(self.T, "T")

    def density(self, t):
        t, scalar = as_nonnegative_times(t, "t")
        inside = t <= self.T
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = (self.p + 1.0) * t**self.p / self.T ** (self.p + 1.0)
        if self.p == 0.0:
            vals = np.full_like(t, 1.0 / self.T)
        out = np.where(inside, vals, 0.0)
        return float(out) if scalar else out

    def density_grad(self, t):
        t, scalar = as_nonnegative_times(t, "t")
        if self.p == 0.0:
            out = np.zeros_like(t)
        else:
            with np.errstate(divide="ignore", invalid="ignore"):
                vals = self.p * (self.p + 1.0) * t ** (self.p - 1.0) / self.T ** (self.p + 1.0)
            out = np.where((t > 0.0) & (t < self.T), vals, 0.0)
        return float(out) if scalar else out

    def density_at_origin(self) -> float:
        return 1.0 / self.T if self.p == 0.0 else 0.0

    def jumps(self):
        # density drops from (p+1)/T to 0 at the cutoff
        return [(self.T, -(self.p + 1.0) / self.T)]

    def support_upper(self) -> float:
        return self.T

    def cdf(self, t):
        t, scalar = as_nonnegative_times(t, "t")
        out = np.clip(t / self.T, 0.0, 1.0) ** (self.p + 1.0)
        return float(out) if scalar else out

    def _draw(self, rng, count):
        return self.T * rng.uniform(size=count) ** (1.0 / (self.p + 1.0))


class EmpiricalObservation(ObservationLaw):
    """Histogram-backed observation law estimated from offset samples.

    A piecewise-constant density on [0, max(sample)] keeps the law proper
    (it integrates to 1) while staying differentiable almost everywhere
    (derivative 0 inside bins, jump terms at bin edges), so it composes
    with the correction-term machinery.
    """

    def __init__(self, samples, bins: int = 32):
        arr = as_positive_array(samples, "observation samples", min_size=2)
        bins = check_count(bins, "bins")
        counts, edges = np.histogram(arr, bins=bins, range=(0.0, float(arr.max())))
        widths = np.diff(edges)
        self.edges = edges
        self.heights = counts / (arr.size * widths)
        self.edges.flags.writeable = False
        self.heights.flags.writeable = False
        self._cum = np.concatenate([[0.0], np.cumsum(self.heights * widths)])

    def __repr__(self):
        return f"EmpiricalObservation(bins={self.heights.size}, T={self.edges[-1]:g})"

    def density(self, t):
        t, scalar = as_nonnegative_times(t, "t")
        idx = np.clip(np.searchsorted(self.edges, t, side="right") - 1, 0, self.heights.size - 1)
        out = np.where(t <= self.edges[-1], self.heights[idx], 0.0)
        return float(out) if scalar else out

    def density_at_origin(self) -> float:
        return float(self.heights[0])

    def jumps(self):
        out = []
        for i in range(1, self.heights.size):
            step = self.heights[i] - self.heights[i - 1]
            if step != 0.0:
                out.append((float(self.edges[i]), float(step)))
        out.append((float(self.edges[-1]), -float(self.heights[-1])))
        return out

    def support_upper(self) -> float:
        return float(self.edges[-1])

    def cdf(self, t):
        t, scalar = as_nonnegative_times(t, "t")
        out = np.interp(t, self.edges, self._cum)
        return float(out) if scalar else out

    def _draw(self, rng, count):
        idx = rng.choice(self.heights.size, size=count, p=np.diff(self._cum))
        lo = self.edges[idx]
        hi = self.edges[idx + 1]
        return lo + rng.uniform(size=count) * (hi - lo)
