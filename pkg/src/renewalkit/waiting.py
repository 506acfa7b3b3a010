"""Waiting-time distribution and moments for a stationary renewal observer.

Setting: updates arrive with i.i.d. durations tau ~ P_W; an observer lands
at offset t inside the current duration with weight P_O(t); the waiting
time until the next update is s = tau - t.  The waiting density is the
normalized convolution

    Omega(s) = N(s) / Z,      N(s) = int_s^inf P_W(tau) P_O(tau - s) dtau,
    Z = int_0^inf N(s) ds.

For the improper uniform weight P_O = 1 this collapses to
Omega(s) = survival(s) / E[tau], with mean wait w = E[tau^2] / (2 E[tau])
(the renewal-reward value) and standard deviation

    sigma = sqrt[(4 E[tau^3] E[tau] - 3 E[tau^2]^2) / (12 E[tau]^2)].

For a general observation law, integrating the moment integrals by parts
produces correction terms

    delta_n = -(1/n) int_0^inf ds s^n int_s^inf P_W(tau) dP_O(tau - s),

where dP_O is the distributional derivative of the density on the open
positive axis (absolutely continuous part plus interior jumps; the value at
the origin enters separately).  The exact identities, for M_k the k-th
unnormalized moment of N,

    M_{n-1} = P_O(0+) E[tau^n] / n  -  delta_n^raw,

show that the familiar ratio forms such as
``<s> = (E[tau^2]/2 - delta_2) / (E[tau] - delta_1)`` hold exactly once
delta_n is rescaled by the density at the origin (for the uniform weight,
P_O(0+) = 1 and nothing changes).  This module therefore reports
``delta_n = delta_n^raw / P_O(0+)`` and refuses the decomposition when the
observation density vanishes at zero offset (the raw identities are still
used for cross-checking in that case).

Primary values always come from direct quadrature of the moment integrals
against Omega; the delta route is computed as an independent cross-check
and a mismatch raises :class:`~renewalkit.errors.CrossCheckError` naming
both values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.special import gammainc, gammaincc, gammaln

from .distributions import (
    DurationLaw,
    Empirical,
    Exponential,
    GammaDist,
    ObservationLaw,
    UniformImproper,
    Weibull,
)
from .errors import CrossCheckError, ValidationError
from .quadrature import (
    DEFAULT_SPEC,
    QuadratureSpec,
    integrate_finite,
    integrate_semi_infinite,
)
from .validation import as_nonnegative_times, check_count

__all__ = [
    "WaitingTimeAnalysis",
    "waiting_pdf_uniform",
    "waiting_cdf_uniform",
    "mean_waiting_uniform",
    "std_waiting_uniform",
    "analyze_uniform",
    "delta_n",
    "GeneralWaiting",
    "waiting_pdf_general",
    "waiting_moments_general",
    "inspection_gap",
    "paradox_sweep",
    "SweepPoint",
]

METHODS = ("closed-form", "quadrature", "monte-carlo")

# dual-route agreement demanded from the delta cross-check
CROSS_CHECK_RTOL = 1e-6

# closed forms must match moment ratios this tightly for the Weibull law
_CLOSED_FORM_RTOL = 1e-10

# strictness guard: |gap| below this relative size counts as equality
_PARADOX_EQ_RTOL = 1e-13


@dataclass(frozen=True)
class WaitingTimeAnalysis:
    """Bundle of waiting-time statistics for one (duration, observation) pair.

    Attributes:
        mean_wait: <s>, the mean waiting time.
        second_moment: <s^2>.
        std: standard deviation of the waiting time.
        mean_duration: E[tau] (NaN when not estimable from the data at hand).
        delta: correction terms (delta_1, delta_2, delta_3); exactly zero for
            the improper uniform observation law, NaN when the decomposition
            is degenerate (observation density vanishing at the origin).
        paradox: True when mean_wait exceeds mean_duration strictly.
        method: "closed-form", "quadrature", or "monte-carlo".
        plug_in_mean_wait: duration-based renewal-reward estimate of the mean
            wait, where the sampling scheme allows one (else None).
    """

    mean_wait: float
    second_moment: float
    std: float
    mean_duration: float
    delta: tuple[float, float, float]
    paradox: bool
    method: str
    plug_in_mean_wait: float | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValidationError(f"method must be one of {METHODS}, got {self.method!r}")
        if len(self.delta) != 3:
            raise ValidationError("delta must hold exactly (delta_1, delta_2, delta_3)")
        if np.isfinite(self.std) and self.std < 0.0:
            raise ValidationError("std must be nonnegative")
        if np.isfinite(self.second_moment) and np.isfinite(self.mean_wait):
            slack = 1e-9 * max(self.second_moment, 1.0)
            if self.second_moment < self.mean_wait**2 - slack:
                raise ValidationError("second moment is below the squared mean")

    def to_dict(self) -> dict:
        return {
            "mean_wait": self.mean_wait,
            "second_moment": self.second_moment,
            "std": self.std,
            "mean_duration": self.mean_duration,
            "delta": list(self.delta),
            "paradox": self.paradox,
            "method": self.method,
            "plug_in_mean_wait": self.plug_in_mean_wait,
        }


# ---------------------------------------------------------------------------
# Uniform (improper) observation: closed forms
# ---------------------------------------------------------------------------


def waiting_pdf_uniform(d: DurationLaw, s):
    """Waiting-time density survival(s) / E[tau] under uniform observation."""
    s_arr, scalar = as_nonnegative_times(s, "s")
    out = d.survival(s_arr) / d.raw_moment(1)
    return float(out) if scalar else out


def waiting_cdf_uniform(d: DurationLaw, s):
    """CDF of the uniform-observation waiting time, exact per duration law."""
    s_arr, scalar = as_nonnegative_times(s, "s")
    mean = d.raw_moment(1)
    if isinstance(d, Weibull):
        out = gammainc(1.0 / d.m, s_arr**d.m / d.a)
    elif isinstance(d, Exponential):
        out = -np.expm1(-s_arr / d.mean_duration)
    elif isinstance(d, GammaDist):
        x = s_arr / d.theta
        out = (s_arr * gammaincc(d.k, x) + d.k * d.theta * gammainc(d.k + 1.0, x)) / mean
    elif isinstance(d, Empirical):
        # int_0^s survival = mean(min(tau_i, s)), via sorted prefix sums
        taus = d.samples
        prefix = np.concatenate([[0.0], np.cumsum(taus)])
        idx = np.searchsorted(taus, s_arr, side="right")
        out = (prefix[idx] + s_arr * (taus.size - idx)) / (taus.size * mean)
    else:  # pragma: no cover - no further laws implemented
        out = np.array(
            [integrate_finite(lambda x: float(d.survival(x)), 0.0, float(v)) / mean
             for v in np.atleast_1d(s_arr)]
        ).reshape(np.shape(s_arr))
    out = np.clip(out, 0.0, 1.0)
    return float(out) if scalar else out


def _weibull_mean_wait(d: Weibull) -> float:
    return d.a ** (1.0 / d.m) * math.exp(gammaln(2.0 / d.m) - gammaln(1.0 / d.m))


def _weibull_std_wait(d: Weibull) -> float:
    r3 = math.exp(gammaln(3.0 / d.m) - gammaln(1.0 / d.m))
    r2 = math.exp(gammaln(2.0 / d.m) - gammaln(1.0 / d.m))
    return d.a ** (1.0 / d.m) * math.sqrt(r3 - r2 * r2)


def mean_waiting_uniform(d: DurationLaw) -> float:
    """Mean waiting time E[tau^2] / (2 E[tau]) under uniform observation.

    For the Weibull law the gamma-ratio closed form is returned, after
    asserting it agrees with the moment ratio to 1e-10 relative.
    """
    ratio = d.raw_moment(2) / (2.0 * d.raw_moment(1))
    if isinstance(d, Weibull):
        closed = _weibull_mean_wait(d)
        if abs(closed - ratio) > _CLOSED_FORM_RTOL * abs(closed):
            raise CrossCheckError(
                "Weibull closed-form mean wait disagrees with the moment ratio",
                primary=closed,
                check=ratio,
            )
        return closed
    return ratio


def std_waiting_uniform(d: DurationLaw) -> float:
    """Waiting-time standard deviation under uniform observation.

    Evaluates sqrt[(4 E3 E1 - 3 E2^2) / (12 E1^2)]; the radicand is
    nonnegative by Cauchy-Schwarz, so a materially negative value signals a
    numeric inconsistency and is reported rather than clamped.  Tiny
    negatives (roundoff) clamp to zero.
    """
    e1, e2, e3 = d.raw_moment(1), d.raw_moment(2), d.raw_moment(3)
    radicand = 4.0 * e3 * e1 - 3.0 * e2 * e2
    floor = -1e-12 * max(1.0, 4.0 * e3 * e1)
    if radicand < floor:
        raise CrossCheckError(
            "negative variance radicand in the waiting-time deviation",
            primary=radicand,
            check=0.0,
        )
    value = math.sqrt(max(radicand, 0.0) / (12.0 * e1 * e1))
    if isinstance(d, Weibull):
        closed = _weibull_std_wait(d)
        if abs(closed - value) > _CLOSED_FORM_RTOL * abs(closed):
            raise CrossCheckError(
                "Weibull closed-form waiting std disagrees with the moment form",
                primary=closed,
                check=value,
            )
        return closed
    return value


def analyze_uniform(d: DurationLaw) -> WaitingTimeAnalysis:
    """Full waiting-time bundle under the improper uniform observation law."""
    e1 = d.raw_moment(1)
    w = mean_waiting_uniform(d)
    analysis_method = "monte-carlo" if isinstance(d, Empirical) else "closed-form"
    return WaitingTimeAnalysis(
        mean_wait=w,
        second_moment=d.raw_moment(3) / (3.0 * e1),
        std=std_waiting_uniform(d),
        mean_duration=e1,
        delta=(0.0, 0.0, 0.0),
        paradox=_strictly_greater(w, e1),
        method=analysis_method,
    )


def _strictly_greater(w: float, e1: float) -> bool:
    # strict inequality with a tiny relative guard so the exactly-critical
    # case does not flip on float noise
    return w - e1 > _PARADOX_EQ_RTOL * max(abs(w), abs(e1))


# ---------------------------------------------------------------------------
# Correction terms for non-uniform observation laws
# ---------------------------------------------------------------------------


def _delta_raw(
    d: DurationLaw,
    o: ObservationLaw,
    n: int,
    spec: QuadratureSpec,
    derivative_in: str,
) -> float:
    """Unnormalized correction term.

    Written in offset coordinates u = tau - s:

        delta_n^raw = -(1/n) [ int_0^U q_n(u) P_O'(u) du
                               + sum_j J_j q_n(u_j) ],
        q_n(u) = E[((tau - u)^+)^n],

    with P_O' the a.e. classical derivative and (u_j, J_j) the interior
    jumps of the density.  ``derivative_in`` selects the sign convention:
    "s" differentiates P_O(tau - s) in s (the reading validated by the
    normalization identity), "offset" differentiates in the offset itself
    (the opposite sign).
    """
    if derivative_in not in ("s", "offset"):
        raise ValidationError("derivative_in must be 's' or 'offset'")
    inner_spec = spec.tighter()
    upper = o.support_upper()
    breaks = [location for location, _ in o.jumps()]

    def q(u: float) -> float:
        return d.partial_moment(n, u, spec=inner_spec)

    if isinstance(d, Empirical):
        # q_n has a kink at every sample point; summing per-sample smooth
        # integrals instead is exact for the sample measure
        total = 0.0
        for tau in d.samples:
            hi = min(float(tau), upper)
            total += integrate_finite(
                lambda u: (tau - u) ** n * float(o.density_grad(u)),
                0.0,
                hi,
                inner_spec,
                breakpoints=breaks,
            )
        smooth = total / d.samples.size
    else:
        integrand = lambda u: q(u) * float(o.density_grad(u))
        if math.isfinite(upper):
            smooth = integrate_finite(integrand, 0.0, upper, spec, breakpoints=breaks)
        else:
            smooth = integrate_semi_infinite(integrand, 0.0, spec)
    jump = sum(height * q(location) for location, height in o.jumps())
    raw = -(smooth + jump) / n
    return raw if derivative_in == "s" else -raw


def delta_n(
    d: DurationLaw,
    o: ObservationLaw,
    n: int,
    spec: QuadratureSpec = DEFAULT_SPEC,
    derivative_in: str = "s",
) -> float:
    """Correction term delta_n in origin-weight-1 normalization.

    Exactly zero (no quadrature) for the improper uniform law.  Otherwise
    the raw wedge integral divided by the observation density at zero
    offset, which makes the identity Z = E[tau] - delta_1 exact; both sign
    conventions of the inner derivative are available via ``derivative_in``
    ("s" is the one the normalization identity validates).

    Raises ValidationError when the observation density vanishes at the
    origin, where this decomposition is degenerate.
    """
    n = check_count(n, "n")
    if isinstance(o, UniformImproper):
        return 0.0
    if not o.proper:
        raise ValidationError("correction terms need a proper observation law")
    origin = o.density_at_origin()
    if origin <= 0.0:
        raise ValidationError(
            "delta_n is degenerate when the observation density vanishes at zero offset "
            "(the moment identities lose their E[tau^n] terms); "
            "use waiting_moments_general, which cross-checks via the raw identities"
        )
    return _delta_raw(d, o, n, spec, derivative_in) / origin


# ---------------------------------------------------------------------------
# General observation laws: the normalized convolution
# ---------------------------------------------------------------------------


class GeneralWaiting:
    """Waiting-time law for a proper observation density.

    Computes the normalizer Z once as the direct double integral of the
    numerator (never via the delta_1 shortcut), then exposes the density,
    CDF, and moments.  The CDF uses the exact Fubini reduction

        int_0^s N = E[ F_O(tau) - F_O((tau - s)^+) ]

    evaluated on a dense grid and interpolated monotonically.
    """

    _CDF_GRID = 8193

    def __init__(
        self,
        d: DurationLaw,
        o: ObservationLaw,
        spec: QuadratureSpec = DEFAULT_SPEC,
    ):
        if isinstance(o, UniformImproper) or not o.proper:
            raise ValidationError(
                "GeneralWaiting needs a proper observation law; "
                "use the *_uniform functions for the improper uniform case"
            )
        self.d = d
        self.o = o
        self.spec = spec
        self._inner = spec.tighter()
        self._obs_breaks = [location for location, _ in o.jumps()]
        self._cdf_interp = None
        if isinstance(d, Empirical):
            # the double integral is an exact finite sum for a sample measure
            self.normalizer = float(np.mean(o.cdf(d.samples)))
        else:
            self.normalizer = integrate_semi_infinite(self._numerator, 0.0, spec)
        if not np.isfinite(self.normalizer) or self.normalizer <= spec.abs_tol:
            raise ValidationError(
                f"waiting-time normalizer is not positive (Z={self.normalizer!r}); "
                "the duration and observation supports are incompatible"
            )

    # -- numerator N(s) = int P_W(s + u) P_O(u) du ---------------------------

    def _numerator(self, s: float) -> float:
        if isinstance(self.d, Empirical):
            taus = self.d.samples
            excess = taus[taus > s] - s
            if excess.size == 0:
                return 0.0
            return float(np.sum(self.o.density(excess))) / taus.size
        upper = self.o.support_upper()
        f = lambda u: float(self.d.pdf(s + u)) * float(self.o.density(u))
        if math.isfinite(upper):
            return integrate_finite(
                f, 0.0, upper, self._inner, breakpoints=self._obs_breaks
            )
        return integrate_semi_infinite(f, 0.0, self._inner)

    def pdf(self, s):
        s_arr, scalar = as_nonnegative_times(s, "s")
        flat = np.atleast_1d(s_arr).ravel()
        vals = np.array([self._numerator(float(x)) for x in flat]) / self.normalizer
        out = vals.reshape(np.shape(s_arr))
        return float(out) if scalar else out

    def moment(self, n: int) -> float:
        """<s^n> by direct quadrature of s^n against the density.

        For a sample duration measure the outer integral collapses exactly to
        one smooth finite integral per sample point (the piecewise numerator
        would otherwise present a kink at every sample to the adaptive rule).
        """
        n = check_count(n, "n")
        if isinstance(self.d, Empirical):
            upper = self.o.support_upper()
            total = 0.0
            for tau in self.d.samples:
                hi = min(float(tau), upper)
                total += integrate_finite(
                    lambda u: (tau - u) ** n * float(self.o.density(u)),
                    0.0,
                    hi,
                    self._inner,
                    breakpoints=self._obs_breaks,
                )
            return total / (self.d.samples.size * self.normalizer)
        raw = integrate_semi_infinite(
            lambda s: s**n * self._numerator(s), 0.0, self.spec
        )
        return raw / self.normalizer

    # -- CDF -----------------------------------------------------------------

    def _upper_support(self) -> float:
        if isinstance(self.d, Empirical):
            return float(self.d.samples.max())
        hi = 4.0 * self.d.raw_moment(1)
        while self.d.survival(hi) > 1e-13 and hi < 1e300:
            hi *= 2.0
        return hi

    def _offset_nodes(self):
        """Fixed Gauss-Legendre nodes/weights covering the observation support.

        Panels are geometric toward 0 (integrable density singularities) and
        cover either the finite window or the 1 - 1e-13 quantile of an
        unbounded law.  Used only for the vectorized CDF grid; moments keep
        the adaptive path.
        """
        u_hi = self.o.support_upper()
        if not math.isfinite(u_hi):
            u_hi = 1.0
            while self.o.cdf(u_hi) < 1.0 - 1e-13 and u_hi < 1e300:
                u_hi *= 2.0
        edges = np.concatenate([[0.0], u_hi * np.logspace(-10.0, 0.0, 96)])
        base_x, base_w = np.polynomial.legendre.leggauss(12)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[:-1] + edges[1:])
        nodes = (mid[:, None] + half[:, None] * base_x[None, :]).ravel()
        weights = (half[:, None] * base_w[None, :]).ravel()
        return nodes, weights * self.o.density(nodes)

    def _numerator_grid(self, grid: np.ndarray) -> np.ndarray:
        if isinstance(self.d, Empirical):
            return np.array([self._numerator(float(s)) for s in grid])
        nodes, weighted = self._offset_nodes()
        out = np.empty(grid.size)
        step = max(1, int(2e6 / nodes.size))
        for start in range(0, grid.size, step):
            block = grid[start : start + step, None] + nodes[None, :]
            out[start : start + step] = self.d.pdf(block.ravel()).reshape(
                block.shape
            ) @ weighted
        return out

    def _build_cdf(self):
        hi = self._upper_support()
        n_geo = self._CDF_GRID // 3
        scale = min(self.d.raw_moment(1), hi)
        geo = scale * np.logspace(-8.0, 0.0, n_geo)
        lin = np.linspace(scale, hi, self._CDF_GRID - n_geo)[1:]
        grid = np.concatenate([[0.0], geo, lin])
        dens = self._numerator_grid(grid) / self.normalizer
        cum = np.concatenate([[0.0], np.cumsum(np.diff(grid) * 0.5 * (dens[1:] + dens[:-1]))])
        vals = np.maximum.accumulate(np.clip(cum, 0.0, 1.0))
        self._cdf_interp = PchipInterpolator(grid, vals, extrapolate=False)
        self._cdf_hi = hi

    def cdf(self, s):
        if self._cdf_interp is None:
            self._build_cdf()
        s_arr, scalar = as_nonnegative_times(s, "s")
        out = np.where(
            np.asarray(s_arr) >= self._cdf_hi,
            1.0,
            np.nan_to_num(self._cdf_interp(np.clip(s_arr, 0.0, self._cdf_hi)), nan=1.0),
        )
        return float(out) if scalar else out


def waiting_pdf_general(d: DurationLaw, o: ObservationLaw, s):
    """Waiting-time density for an arbitrary observation law.

    Reduces to :func:`waiting_pdf_uniform` for the improper uniform law.
    For repeated evaluation construct :class:`GeneralWaiting` once instead.
    """
    if isinstance(o, UniformImproper):
        return waiting_pdf_uniform(d, s)
    return GeneralWaiting(d, o).pdf(s)


def _relative_gap(x: float, y: float, scale: float) -> float:
    return abs(x - y) / max(abs(x), abs(y), scale, 1e-300)


def waiting_moments_general(
    d: DurationLaw,
    o: ObservationLaw,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> WaitingTimeAnalysis:
    """Waiting-time moments for (duration, observation), with dual-route check.

    Primary values of <s> and <s^2> come from direct quadrature of the
    moment integrals against the normalized convolution; the correction-term
    ratio forms are then evaluated independently and must agree to 1e-6
    relative, else a CrossCheckError naming both values is raised.  When the
    observation density vanishes at zero offset the ratio decomposition is
    degenerate; the raw unnormalized identities are checked instead and the
    reported delta values are NaN.
    """
    if isinstance(o, UniformImproper):
        return analyze_uniform(d)

    e1, e2, e3 = d.raw_moment(1), d.raw_moment(2), d.raw_moment(3)
    gw = GeneralWaiting(d, o, spec)
    m1 = gw.moment(1)
    m2 = gw.moment(2)
    var = m2 - m1 * m1
    if var < -1e-9 * max(m2, 1.0):
        raise CrossCheckError("negative waiting-time variance", primary=m2, check=m1 * m1)
    std = math.sqrt(max(var, 0.0))

    origin = o.density_at_origin()
    if origin > 0.0:
        deltas = tuple(_delta_raw(d, o, k, spec, "s") / origin for k in (1, 2, 3))
        denom = e1 - deltas[0]
        mean_check = (e2 / 2.0 - deltas[1]) / denom
        second_check = (e3 / 3.0 - deltas[2]) / denom
        g_term = (
            -4.0 * deltas[0] * e3
            - 12.0 * deltas[2] * e1
            + 12.0 * deltas[1] * e2
            + 12.0 * deltas[0] * deltas[2]
            - 12.0 * deltas[1] ** 2
        )
        std_check_sq = ((4.0 * e3 * e1 - 3.0 * e2 * e2) + g_term) / (12.0 * denom * denom)
        std_check = math.sqrt(max(std_check_sq, 0.0))
        if _relative_gap(m1, mean_check, spec.abs_tol) > CROSS_CHECK_RTOL:
            raise CrossCheckError(
                "mean wait: direct quadrature vs correction-term ratio", m1, mean_check
            )
        if _relative_gap(m2, second_check, spec.abs_tol) > CROSS_CHECK_RTOL:
            raise CrossCheckError(
                "second waiting moment: direct quadrature vs correction-term ratio",
                m2,
                second_check,
            )
        if _relative_gap(std, std_check, spec.abs_tol) > CROSS_CHECK_RTOL:
            raise CrossCheckError(
                "waiting std: direct quadrature vs correction-term form", std, std_check
            )
    else:
        # degenerate decomposition: validate the raw identities
        # M_{n-1} = P_O(0+) E_n / n - delta_n^raw with P_O(0+) = 0
        z = gw.normalizer
        for k, m_val in ((1, z), (2, m1 * z), (3, m2 * z)):
            raw = _delta_raw(d, o, k, spec, "s")
            if _relative_gap(m_val, -raw, spec.abs_tol) > CROSS_CHECK_RTOL:
                raise CrossCheckError(
                    f"raw moment identity for n={k} fails", m_val, -raw
                )
        deltas = (math.nan, math.nan, math.nan)

    return WaitingTimeAnalysis(
        mean_wait=m1,
        second_moment=m2,
        std=std,
        mean_duration=e1,
        delta=deltas,
        paradox=_strictly_greater(m1, e1),
        method="quadrature",
    )


# ---------------------------------------------------------------------------
# Inspection paradox
# ---------------------------------------------------------------------------


def inspection_gap(d: DurationLaw) -> tuple[float, bool]:
    """Gap between mean wait and mean duration, and the paradox flag.

    The flag is the strict inequality w > E[tau]; the equivalent
    characterization E[tau^2] > 2 E[tau]^2 is computed as well and must
    agree.  At the critical point the gap is zero and the flag is False.
    """
    e1 = d.raw_moment(1)
    w = mean_waiting_uniform(d)
    gap = w - e1
    paradox = _strictly_greater(w, e1)
    e2 = d.raw_moment(2)
    by_moments = e2 - 2.0 * e1 * e1 > _PARADOX_EQ_RTOL * max(e2, 2.0 * e1 * e1)
    if paradox != by_moments:
        raise CrossCheckError(
            "paradox predicates disagree (w > E[tau] vs E[tau^2] > 2 E[tau]^2)",
            primary=gap,
            check=e2 - 2.0 * e1 * e1,
        )
    return gap, paradox


@dataclass(frozen=True)
class SweepPoint:
    m: float
    mean_duration: float
    mean_wait: float
    paradox: bool


def paradox_sweep(a: float, m_grid: Sequence[float]) -> list[SweepPoint]:
    """Mean duration vs mean wait across Weibull shapes at fixed scale a."""
    if len(m_grid) == 0:
        raise ValidationError("m_grid must not be empty")
    out = []
    for m in m_grid:
        d = Weibull(m=float(m), a=float(a))
        gap, paradox = inspection_gap(d)
        e1 = d.raw_moment(1)
        out.append(SweepPoint(m=float(m), mean_duration=e1, mean_wait=e1 + gap, paradox=paradox))
    return out
