"""Seeded Monte Carlo oracle for waiting-time statistics.

Independently verifies the analytic results by simulating the observation
mechanism itself, never by sampling from the analytic waiting density:

* Uniform observation ("length-biased" scheme): the duration containing a
  stationary random observer is drawn exactly with density
  tau * P_W(tau) / E[tau] (a closed-form reweighting exists for every
  implemented law, so no rejection envelope is needed), then the offset is
  uniform on [0, tau] and s = tau - t.
* Uniform observation ("timeline" scheme): a renewal sequence is simulated
  over a long horizon and inspected at uniform random times.  Kept as a
  structural cross-check of the length-biased construction; it carries an
  O(E[tau]/horizon) edge bias.
* General proper observation ("rejection" scheme): propose tau ~ P_W and
  t ~ P_O independently, keep the pair when t <= tau.  This realizes the
  joint weight P_O(t) P_W(tau) on {t <= tau} exactly.

Reproducibility contract: identical (law, count, seed, scheme, streams)
give bit-identical samples.  Work may be sharded across substreams keyed by
(seed, stream-id); shards are merged in stream order, so a parallel run is
bit-identical to the serial one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import DurationLaw, ObservationLaw, _rng_for
from .errors import SamplingError, ValidationError
from .validation import check_count, check_positive
from .waiting import WaitingTimeAnalysis

__all__ = [
    "RenewalSample",
    "sample_waiting_uniform",
    "sample_waiting_general",
    "empirical_waiting_stats",
    "ks_distance",
]

SCHEMES = ("length-biased", "timeline", "rejection")


@dataclass(frozen=True)
class RenewalSample:
    """Paired Monte Carlo draws of (duration, offset, wait).

    ``durations[i]`` is the duration containing observation i, so under
    stationary inspection the duration column is length-biased by
    construction; see :func:`empirical_waiting_stats` for the matching
    debiasing identities.
    """

    durations: np.ndarray
    offsets: np.ndarray
    waits: np.ndarray
    seed: int
    scheme: str
    acceptance_rate: float | None = None

    def __post_init__(self):
        for name in ("durations", "offsets", "waits"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if self.scheme not in SCHEMES:
            raise ValidationError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if not (len(self.durations) == len(self.offsets) == len(self.waits)):
            raise ValidationError("durations, offsets, and waits must have equal length")
        if len(self.durations) == 0:
            raise ValidationError("a renewal sample cannot be empty")
        if np.any(self.offsets < 0.0) or np.any(self.offsets > self.durations):
            raise ValidationError("offsets must satisfy 0 <= t <= tau")
        if np.any(self.waits < 0.0):
            raise ValidationError("waiting times must be nonnegative")
        if not np.allclose(self.waits, self.durations - self.offsets, rtol=1e-12, atol=0.0):
            raise ValidationError("waits must equal durations - offsets")

    def __len__(self):
        return len(self.waits)


def _stream_counts(count: int, streams: int) -> list[int]:
    base, extra = divmod(count, streams)
    return [base + (1 if k < extra else 0) for k in range(streams)]


def sample_waiting_uniform(
    d: DurationLaw,
    count: int,
    seed: int,
    scheme: str = "length-biased",
    streams: int = 1,
    horizon_factor: float = 1e3,
) -> RenewalSample:
    """Simulate a stationary uniform observer of the renewal process.

    Args:
        d: duration law.
        count: number of observations.
        seed: RNG seed; same seed, same sample.
        scheme: "length-biased" (exact, default) or "timeline"
            (horizon simulation, cross-check only).
        streams: number of independent substreams to shard across.
        horizon_factor: timeline horizon in units of E[tau].

    Returns:
        RenewalSample with 0 <= t <= tau and s = tau - t.
    """
    count = check_count(count, "count")
    streams = check_count(streams, "streams")
    if scheme not in ("length-biased", "timeline"):
        raise ValidationError("scheme must be 'length-biased' or 'timeline'")

    taus, offs = [], []
    for k, n_k in enumerate(_stream_counts(count, streams)):
        if n_k == 0:
            continue
        rng = _rng_for(seed, k)
        if scheme == "length-biased":
            tau = d._draw_length_biased(rng, n_k)
            t = rng.uniform(0.0, tau)
        else:
            tau, t = _timeline_chunk(d, n_k, rng, horizon_factor)
        taus.append(tau)
        offs.append(t)
    tau = np.concatenate(taus)
    t = np.concatenate(offs)
    return RenewalSample(
        durations=tau, offsets=t, waits=tau - t, seed=int(seed), scheme=scheme
    )


def _timeline_chunk(d: DurationLaw, n: int, rng, horizon_factor: float):
    """Inspect a simulated renewal timeline at n uniform times.

    A burn-in of 10 mean durations separates the inspection window from the
    artificial renewal at time zero.
    """
    check_positive(horizon_factor, "horizon_factor")
    mean = d.raw_moment(1)
    burn = 10.0 * mean
    horizon = horizon_factor * mean
    end = burn + horizon

    chunks = []
    total = 0.0
    while total < end:
        draw = d._draw(rng, max(256, int(1.2 * (end - total) / mean) + 1))
        chunks.append(draw)
        total += float(draw.sum())
    arrivals = np.concatenate([[0.0], np.cumsum(np.concatenate(chunks))])

    inspect = rng.uniform(burn, end, size=n)
    idx = np.searchsorted(arrivals, inspect, side="right")
    tau = arrivals[idx] - arrivals[idx - 1]
    t = inspect - arrivals[idx - 1]
    return tau, t


def sample_waiting_general(
    d: DurationLaw,
    o: ObservationLaw,
    count: int,
    seed: int,
    streams: int = 1,
    pilot: int = 4096,
    min_acceptance: float = 1e-4,
) -> RenewalSample:
    """Rejection sampler for a proper observation law: keep (tau, t) iff t <= tau.

    Reports the realized acceptance rate; aborts with a diagnostic when a
    pilot run estimates acceptance below ``min_acceptance`` (duration and
    observation supports nearly disjoint).
    """
    count = check_count(count, "count")
    streams = check_count(streams, "streams")
    if not o.proper:
        raise ValidationError("the rejection scheme needs a proper (normalizable) observation law")

    taus, offs = [], []
    proposed = 0
    accepted = 0
    for k, n_k in enumerate(_stream_counts(count, streams)):
        if n_k == 0:
            continue
        rng = _rng_for(seed, k)

        tau_p = d._draw(rng, pilot)
        t_p = o._draw(rng, pilot)
        keep = t_p <= tau_p
        rate = max(keep.mean(), 0.5 / pilot)
        if keep.mean() < min_acceptance:
            raise SamplingError(
                f"pilot acceptance rate {keep.mean():.2e} below {min_acceptance:.0e}; "
                "observation offsets almost never fall inside a duration "
                "(supports nearly disjoint)"
            )
        got_tau = [tau_p[keep]]
        got_t = [t_p[keep]]
        got = int(keep.sum())
        proposed += pilot
        accepted += got
        while got < n_k:
            batch = int(min(4e7, 1.25 * (n_k - got) / rate + 64))
            tau_b = d._draw(rng, batch)
            t_b = o._draw(rng, batch)
            keep = t_b <= tau_b
            got_tau.append(tau_b[keep])
            got_t.append(t_b[keep])
            got += int(keep.sum())
            proposed += batch
            accepted += int(keep.sum())
        taus.append(np.concatenate(got_tau)[:n_k])
        offs.append(np.concatenate(got_t)[:n_k])

    tau = np.concatenate(taus)
    t = np.concatenate(offs)
    return RenewalSample(
        durations=tau,
        offsets=t,
        waits=tau - t,
        seed=int(seed),
        scheme="rejection",
        acceptance_rate=accepted / proposed,
    )


def empirical_waiting_stats(sample: RenewalSample) -> WaitingTimeAnalysis:
    """Sample statistics of the waiting times, with scheme-aware duration stats.

    The wait-based columns are straightforward sample estimates.  For the
    stationary schemes the duration column is length-biased, so the
    renewal-reward identities are applied in their biased form:

        E_biased[tau]   = E[tau^2] / E[tau]  = 2 w,
        E_biased[1/tau] = 1 / E[tau],

    giving the plug-in mean wait ``mean(tau)/2`` and the harmonic-mean
    duration estimate.  The rejection scheme tilts durations by the
    observation CDF, which admits no scheme-free debiasing; its duration
    statistics are reported as NaN/None.
    """
    if len(sample) < 2:
        raise ValidationError("need at least two observations for sample statistics")
    s = sample.waits
    mean_s = float(s.mean())
    second = float(np.mean(s * s))
    std_s = float(s.std(ddof=1))

    if sample.scheme in ("length-biased", "timeline"):
        mean_duration = 1.0 / float(np.mean(1.0 / sample.durations))
        plug_in = float(sample.durations.mean()) / 2.0
    else:
        mean_duration = math.nan
        plug_in = None

    return WaitingTimeAnalysis(
        mean_wait=mean_s,
        second_moment=second,
        std=std_s,
        mean_duration=mean_duration,
        delta=(math.nan, math.nan, math.nan),
        paradox=bool(np.isfinite(mean_duration) and mean_s > mean_duration),
        method="monte-carlo",
        plug_in_mean_wait=plug_in,
    )


def ks_distance(samples, cdf) -> float:
    """Supremum distance between the empirical CDF of ``samples`` and ``cdf``.

    Handles ties and jump discontinuities of the reference CDF by comparing
    the empirical CDF against both the right value and the left limit of
    ``cdf`` at every distinct sample point (the left limit is taken by
    evaluating one float below).  Raises ValidationError when ``cdf`` is not
    monotone on the sample grid.
    """
    x = np.sort(np.asarray(samples, dtype=float))
    if x.size < 2:
        raise ValidationError("Kolmogorov-Smirnov distance needs at least 2 samples")
    values, counts = np.unique(x, return_counts=True)
    cum_hi = np.cumsum(counts) / x.size
    cum_lo = cum_hi - counts / x.size

    f_right = np.asarray(cdf(values), dtype=float)
    if np.any(np.diff(f_right) < -1e-12):
        raise ValidationError("reference cdf is not monotone on the sample grid")
    if np.any(f_right < -1e-9) or np.any(f_right > 1.0 + 1e-9):
        raise ValidationError("reference cdf leaves [0, 1] on the sample grid")
    left_points = np.nextafter(values, -np.inf)
    # a value of exactly 0 must not step below a nonnegative cdf's domain
    left_points[values == 0.0] = 0.0
    f_left = np.asarray(cdf(left_points), dtype=float)

    d_plus = np.max(cum_hi - f_right)
    d_minus = np.max(f_left - cum_lo)
    return float(max(d_plus, d_minus, 0.0))
