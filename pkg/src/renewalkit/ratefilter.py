"""First-exit filtering of tick data into an event-driven rate series.

The published rate starts at the first tick and is re-published whenever
the market price moves by at least ``epsilon`` away from the *last
published* rate (inclusive boundary).  Re-centering the comparison window
at each update makes the published series a first-exit process from a band
of half-width epsilon, and stretches the inter-update durations well beyond
the raw tick spacing.

Also provides a synthetic tick generator (additive Gaussian random walk)
and CSV ingestion with per-row diagnostics.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .errors import TickDataError, ValidationError
from .validation import check_count, check_positive

__all__ = [
    "TickSeries",
    "FilteredSeries",
    "first_exit_filter",
    "durations_of",
    "synth_ticks",
    "ingest_csv",
]


@dataclass(frozen=True)
class TickSeries:
    """Raw (timestamp, price) stream; timestamps strictly increasing, prices > 0."""

    times: np.ndarray
    prices: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        prices = np.asarray(self.prices, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "prices", prices)
        if times.ndim != 1 or prices.ndim != 1 or times.size != prices.size:
            raise ValidationError("times and prices must be 1-d arrays of equal length")
        if times.size == 0:
            raise ValidationError("a tick series needs at least one tick")
        if not np.all(np.isfinite(times)) or not np.all(np.isfinite(prices)):
            raise ValidationError("tick series contains non-finite values")
        if np.any(np.diff(times) <= 0.0):
            raise ValidationError("tick timestamps must be strictly increasing")
        if np.any(prices <= 0.0):
            raise ValidationError("tick prices must be strictly positive")

    def __len__(self):
        return self.times.size


def _boundary_slack(epsilon: float, scale) -> np.ndarray:
    """Tolerance for the inclusive >= epsilon comparison.

    Decimal prices are not exactly representable (100.1 - 100.0 lands a few
    ulps below 0.1), so the boundary comparison allows float-representation
    slack proportional to the price magnitude.  Far below any real price
    increment.
    """
    return np.maximum(epsilon * 1e-12, 16.0 * np.finfo(float).eps * np.asarray(scale))


@dataclass(frozen=True)
class FilteredSeries:
    """First-exit-filtered updates plus the threshold that produced them."""

    times: np.ndarray
    rates: np.ndarray
    epsilon: float

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        rates = np.asarray(self.rates, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "rates", rates)
        if times.size != rates.size or times.size == 0:
            raise ValidationError("filtered series must be nonempty with matching columns")
        if np.any(np.diff(times) <= 0.0):
            raise ValidationError("update timestamps must be strictly increasing")
        if rates.size > 1:
            slack = _boundary_slack(self.epsilon, np.maximum(rates[1:], rates[:-1]))
            if np.any(np.abs(np.diff(rates)) < self.epsilon - slack):
                raise ValidationError(
                    "consecutive filtered rates must differ by at least epsilon"
                )

    def __len__(self):
        return self.times.size

    @property
    def durations(self) -> np.ndarray:
        return np.diff(self.times)


def first_exit_filter(ticks: TickSeries, epsilon: float) -> FilteredSeries:
    """Publish the first tick, then every tick moving >= epsilon from the last publish.

    The comparison reference is always the last *published* rate, so the
    filter is a first-exit process from the band [ref - eps, ref + eps];
    the boundary itself fires.
    """
    check_positive(epsilon, "epsilon")
    times = ticks.times
    prices = ticks.prices

    out_idx = [0]
    reference = prices[0]
    for i in range(1, prices.size):
        price = prices[i]
        slack = float(_boundary_slack(epsilon, max(abs(price), abs(reference))))
        if abs(price - reference) >= epsilon - slack:
            reference = price
            out_idx.append(i)
    idx = np.array(out_idx, dtype=int)
    return FilteredSeries(times=times[idx], rates=prices[idx], epsilon=float(epsilon))


def durations_of(filtered: FilteredSeries) -> np.ndarray:
    """Inter-update durations; needs at least two updates."""
    if len(filtered) < 2:
        raise ValidationError(
            f"need at least 2 updates to define durations, got {len(filtered)}"
        )
    return filtered.durations


def synth_ticks(
    step_std: float,
    tick_interval: float,
    count: int,
    seed: int,
    start_price: float = 100.0,
) -> TickSeries:
    """Equally spaced ticks whose price follows an additive Gaussian walk.

    Deterministic per seed.  step_std = 0 produces a constant price.
    """
    if step_std < 0.0 or not math.isfinite(step_std):
        raise ValidationError("step_std must be finite and >= 0")
    check_positive(tick_interval, "tick_interval")
    count = check_count(count, "count")
    check_positive(start_price, "start_price")
    rng = np.random.default_rng(int(seed))
    steps = rng.normal(0.0, step_std, size=count - 1) if count > 1 else np.empty(0)
    prices = start_price + np.concatenate([[0.0], np.cumsum(steps)])
    times = tick_interval * np.arange(count, dtype=float)
    return TickSeries(times=times, prices=prices)


# ---------------------------------------------------------------------------
# CSV ingestion
# ---------------------------------------------------------------------------


def _parse_iso(stamp: str) -> float:
    text = stamp.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    dt = datetime.fromisoformat(text)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.timestamp()


def ingest_csv(source) -> TickSeries:
    """Parse a tick CSV: rows ``timestamp,price``, header and # comments optional.

    Timestamps are non-negative decimal seconds or ISO-8601, auto-detected
    from the first data row and never mixed within one file.  Every
    malformed row, non-increasing timestamp, or non-positive price is a
    distinct error naming the offending 1-based line number.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as handle:
            lines = handle.readlines()
    elif isinstance(source, io.IOBase) or hasattr(source, "readlines"):
        lines = source.readlines()
    else:
        raise ValidationError(f"cannot ingest ticks from {type(source).__name__}")

    times: list[float] = []
    prices: list[float] = []
    iso_mode: bool | None = None
    header_allowed = True

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise TickDataError(
                f"expected 'timestamp,price', got {len(parts)} fields", row=lineno
            )
        ts_text, price_text = parts

        if header_allowed:
            # only the very first non-comment line may be a header
            header_allowed = False
            if _looks_like_header(ts_text, price_text):
                continue

        try:
            stamp, is_iso = _parse_stamp(ts_text, iso_mode)
        except (ValueError, TickDataError):
            raise TickDataError(f"unparseable timestamp {ts_text!r}", row=lineno) from None
        if iso_mode is not None and is_iso != iso_mode:
            raise TickDataError(
                "mixed timestamp formats (decimal seconds and ISO-8601) in one file",
                row=lineno,
            )
        iso_mode = is_iso

        try:
            price = float(price_text)
        except ValueError:
            raise TickDataError(f"unparseable price {price_text!r}", row=lineno) from None
        if not math.isfinite(price) or price <= 0.0:
            raise TickDataError(f"price must be positive, got {price!r}", row=lineno)
        if not is_iso and stamp < 0.0:
            raise TickDataError(f"timestamp must be >= 0, got {stamp!r}", row=lineno)
        if times and stamp <= times[-1]:
            raise TickDataError(
                f"timestamp {ts_text!r} does not increase past the previous tick",
                row=lineno,
            )
        times.append(stamp)
        prices.append(price)

    if not times:
        raise TickDataError("no ticks found in input")
    return TickSeries(times=np.array(times), prices=np.array(prices))


def _parse_stamp(text: str, iso_mode: bool | None) -> tuple[float, bool]:
    # try the file's established format first, then the other one, so a
    # format switch is reported as "mixed" rather than "unparseable"
    order = ("iso", "float") if iso_mode is True else ("float", "iso")
    for kind in order:
        try:
            return (float(text), False) if kind == "float" else (_parse_iso(text), True)
        except ValueError:
            continue
    raise ValueError(text)


def _looks_like_header(ts_text: str, price_text: str) -> bool:
    try:
        float(ts_text)
        return False
    except ValueError:
        pass
    try:
        _parse_iso(ts_text)
        return False
    except ValueError:
        pass
    try:
        float(price_text)
        return False
    except ValueError:
        return True
