"""First-exit filter: hand traces, brute-force oracle, ingestion diagnostics."""

import io

import numpy as np
import pytest

from renewalkit import (
    FilteredSeries,
    TickDataError,
    TickSeries,
    ValidationError,
    durations_of,
    first_exit_filter,
    ingest_csv,
    synth_ticks,
)


def _series(prices, times=None):
    prices = np.asarray(prices, dtype=float)
    if times is None:
        times = np.arange(prices.size, dtype=float)
    return TickSeries(times=np.asarray(times, dtype=float), prices=prices)


def _reference_filter_cents(prices, epsilon_cents=10):
    """Independent reference scan in exact integer cents (2-decimal prices)."""
    cents = [round(p * 100.0) for p in prices]
    published = [0]
    last = cents[0]
    i = 1
    while i < len(cents):
        moved = cents[i] - last
        if moved >= epsilon_cents or -moved >= epsilon_cents:
            published.append(i)
            last = cents[i]
        i += 1
    return published


# -- hand-traced examples ------------------------------------------------------


def test_hand_trace_skips_interior_moves():
    out = first_exit_filter(_series([100.00, 100.04, 100.09, 100.12]), 0.1)
    assert list(out.rates) == [100.00, 100.12]
    assert list(out.times) == [0.0, 3.0]


def test_inclusive_boundary_fires():
    out = first_exit_filter(_series([100.00, 100.10]), 0.1)
    assert list(out.rates) == [100.00, 100.10]


def test_no_excursion_no_update():
    out = first_exit_filter(_series([100.00, 100.05, 100.01, 100.06]), 0.1)
    assert list(out.rates) == [100.00]


# -- oracle equivalence and structural invariants --------------------------------


def test_brute_force_oracle_equivalence():
    rng = np.random.default_rng(2024)
    for trial in range(100):
        n = int(rng.integers(1, 51))
        prices = 100.0 + np.round(np.cumsum(rng.normal(0.0, 0.06, n)), 2)
        prices = np.maximum(prices, 0.01)
        ticks = _series(prices)
        ours = first_exit_filter(ticks, 0.1)
        expected = _reference_filter_cents(prices.tolist())
        assert list(ours.times) == [float(i) for i in expected], f"trial {trial}"


def test_idempotence_on_own_output():
    ticks = synth_ticks(step_std=0.05, tick_interval=1.0, count=5000, seed=1)
    once = first_exit_filter(ticks, 0.1)
    again = first_exit_filter(TickSeries(times=once.times, prices=once.rates), 0.1)
    assert np.array_equal(once.times, again.times)
    assert np.array_equal(once.rates, again.rates)


def test_threshold_invariant_and_coarsening():
    ticks = synth_ticks(step_std=0.03, tick_interval=1.0, count=20_000, seed=3)
    out = first_exit_filter(ticks, 0.1)
    assert np.all(np.abs(np.diff(out.rates)) >= 0.1)
    assert len(out) <= len(ticks)
    assert out.durations.mean() >= np.diff(ticks.times).mean()


def test_epsilon_must_be_positive():
    with pytest.raises(ValidationError):
        first_exit_filter(_series([100.0, 101.0]), 0.0)


# -- durations -------------------------------------------------------------------


def test_durations_of_examples():
    f = FilteredSeries(times=np.array([0.0, 5.0, 20.0]), rates=np.array([1.0, 2.0, 3.0]), epsilon=0.5)
    assert list(durations_of(f)) == [5.0, 15.0]
    f2 = FilteredSeries(times=np.array([0.0, 1.0]), rates=np.array([1.0, 2.0]), epsilon=0.5)
    assert list(durations_of(f2)) == [1.0]


def test_durations_need_two_updates():
    f = FilteredSeries(times=np.array([0.0]), rates=np.array([1.0]), epsilon=0.5)
    with pytest.raises(ValidationError):
        durations_of(f)


# -- synthetic ticks ---------------------------------------------------------------


def test_synth_deterministic():
    a = synth_ticks(step_std=0.03, tick_interval=2.0, count=100, seed=7)
    b = synth_ticks(step_std=0.03, tick_interval=2.0, count=100, seed=7)
    assert np.array_equal(a.prices, b.prices)
    assert np.array_equal(a.times, b.times)
    assert a.times[1] - a.times[0] == 2.0


def test_constant_walk_single_update():
    ticks = synth_ticks(step_std=0.0, tick_interval=1.0, count=500, seed=0)
    assert len(first_exit_filter(ticks, 0.1)) == 1


def test_walk_first_exit_duration_scale():
    # band +-0.1, step std 0.03: mean first-exit time lands between 5 and 30
    # tick intervals (checked against direct simulation while choosing the band)
    ticks = synth_ticks(step_std=0.03, tick_interval=1.0, count=100_000, seed=42)
    out = first_exit_filter(ticks, 0.1)
    mean_ticks = out.durations.mean() / 1.0
    assert 5.0 < mean_ticks < 30.0


def test_tick_series_validation():
    with pytest.raises(ValidationError):
        TickSeries(times=np.array([0.0, 0.0]), prices=np.array([1.0, 2.0]))
    with pytest.raises(ValidationError):
        TickSeries(times=np.array([0.0, 1.0]), prices=np.array([1.0, -2.0]))
    with pytest.raises(ValidationError):
        TickSeries(times=np.array([]), prices=np.array([]))


# -- CSV ingestion -------------------------------------------------------------------


def test_ingest_two_rows():
    ticks = ingest_csv(io.StringIO("0,100.00\n5,100.12\n"))
    assert len(ticks) == 2
    assert list(ticks.times) == [0.0, 5.0]


def test_ingest_monotonicity_error_names_row():
    with pytest.raises(TickDataError) as excinfo:
        ingest_csv(io.StringIO("5,100.0\n4,100.1\n"))
    assert excinfo.value.row == 2


def test_ingest_empty_file():
    with pytest.raises(TickDataError):
        ingest_csv(io.StringIO(""))


def test_ingest_bad_price_names_row():
    with pytest.raises(TickDataError) as excinfo:
        ingest_csv(io.StringIO("0,100.0\n1,zero\n"))
    assert excinfo.value.row == 2
    with pytest.raises(TickDataError):
        ingest_csv(io.StringIO("0,-5.0\n"))


def test_ingest_field_count_error():
    with pytest.raises(TickDataError) as excinfo:
        ingest_csv(io.StringIO("0,100.0,extra\n"))
    assert excinfo.value.row == 1


def test_ingest_header_and_comments():
    ticks = ingest_csv(io.StringIO("# units: seconds\ntimestamp,price\n0,100.0\n2,100.2\n"))
    assert len(ticks) == 2


def test_ingest_iso_timestamps():
    text = "2024-01-01T00:00:00Z,100.0\n2024-01-01T00:00:05Z,100.2\n"
    ticks = ingest_csv(io.StringIO(text))
    assert ticks.times[1] - ticks.times[0] == pytest.approx(5.0)


def test_ingest_mixed_formats_rejected():
    text = "2024-01-01T00:00:00Z,100.0\n12345,100.2\n"
    with pytest.raises(TickDataError) as excinfo:
        ingest_csv(io.StringIO(text))
    assert "mixed" in str(excinfo.value)


def test_ingest_from_path(tmp_path):
    path = tmp_path / "ticks.csv"
    path.write_text("0,100.0\n1,100.3\n")
    assert len(ingest_csv(path)) == 2
