"""Command-line front end: filter, fit, analyze, simulate, paradox, pipeline.

Wires tick ingestion -> first-exit filtering -> duration fitting -> waiting
time analytics -> Monte Carlo verification, emitting machine-readable CSV
and JSON.  All times are seconds internally; ``--time-unit min`` rescales
report values only (data files always carry seconds and say so in a header
comment).  Stochastic commands require an explicit ``--seed`` and write
byte-identical outputs for identical flags.

Exit codes: 0 success, 2 validation error, 3 numeric failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

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
    QuadratureError,
    RenewalKitError,
    SamplingError,
    TickDataError,
    ValidationError,
)
from .fitting import empirical_waiting_stats_from_durations, fit_weibull
from .ratefilter import durations_of, first_exit_filter, ingest_csv
from .simulate import (
    empirical_waiting_stats,
    ks_distance,
    sample_waiting_general,
    sample_waiting_uniform,
)
from .waiting import (
    GeneralWaiting,
    WaitingTimeAnalysis,
    paradox_sweep,
    waiting_cdf_uniform,
    waiting_moments_general,
    waiting_pdf_uniform,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

_UNIT_SCALE = {"s": 1.0, "min": 60.0}


# ---------------------------------------------------------------------------
# spec-string parsing
# ---------------------------------------------------------------------------


def _parse_kv(body: str, spec: str) -> dict[str, str]:
    out = {}
    for part in body.split(","):
        if not part:
            continue
        if "=" not in part:
            raise ValidationError(f"bad parameter {part!r} in spec {spec!r}")
        key, value = part.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _float_param(params: dict, key: str, spec: str) -> float:
    if key not in params:
        raise ValidationError(f"spec {spec!r} is missing parameter {key!r}")
    try:
        return float(params.pop(key))
    except ValueError:
        raise ValidationError(f"parameter {key!r} in spec {spec!r} is not a number") from None


def _no_leftovers(params: dict, spec: str):
    if params:
        raise ValidationError(f"unknown parameters {sorted(params)} in spec {spec!r}")


def parse_duration_spec(spec: str) -> DurationLaw:
    """Parse ``weibull:m=..,a=..`` / ``exponential:mean=..`` / ``gamma:k=..,theta=..`` / ``empirical:file=..``."""
    name, _, body = spec.partition(":")
    name = name.strip().lower()
    params = _parse_kv(body, spec)
    if name == "weibull":
        law = Weibull(m=_float_param(params, "m", spec), a=_float_param(params, "a", spec))
    elif name == "exponential":
        law = Exponential(mean_duration=_float_param(params, "mean", spec))
    elif name == "gamma":
        law = GammaDist(k=_float_param(params, "k", spec), theta=_float_param(params, "theta", spec))
    elif name == "empirical":
        if "file" not in params:
            raise ValidationError(f"spec {spec!r} needs file=PATH")
        law = Empirical(_read_durations(params.pop("file")))
    else:
        raise ValidationError(
            f"unknown duration law {name!r}; expected weibull, exponential, gamma, or empirical"
        )
    _no_leftovers(params, spec)
    return law


def parse_observation_spec(spec: str) -> ObservationLaw:
    """Parse ``uniform`` / ``texp:lambda=..`` / ``window:p=..,T=..`` / ``empirical:file=..``."""
    name, _, body = spec.partition(":")
    name = name.strip().lower()
    params = _parse_kv(body, spec)
    if name == "uniform":
        law = UniformImproper()
    elif name == "texp":
        law = TruncatedExponential(lam=_float_param(params, "lambda", spec))
    elif name == "window":
        law = PowerWindow(p=_float_param(params, "p", spec), T=_float_param(params, "T", spec))
    elif name == "empirical":
        if "file" not in params:
            raise ValidationError(f"spec {spec!r} needs file=PATH")
        path = params.pop("file")
        bins = int(_float_param(params, "bins", spec)) if "bins" in params else 32
        law = EmpiricalObservation(_read_durations(path), bins=bins)
    else:
        raise ValidationError(
            f"unknown observation law {name!r}; expected uniform, texp, window, or empirical"
        )
    _no_leftovers(params, spec)
    return law


def _read_durations(path: str) -> np.ndarray:
    values = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                values.append(float(text))
            except ValueError:
                raise ValidationError(
                    f"{path}: line {lineno}: expected one duration per line, got {text!r}"
                ) from None
    if not values:
        raise ValidationError(f"{path}: no durations found")
    return np.array(values)


def parse_grid(text: str) -> list[float]:
    """``start:stop:step`` (inclusive, fp-rounded) or a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValidationError(f"grid {text!r} must be start:stop:step")
        start, stop, step = (float(p) for p in parts)
        if step <= 0 or stop < start:
            raise ValidationError(f"grid {text!r} must have step > 0 and stop >= start")
        n = int(round((stop - start) / step))
        grid = [round(start + k * step, 12) for k in range(n + 1)]
        return [g for g in grid if g <= stop + 1e-12]
    return [float(p) for p in text.split(",") if p.strip()]


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def _write_text(path: str, content: str):
    """Write atomically: temp file in the target directory, then replace."""
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or Path("."), prefix=target.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(content)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        return None if math.isnan(value) else value
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def _scaled_analysis(analysis: WaitingTimeAnalysis, unit: str) -> dict:
    """Report dict with times rescaled to the display unit (s or min)."""
    u = _UNIT_SCALE[unit]
    d = analysis.to_dict()
    d["mean_wait"] /= u
    d["second_moment"] /= u**2
    d["std"] /= u
    if d["mean_duration"] is not None:
        d["mean_duration"] /= u
    d["delta"] = [
        None if v is None else v / u ** (k + 1) for k, v in enumerate(d["delta"])
    ]
    if d["plug_in_mean_wait"] is not None:
        d["plug_in_mean_wait"] /= u
    d["time_unit"] = unit
    return d


def _analysis_csv(report: dict) -> str:
    cols = [
        "mean_wait",
        "second_moment",
        "std",
        "mean_duration",
        "delta1",
        "delta2",
        "delta3",
        "paradox",
        "method",
    ]
    flat = dict(report)
    delta = flat.pop("delta")
    flat["delta1"], flat["delta2"], flat["delta3"] = delta

    def cell(value):
        if value is None:
            return ""
        if isinstance(value, bool):
            return str(value).lower()
        if isinstance(value, float):
            return repr(value)
        return str(value)

    row = ",".join(cell(flat[c]) for c in cols)
    return f"# time_unit={report['time_unit']}\n" + ",".join(cols) + "\n" + row + "\n"


def _fmt(x: float) -> str:
    return repr(float(x))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_filter(args) -> int:
    ticks = ingest_csv(args.input)
    filtered = first_exit_filter(ticks, args.epsilon)

    lines = ["# time_unit=s, price_unit=quote-currency", "timestamp,rate"]
    lines += [f"{_fmt(t)},{_fmt(r)}" for t, r in zip(filtered.times, filtered.rates)]
    filtered_text = "\n".join(lines) + "\n"

    durations_text = None
    if args.durations_out:
        taus = durations_of(filtered)
        durations_text = "".join(f"{_fmt(v)}\n" for v in taus)

    _write_text(args.out, filtered_text)
    if durations_text is not None:
        _write_text(args.durations_out, durations_text)

    unit = _UNIT_SCALE[args.time_unit]
    mean_txt = (
        _fmt(float(np.mean(filtered.durations)) / unit) if len(filtered) > 1 else "n/a"
    )
    print(
        f"ticks={len(ticks)} updates={len(filtered)} "
        f"mean_duration={mean_txt} [{args.time_unit}]"
    )
    return EXIT_OK


def cmd_fit(args) -> int:
    taus = _read_durations(args.input)
    result = fit_weibull(taus)
    _write_text(args.out, _dump_json(result.to_dict()))
    print(f"n={result.n} m_hat={result.m_hat:.6g} a_hat={result.a_hat:.6g}")
    return EXIT_OK


def _curve_grid(d: DurationLaw, o: ObservationLaw, points: int):
    """Evaluation grid and density for the waiting-time curve."""
    uniform = isinstance(o, UniformImproper)
    cdf = (lambda s: waiting_cdf_uniform(d, s)) if uniform else None
    gw = None
    if not uniform:
        gw = GeneralWaiting(d, o)
        cdf = gw.cdf

    hi = 4.0 * d.raw_moment(1)
    while cdf(hi) < 1.0 - 1e-9 and hi < 1e12:
        hi *= 2.0
    # log-spaced below and above the mean duration: resolves both the steep
    # start (infinite slope for shape < 1) and the slow stretched tail
    scale = min(d.raw_moment(1), hi)
    n_geo = points // 3
    geo = scale * np.logspace(-9.0, 0.0, n_geo)
    upper = scale * np.logspace(0.0, math.log10(hi / scale), points - n_geo)[1:]
    grid = np.concatenate([[0.0], geo, upper])
    if uniform:
        dens = waiting_pdf_uniform(d, grid)
    else:
        dens = gw.pdf(grid)
    return grid, dens


def cmd_analyze(args) -> int:
    d = parse_duration_spec(args.dist)
    o = parse_observation_spec(args.obs)
    analysis = waiting_moments_general(d, o)
    report = _scaled_analysis(analysis, args.time_unit)
    report["dist"] = args.dist
    report["obs"] = args.obs

    curve_text = None
    if args.curve_out:
        grid, dens = _curve_grid(d, o, args.curve_points)
        lines = ["# time_unit=s (curve files always carry seconds)", "s,omega"]
        lines += [f"{_fmt(s)},{_fmt(v)}" for s, v in zip(grid, dens)]
        curve_text = "\n".join(lines) + "\n"

    if args.format == "json":
        _write_text(args.out, _dump_json(report))
    else:
        _write_text(args.out, _analysis_csv(report))
    if curve_text is not None:
        _write_text(args.curve_out, curve_text)
    print(
        f"mean_wait={report['mean_wait']:.6g} std={report['std']:.6g} "
        f"paradox={report['paradox']} [{args.time_unit}]"
    )
    return EXIT_OK


def cmd_simulate(args) -> int:
    d = parse_duration_spec(args.dist)
    o = parse_observation_spec(args.obs)
    if isinstance(o, UniformImproper):
        sample = sample_waiting_uniform(d, args.count, args.seed, scheme=args.scheme)
        cdf = lambda s: waiting_cdf_uniform(d, s)
    else:
        sample = sample_waiting_general(d, o, args.count, args.seed)
        cdf = GeneralWaiting(d, o).cdf
    stats = empirical_waiting_stats(sample) if len(sample) >= 2 else None
    ks = ks_distance(sample.waits, cdf) if len(sample) >= 2 else None

    lines = ["# time_unit=s", "tau,t,s"]
    lines += [
        f"{_fmt(tau)},{_fmt(t)},{_fmt(s)}"
        for tau, t, s in zip(sample.durations, sample.offsets, sample.waits)
    ]
    samples_text = "\n".join(lines) + "\n"

    stats_text = None
    if args.stats_out:
        analytic = waiting_moments_general(d, o)
        stats_text = _dump_json(
            {
                "count": len(sample),
                "seed": sample.seed,
                "scheme": sample.scheme,
                "acceptance_rate": sample.acceptance_rate,
                "ks_distance": ks,
                "empirical": _scaled_analysis(stats, args.time_unit) if stats else None,
                "analytic": _scaled_analysis(analytic, args.time_unit),
            }
        )

    _write_text(args.out, samples_text)
    if stats_text is not None:
        _write_text(args.stats_out, stats_text)
    ks_txt = f"{ks:.4f}" if ks is not None else "n/a"
    print(f"count={len(sample)} scheme={sample.scheme} ks={ks_txt}")
    return EXIT_OK


def cmd_paradox(args) -> int:
    grid = parse_grid(args.grid)
    rows = paradox_sweep(args.scale, grid)
    lines = ["# time_unit=s", "m,mean_duration,mean_wait,paradox"]
    lines += [
        f"{_fmt(r.m)},{_fmt(r.mean_duration)},{_fmt(r.mean_wait)},{str(r.paradox).lower()}"
        for r in rows
    ]
    _write_text(args.out, "\n".join(lines) + "\n")
    flips = sum(
        1 for i in range(1, len(rows)) if rows[i].paradox != rows[i - 1].paradox
    )
    print(f"points={len(rows)} paradox_flips={flips}")
    return EXIT_OK


def cmd_pipeline(args) -> int:
    stage = "ingest"
    try:
        ticks = ingest_csv(args.input)
        stage = "filter"
        filtered = first_exit_filter(ticks, args.epsilon)
        stage = "durations"
        taus = durations_of(filtered)
        stage = "fit"
        fit = fit_weibull(taus)
        stage = "analytic"
        fitted_law = fit.distribution()
        analytic = waiting_moments_general(fitted_law, UniformImproper())
        stage = "simulate"
        sample = sample_waiting_uniform(fitted_law, args.count, args.seed)
        monte_carlo = empirical_waiting_stats(sample)
        stage = "empirical"
        empirical = empirical_waiting_stats_from_durations(taus)
    except RenewalKitError as exc:
        raise type(exc)(f"pipeline stage {stage!r}: {exc}") from exc

    report = {
        "ticks": len(ticks),
        "updates": len(filtered),
        "epsilon": args.epsilon,
        "count": args.count,
        "seed": args.seed,
        "fit": fit.to_dict(),
        "waiting": {
            "analytic": _scaled_analysis(analytic, args.time_unit),
            "monte_carlo": _scaled_analysis(monte_carlo, args.time_unit),
            "empirical": _scaled_analysis(empirical, args.time_unit),
        },
    }
    _write_text(args.out, _dump_json(report))
    print(
        "w [{u}]: analytic={a:.6g} monte_carlo={m:.6g} empirical={e:.6g}".format(
            u=args.time_unit,
            a=report["waiting"]["analytic"]["mean_wait"],
            m=report["waiting"]["monte_carlo"]["mean_wait"],
            e=report["waiting"]["empirical"]["mean_wait"],
        )
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="renewalkit",
        description="Waiting-time analytics for event-driven (first-exit filtered) series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_time_unit(p):
        p.add_argument("--time-unit", choices=("s", "min"), default="s",
                       help="display unit for report values (data files stay in seconds)")

    p = sub.add_parser("filter", help="first-exit filter a tick CSV")
    p.add_argument("--input", required=True, help="tick CSV: rows 'timestamp,price'")
    p.add_argument("--epsilon", type=float, required=True, help="band half-width (price units)")
    p.add_argument("--out", required=True, help="filtered CSV output path")
    p.add_argument("--durations-out", help="durations output (one per line, seconds)")
    add_time_unit(p)
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("fit", help="Weibull MLE on a durations file")
    p.add_argument("--input", required=True, help="durations file (one per line, seconds)")
    p.add_argument("--out", required=True, help="fit JSON output path")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("analyze", help="waiting-time moments and curve for a distribution spec")
    p.add_argument("--dist", required=True,
                   help="weibull:m=..,a=.. | exponential:mean=.. | gamma:k=..,theta=.. | empirical:file=..")
    p.add_argument("--obs", default="uniform",
                   help="uniform | texp:lambda=.. | window:p=..,T=.. | empirical:file=..")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", required=True, help="report output path")
    p.add_argument("--curve-out", help="waiting-density curve CSV output path")
    p.add_argument("--curve-points", type=int, default=200,
                   help="number of curve points (default 200, for plotting)")
    add_time_unit(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="seeded Monte Carlo waiting-time sample")
    p.add_argument("--dist", required=True)
    p.add_argument("--obs", default="uniform")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--scheme", choices=("length-biased", "timeline"), default="length-biased",
                   help="sampling scheme for the uniform observation law")
    p.add_argument("--out", required=True, help="samples CSV output path (tau,t,s)")
    p.add_argument("--stats-out", help="stats JSON output path")
    add_time_unit(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("paradox", help="mean duration vs mean wait across Weibull shapes")
    p.add_argument("--grid", default="0.3:3.0:0.05",
                   help="shape grid: start:stop:step or comma list")
    p.add_argument("--scale", type=float, default=1.0, help="Weibull a parameter")
    p.add_argument("--out", required=True, help="sweep CSV output path")
    p.set_defaults(func=cmd_paradox)

    p = sub.add_parser("pipeline", help="filter -> fit -> analytic/MC/empirical comparison")
    p.add_argument("--input", required=True, help="tick CSV")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--count", type=int, required=True, help="Monte Carlo sample size")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="combined report JSON path")
    add_time_unit(p)
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TickDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (QuadratureError, CrossCheckError, FitError, SamplingError, OverflowError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
