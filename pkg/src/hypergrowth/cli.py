"""Command-line interface.

Subcommands: fit | segment | takeoff | ratio | distort-demo | generate |
milestones.  Every command is deterministic: identical inputs and flags give
byte-identical stdout, JSON and plot-data files (timestamps appear only under
--stamp).  Exit status 0 means the analysis completed (a negative takeoff
verdict is a result, not an error), 1 an input or domain failure, 2 a usage
error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__, report
from .errors import HypergrowthError
from .fitting import WEIGHTING_DIRECT, WEIGHTING_UNIFORM, compare_models, fit_hyperbolic
from .models import (
    ExponentialModel,
    HyperbolicModel,
    SyntheticSpec,
    generate,
    hyperbolic_value,
    milestone_time,
    singularity_time,
)
from .percapita import build_ratio, ratio_growth_rate, ratio_monotonicity, ratio_value
from .segmentation import detect_takeoff, segment
from .series import TimeSeries, Unit, ingest_csv, window, write_csv

UNIT_FLAGS = {
    "pop-billions": Unit.POP_BILLIONS,
    "gdp-billions": Unit.GDP_BILLIONS,
    "raw": Unit.DIMENSIONLESS,
}

# Fractions of the time span picked by the distortion demo, after the first
# point and before the final two: each step halves the remaining gap, which
# crowds the samples into the fast tail.
DISTORT_FRACTIONS = (0.5, 0.75, 0.875, 0.9375)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HypergrowthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypergrowth",
        description="Identify and analyse hyperbolic growth in time series.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write a JSON report here")
    common.add_argument("--stamp", action="store_true", help="embed a timestamp in reports")

    inputish = argparse.ArgumentParser(add_help=False)
    inputish.add_argument("--input", metavar="PATH", required=True, help="input CSV")
    inputish.add_argument("--window", metavar="LO:HI", help="restrict to years LO..HI")
    inputish.add_argument(
        "--unit", choices=sorted(UNIT_FLAGS), default="raw", help="canonical unit of the values"
    )
    inputish.add_argument(
        "--scale", type=float, default=1.0, metavar="FACTOR",
        help="multiply values by FACTOR to reach the canonical unit",
    )

    p = sub.add_parser("fit", parents=[common, inputish], help="fit a hyperbolic model")
    p.add_argument(
        "--weighting", choices=[WEIGHTING_UNIFORM, WEIGHTING_DIRECT],
        default=WEIGHTING_UNIFORM,
    )
    p.add_argument("--compare", action="store_true", help="also fit and compare an exponential")
    p.add_argument("--plot-data", metavar="DIR", help="write plot-ready CSV files here")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("segment", parents=[common, inputish],
                       help="search for piecewise-hyperbolic structure")
    p.add_argument("--max-segments", type=int, default=3)
    p.add_argument("--penalty", type=float, default=None,
                   help="cost per breakpoint (default: BIC-flavoured)")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("takeoff", parents=[common, inputish],
                       help="search for a stagnation-to-growth takeoff")
    p.set_defaults(func=cmd_takeoff)

    p = sub.add_parser("ratio", parents=[common],
                       help="analyse the ratio of two hyperbolic trajectories")
    p.add_argument("--num-input", metavar="PATH", help="numerator CSV (e.g. GDP)")
    p.add_argument("--num-window", metavar="LO:HI")
    p.add_argument("--num-unit", choices=sorted(UNIT_FLAGS), default="raw")
    p.add_argument("--num-scale", type=float, default=1.0)
    p.add_argument("--den-input", metavar="PATH", help="denominator CSV (e.g. population)")
    p.add_argument("--den-window", metavar="LO:HI")
    p.add_argument("--den-unit", choices=sorted(UNIT_FLAGS), default="raw")
    p.add_argument("--den-scale", type=float, default=1.0)
    p.add_argument("--num-a", type=float, help="numerator a (bypasses --num-input)")
    p.add_argument("--num-k", type=float)
    p.add_argument("--den-a", type=float, help="denominator a (bypasses --den-input)")
    p.add_argument("--den-k", type=float)
    p.add_argument("--grid", metavar="LO:HI:STEP", help="evaluation grid (default: 21 points)")
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("distort-demo", parents=[common, inputish],
                       help="emit a full series and a strategic subsample")
    p.add_argument("--plot-data", metavar="DIR", required=True,
                   help="directory for the emitted files")
    p.set_defaults(func=cmd_distort_demo)

    p = sub.add_parser("generate", parents=[common], help="write a synthetic CSV")
    p.add_argument("--model", choices=["hyperbolic", "exponential"], default="hyperbolic")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--from", dest="t_from", type=float, required=True, metavar="YEAR")
    p.add_argument("--to", dest="t_to", type=float, required=True, metavar="YEAR")
    p.add_argument("--step", type=float, required=True, metavar="YEARS")
    p.add_argument("--noise", type=float, default=0.0, metavar="REL_SIGMA")
    p.add_argument("--seed", type=int, default=0, metavar="N")
    p.add_argument("--unit", choices=sorted(UNIT_FLAGS), default="raw")
    p.add_argument("--label", default="")
    p.add_argument("--output", metavar="PATH", help="CSV destination (default stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("milestones", parents=[common],
                       help="years at which a model crosses given size levels")
    p.add_argument("--a", type=float, help="model a (bypasses --input)")
    p.add_argument("--k", type=float)
    p.add_argument("--input", metavar="PATH", help="fit the model from this CSV instead")
    p.add_argument("--window", metavar="LO:HI")
    p.add_argument("--unit", choices=sorted(UNIT_FLAGS), default="raw")
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--levels", default="1,2,3,4,5,6,7",
                   help="comma-separated size levels (canonical units)")
    p.set_defaults(func=cmd_milestones)

    return parser


def _parse_window(text: Optional[str], parser_error) -> Optional[tuple[float, float]]:
    if text is None:
        return None
    try:
        lo_s, hi_s = text.split(":")
        lo, hi = float(lo_s), float(hi_s)
    except ValueError:
        parser_error(f"--window must look like LO:HI, got {text!r}")
    if lo >= hi:
        parser_error(f"--window requires LO < HI, got {text!r}")
    return lo, hi


def _usage_error(message: str):
    print(f"usage error: {message}", file=sys.stderr)
    raise SystemExit(2)


def _load_series(path: str, unit_flag: str, scale: float,
                 window_text: Optional[str], label: str = "") -> TimeSeries:
    win = _parse_window(window_text, _usage_error)
    with open(path, "rb") as fh:
        series = ingest_csv(
            fh, input_unit=UNIT_FLAGS[unit_flag], scale_factor=scale,
            label=label or Path(path).stem,
        )
    if win is not None:
        series = window(series, *win)
    return series


def _input_desc(args, window_used: tuple[float, float]) -> dict:
    return {
        "path": args.input,
        "unit": UNIT_FLAGS[args.unit].value,
        "scale": args.scale,
        "window": list(window_used),
    }


def _emit(args, rep: dict, text: str) -> None:
    sys.stdout.write(text)
    if args.json:
        Path(args.json).write_text(report.render_json(rep), encoding="utf-8")


def cmd_fit(args) -> int:
    series = _load_series(args.input, args.unit, args.scale, args.window)
    rep = fit_hyperbolic(series, args.weighting)
    model: HyperbolicModel = rep.model
    sing = singularity_time(model) if model.k > 0 else None

    lines = [
        f"hyperbolic fit: {series.label}",
        f"  window       {report.fmt(rep.window[0])} .. {report.fmt(rep.window[1])}"
        f"  (n = {rep.diagnostics.n})",
        f"  a            {report.fmt(model.a)}",
        f"  k            {report.fmt(model.k)}",
    ]
    if sing is not None:
        lines.append(f"  singularity  {report.fmt(sing)}")
    d = rep.diagnostics
    lines.append(f"  r^2          {report.fmt(d.r_squared)}")
    lines.append(f"  sse (recip)  {report.fmt(d.sse_transform)}")
    lines.append(f"  sse (direct) {report.fmt(d.sse_direct)}")
    lines.append(
        f"  max |resid|/model  {report.fmt(d.max_rel_resid)} at year "
        f"{report.fmt(d.max_rel_resid_year)}"
    )
    results = {"fit": report.fit_report_dict(rep, singularity=sing)}

    if args.compare:
        cmp = compare_models(series)
        results["comparison"] = report.comparison_dict(cmp)
        lines.append(
            f"  preferred model  {cmp.preferred} "
            f"(sse ratio exp/hyp = {report.fmt(cmp.ratio)})"
        )

    if args.plot_data:
        _write_fit_plot_data(Path(args.plot_data), series, model)
        lines.append(f"  plot data written to {args.plot_data}")

    doc = report.make_report(
        "fit", _input_desc(args, rep.window),
        {"weighting": args.weighting, "compare": bool(args.compare)},
        results, stamp=args.stamp,
    )
    _emit(args, doc, "\n".join(lines) + "\n")
    return 0


def _write_fit_plot_data(outdir: Path, series: TimeSeries, model: HyperbolicModel) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    model_vals = hyperbolic_value(model, series.years)
    with open(outdir / "fit_direct.csv", "w", encoding="utf-8") as fh:
        fh.write("t,value,model\n")
        for t, v, m in zip(series.years, series.values, model_vals):
            fh.write(f"{float(t)!r},{float(v)!r},{float(m)!r}\n")
    recip_line = model.a - model.k * series.years
    with open(outdir / "fit_reciprocal.csv", "w", encoding="utf-8") as fh:
        fh.write("t,reciprocal_value,reciprocal_model\n")
        for t, v, m in zip(series.years, 1.0 / series.values, recip_line):
            fh.write(f"{float(t)!r},{float(v)!r},{float(m)!r}\n")


def cmd_segment(args) -> int:
    series = _load_series(args.input, args.unit, args.scale, args.window)
    result = segment(series, args.max_segments, args.penalty)

    lines = [f"segmentation: {series.label} ({len(result.segments)} segment(s))"]
    for i, seg in enumerate(result.segments, start=1):
        m = seg.fit.model
        sing = f", singularity {report.fmt(m.a / m.k)}" if m.k > 0 else ""
        lines.append(
            f"  segment {i}: years {report.fmt(seg.window[0])} .. "
            f"{report.fmt(seg.window[1])}  a = {report.fmt(m.a)}, "
            f"k = {report.fmt(m.k)}{sing}  (n = {seg.fit.diagnostics.n})"
        )
    for ev in result.transitions:
        lines.append(
            f"  transition: {ev.kind.value} over [{report.fmt(ev.window[0])}, "
            f"{report.fmt(ev.window[1])}], t ~ {report.fmt(ev.t_estimate)}, "
            f"k-ratio {report.fmt(ev.evidence['score'])}"
        )
    lines.append(
        f"  total sse (recip) {report.fmt(result.total_sse)}, "
        f"penalty {report.fmt(result.penalty_used)}"
    )

    doc = report.make_report(
        "segment", _input_desc(args, series.span),
        {"max_segments": args.max_segments, "penalty": args.penalty},
        report.segmentation_dict(result), stamp=args.stamp,
    )
    _emit(args, doc, "\n".join(lines) + "\n")
    return 0


def cmd_takeoff(args) -> int:
    series = _load_series(args.input, args.unit, args.scale, args.window)
    verdict = detect_takeoff(series)

    ev = verdict.evidence
    if verdict.found:
        head = f"takeoff at ~ {report.fmt(verdict.t)}"
    else:
        head = "no takeoff: stagnation precondition not met"
    lines = [
        head,
        f"  best split at {report.fmt(ev['t_split'])}: slope ratio "
        f"{report.fmt(ev['slope_ratio'])} (needs >= {report.fmt(ev['slope_factor'])}), "
        f"pre-break reciprocal drop {report.fmt(ev['stagnation_drop'])} "
        f"(stagnation below {report.fmt(ev['stagnation_limit'])})",
    ]
    doc = report.make_report(
        "takeoff", _input_desc(args, series.span), {},
        report.takeoff_dict(verdict), stamp=args.stamp,
    )
    _emit(args, doc, "\n".join(lines) + "\n")
    return 0


def _ratio_side(args, side: str) -> tuple[HyperbolicModel, Optional[float], dict]:
    """Model plus earliest data year (None when given as parameters)."""
    a = getattr(args, f"{side}_a")
    k = getattr(args, f"{side}_k")
    path = getattr(args, f"{side}_input")
    if a is not None or k is not None:
        if a is None or k is None or path is not None:
            _usage_error(f"give either --{side}-input or both --{side}-a/--{side}-k")
        return HyperbolicModel(a, k), None, {"a": a, "k": k}
    if path is None:
        _usage_error(f"missing --{side}-input (or --{side}-a/--{side}-k)")
    series = _load_series(
        path, getattr(args, f"{side}_unit"), getattr(args, f"{side}_scale"),
        getattr(args, f"{side}_window"),
    )
    rep = fit_hyperbolic(series)
    desc = {
        "path": path,
        "unit": UNIT_FLAGS[getattr(args, f"{side}_unit")].value,
        "window": list(rep.window),
        "a": rep.model.a,
        "k": rep.model.k,
    }
    return rep.model, float(series.years[0]), desc


def cmd_ratio(args) -> int:
    num_model, num_start, num_desc = _ratio_side(args, "num")
    den_model, den_start, den_desc = _ratio_side(args, "den")

    if args.grid is not None:
        try:
            lo_s, hi_s, step_s = args.grid.split(":")
            lo, hi, step = float(lo_s), float(hi_s), float(step_s)
        except ValueError:
            _usage_error(f"--grid must look like LO:HI:STEP, got {args.grid!r}")
        if step <= 0 or lo >= hi:
            _usage_error("--grid requires LO < HI and STEP > 0")
        count = int(np.floor((hi - lo) / step * (1.0 + 1e-12))) + 1
        grid = lo + step * np.arange(count)
    else:
        grid = None

    starts = [s for s in (num_start, den_start) if s is not None]
    t_lo = max(starts) if starts else (float(grid[0]) if grid is not None else 0.0)
    ratio = build_ratio(num_model, den_model, t_lo)
    if grid is None:
        grid = np.linspace(ratio.domain[0], ratio.domain[1], 21)

    values = ratio_value(ratio, grid)
    rates = ratio_growth_rate(ratio, grid)
    verdict = ratio_monotonicity(ratio)

    lines = [
        "ratio analysis",
        f"  numerator    a = {report.fmt(num_model.a)}, k = {report.fmt(num_model.k)}, "
        f"singularity {report.fmt(singularity_time(num_model))}",
        f"  denominator  a = {report.fmt(den_model.a)}, k = {report.fmt(den_model.k)}, "
        f"singularity {report.fmt(singularity_time(den_model))}",
        f"  domain       {report.fmt(ratio.domain[0])} .. {report.fmt(ratio.domain[1])}",
        f"  monotone     {verdict.monotone} (discriminant {report.fmt(verdict.discriminant)})",
        "  t, ratio, growth_rate",
    ]
    for t, v, g in zip(grid, values, rates):
        lines.append(f"  {report.fmt(float(t))}, {report.fmt(float(v))}, {report.fmt(float(g))}")

    doc = report.make_report(
        "ratio",
        {"numerator": num_desc, "denominator": den_desc},
        {"grid": [float(grid[0]), float(grid[-1]), len(grid)]},
        {
            "domain": list(ratio.domain),
            "monotone": verdict.monotone,
            "discriminant": verdict.discriminant,
            "table": [
                {"t": float(t), "ratio": float(v), "growth_rate": float(g)}
                for t, v, g in zip(grid, values, rates)
            ],
        },
        stamp=args.stamp,
    )
    _emit(args, doc, "\n".join(lines) + "\n")
    return 0


def cmd_distort_demo(args) -> int:
    series = _load_series(args.input, args.unit, args.scale, args.window)
    n = len(series)
    if n < 10:
        raise HypergrowthError(f"distort-demo needs at least 10 points, got {n}")

    t0, t1 = series.span
    targets = [t0 + f * (t1 - t0) for f in DISTORT_FRACTIONS]
    idx = {0, n - 2, n - 1}
    for target in targets:
        idx.add(int(np.argmin(np.abs(series.years - target))))
    chosen = sorted(idx)

    outdir = Path(args.plot_data)
    outdir.mkdir(parents=True, exist_ok=True)
    with open(outdir / "distort_full.csv", "w", encoding="utf-8") as fh:
        fh.write("t,value\n")
        for t, v in zip(series.years, series.values):
            fh.write(f"{float(t)!r},{float(v)!r}\n")
    with open(outdir / "distort_subsample.csv", "w", encoding="utf-8") as fh:
        fh.write("t,value\n")
        for i in chosen:
            fh.write(f"{float(series.years[i])!r},{float(series.values[i])!r}\n")
    caption = (
        "The subsample keeps only a few strategically placed points: the first\n"
        "point, points near 50%, 75%, 87.5% and 93.75% of the time span, and the\n"
        "last two points. Joined by straight lines they compress all visible\n"
        "change into the final stretch, so a smooth monotonic trajectory reads\n"
        "as a long flat epoch followed by an explosion. The full series shows\n"
        "no such break; the impression is an artefact of the subsampling.\n"
    )
    (outdir / "distort_caption.txt").write_text(caption, encoding="utf-8")

    lines = [
        f"distortion demo: kept {len(chosen)} of {n} points",
        f"  files written to {args.plot_data}",
    ]
    doc = report.make_report(
        "distort-demo", _input_desc(args, series.span), {},
        {
            "n_full": n,
            "subsample_years": [float(series.years[i]) for i in chosen],
        },
        stamp=args.stamp,
    )
    _emit(args, doc, "\n".join(lines) + "\n")
    return 0


def cmd_generate(args) -> int:
    if args.model == "hyperbolic":
        model = HyperbolicModel(args.a, args.k)
    else:
        model = ExponentialModel(args.a, args.k)
    spec = SyntheticSpec(
        model=model, t_start=args.t_from, t_end=args.t_to, step=args.step,
        noise_rel=args.noise, seed=args.seed,
        unit=UNIT_FLAGS[args.unit], label=args.label,
    )
    series = generate(spec)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            write_csv(series, fh)
        sys.stdout.write(f"wrote {len(series)} points to {args.output}\n")
    else:
        write_csv(series, sys.stdout)
    if args.json:
        doc = report.make_report(
            "generate",
            {"model": report.model_dict(model)},
            {
                "from": args.t_from, "to": args.t_to, "step": args.step,
                "noise": args.noise, "seed": args.seed,
            },
            {"n": len(series), "output": args.output},
            stamp=args.stamp,
        )
        Path(args.json).write_text(report.render_json(doc), encoding="utf-8")
    return 0


def cmd_milestones(args) -> int:
    try:
        levels = [float(x) for x in args.levels.split(",") if x.strip()]
    except ValueError:
        _usage_error(f"--levels must be comma-separated numbers, got {args.levels!r}")
    if not levels:
        _usage_error("--levels must name at least one level")

    if args.a is not None or args.k is not None:
        if args.a is None or args.k is None or args.input is not None:
            _usage_error("give either --input or both --a/--k")
        model = HyperbolicModel(args.a, args.k)
        input_desc = {"a": args.a, "k": args.k}
    else:
        if args.input is None:
            _usage_error("missing --input (or --a/--k)")
        series = _load_series(args.input, args.unit, args.scale, args.window)
        rep = fit_hyperbolic(series)
        model = rep.model
        input_desc = {
            "path": args.input, "unit": UNIT_FLAGS[args.unit].value,
            "window": list(rep.window), "a": model.a, "k": model.k,
        }

    crossings = [{"level": lv, "year": milestone_time(model, lv)} for lv in levels]
    lines = [
        f"milestone crossings for a = {report.fmt(model.a)}, k = {report.fmt(model.k)} "
        f"(singularity {report.fmt(singularity_time(model))})",
        "  level, year",
    ]
    for c in crossings:
        lines.append(f"  {report.fmt(c['level'])}, {report.fmt(c['year'])}")
    doc = report.make_report(
        "milestones", input_desc, {"levels": levels},
        {"crossings": crossings, "singularity": singularity_time(model)},
        stamp=args.stamp,
    )
    _emit(args, doc, "\n".join(lines) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
