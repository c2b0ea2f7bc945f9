"""Structured analysis reports.

Every CLI command assembles one report dict with a fixed top-level layout:

    schema_version   int, currently 1
    tool_version     package version string
    command          subcommand name
    input            description of the data consumed (path, unit, window, ...)
    parameters       the knobs the command ran with
    results          command-specific payload
    generated_at     RFC-ish timestamp, present only when stamping is requested

Reports are rendered to JSON with sorted keys and full float precision, so a
rerun on identical inputs produces byte-identical output.  Text rendering
rounds to 4 significant figures.
"""

from __future__ import annotations

import json
import time
from typing import Any, Optional

from . import __version__
from .fitting import FitDiagnostics, FitReport, ModelComparison
from .models import ExponentialModel, HyperbolicModel
from .segmentation import SegmentationResult, TakeoffVerdict

SCHEMA_VERSION = 1


def fmt(x: Any) -> str:
    """4-significant-figure rendering for text tables."""
    if isinstance(x, float):
        return f"{x:.4g}"
    return str(x)


def make_report(
    command: str,
    input_desc: dict,
    parameters: dict,
    results: dict,
    stamp: bool = False,
) -> dict:
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": command,
        "input": input_desc,
        "parameters": parameters,
        "results": results,
    }
    if stamp:
        report["generated_at"] = time.strftime("%Y-%m-%dT%H:%M:%S%z")
    return report


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def model_dict(model) -> dict:
    if isinstance(model, HyperbolicModel):
        return {"family": "hyperbolic", "a": model.a, "k": model.k, "kind": model.kind}
    if isinstance(model, ExponentialModel):
        return {"family": "exponential", "a": model.a, "k": model.k}
    raise TypeError(f"unknown model type {type(model)!r}")


def diagnostics_dict(d: FitDiagnostics) -> dict:
    return {
        "sse_transform": d.sse_transform,
        "sse_direct": d.sse_direct,
        "r_squared": d.r_squared,
        "max_rel_resid": d.max_rel_resid,
        "max_rel_resid_year": d.max_rel_resid_year,
        "n": d.n,
    }


def fit_report_dict(rep: FitReport, singularity: Optional[float] = None) -> dict:
    out = {
        "model": model_dict(rep.model),
        "window": list(rep.window),
        "weighting": rep.weighting,
        "diagnostics": diagnostics_dict(rep.diagnostics),
    }
    if singularity is not None:
        out["singularity"] = singularity
    return out


def comparison_dict(cmp: ModelComparison) -> dict:
    return {
        "preferred": cmp.preferred,
        "sse_direct_hyperbolic": cmp.sse_direct_hyperbolic,
        "sse_direct_exponential": cmp.sse_direct_exponential,
        "ratio": cmp.ratio,
    }


def segmentation_dict(result: SegmentationResult) -> dict:
    segments = []
    for seg in result.segments:
        k = seg.fit.model.k
        segments.append(
            {
                "window": list(seg.window),
                "fit": fit_report_dict(
                    seg.fit, singularity=(seg.fit.model.a / k if k > 0 else None)
                ),
            }
        )
    transitions = [
        {
            "kind": ev.kind.value,
            "t_estimate": ev.t_estimate,
            "window": list(ev.window),
            "evidence": ev.evidence,
        }
        for ev in result.transitions
    ]
    return {
        "segments": segments,
        "transitions": transitions,
        "breakpoints": list(result.breakpoints),
        "total_sse": result.total_sse,
        "penalty_used": result.penalty_used,
    }


def takeoff_dict(verdict: TakeoffVerdict) -> dict:
    return {"found": verdict.found, "t": verdict.t, "evidence": verdict.evidence}
