"""Piecewise-hyperbolic structure discovery.

Breakpoints are searched exhaustively at data years (segments split between
consecutive points) with a penalized total cost: reciprocal-space SSE summed
over segments plus ``penalty`` per breakpoint.  The default penalty is
BIC-flavoured, 2 * residual-variance * ln(n), floored so that residuals at
the level of floating-point noise never justify a split.  Candidate segment
costs come from the compiled kernel; the chosen segments are then refitted
with the compensated-summation path, so every reported number is independent
of which kernel backend produced the search costs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from . import _kernels
from .errors import SegmentationError
from .fitting import FitReport, _line_fit, fit_hyperbolic
from .models import HyperbolicModel, singularity_time
from .series import TimeSeries, window as window_series

MIN_SEGMENT_POINTS = 4
TAKEOFF_SLOPE_FACTOR = 3.0
TAKEOFF_STAGNATION_FRAC = 0.10

# Relative residual levels below this are treated as numerically zero when
# the default penalty is derived, so exact synthetic data cannot be split on
# rounding noise alone.
_NOISE_FLOOR_REL = 1e-12


class TransitionKind(str, Enum):
    SHIFT_FASTER = "shift-to-faster-hyperbolic"
    SHIFT_SLOWER = "shift-to-slower-hyperbolic"
    DIVERSION_SLOWER = "diversion-slower"
    DIVERSION_FASTER = "diversion-faster"
    TAKEOFF_CANDIDATE = "takeoff-candidate"


@dataclass(frozen=True)
class Segment:
    """A fitted hyperbolic stretch covering at least MIN_SEGMENT_POINTS points."""

    window: tuple[float, float]
    fit: FitReport


@dataclass(frozen=True)
class TransitionEvent:
    kind: TransitionKind
    t_estimate: float
    window: tuple[float, float]
    evidence: dict


@dataclass(frozen=True)
class SegmentationResult:
    segments: tuple[Segment, ...]
    transitions: tuple[TransitionEvent, ...]
    total_sse: float
    penalty_used: float

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """First year of every segment after the first."""
        return tuple(seg.window[0] for seg in self.segments[1:])


@dataclass(frozen=True)
class Departure:
    t_departure: Optional[float]
    direction: Optional[str]  # "slower" | "faster"


@dataclass(frozen=True)
class TakeoffVerdict:
    found: bool
    t: Optional[float]
    evidence: dict


def default_penalty(series: TimeSeries) -> float:
    """2 * reciprocal-space residual variance of the single-segment fit * ln n.

    The variance is floored at (1e-12 * rms reciprocal level)^2 so that a
    noiseless series, whose only residuals are rounding error, keeps a
    strictly positive penalty large enough to reject spurious splits.
    """
    rep = fit_hyperbolic(series)
    n = len(series)
    var = rep.diagnostics.sse_transform / (n - 2) if n > 2 else 0.0
    recip = 1.0 / series.values
    rms = math.sqrt(float(np.mean(recip * recip)))
    floor = (_NOISE_FLOOR_REL * rms) ** 2
    return 2.0 * max(var, floor) * math.log(n)


def _normalized_axes(series: TimeSeries) -> tuple[np.ndarray, np.ndarray]:
    # Times mapped to [-1, 1]; SSE of a line fit is invariant under affine
    # reparametrizations of t, and conditioning is much better.
    t = series.years
    mid = 0.5 * (t[0] + t[-1])
    half = 0.5 * (t[-1] - t[0])
    return (t - mid) / half, 1.0 / series.values


def segment(
    series: TimeSeries, max_segments: int, penalty: Optional[float] = None
) -> SegmentationResult:
    """Optimal piecewise-hyperbolic partition with at most ``max_segments`` pieces.

    Minimizes total reciprocal-space SSE + penalty * (number of breakpoints)
    over every split of the data at inter-point boundaries, each piece
    holding at least MIN_SEGMENT_POINTS points.  Deterministic: cost ties are
    resolved toward fewer segments, then toward the earliest breakpoints.
    """
    n = len(series)
    if max_segments < 1:
        raise SegmentationError("max_segments must be at least 1")
    if n < MIN_SEGMENT_POINTS * max_segments:
        raise SegmentationError(
            f"{n} points are insufficient for {max_segments} segments "
            f"(need {MIN_SEGMENT_POINTS} per segment)"
        )
    if penalty is None:
        penalty = default_penalty(series)
    elif penalty < 0:
        raise SegmentationError("penalty must be non-negative")

    u, recip = _normalized_axes(series)
    cost = _kernels.sse_matrix(u, recip, MIN_SEGMENT_POINTS)

    # Dynamic program over segment counts; dp[s] holds the cheapest cost of
    # covering points [0, j) with s segments.
    dp = [np.full(n + 1, np.inf)]
    parents: list[np.ndarray] = [np.zeros(n + 1, dtype=np.intp)]
    dp.append(cost[0].copy())
    parents.append(np.zeros(n + 1, dtype=np.intp))
    for s in range(2, max_segments + 1):
        stacked = dp[s - 1][:, None] + cost
        arg = np.argmin(stacked, axis=0)
        best = stacked[arg, np.arange(n + 1)]
        dp.append(best)
        parents.append(arg)

    totals = [dp[s][n] + penalty * (s - 1) for s in range(1, max_segments + 1)]
    best_s = 1 + min(range(len(totals)), key=lambda i: totals[i])
    if not math.isfinite(totals[best_s - 1]):
        raise SegmentationError("no admissible partition found")

    bounds = [n]
    j = n
    for s in range(best_s, 1, -1):
        j = int(parents[s][j])
        bounds.append(j)
    bounds.append(0)
    bounds.reverse()

    segments = []
    for i0, i1 in zip(bounds, bounds[1:]):
        sub = series.take(i0, i1)
        segments.append(Segment(window=sub.span, fit=fit_hyperbolic(sub)))

    transitions = tuple(
        classify_transition(a, b) for a, b in zip(segments, segments[1:])
    )
    total_sse = math.fsum(s.fit.diagnostics.sse_transform for s in segments)
    return SegmentationResult(tuple(segments), transitions, total_sse, penalty)


def classify_transition(before: Segment, after: Segment) -> TransitionEvent:
    """Label the hand-over between two fitted hyperbolic segments.

    The score is the speed-change factor max(k_after/k_before, k_before/k_after),
    so a shift to 4.2x faster growth and a shift to 4.2x slower growth both
    score 4.2.  Equal slopes are classified shift-to-faster with score 1 and
    an explicit degeneracy note.
    """
    if before.window[1] > after.window[0]:
        raise SegmentationError("segments out of order: 'before' must end first")
    k_before = before.fit.model.k
    k_after = after.fit.model.k
    evidence = {
        "slope_before": -k_before,
        "slope_after": -k_after,
        "score": _speed_change(k_before, k_after),
    }
    if k_after == k_before:
        kind = TransitionKind.SHIFT_FASTER
        evidence["note"] = "degenerate: identical slopes on both sides"
    elif k_after > k_before:
        kind = TransitionKind.SHIFT_FASTER
    else:
        kind = TransitionKind.SHIFT_SLOWER
    t_a, t_b = before.window[1], after.window[0]
    return TransitionEvent(kind, 0.5 * (t_a + t_b), (t_a, t_b), evidence)


def _speed_change(k_before: float, k_after: float) -> float:
    hi, lo = max(abs(k_after), abs(k_before)), min(abs(k_after), abs(k_before))
    return math.inf if lo == 0.0 else hi / lo


def detect_departure(
    series: TimeSeries, fit_window: tuple[float, float], threshold_rel: float
) -> Departure:
    """First year from which the data persistently leave the fitted trajectory.

    Fits a hyperbolic model on ``fit_window`` and scans forward: the departure
    is the earliest year whose signed relative residual (S_data - S_model) /
    S_model exceeds ``threshold_rel`` in magnitude for itself and every later
    point, all with one sign.  The persistence rule makes single-point
    anomalies (isolated outliers) invisible.
    """
    if threshold_rel <= 0:
        raise SegmentationError("threshold_rel must be positive")
    sub = window_series(series, *fit_window)
    if len(sub) < MIN_SEGMENT_POINTS:
        raise SegmentationError(
            f"fit window must contain at least {MIN_SEGMENT_POINTS} points"
        )
    rep = fit_hyperbolic(sub)
    model: HyperbolicModel = rep.model

    tail = series.years > fit_window[1]
    if not np.any(tail):
        raise SegmentationError("series does not extend beyond the fit window")
    years = series.years[tail]
    data = series.values[tail]

    resid = np.empty(years.size)
    for i, (t, s_data) in enumerate(zip(years, data)):
        denom = model.a - model.k * t
        if denom <= 0.0:
            # Model has already blown up; any finite datum lies infinitely
            # below it, which reads as a diversion to a slower trajectory.
            resid[i] = -math.inf
        else:
            s_model = 1.0 / denom
            resid[i] = (s_data - s_model) / s_model

    exceeds = np.abs(resid) > threshold_rel
    for i in range(years.size):
        run = resid[i:]
        if np.all(exceeds[i:]) and (np.all(run < 0) or np.all(run > 0)):
            direction = "slower" if run[0] < 0 else "faster"
            return Departure(float(years[i]), direction)
    return Departure(None, None)


def detect_takeoff(
    series: TimeSeries,
    window: Optional[tuple[float, float]] = None,
    slope_factor: float = TAKEOFF_SLOPE_FACTOR,
    stagnation_frac: float = TAKEOFF_STAGNATION_FRAC,
) -> TakeoffVerdict:
    """Search for a transition from stagnation to growth.

    The data are split at the two-piece breakpoint with the least total
    reciprocal-space SSE, and a takeoff is declared only when both hold
    there: (i) the reciprocal-space slope magnitude increases by at least
    ``slope_factor`` into a falling (growth) slope, and (ii) the pre-break
    stretch is stagnant, meaning its fitted reciprocal drop |k| * span stays
    below ``stagnation_frac`` of its mean reciprocal level.  A pure
    hyperbolic series has one straight reciprocal line and can satisfy
    neither a prominent slope change nor stagnation-then-growth, so the
    verdict on such data is always negative.
    """
    sub = series if window is None else window_series(series, *window)
    n = len(sub)
    if n < 2 * MIN_SEGMENT_POINTS:
        raise SegmentationError(
            f"takeoff search needs at least {2 * MIN_SEGMENT_POINTS} points"
        )
    u, recip = _normalized_axes(sub)
    cost = _kernels.sse_matrix(u, recip, MIN_SEGMENT_POINTS)
    two_piece = cost[0, MIN_SEGMENT_POINTS : n - MIN_SEGMENT_POINTS + 1] + cost[
        MIN_SEGMENT_POINTS : n - MIN_SEGMENT_POINTS + 1, n
    ]
    b = MIN_SEGMENT_POINTS + int(np.argmin(two_piece))

    before = sub.take(0, b)
    after = sub.take(b, n)
    rep_before = _reciprocal_line(before)
    rep_after = _reciprocal_line(after)
    slope_before, slope_after = rep_before[1], rep_after[1]

    sb, sa = abs(slope_before), abs(slope_after)
    if sb == 0.0 and sa == 0.0:
        ratio = 1.0
    elif sb == 0.0:
        ratio = math.inf
    else:
        ratio = sa / sb
    prominent = bool(ratio >= slope_factor and slope_after < 0.0)

    span = float(before.years[-1] - before.years[0])
    mean_level = float(np.mean(1.0 / before.values))
    drop = abs(slope_before) * span
    stagnant = bool(drop < stagnation_frac * mean_level)

    found = prominent and stagnant
    t_split = 0.5 * float(sub.years[b - 1] + sub.years[b])
    evidence = {
        "t_split": t_split,
        "slope_before": slope_before,
        "slope_after": slope_after,
        "slope_ratio": ratio,
        "slope_factor": slope_factor,
        "stagnation_drop": drop,
        "stagnation_limit": stagnation_frac * mean_level,
        "prominent_change": prominent,
        "stagnant_before": stagnant,
    }
    return TakeoffVerdict(found, t_split if found else None, evidence)


def _reciprocal_line(sub: TimeSeries) -> tuple[float, float]:
    """(intercept, slope) of the reciprocal values, tolerating zero slope."""
    return _line_fit(sub.years, 1.0 / sub.values, None)


def proximity(m: HyperbolicModel, t_departure: float) -> float:
    """Years between a departure from the trajectory and its singularity."""
    t_sing = singularity_time(m)
    if t_departure > t_sing:
        raise SegmentationError(
            f"departure at {t_departure!r} lies after the singularity {t_sing!r}"
        )
    return t_sing - t_departure
