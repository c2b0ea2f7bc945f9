"""Closed-form hyperbolic and exponential growth models.

A hyperbolic growth trajectory is

    S(t) = 1 / (a - k*t),        k > 0,

the solution of dS/dt = k*S**2: the growth rate (1/S)(dS/dt) = k*S is
proportional to the size itself, and S escapes to infinity at the finite
singularity time t = a/k.  The reciprocal 1/S(t) = a - k*t is a decreasing
straight line, which is what makes these models identifiable by linear
regression on reciprocal values.

An exponential trajectory S(t) = a*exp(k*t) solves dS/dt = k*S and is the
competing hypothesis throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DegenerateModelError, DomainError
from .series import TimeSeries, Unit


@dataclass(frozen=True)
class HyperbolicModel:
    """Parameters of S(t) = 1/(a - k*t).

    ``a`` is the intercept of the reciprocal line (1/canonical-unit) and
    ``k`` the magnitude of its slope (1/(canonical-unit * year)).  k > 0 is
    growth, k < 0 decay; k = 0 would be a constant and is rejected outright
    rather than silently representing a degenerate model.
    """

    a: float
    k: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.k)):
            raise DomainError("model parameters must be finite")
        if self.k == 0.0:
            raise DegenerateModelError(
                "k = 0 describes a constant, not a hyperbolic trajectory"
            )

    @property
    def kind(self) -> str:
        return "growth" if self.k > 0 else "decay"


@dataclass(frozen=True)
class ExponentialModel:
    """Parameters of S(t) = a*exp(k*t); a is the size at t = 0 and must be positive."""

    a: float
    k: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.k)):
            raise DomainError("model parameters must be finite")
        if self.a <= 0.0:
            raise DomainError("exponential scale a must be positive")


Model = Union[HyperbolicModel, ExponentialModel]


def _as_float_or_array(t, out):
    return float(out) if np.ndim(t) == 0 else out


def hyperbolic_value(m: HyperbolicModel, t) -> float | np.ndarray:
    """Evaluate S(t) = 1/(a - k*t); scalar in, scalar out (arrays pass through).

    Raises DomainError when a - k*t <= 0, naming the singularity a/k for
    growth models.
    """
    tt = np.asarray(t, dtype=np.float64)
    denom = m.a - m.k * tt
    if np.any(denom <= 0.0):
        if m.k > 0:
            raise DomainError(
                f"t must lie before the singularity t_sing = {m.a / m.k!r}"
            )
        raise DomainError(f"t must lie after the singularity t_sing = {m.a / m.k!r}")
    return _as_float_or_array(t, 1.0 / denom)


def exponential_value(m: ExponentialModel, t) -> float | np.ndarray:
    """Evaluate S(t) = a*exp(k*t)."""
    tt = np.asarray(t, dtype=np.float64)
    return _as_float_or_array(t, m.a * np.exp(m.k * tt))


def singularity_time(m: HyperbolicModel) -> float:
    """Time a/k at which a growth model escapes to infinity."""
    if m.k <= 0:
        raise DomainError("decay models have no forward singularity")
    return m.a / m.k


def growth_rate(m: HyperbolicModel, t) -> float | np.ndarray:
    """Instantaneous growth rate (1/S)(dS/dt) = k*S(t), in 1/year."""
    return m.k * hyperbolic_value(m, t)


def speed_ratio(m1: HyperbolicModel, m2: HyperbolicModel) -> float:
    """How many times faster m1 grows than m2, as the ratio k1/k2."""
    if m1.k <= 0 or m2.k <= 0:
        raise DomainError("speed_ratio is defined for growth models only")
    return m1.k / m2.k


def milestone_time(m: HyperbolicModel, level: float) -> float:
    """The unique t with S(t) = level, i.e. (a - 1/level)/k.

    The level must be reachable: 1/level < a, so the crossing falls in the
    model's domain before the singularity.
    """
    if m.k <= 0:
        raise DomainError("milestone_time is defined for growth models only")
    if level <= 0:
        raise DomainError("milestone level must be positive")
    if 1.0 / level >= m.a:
        raise DomainError(
            f"level {level!r} is never reached: requires 1/level < a = {m.a!r}"
        )
    return (m.a - 1.0 / level) / m.k


def reciprocal_residual_magnification(s1: float, s2: float) -> float:
    """Factor 1/(s1*s2) by which a direct-space residual grows in reciprocal space.

    The difference of two reciprocals is -(s1 - s2)/(s1*s2), so small sizes
    magnify deviations between data and a fitted curve.
    """
    if s1 <= 0 or s2 <= 0:
        raise DomainError("sizes must be positive")
    return 1.0 / (s1 * s2)


@dataclass(frozen=True)
class SyntheticSpec:
    """Deterministic sampling recipe used to generate oracle series.

    Noise is multiplicative log-normal, value * exp(noise_rel * z) with z
    standard normal, because historical size estimates carry relative rather
    than absolute errors; positivity is preserved for any noise level.
    """

    model: Model
    t_start: float
    t_end: float
    step: float
    noise_rel: float = 0.0
    seed: int = 0
    unit: Unit = Unit.DIMENSIONLESS
    label: str = ""

    def __post_init__(self) -> None:
        if not self.t_start < self.t_end:
            raise DomainError("t_start must precede t_end")
        if self.step <= 0:
            raise DomainError("step must be positive")
        if self.noise_rel < 0:
            raise DomainError("noise_rel must be non-negative")
        if isinstance(self.model, HyperbolicModel):
            if self.model.k > 0 and self.t_end >= singularity_time(self.model):
                raise DomainError(
                    f"t_end = {self.t_end!r} does not precede the singularity "
                    f"{singularity_time(self.model)!r}"
                )
            if self.model.k < 0 and self.t_start <= self.model.a / self.model.k:
                raise DomainError("decay models are evaluable only after a/k")


def generate(spec: SyntheticSpec) -> TimeSeries:
    """Sample the model on the grid t_start, t_start+step, ... (inclusive end).

    Deterministic: equal SyntheticSpec values always produce identical series.
    """
    n = int(math.floor((spec.t_end - spec.t_start) / spec.step * (1.0 + 1e-12))) + 1
    years = spec.t_start + spec.step * np.arange(n, dtype=np.float64)
    if isinstance(spec.model, HyperbolicModel):
        values = hyperbolic_value(spec.model, years)
    else:
        values = exponential_value(spec.model, years)
    if spec.noise_rel > 0:
        rng = np.random.default_rng(spec.seed)
        values = values * np.exp(spec.noise_rel * rng.standard_normal(n))
    return TimeSeries(years, values, spec.unit, spec.label)
