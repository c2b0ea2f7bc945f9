"""Ratios of two hyperbolic models (income per capita).

Dividing a hyperbolic GDP trajectory by a hyperbolic population trajectory
gives

    R(t) = S_gdp(t) / S_pop(t) = (a_pop - k_pop*t) / (a_gdp - k_gdp*t),

a hyperbola modulated by the linear time dependence of the population's
reciprocal.  Its derivative has the constant sign of the discriminant
a_pop*k_gdp - a_gdp*k_pop everywhere both denominators are positive, so the
ratio is monotone on its whole domain: nearly constant over a long time and
nearly vertical close to the singularities without ever turning around.
The ratio is always represented as a model pair; per-capita data are never
fitted directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .models import HyperbolicModel, hyperbolic_value, singularity_time


@dataclass(frozen=True)
class RatioModel:
    """Quotient numerator/denominator of two growth hyperbolic models.

    ``domain`` is the closed interval on which the ratio may be evaluated;
    it must end strictly before the earlier of the two singularities.
    """

    numerator: HyperbolicModel
    denominator: HyperbolicModel
    domain: tuple[float, float]

    def __post_init__(self) -> None:
        if self.numerator.k <= 0 or self.denominator.k <= 0:
            raise DomainError("both models must be growth models")
        t_lo, t_hi = self.domain
        if not t_lo < t_hi:
            raise DomainError("domain must satisfy t_lo < t_hi")
        first_sing = min(singularity_time(self.numerator), singularity_time(self.denominator))
        if t_hi >= first_sing:
            raise DomainError(
                f"domain upper end {t_hi!r} does not precede the first singularity "
                f"{first_sing!r}"
            )


def build_ratio(
    numerator: HyperbolicModel,
    denominator: HyperbolicModel,
    t_lo: float,
    t_hi: Optional[float] = None,
) -> RatioModel:
    """RatioModel whose domain ends 1 year short of the first singularity by default."""
    if t_hi is None:
        t_hi = min(singularity_time(numerator), singularity_time(denominator)) - 1.0
    return RatioModel(numerator, denominator, (t_lo, t_hi))


def _check_domain(r: RatioModel, t) -> None:
    t_lo, t_hi = r.domain
    tt = np.asarray(t, dtype=np.float64)
    if np.any(tt < t_lo) or np.any(tt > t_hi):
        raise DomainError(
            f"t outside ratio domain [{t_lo!r}, {t_hi!r}]; singularities at "
            f"numerator {singularity_time(r.numerator)!r}, "
            f"denominator {singularity_time(r.denominator)!r}"
        )


def ratio_value(r: RatioModel, t) -> float | np.ndarray:
    """(a_den - k_den*t) / (a_num - k_num*t), the per-capita size at t."""
    _check_domain(r, t)
    tt = np.asarray(t, dtype=np.float64)
    out = (r.denominator.a - r.denominator.k * tt) / (r.numerator.a - r.numerator.k * tt)
    return float(out) if np.ndim(t) == 0 else out


def ratio_growth_rate(r: RatioModel, t) -> float | np.ndarray:
    """Growth rate of the ratio: k_num*S_num(t) - k_den*S_den(t).

    This is the exact logarithmic derivative of ratio_value, the difference
    of the two hyperbolic growth rates.
    """
    _check_domain(r, t)
    num = r.numerator.k * hyperbolic_value(r.numerator, t)
    den = r.denominator.k * hyperbolic_value(r.denominator, t)
    return num - den


@dataclass(frozen=True)
class MonotonicityVerdict:
    monotone: str  # "increasing" | "decreasing" | "constant"
    discriminant: float


def ratio_monotonicity(r: RatioModel) -> MonotonicityVerdict:
    """Sign analysis of the ratio's derivative over its whole domain.

    discriminant = a_den*k_num - a_num*k_den; the derivative of the quotient
    carries this constant sign wherever both linear denominators are
    positive, so one number decides the monotonicity everywhere.
    """
    disc = r.denominator.a * r.numerator.k - r.numerator.a * r.denominator.k
    if disc > 0:
        direction = "increasing"
    elif disc < 0:
        direction = "decreasing"
    else:
        direction = "constant"
    return MonotonicityVerdict(direction, disc)
