"""Shared reference data and fixture helpers.

REFERENCE_ROWS collects published hyperbolic parameters (a, k) for world and
regional GDP growth together with the published singularity, departure year
and proximity.  POPULATION_MODELS are the corresponding parameters for the
world population, and GROWTH_RATE_CHECKS the published growth-rate values
they imply.  These constants are the ground truth the suite verifies
against; the synthetic generators act as independent oracles for everything
derived.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
from hypothesis import HealthCheck, settings

import hypergrowth as hg

settings.register_profile(
    "deterministic",
    settings(
        max_examples=40,
        derandomize=True,
        deadline=None,
        suppress_health_check=[HealthCheck.too_slow],
    ),
)
settings.load_profile("deterministic")

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@dataclass(frozen=True)
class ReferenceRow:
    name: str
    a: float
    k: float
    t_lo: float
    t_hi: float
    singularity: Optional[int] = None
    departure: Optional[float] = None
    proximity: Optional[int] = None

    @property
    def model(self) -> hg.HyperbolicModel:
        return hg.HyperbolicModel(self.a, self.k)


# Published GDP rows: world plus regions, two entries for regions whose
# growth shifted between two hyperbolic trajectories.
REFERENCE_ROWS = (
    ReferenceRow("world-gdp", 1.684e-2, 8.539e-6, 1000, 1955, 1972, 1955, 17),
    ReferenceRow("western-europe", 9.859e-2, 5.112e-5, 1500, 1900, 1929, 1900, 29),
    ReferenceRow("western-europe-4", 3.821e-1, 1.986e-4, 1, 1875, 1923, 1875, 48),
    ReferenceRow("eastern-europe", 7.749e-1, 4.048e-4, 1000, 1890, 1915, 1890, 25),
    ReferenceRow("former-ussr", 6.547e-1, 3.452e-4, 1, 1870, 1897, 1870, 27),
    ReferenceRow("asia", 2.303e-2, 1.129e-5, 1000, 1950, 2040, 1950, 90),
    ReferenceRow("africa-slow", 1.244e-1, 5.030e-5, 1, 1820, 2473),
    ReferenceRow("africa-fast", 4.192e-1, 2.126e-4, 1820, 1950, 1972, 1950, 22),
    ReferenceRow("latin-america-slow", 4.421e-1, 2.093e-4, 1, 1500, 2113),
    ReferenceRow("latin-america-fast", 1.570e0, 8.224e-4, 1600, 1870, 1910, 1870, 40),
)

# World population trajectories: the fast BC era, the coarse AD fit, and the
# refined AD pieces either side of the 1200-1400 disturbance.
POPULATION_MODELS = {
    "bc": ReferenceRow("population-bc", -2.282, 2.210e-2, -10000, -500),
    "ad": ReferenceRow("population-ad", 7.061, 3.398e-3, 500, 2015),
    "ad-early": ReferenceRow("population-ad-early", 6.940, 3.448e-3, 500, 1200),
    "ad-late": ReferenceRow("population-ad-late", 9.123, 4.478e-3, 1400, 1950),
}

ALL_ROWS = REFERENCE_ROWS + tuple(POPULATION_MODELS.values())

# (model key, year, published growth rate in 1/year)
GROWTH_RATE_CHECKS = (
    ("bc", -10000.0, 1.010e-4),
    ("bc", -500.0, 2.520e-3),
    ("ad-early", 500.0, 6.610e-4),
    ("ad-early", 1200.0, 1.230e-3),
    ("ad-late", 1400.0, 1.568e-3),
    ("ad-late", 1950.0, 1.142e-2),
)

# (faster key/row, slower key/row, published ratio, tolerance)
SPEED_RATIO_CHECKS = (
    ("pop:bc", "pop:ad", 6.5, 0.05),
    ("gdp:africa-fast", "gdp:africa-slow", 4.2, 0.05),
    ("gdp:latin-america-fast", "gdp:latin-america-slow", 3.9, 0.05),
)


def row_by_name(name: str) -> ReferenceRow:
    for row in REFERENCE_ROWS:
        if row.name == name:
            return row
    raise KeyError(name)


def lookup_model(key: str) -> hg.HyperbolicModel:
    domain, _, name = key.partition(":")
    if domain == "pop":
        return POPULATION_MODELS[name].model
    return row_by_name(name).model


def acceptance_step(row: ReferenceRow) -> float:
    """Sampling step for synthetic reconstructions: at most 10 years, denser
    on short windows so every fit sees a comfortable point count."""
    return min(10.0, (row.t_hi - row.t_lo) / 160.0)


def synth(row: ReferenceRow, step: Optional[float] = None,
          noise_rel: float = 0.0, seed: int = 0) -> hg.TimeSeries:
    spec = hg.SyntheticSpec(
        row.model, row.t_lo, row.t_hi,
        acceptance_step(row) if step is None else step,
        noise_rel=noise_rel, seed=seed, label=row.name,
    )
    return hg.generate(spec)


def africa_composite(step: float = 25.0) -> hg.TimeSeries:
    """Noiseless two-trajectory composite switching at 1820, 25-year grid."""
    slow = row_by_name("africa-slow").model
    fast = row_by_name("africa-fast").model
    years = np.arange(0.0, 1950.0 + 0.5 * step, step)
    values = np.where(
        years <= 1820.0,
        1.0 / (slow.a - slow.k * years),
        1.0 / (fast.a - fast.k * years),
    )
    return hg.TimeSeries(years, values, hg.Unit.GDP_BILLIONS, "africa-composite")


def population_bridge(step: float = 25.0) -> hg.TimeSeries:
    """Two population trajectories joined by a linear-in-size bridge 1200-1400."""
    early = POPULATION_MODELS["ad-early"].model
    late = POPULATION_MODELS["ad-late"].model
    years = np.arange(500.0, 1950.0 + 0.5 * step, step)
    s0 = 1.0 / (early.a - early.k * 1200.0)
    s1 = 1.0 / (late.a - late.k * 1400.0)
    values = np.empty_like(years)
    for i, t in enumerate(years):
        if t <= 1200.0:
            values[i] = 1.0 / (early.a - early.k * t)
        elif t >= 1400.0:
            values[i] = 1.0 / (late.a - late.k * t)
        else:
            values[i] = s0 + (s1 - s0) * (t - 1200.0) / 200.0
    return hg.TimeSeries(years, values, hg.Unit.POP_BILLIONS, "population-bridge")


def takeoff_control(step: float = 25.0) -> hg.TimeSeries:
    """Flat at 0.5 through 1750, then hyperbolic growth to 2.5 by 1900."""
    k = (2.0 - 0.4) / 150.0
    a = 2.0 + k * 1750.0
    years = np.arange(1000.0, 1900.0 + 0.5 * step, step)
    values = np.where(years <= 1750.0, 0.5, 1.0 / (a - k * years))
    return hg.TimeSeries(years, values, label="stagnation-takeoff-control")
