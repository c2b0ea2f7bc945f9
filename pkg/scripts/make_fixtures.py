#!/usr/bin/env python3
"""Regenerate the CSV fixtures shipped in data/.

Every fixture is deterministic; rerunning this script reproduces the files
byte-for-byte.  The synthetic series mirror published hyperbolic parameters
for world/regional GDP and world population; the milestones file is a small
hand-transcribed excerpt of published world-population milestone years.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from hypergrowth import (  # noqa: E402
    HyperbolicModel,
    SyntheticSpec,
    TimeSeries,
    Unit,
    generate,
    write_csv,
)

DATA = Path(__file__).resolve().parent.parent / "data"


def hyper_values(m: HyperbolicModel, years: np.ndarray) -> np.ndarray:
    return 1.0 / (m.a - m.k * years)


def africa_composite() -> TimeSeries:
    """Slow trajectory to 1820, then a 4.2x faster one, on a 25-year grid."""
    slow = HyperbolicModel(1.244e-1, 5.030e-5)
    fast = HyperbolicModel(4.192e-1, 2.126e-4)
    years = np.arange(0.0, 1950.0 + 12.5, 25.0)
    values = np.where(
        years <= 1820.0, hyper_values(slow, years), hyper_values(fast, years)
    )
    return TimeSeries(years, values, Unit.GDP_BILLIONS, "africa-gdp-composite")


def population_bridge() -> TimeSeries:
    """Two hyperbolic stretches joined by a linear-in-size bridge over 1200-1400."""
    early = HyperbolicModel(6.940, 3.448e-3)
    late = HyperbolicModel(9.123, 4.478e-3)
    years = np.arange(500.0, 1950.0 + 12.5, 25.0)
    s_1200 = hyper_values(early, np.array([1200.0]))[0]
    s_1400 = hyper_values(late, np.array([1400.0]))[0]
    values = np.empty_like(years)
    for i, t in enumerate(years):
        if t <= 1200.0:
            values[i] = hyper_values(early, np.array([t]))[0]
        elif t >= 1400.0:
            values[i] = hyper_values(late, np.array([t]))[0]
        else:
            values[i] = s_1200 + (s_1400 - s_1200) * (t - 1200.0) / 200.0
    return TimeSeries(years, values, Unit.POP_BILLIONS, "world-population-bridge")


def takeoff_control() -> TimeSeries:
    """Flat size 0.5 through 1750, then hyperbolic growth reaching 2.5 by 1900."""
    k = (2.0 - 0.4) / 150.0
    a = 2.0 + k * 1750.0
    years = np.arange(1000.0, 1900.0 + 12.5, 25.0)
    values = np.where(years <= 1750.0, 0.5, 1.0 / (a - k * years))
    return TimeSeries(years, values, Unit.DIMENSIONLESS, "stagnation-takeoff-control")


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)

    world_gdp = generate(
        SyntheticSpec(
            HyperbolicModel(1.684e-2, 8.539e-6), 1000.0, 1955.0, 5.0,
            unit=Unit.GDP_BILLIONS, label="world-gdp",
        )
    )
    pop_late = generate(
        SyntheticSpec(
            HyperbolicModel(9.123, 4.478e-3), 1400.0, 1950.0, 10.0,
            unit=Unit.POP_BILLIONS, label="world-population-1400",
        )
    )

    fixtures = {
        "world_gdp.csv": world_gdp,
        "world_population_1400.csv": pop_late,
        "africa_gdp_composite.csv": africa_composite(),
        "world_population_bridge.csv": population_bridge(),
        "stagnation_takeoff_control.csv": takeoff_control(),
    }
    for name, series in fixtures.items():
        with open(DATA / name, "w", encoding="utf-8") as fh:
            write_csv(series, fh)
        print(f"wrote {name}: {len(series)} points")

    # Published milestone years for the world population, in billions.
    milestones = [
        (1800, 1.0),
        (1930, 2.0),
        (1959, 3.0),
        (1974, 4.0),
        (1987, 5.0),
        (1999, 6.0),
        (2012, 7.0),
    ]
    with open(DATA / "world_population_milestones.csv", "w", encoding="utf-8") as fh:
        fh.write("year,population\n")
        for year, level in milestones:
            fh.write(f"{year},{level}\n")
    print(f"wrote world_population_milestones.csv: {len(milestones)} rows")


if __name__ == "__main__":
    main()
