"""Time-series representation, CSV ingestion and elementary transforms.

Calendar convention: years are signed reals, n BC maps to -n and AD y to +y,
with no year-zero adjustment.  Sizes (population, GDP) are strictly positive
in canonical units: billions of persons or billions of 1990 Geary-Khamis
dollars.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from typing import IO, NamedTuple, Optional

import numpy as np

from .errors import IngestError, SeriesError


class Unit(str, Enum):
    POP_BILLIONS = "billions-of-persons"
    GDP_BILLIONS = "billions-of-1990-GK-dollars"
    DIMENSIONLESS = "dimensionless"
    RECIPROCAL = "dimensionless-reciprocal"


class TimePoint(NamedTuple):
    year: float
    value: float


@dataclass(frozen=True)
class TimeSeries:
    """Ordered (year, value) observations with unit metadata.

    Years are strictly increasing (duplicates rejected), values strictly
    positive and finite.  Instances are immutable: the backing arrays are
    copied on construction and marked read-only, so a series can be shared
    freely across concurrent tasks.
    """

    years: np.ndarray
    values: np.ndarray
    unit: Unit = Unit.DIMENSIONLESS
    label: str = ""

    def __post_init__(self) -> None:
        years = np.array(self.years, dtype=np.float64)
        values = np.array(self.values, dtype=np.float64)
        if years.ndim != 1 or values.ndim != 1 or years.size != values.size:
            raise SeriesError("years and values must be 1-d arrays of equal length")
        if years.size == 0:
            raise SeriesError("empty series")
        if not np.all(np.isfinite(years)):
            raise SeriesError("years must be finite")
        if not np.all(np.isfinite(values)) or np.any(values <= 0.0):
            raise SeriesError("values must be finite and strictly positive")
        if np.any(np.diff(years) <= 0.0):
            raise SeriesError("years must be strictly increasing with no duplicates")
        years.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "years", years)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.years.size)

    @property
    def points(self) -> list[TimePoint]:
        return [TimePoint(float(t), float(v)) for t, v in zip(self.years, self.values)]

    @property
    def span(self) -> tuple[float, float]:
        return float(self.years[0]), float(self.years[-1])

    def take(self, i0: int, i1: int) -> "TimeSeries":
        """Sub-series of points with indices i0 <= i < i1."""
        if i1 - i0 < 1:
            raise SeriesError("sub-series must contain at least 1 point")
        return TimeSeries(self.years[i0:i1], self.values[i0:i1], self.unit, self.label)


def ingest_csv(
    source: IO,
    *,
    year_column: Optional[str] = None,
    value_column: Optional[str] = None,
    input_unit: Unit = Unit.DIMENSIONLESS,
    scale_factor: float = 1.0,
    label: str = "",
) -> TimeSeries:
    """Parse a CSV stream into a TimeSeries sorted by year.

    The stream must be UTF-8 text (bytes are decoded) with a mandatory header
    row; lines starting with '#' are skipped.  ``year_column``/``value_column``
    select columns by header name and default to the first and second column.
    Values are multiplied by ``scale_factor`` to reach the canonical unit
    (e.g. population tables in thousands of persons with scale 1e-6 give billions).

    Raises IngestError naming the offending physical line numbers for rows
    that fail to parse, non-positive values, and duplicated years; an input
    with no data rows raises ``IngestError("empty series")``.
    """
    if isinstance(source, (bytes, bytearray)):
        text = source.decode("utf-8")
    elif hasattr(source, "read"):
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, (bytes, bytearray)) else raw
    else:
        raise IngestError("source must be a readable stream or bytes")

    header: Optional[list[str]] = None
    yi = vi = None
    rows: list[tuple[float, float, int]] = []
    problems: list[str] = []

    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        cells = next(csv.reader([line]))
        if header is None:
            header = [c.strip() for c in cells]
            yi = _column_index(header, year_column, default=0, role="year")
            vi = _column_index(header, value_column, default=1, role="value")
            continue
        if len(cells) <= max(yi, vi):
            problems.append(f"line {lineno}: expected at least {max(yi, vi) + 1} columns")
            continue
        try:
            year = float(cells[yi].strip())
            value = float(cells[vi].strip())
        except ValueError:
            problems.append(f"line {lineno}: could not parse {cells[yi]!r}, {cells[vi]!r}")
            continue
        if not np.isfinite(year):
            problems.append(f"line {lineno}: non-finite year {cells[yi]!r}")
            continue
        scaled = value * scale_factor
        if not np.isfinite(scaled) or scaled <= 0.0:
            problems.append(f"line {lineno}: value must be strictly positive, got {value!r}")
            continue
        rows.append((year, scaled, lineno))

    if header is None:
        raise IngestError("missing header row")
    if problems:
        raise IngestError("; ".join(problems))
    if not rows:
        raise IngestError("empty series")

    rows.sort(key=lambda r: r[0])
    for (y0, _, l0), (y1, _, l1) in zip(rows, rows[1:]):
        if y0 == y1:
            raise IngestError(f"duplicate year {y0!r} on lines {l0} and {l1}")

    years = np.array([r[0] for r in rows])
    values = np.array([r[1] for r in rows])
    return TimeSeries(years, values, input_unit, label)


def _column_index(header: list[str], name: Optional[str], default: int, role: str) -> int:
    if name is None:
        if default >= len(header):
            raise IngestError(f"header has no column for {role}")
        return default
    if name not in header:
        raise IngestError(f"no column named {name!r} in header {header}")
    return header.index(name)


def write_csv(series: TimeSeries, stream: IO) -> None:
    """Serialize as 'year,value' rows.

    Floats are written with repr, so ingestion of the output reproduces every
    (year, value) pair bit-for-bit.
    """
    stream.write("year,value\n")
    for t, v in zip(series.years, series.values):
        stream.write(f"{float(t)!r},{float(v)!r}\n")


def to_csv_text(series: TimeSeries) -> str:
    buf = io.StringIO()
    write_csv(series, buf)
    return buf.getvalue()


def window(series: TimeSeries, t_lo: float, t_hi: float) -> TimeSeries:
    """Sub-series with t_lo <= year <= t_hi, inclusive at both ends."""
    if not t_lo < t_hi:
        raise SeriesError(f"window requires t_lo < t_hi, got [{t_lo}, {t_hi}]")
    mask = (series.years >= t_lo) & (series.years <= t_hi)
    if int(mask.sum()) < 2:
        raise SeriesError(f"window [{t_lo}, {t_hi}] contains fewer than 2 points")
    return TimeSeries(series.years[mask], series.values[mask], series.unit, series.label)


def reciprocal_series(series: TimeSeries) -> TimeSeries:
    """Replace each value with its reciprocal; the unit becomes reciprocal."""
    return TimeSeries(series.years, 1.0 / series.values, Unit.RECIPROCAL, series.label)
