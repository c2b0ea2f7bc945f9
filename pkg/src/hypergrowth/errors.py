"""Exception hierarchy shared across the package.

Every error raised by library code derives from :class:`HypergrowthError`,
so callers (the CLI in particular) can map any analysis failure to a single
exit path while programming errors still surface as ordinary exceptions.
"""


class HypergrowthError(Exception):
    """Base class for all analysis errors raised by this package."""


class IngestError(HypergrowthError):
    """CSV ingestion failed (unparseable rows, bad values, duplicates, empty)."""


class SeriesError(HypergrowthError):
    """Invalid time-series construction or windowing."""


class DomainError(HypergrowthError):
    """Evaluation requested outside a model's evaluable domain."""


class DegenerateModelError(HypergrowthError):
    """A slope of exactly zero was produced where a hyperbolic model was required."""


class FitError(HypergrowthError):
    """Regression could not be performed (too few points, singular design)."""


class SegmentationError(HypergrowthError):
    """Breakpoint search or transition analysis could not be performed."""
