"""Exception taxonomy.

Three top-level families map onto CLI exit codes: configuration problems
(exit 1), input-data problems (exit 2) and numeric/geometric failures
(exit 3).  Library code raises the most specific class available.
"""


class TessentropyError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(TessentropyError):
    """Invalid run configuration, manifest, or CLI arguments."""


class DataError(TessentropyError):
    """A data file or its contents cannot be used."""


class NumericError(TessentropyError):
    """A computation cannot proceed on the given inputs."""


# --- data errors ---------------------------------------------------------

class MalformedFileError(DataError):
    """File exists but does not parse in the expected format."""


class NegativeLabelError(DataError):
    """Labeled image contains a negative label value."""


class UnknownLabelError(DataError):
    """A requested label does not occur in the image."""


class NotEnoughCellsError(DataError):
    """Fewer valid (border-free) cells than the requested selection size."""


class AnalysisError(DataError):
    """One or more images in a batch failed; carries per-image causes."""

    def __init__(self, failures):
        self.failures = list(failures)  # (image_id, exception) pairs
        lines = ", ".join(f"{img}: {exc}" for img, exc in self.failures)
        super().__init__(f"{len(self.failures)} image(s) failed: {lines}")


# --- geometry ------------------------------------------------------------

class GeometryError(NumericError):
    pass


class FewerThanThreePointsError(GeometryError):
    pass


class CollinearError(GeometryError):
    """Points are (numerically) collinear where a triangle is required."""


class DuplicatePointsError(GeometryError):
    """Exact coordinate duplicates are rejected, never merged."""


class PointOutsideBoxError(GeometryError):
    pass


class DegeneratePolygonError(GeometryError):
    """Polygon has fewer than three distinct vertices or zero area."""


class NotConvexError(GeometryError):
    pass


# --- filtrations and barcodes --------------------------------------------

class FiltrationError(NumericError):
    pass


class UnsortedFiltrationError(FiltrationError):
    pass


class FaceAfterCofaceError(FiltrationError):
    pass


class BarcodeError(NumericError):
    pass


class UnexpectedInfiniteBarsError(BarcodeError):
    """Not exactly one infinite bar, or an infinite bar outside dimension 0."""


class CapBelowMaxDeathError(BarcodeError):
    pass


class EmptyBarcodeError(BarcodeError):
    pass


class InfiniteBarError(BarcodeError):
    """An operation requiring finite bars received an infinite one."""


class SingleBarError(BarcodeError):
    """Normalization by log(n) is undefined for a single bar."""


# --- statistics ----------------------------------------------------------

class StatsError(NumericError):
    pass


class EmptyGroupError(StatsError):
    pass


class AllValuesIdenticalError(StatsError):
    """Tie correction degenerates: every observation is identical."""


class OutOfRangePError(StatsError):
    """A p-value outside [0, 1] was supplied."""
