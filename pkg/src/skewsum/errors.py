"""Exception types shared across the package."""


class SkewsumError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidArgumentError(SkewsumError, ValueError):
    """An argument is outside the documented domain (non-finite, wrong range, ...)."""


class InvalidSummaryError(SkewsumError, ValueError):
    """A summary violates the ordering a <= q1 <= m <= q3 <= b or misses required fields."""


class DegenerateRangeError(SkewsumError, ZeroDivisionError):
    """The statistic's denominator (b - a or q3 - q1) is zero."""


class TestNotApplicableError(SkewsumError, ValueError):
    """The reporting scenario carries no testable five-number information."""


class UnsupportedAlphaError(SkewsumError, ValueError):
    """The requested (source, alpha) combination is not served by that source."""


class OutOfTableRangeError(SkewsumError, ValueError):
    """n falls outside the embedded table range [5, 401]."""


class AsymptoticUnavailableError(SkewsumError, ValueError):
    """No asymptotic null distribution exists for the requested scenario."""


class InsufficientReplicationsError(SkewsumError, ValueError):
    """Monte Carlo replication count below the supported minimum."""


class NotApplicableError(SkewsumError, ValueError):
    """The estimator does not apply to the reporting scenario."""


class NoStudiesError(SkewsumError, ValueError):
    """A pooling operation received an empty study list."""


class IngestError(SkewsumError, ValueError):
    """A study input row failed validation."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
