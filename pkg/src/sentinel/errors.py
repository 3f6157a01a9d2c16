"""Exception types shared across the toolkit."""


class SentinelError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(SentinelError):
    """Bad user-supplied values (CLI flags, request bodies, feature maps)."""

    def __init__(self, message, fields=None):
        super().__init__(message)
        self.fields = list(fields) if fields else []


class CsvParseError(SentinelError):
    """Structurally malformed CSV input."""

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class CellValueError(CsvParseError):
    """A cell that is neither a missing marker nor a finite number."""


class NotFittedError(SentinelError):
    """Estimator used before fit()."""


class ConvergenceError(SentinelError):
    """Optimization produced non-finite state."""


class GeocodeError(SentinelError):
    """Base for geocoding failures."""


class GeocodeNotFound(GeocodeError):
    """No candidate matched the query."""


class GeocodeTransportError(GeocodeError):
    """Remote geocoder unreachable or over quota."""

    def __init__(self, message, retry_after=None):
        super().__init__(message)
        self.retry_after = retry_after


class DuplicateIdError(SentinelError):
    """An id that must be unique already exists."""


class NotFoundError(SentinelError):
    """Lookup of an id or name that does not exist."""


class ConsentError(SentinelError):
    """Operation forbidden by the record's consent flags."""


class InvariantViolation(SentinelError):
    """Internal consistency check failed; indicates a bug, not bad input."""
