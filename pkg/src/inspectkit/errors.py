"""Exception types shared across the toolkit."""


class InspectkitError(Exception):
    """Base class for all toolkit errors."""


class DatasetParseError(InspectkitError):
    """Raised for malformed dataset input (syntax, not semantics).

    ``line`` and ``column`` are populated when the underlying parser can
    locate the problem, otherwise None.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message)


class DatasetSchemaError(InspectkitError):
    """Raised when input is syntactically fine but violates the dataset schema
    (missing field, bad type/range, duplicate id, wrong phase set)."""


class UndefinedMetricError(InspectkitError):
    """Raised when a metric's denominator is empty (no captured defects, or
    zero inspector time) and the value would be meaningless."""


class SchemeConfigurationError(InspectkitError):
    """Raised when a discretization scheme has no levels for a node, the
    levels of two models disagree, or an evidence label is unknown."""


class ImpossibleEvidenceError(InspectkitError):
    """Raised when observed evidence has zero probability under a model."""


class WorkflowStateError(InspectkitError):
    """Raised when an event is not legal in the workflow's current state."""


class WorkflowPolicyError(InspectkitError):
    """Raised when an event violates an inspection policy rule (e.g. an
    author asked to act as final inspector)."""


class EventLogError(InspectkitError):
    """Raised when an event log cannot be replayed; ``index`` is the offending
    record's position."""

    def __init__(self, message: str, index: int):
        self.index = index
        super().__init__(f"{message} (record {index})")
