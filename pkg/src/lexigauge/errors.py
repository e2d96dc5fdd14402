"""Exception hierarchy shared by all lexigauge modules."""


class LexigaugeError(Exception):
    """Base class for all errors raised by this package."""


class CsvParseError(LexigaugeError):
    """Malformed CSV input (e.g. unbalanced quotes); carries a row number."""

    def __init__(self, message: str, row: int | None = None):
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row


class ConfigError(LexigaugeError):
    """Invalid configuration: bad column map, missing corpus, bad run config."""


class DomainError(LexigaugeError, ValueError):
    """Input violates an operation's precondition (empty data, bad sizes)."""


class DegenerateDataError(DomainError):
    """Input is formally valid but statistically degenerate (zero variance)."""


class UnsupportedDataError(DomainError):
    """Input falls outside what an operation supports (e.g. ties in the
    exact rank-sum enumeration)."""


class ConsistencyError(LexigaugeError):
    """Cross-object invariant violated (e.g. centrality scores referencing
    nodes absent from the graph, or a failed post-run self-audit)."""
