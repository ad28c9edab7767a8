class GraphSumError(Exception):
    """Base class for errors raised by this package."""


class InputError(GraphSumError, ValueError):
    """Malformed or inconsistent input (partition text, graph JSON, dimensions)."""


class CapExceeded(GraphSumError):
    """A computation would exceed its configured size cap."""
