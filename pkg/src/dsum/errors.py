"""Shared error types.  Overflow in counting instances raises the builtin
OverflowError; these cover file formats and oracle scale guards."""


class FormatError(ValueError):
    """Malformed input text: tables, graphs, matrices, score files."""


class CircuitFormatError(FormatError):
    """Malformed serialized circuit document."""


class ScaleGuardError(ValueError):
    """A brute-force oracle was asked to exceed its enumeration budget."""
