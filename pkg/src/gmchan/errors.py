"""Exception hierarchy.

Everything raised on purpose by this package derives from GellMannError, so
callers can catch one type at the boundary (the CLI does exactly that).
"""

from __future__ import annotations


class GellMannError(Exception):
    """Base class for all errors raised by gmchan."""


class BadDimension(GellMannError):
    """Dimension n < 2 or not an integer."""


class IndexOutOfRange(GellMannError):
    """Basis index outside 0..n-1."""


class DimensionMismatch(GellMannError):
    """Operands with incompatible shapes."""


class ConstraintViolated(GellMannError):
    """A linear constraint required by the operation does not hold."""


class NegativeCoefficient(GellMannError):
    """A completed coefficient came out negative; carries the index."""

    def __init__(self, message: str, index=None):
        super().__init__(message)
        self.index = index


class NonLinearMap(GellMannError):
    """The map handed to the Choi assembler failed the linearity probe."""


class InvalidChannel(GellMannError):
    """Channel fails the trace-preservation or complete-positivity gate."""


class NotTracePreserving(GellMannError):
    """Operation requires a trace-preserving channel."""


class _ConversionError(GellMannError):
    """Shared carrier for converter precondition failures."""

    def __init__(self, message: str, violations=None):
        super().__init__(message)
        self.violations = list(violations) if violations is not None else []


class NotEV(_ConversionError):
    """Input is not diagonal in the Gell-Mann basis (eigenvalue form)."""


class NotKF(_ConversionError):
    """Eigenvalue data admits no coefficient-table realization."""


class NotLF(_ConversionError):
    """Eigenvalue data admits no rate-table realization."""


class ZeroEigenvalue(GellMannError):
    """An eigenvalue trajectory hits zero; carries grid index and component."""

    def __init__(self, message: str, time_index=None, component=None):
        super().__init__(message)
        self.time_index = time_index
        self.component = component


class NotCPAtTime(GellMannError):
    """State evolution requested at a frame whose map is not CP."""

    def __init__(self, message: str, time_index=None):
        super().__init__(message)
        self.time_index = time_index


class ParseError(GellMannError):
    """File is not syntactically valid; carries line/column when known."""

    def __init__(self, message: str, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class SchemaError(GellMannError):
    """File parses but is missing fields or has wrong shapes/types."""


class InvariantError(GellMannError):
    """Well-formed data violates a type invariant (e.g. negative weight)."""
