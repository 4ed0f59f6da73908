"""Exception taxonomy shared by all lieext modules.

Two of these deserve a word.  HypothesisError means the caller's input broke
a documented precondition (e.g. asked for a witness of a sandwich element).
ContradictionError means the computation reached a state that is provably
impossible for well-formed input, so the input data itself must be corrupt.
"""


class LieextError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LieextError):
    """Invalid scalar operation, e.g. division by zero or f_x at x = 0."""


class FieldMismatch(LieextError):
    """Operands live over different coefficient fields."""


class ShapeError(LieextError):
    """Dimension or shape mismatch between vectors, matrices or subspaces."""


class CapabilityError(LieextError):
    """The request is outside what this tool can decide (field too large,
    characteristic 2 or 3, exhaustive work over an infinite field, ...)."""


class HypothesisError(LieextError):
    """A documented precondition on the input does not hold."""


class ContradictionError(LieextError):
    """A state that cannot occur for well-formed input; the data is corrupt."""


class InvarianceError(LieextError):
    """A subspace that had to be invariant under an action is not."""


class ParseError(LieextError):
    """Syntax error in an expression, certificate script or algebra file."""

    def __init__(self, message, position=None, line=None):
        self.position = position
        self.line = line
        where = ""
        if line is not None:
            where += f" at line {line}"
        if position is not None:
            where += f", column {position + 1}" if line is not None else f" at position {position}"
        super().__init__(message + where)
