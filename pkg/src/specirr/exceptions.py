from __future__ import annotations


class SpecirrError(Exception):
    """Base class for all package errors."""


class GraphFormatError(SpecirrError, ValueError):
    """Malformed graph text (graph6, edge list or family spec).

    ``offset`` is the byte offset of the offending character when known.
    """

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


class Graph6Error(GraphFormatError):
    pass


class NotConnectedError(SpecirrError, ValueError):
    pass


class ConvergenceError(SpecirrError, RuntimeError):
    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(f"{message}: residual {residual:.3e} after {iterations} iterations")
        self.residual = residual
        self.iterations = iterations


class BoundViolation(SpecirrError, ArithmeticError):
    """A proven inequality failed beyond tolerance; indicates a numerical bug."""

    def __init__(self, violations):
        self.violations = list(violations)
        text = "; ".join(f"{v.inequality}: {v.lhs!r} > {v.rhs!r}" for v in self.violations)
        super().__init__(text)
