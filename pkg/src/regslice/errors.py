"""Exception classes raised by regslice."""


class RegsliceError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(RegsliceError, ValueError):
    """Raised when matrix sizes do not match."""


class IndeterminateRankError(RegsliceError):
    """Raised when a numerical rank falls inside the indeterminate band.

    The offending singular values are kept on ``singular_values`` so that
    reports can show why no verdict was reached.
    """

    def __init__(self, msg, singular_values=None):
        super().__init__(msg)
        self.singular_values = singular_values


class NotRegularError(RegsliceError):
    """Raised when an operation defined only on regular elements gets a
    non-regular one."""


class NotOnSliceError(RegsliceError):
    """Raised by slice membership tests; carries the Frobenius residual."""

    def __init__(self, msg, residual):
        super().__init__(msg)
        self.residual = residual


class ConvergenceError(RegsliceError):
    """Raised when Newton inversion does not reach its residual target."""

    def __init__(self, msg, best_residual, iterations):
        super().__init__(msg)
        self.best_residual = best_residual
        self.iterations = iterations


class SubmersionError(RegsliceError):
    """Raised when a differential that must be surjective is rank deficient."""


class DegenerateFormError(RegsliceError):
    """Raised when a symplectic Gram matrix is numerically singular."""


class CyclicVectorError(RegsliceError):
    """Raised when no cyclic vector is found (the matrix looks derogatory)."""


class WitnessError(RegsliceError):
    """Raised when a conjugation witness violates its residual or det bound."""


class NoTransportError(RegsliceError):
    """Raised when two elements lie on different orbits.

    ``gap`` is the distance between their invariant vectors.
    """

    def __init__(self, msg, gap):
        super().__init__(msg)
        self.gap = gap


class OutsideDomainError(RegsliceError):
    """Raised by partial fibre sections asked for a fibre the space lacks."""


class TrivializationError(RegsliceError):
    """Raised when the equivariant trivialization cannot be built."""


class ContractError(RegsliceError):
    """Raised when a presented space breaks its own declared contract."""


class ConfigError(RegsliceError):
    """Raised for unparseable or invalid run configurations."""


class PreconditionError(RegsliceError):
    """Raised when a check is called with inputs outside its precondition."""
