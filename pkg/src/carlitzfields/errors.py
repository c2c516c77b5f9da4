"""Exception hierarchy shared by every module in the package.

All library errors derive from AlgebraError so callers can catch the
whole family at once.  ConsistencyFailure and InternalInconsistency are
special: they mean two independent computations of the same quantity
disagreed, and they always carry both values.
"""


class AlgebraError(Exception):
    """Base class for every error raised by this package."""


class CompositeCharacteristic(AlgebraError):
    """A field characteristic, or a claimed prime power, is not one."""


class ReducibleModulus(AlgebraError):
    """A user-supplied field modulus factors over the prime field."""


class InvalidSubfield(AlgebraError):
    """A subfield relation (m | r, or spec compatibility) does not hold."""


class NoSuchRoot(AlgebraError):
    """The requested root of unity does not exist in the field."""


class ZeroElement(AlgebraError):
    """Zero was passed where a nonzero field element is required."""


class ZeroPolynomial(AlgebraError):
    """The zero polynomial was passed where a nonzero one is required."""


class DivisionByZeroPoly(AlgebraError):
    """Polynomial or rational-function division by zero."""


class FieldMismatch(AlgebraError):
    """Operands live over different fields or different moduli."""


class ConstantPolynomial(AlgebraError):
    """A constant was passed where positive degree is required."""


class DegreeNotDividing(AlgebraError):
    """A degree-divisibility precondition (s | d and friends) fails."""


class NotIrreducible(AlgebraError):
    """A polynomial required to be irreducible is not."""


class NotAUnit(AlgebraError):
    """A residue required to be invertible is not."""


class NonLinearBase(AlgebraError):
    """Digit extraction needs a monic linear base polynomial."""


class ModulusNotAPower(AlgebraError):
    """A residue modulus is not the expected power of its base."""


class MDoesNotSplit(AlgebraError):
    """A modulus has an irreducible factor whose degree does not divide d."""


class BudgetExceeded(AlgebraError):
    """An enumeration would exceed the configured element budget."""


class DimensionMismatch(AlgebraError):
    """Vector/matrix shapes do not line up."""


class ReductionFailure(AlgebraError):
    """Rewriting in a relation ring failed to terminate within its cap."""


class ConsistencyFailure(AlgebraError):
    """Two independently computed values that must agree did not.

    Raised for cross-checks between enumeration and closed forms at the
    library boundary.  Carries the disagreeing values.
    """

    def __init__(self, message, expected=None, observed=None):
        super().__init__(message)
        self.expected = expected
        self.observed = observed


class InternalInconsistency(ConsistencyFailure):
    """Two internal routes to the same quantity disagreed.

    This always indicates a bug in the package, never bad input.
    """
