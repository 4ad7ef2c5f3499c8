"""Exception types shared across the package.

Every error raised on purpose derives from :class:`DivisorLatticeError`,
so callers (and the CLI) can distinguish domain errors from bugs.
"""


class DivisorLatticeError(Exception):
    """Base class for all deliberate errors raised by this package."""


class MismatchedModel(DivisorLatticeError):
    """A divisor class was used with a surface model it does not belong to."""


class InvalidModel(DivisorLatticeError):
    """A surface model violates a structural invariant (asymmetric Gram,
    wrong vector length, negative curve on an abelian model, ...)."""


class InvalidParameter(DivisorLatticeError):
    """A numeric parameter is outside its allowed range (e.g. even n)."""


class UnknownCurve(DivisorLatticeError):
    """A label does not name a registered curve of the model."""


class ArityMismatch(DivisorLatticeError):
    """A multiplicity list does not match the number of exceptional classes."""


class NotABlowup(DivisorLatticeError):
    """The morphism is not a blow-up map."""


class NotACover(DivisorLatticeError):
    """The morphism is not a cyclic-cover map."""


class NotAStrictTransformShape(DivisorLatticeError):
    """A class on a blow-up is not of the form pullback minus a
    non-negative combination of exceptional classes."""


class WrongSurfaceKind(DivisorLatticeError):
    """An operation requires a specific surface kind (e.g. abelian)."""


class NotCertified(DivisorLatticeError):
    """The requested certificate cannot be issued.

    Raised by the non-effectivity rule when the witness pairing is
    non-negative.  This means the witness proves nothing; it is *not*
    evidence of effectivity.  Carries the offending pairing value.
    """

    def __init__(self, message: str, pairing_value: int | None = None):
        super().__init__(message)
        self.pairing_value = pairing_value


class BoundTooLarge(DivisorLatticeError):
    """An exhaustive enumeration grid would exceed the configured cap."""


class RegistryTooLarge(DivisorLatticeError):
    """The curve registry is too large for exhaustive order enumeration."""
