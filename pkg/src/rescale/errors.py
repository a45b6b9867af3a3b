"""Exception types shared across the package."""


class RescaleError(Exception):
    """Base class for all library errors."""


class NotOnLattice(RescaleError):
    """Copy count is not of the form base * ratio**n."""


class MissingPoint(RescaleError):
    """A required copy count is absent from the series."""


class OutOfRange(RescaleError):
    """Argument outside the supported range or an overflow guard."""


class DomainError(RescaleError):
    """Divisibility, ordering, or lattice-membership precondition failed."""


class DomainEscape(RescaleError):
    """An intermediate value left the declared domain.

    `stage` is the 1-based composition stage at which the escape happened
    (0 means the seed itself was out of domain).
    """

    def __init__(self, message: str, stage: int | None = None):
        super().__init__(message)
        self.stage = stage


class TruncationError(RescaleError):
    """Requested series order exceeds the supported truncation."""


class NonPositiveLeadingCoeff(RescaleError):
    """First-order coefficient must be strictly positive."""


class DegenerateDenominator(RescaleError):
    """Closed form undefined because the leading coefficient equals 1."""


class SingularFit(RescaleError):
    """Exactly-determined fit has a (near-)singular denominator.

    `conditioning` is |denominator| / scale, the ratio tested against the
    singularity threshold.
    """

    def __init__(self, message: str, conditioning: float | None = None):
        super().__init__(message)
        self.conditioning = conditioning


class NonPositiveX(RescaleError):
    """Square-root growth form requires x > 0."""


class DegenerateReference(RescaleError):
    """The two reference copy counts must differ."""


class DimensionGuard(RescaleError):
    """Matrix dimension would exceed the configured guard."""


class EigensolverFailure(RescaleError):
    """Eigendecomposition did not converge."""


class ParseError(RescaleError):
    """Input file could not be parsed."""


class UnknownSelector(RescaleError):
    """Unrecognized measure-family or state selector."""


class NegativePredictionWarning(UserWarning):
    """Extrapolated resource value is negative.

    First-order truncation can go negative outside the weak-resource regime;
    this is surfaced as a warning, not an error.
    """
