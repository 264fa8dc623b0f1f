"""Exception hierarchy."""


class DiskChristoffelError(ValueError):
    """Base class for all errors raised by this package."""


class PoleInput(DiskChristoffelError):
    """A direction lies on (or too close to) the axis ``±e_n``."""


class UnsupportedDimension(DiskChristoffelError):
    pass


class UnsupportedVariant(DiskChristoffelError):
    pass


class UnsupportedBody(DiskChristoffelError):
    pass


class NegativeCurvature(DiskChristoffelError):
    """Sampled data is not the support function of a convex body."""


class DegenerateInput(DiskChristoffelError):
    pass


class NotCentered(DiskChristoffelError):
    """A measure handed to Berg inversion has non-negligible first moment."""


class NotEven(DiskChristoffelError):
    pass


class AtomsPresent(DiskChristoffelError):
    """Operation needs an absolutely continuous measure but atoms were found."""


class SpecError(DiskChristoffelError):
    """A document does not match its schema; the message names the field."""
