"""Exception hierarchy shared by every module."""


class MuellerError(Exception):
    """Base class for domain errors raised by this package."""


class NotHermitian(MuellerError, ValueError):
    pass


class NonphysicalMatrix(MuellerError, ValueError):
    """A Mueller matrix whose H matrix has a significantly negative eigenvalue."""


class SingularProbe(MuellerError, ValueError):
    """The probe state cannot be inverted for Mueller reconstruction."""


class NotReconstructible(MuellerError, ValueError):
    """Measured Stokes values lie outside the Poincare ball."""


class InvalidFrame(MuellerError, ValueError):
    pass


class NormalizationError(MuellerError, ValueError):
    """A Kraus family or state violates its normalization precondition."""
