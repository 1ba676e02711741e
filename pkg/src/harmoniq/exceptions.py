"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operator dimension is not a power of two, or shapes do not match."""


class AlgebraViolationError(RuntimeError):
    """A displacement-operator product failed to close up to a scalar.

    This signals an implementation bug, not bad user input.
    """


class VerificationScaleError(ValueError):
    """Dense unitary extraction was requested above the verification cap."""


class WindowError(ValueError):
    """An augmentation window violates its construction rules."""


class EncodingError(ValueError):
    """A dataset cannot be amplitude-encoded (e.g. all vectors are zero)."""
