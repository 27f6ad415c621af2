class SharpGradError(Exception):
    """Base class for all errors raised by sharpgrad."""


class InvalidParams(SharpGradError, ValueError):
    """Kernel parameters or norm index outside the admissible domain."""

    def __init__(self, field, reason):
        self.field = field
        self.reason = reason
        super().__init__(f"{field}: {reason}")


class OutOfRegime(SharpGradError, ValueError):
    """Valid parameters, but the requested formula does not apply."""


class NumericFailure(SharpGradError, RuntimeError):
    """A numerical procedure failed to reach its tolerance."""
