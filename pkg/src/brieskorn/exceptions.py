class BrieskornError(Exception):
    """Base class for errors raised by this package."""


class InputError(BrieskornError, ValueError):
    """Invalid user input (bad triple, unknown family, out-of-range n)."""


class ValidationError(BrieskornError):
    """An internal consistency check failed."""


class CapExceeded(BrieskornError):
    """A configured size or step cap was exceeded."""
