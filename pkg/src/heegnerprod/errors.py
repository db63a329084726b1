"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


class IncompatibleFieldError(PreconditionError):
    """Two quadratic numbers with different irrational parts were combined."""


class CongruenceError(PreconditionError):
    """A discriminant/residue pair violates ``D = r^2 (mod 4N)``."""


class MissingDataError(PreconditionError):
    """Exponent data does not cover the requested precision."""


class VerificationError(RuntimeError):
    """A construction failed its a-posteriori correctness check."""
