"""Exception types shared across the toolkit.

The command line maps these onto exit codes: malformed input is 2,
violated preconditions and domain problems are 3, exceeded budgets are 4.
"""


class ShiftForgeError(Exception):
    """Base class for every error raised by this package."""


class FormatError(ShiftForgeError):
    """Malformed file or textual encoding."""


class PreconditionError(ShiftForgeError):
    """An operation's stated precondition does not hold."""


class RingMismatchError(PreconditionError):
    """Operands live in different coefficient domains."""


class ArityError(PreconditionError):
    """A vector's length does not match the variable count."""


class UnsupportedDomainError(PreconditionError):
    """The coefficient domain is not admissible for this construction."""


class InvalidGammaError(PreconditionError):
    """The scale element must be nonzero and not a unit."""


class NotASolutionError(PreconditionError):
    """The assignment does not satisfy the system."""


class StructureError(PreconditionError):
    """The shift vector violates the required zero-sum structure."""


class NoReductionError(PreconditionError):
    """The shift does not reduce the monomial count."""


class InternalConsistencyError(ShiftForgeError):
    """A promised guarantee failed to hold; indicates a bug."""


class CapExceededError(ShiftForgeError):
    """A term or enumeration budget was exceeded."""
