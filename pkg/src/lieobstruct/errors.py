"""Exception hierarchy; the CLI maps these onto exit codes."""


class LieObstructError(Exception):
    pass


class InputError(LieObstructError, ValueError):
    """Malformed algebra, ring, or document."""


class RingError(InputError):
    pass


class NotAlternatingError(InputError):
    pass


class GuardError(LieObstructError):
    """A feasibility guard (dimension, enumeration size) was exceeded."""


class BudgetExceeded(GuardError):
    """A brute-force enumeration would exceed its budget."""


class InvariantViolation(LieObstructError, AssertionError):
    """An identity that holds by theorem failed; indicates a broken input or a bug."""
