"""Exception types shared across the package."""


class GuardExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured size guard."""


class FieldMismatch(ValueError):
    """Operands live in different field towers."""


class ConstructionError(ValueError):
    """A construction precondition failed; the message names the condition."""
