"""Exception types shared across the package."""


class CapacityError(Exception):
    """Input is larger than an exact method's configured cap."""


class ValidationError(ValueError):
    """An instance violates a structural invariant.

    ``invariant`` names the violated condition so callers can report it.
    """

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        self.detail = detail
        msg = invariant if not detail else f"{invariant}: {detail}"
        super().__init__(msg)


class FormatError(ValueError):
    """Malformed text input; ``lineno`` is 1-based (0 when not line-specific)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)
