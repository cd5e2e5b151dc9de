"""Exception types shared across labelforge."""

import os

DEFAULT_GUARD = 10**6


class ContractError(ValueError):
    """An input violates an operation's precondition."""


class ParseError(ValueError):
    """Malformed text input. ``lineno`` is 1-based (0 when unknown)."""

    def __init__(self, message, lineno=0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class GuardExceeded(RuntimeError):
    """A brute-force enumeration would exceed the configured guard.

    Raised instead of silently sampling. Raise the limit with the
    ``LABELFORGE_GUARD`` environment variable.
    """

    def __init__(self, what, size, limit):
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: {size} cases exceeds guard {limit} (set LABELFORGE_GUARD to raise it)")


def guard_limit():
    raw = os.environ.get("LABELFORGE_GUARD")
    if not raw:
        return DEFAULT_GUARD
    try:
        value = int(float(raw))
    except ValueError:
        raise ContractError(f"LABELFORGE_GUARD must be a number, got {raw!r}") from None
    if value < 1:
        raise ContractError("LABELFORGE_GUARD must be positive")
    return value


def check_guard(what, size, limit=None):
    limit = guard_limit() if limit is None else limit
    if size > limit:
        raise GuardExceeded(what, size, limit)
