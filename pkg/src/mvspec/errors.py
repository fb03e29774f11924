"""Exception hierarchy and the carrier-size guard."""

import os

DEFAULT_SIZE_GUARD = 64


class MvsError(Exception):
    """Base class for all errors raised by mvspec."""


class MalformedTableError(MvsError, ValueError):
    """An operation table has the wrong shape or an out-of-range index."""


class InvalidAlgebraError(MvsError, ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"tables violate MV axioms: {report.summary()}")


class InvalidLatticeError(MvsError, ValueError):
    pass


class NotAnIdealError(MvsError, ValueError):
    pass


class NotPrimeError(MvsError, ValueError):
    pass


class NotMaximalError(MvsError, ValueError):
    pass


class NotSurjectiveError(MvsError, ValueError):
    pass


class HomomorphismError(MvsError, ValueError):
    pass


class UnsupportedPresentationError(MvsError, ValueError):
    pass


class SizeGuardError(MvsError):
    pass


class ConsistencyError(MvsError, AssertionError):
    """Two independent routes to the same verdict disagreed."""


def size_guard() -> int:
    raw = os.environ.get("MVS_SIZE_GUARD")
    if raw is None:
        return DEFAULT_SIZE_GUARD
    try:
        value = int(raw)
    except ValueError:
        raise MvsError(f"MVS_SIZE_GUARD must be an integer, got {raw!r}") from None
    if value < 1:
        raise MvsError("MVS_SIZE_GUARD must be positive")
    return value


def check_size(n: int, what: str = "carrier", limit: int | None = None) -> None:
    bound = size_guard() if limit is None else limit
    if n > bound:
        raise SizeGuardError(f"{what} of size {n} exceeds the guard of {bound}")
