"""Exception hierarchy shared by every module."""


class RelGraphError(Exception):
    """Base class for all errors raised by relgraph."""


class ContractError(RelGraphError, ValueError):
    """A caller-side precondition does not hold."""


class DistanceInfiniteError(ContractError):
    """Two graphs live on different vertex sets, so their distance is infinite."""


class ParseError(RelGraphError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CutoffError(RelGraphError):
    """An exact oracle refused an instance above its size cutoff."""

    def __init__(self, what: str, n: int, cutoff: int):
        self.n = n
        self.cutoff = cutoff
        super().__init__(f"{what}: n={n} exceeds cutoff {cutoff}")
