"""Exception hierarchy shared by the library and the command line."""

from typing import Iterable, List


class RsqError(ValueError):
    """Domain error: a precondition of an operation is violated."""


class InputFormatError(RsqError):
    """Malformed quiver / representation / complex description."""


class MalformedWalkError(RsqError):
    pass


class DisconnectedQuiverError(RsqError):
    def __init__(self, components: Iterable[Iterable]):
        self.components: List[List] = [sorted(c) for c in components]
        listing = "; ".join("{" + ", ".join(map(str, c)) + "}" for c in self.components)
        super().__init__(f"Quiver is not connected; components: {listing}")


class TrivialTranslationError(RsqError):
    pass


class WindowError(RsqError):
    pass


class ShapeMismatchError(RsqError):
    pass


class UnreliableDegreeError(RsqError):
    pass


class InsufficientWindowError(RsqError):
    pass


class NotComputableError(RsqError):
    pass


class NotApplicableError(RsqError):
    pass
