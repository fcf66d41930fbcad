"""Exception hierarchy shared by every fank module."""
from __future__ import annotations

from typing import Optional, Sequence, Tuple


class FankError(Exception):
    """Root of all errors raised by fank."""


class InputError(FankError, ValueError):
    """The caller handed us malformed data."""


class FanSyntaxError(InputError):
    def __init__(self, message: str, line_number: int, path: Optional[str] = None) -> None:
        where = f"{path}:{line_number}" if path else f"line {line_number}"
        super().__init__(f"{where}: {message}")
        self.line_number = line_number
        self.path = path


class LaurentSyntaxError(InputError):
    def __init__(self, message: str, position: int, text: str = "") -> None:
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))
        self.position = position
        self.text = text


class DimensionMismatch(InputError):
    pass


class ZeroVectorError(InputError):
    pass


class GeometryError(FankError):
    """A cone or fan violates a geometric requirement."""


class NotStronglyConvex(GeometryError):
    def __init__(self, witness: Sequence[int]) -> None:
        self.witness: Tuple[int, ...] = tuple(witness)
        super().__init__(
            f"cone is not strongly convex: {self.witness} and its negative both lie in it"
        )


class NotAFace(GeometryError):
    pass


class InvalidFan(GeometryError):
    def __init__(self, message: str, pair: Optional[Tuple[str, str]] = None) -> None:
        super().__init__(message if pair is None else f"{message} (cones {pair[0]}, {pair[1]})")
        self.pair = pair


class CompleteFanError(GeometryError):
    pass


class ImproperSplitting(GeometryError):
    pass


class Unsupported(GeometryError):
    pass


class NotSmooth(GeometryError):
    pass


class NotFwps(GeometryError):
    pass


class EmptySubfan(GeometryError):
    pass


class NotASubfan(GeometryError):
    pass


class AlgebraError(FankError):
    """An ideal-membership requirement failed."""


class NotAMember(AlgebraError):
    def __init__(self, message: str, normal_form: object = None) -> None:
        super().__init__(message if normal_form is None else f"{message}: normal form {normal_form}")
        self.normal_form = normal_form


class NotInImage(AlgebraError):
    def __init__(self, message: str, witness: object = None) -> None:
        super().__init__(message if witness is None else f"{message}: witness {witness}")
        self.witness = witness


class IncompatiblePair(AlgebraError):
    def __init__(self, first: str, second: str, witness: object) -> None:
        super().__init__(
            f"values on {first} and {second} disagree modulo their common face: {witness}"
        )
        self.pair = (first, second)
        self.witness = witness


class InvariantViolation(FankError):
    """An internal postcondition did not hold."""
