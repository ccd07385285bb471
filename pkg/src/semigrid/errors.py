"""Exception hierarchy.

Every domain failure derives from :class:`GridError`; the CLI maps those to
exit code 1.
"""


class GridError(Exception):
    pass


class ParseError(GridError, ValueError):
    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class ValidationError(GridError):
    pass


class InvalidGrid(GridError):
    pass


class UnsupportedConstant(GridError):
    pass


class InputBoundExceeded(GridError):
    pass


class StateExplosion(GridError):
    def __init__(self, count, cap):
        super().__init__(f"more than {cap} reachable states (explored {count})")
        self.count = count
        self.cap = cap


class AlphabetMismatch(GridError):
    pass


class ZeroDenominator(GridError):
    pass


class UnsupportedRotation(GridError):
    pass


class DegenerateTriangle(GridError):
    pass


class NotConvex(GridError):
    pass


class CoincidentPoints(GridError):
    pass


class NotDyadicRational(GridError):
    pass


class NonSquareRequired(GridError):
    pass


class OperandBoundExceeded(GridError):
    pass
