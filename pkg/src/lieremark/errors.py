"""Exception hierarchy shared by the whole engine."""


class LieremarkError(Exception):
    """Base class for all engine errors."""


class DivisionByZero(LieremarkError):
    """Division by the zero expression."""


class ZeroPolynomial(LieremarkError):
    """Operation requires a nonzero polynomial."""


class SubstitutionPole(LieremarkError):
    """A substitution produced an identically zero denominator."""


class EvaluationPole(LieremarkError):
    """A denominator evaluated to zero at the given point."""


class UnboundCoordinate(LieremarkError):
    """A coordinate occurring in the expression has no value in the point."""

    def __init__(self, coord):
        super().__init__(f"coordinate {coord!r} is not bound")
        self.coord = coord


class IndexOutOfRange(LieremarkError):
    """A variable or derivative index lies outside the jet specification."""


class OrderOverflow(LieremarkError):
    """Expression involves jet coordinates beyond the admissible order."""


class JetCoordinateInBase(LieremarkError):
    """A vector-field component mentions a derivative coordinate."""


class NotClosed(LieremarkError):
    """A generator bracket falls outside the span of the algebra."""

    def __init__(self, i, j):
        super().__init__(f"bracket of generators {i} and {j} is not in the span")
        self.i = i
        self.j = j


class MissingParametrization(LieremarkError):
    """The operation needs a solved form of the system and none is attached."""


class PersistentPole(LieremarkError):
    """Random sampling kept hitting poles or excluded denominators."""


class Intractable(LieremarkError):
    """Symbolic elimination exceeded the configured size guard."""


class UnknownName(LieremarkError):
    """Unknown catalog entry name."""


class InvalidShape(LieremarkError):
    """Invalid (n, m) shape for a hierarchy constructor."""


class ParseError(LieremarkError):
    """Syntax error in expression or field source text."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position
