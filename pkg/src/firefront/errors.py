"""Exception hierarchy for the firefront package."""


class FireModelError(Exception):
    """Base class for all firefront errors."""


class InvalidInputError(FireModelError, ValueError):
    """A parameter is outside its documented domain."""


class DegenerateFrameError(InvalidInputError):
    """Spread-frame construction would divide by a vanishing rate sum."""


class ModelValidityError(FireModelError):
    """A metric model violates a hard validity bound.

    Carries the offending condition in ``condition`` and, when available,
    the full validity report in ``report``.
    """

    def __init__(self, message, condition=None, report=None):
        super().__init__(message)
        self.condition = condition
        self.report = report


class ParseError(FireModelError, ValueError):
    """Syntax error in a field expression; ``position`` is a 0-based offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EvalError(FireModelError, ArithmeticError):
    """A field expression produced a non-finite value."""

    def __init__(self, message, subexpr=None):
        super().__init__(message)
        self.subexpr = subexpr


class IntegrationError(FireModelError):
    """Geodesic integration failed (speed drift or validity violation)."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class FrontGeometryError(FireModelError, ValueError):
    """A front polyline violates its geometric contract."""


class NoOrthogonalDirectionError(FireModelError):
    """No outward metric-orthogonal direction exists at a front vertex."""


class ScenarioValidationError(FireModelError, ValueError):
    """A scenario file fails schema validation."""
