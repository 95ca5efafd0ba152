"""Exception types raised by the library."""


class WignerError(ValueError):
    """Base class for invalid or degenerate geometric input."""


class ZeroVectorError(WignerError):
    pass


class DegenerateDirections(WignerError):
    """Two directions are parallel or antiparallel where a plane is needed."""


class DegenerateTheta(WignerError):
    pass


class AntipodalDirection(WignerError):
    """A momentum points along -z; no rotation of the standard family exists."""


class NonPositiveRatio(WignerError):
    pass


class NotLightlike(WignerError):
    pass


class DecompositionFailure(WignerError):
    pass


class DegenerateTriangle(WignerError):
    pass


class InvalidSides(WignerError):
    pass


class OracleMismatch(ArithmeticError):
    """The closed-form angle disagrees with the matrix product."""
