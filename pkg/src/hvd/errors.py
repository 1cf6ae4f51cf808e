"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Base class for geometric errors raised by this package."""


class DomainError(GeometryError):
    """Coordinates outside the admissible region of a model."""


class CoincidentPointsError(GeometryError):
    """An operation that needs distinct points received (nearly) equal ones."""


class EmptyInputError(GeometryError):
    """An operation that needs at least one site received none."""


class DegenerateInputError(GeometryError):
    """Input too degenerate for the requested structure (e.g. all collinear)."""


class NumericDegeneracyError(GeometryError):
    """A degeneracy that survived all deterministic perturbation retries."""
