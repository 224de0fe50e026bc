"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class MalformedInputError(ValueError):
    """Input data could not be parsed or violates a structural rule."""


class DegenerateInputError(ValueError):
    """Geometric input is too degenerate for the requested certificate."""
