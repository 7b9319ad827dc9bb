class DomainError(ValueError):
    """Invalid input: bad event, mass assignment, parameter or frame mismatch."""


class IndefiniteMatrixError(ArithmeticError):
    """A quadratic form came out clearly negative on an uncorrected weighting matrix."""
