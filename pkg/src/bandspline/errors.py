"""Exception hierarchy shared by all bandspline modules."""


class BandSplineError(Exception):
    """Base class for all bandspline errors."""


class InvalidInputError(BandSplineError, ValueError):
    """Inputs violate a documented precondition (lengths, ordering, signs)."""


class DomainError(BandSplineError, ValueError):
    """An evaluation point lies outside the domain of the object."""


class UnsupportedOperationError(BandSplineError):
    """The operation is undefined for this input kind (e.g. Taylor data of a
    tabulated potential)."""


class TabulatedParseError(BandSplineError, ValueError):
    """Malformed tabulated-potential text.  Carries the 1-based line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NoEigenfunctionError(BandSplineError):
    """Requested an eigenfunction at an energy that is not close to an
    eigenvalue.  Carries the offending discriminant residual."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual
