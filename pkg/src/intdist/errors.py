"""Error taxonomy shared by every module.

Callers are expected to branch on these classes, so each failure mode keeps a
stable type: bad inputs raise DomainError, data that cannot support the
requested computation raises DegenerateDataError (or its NonIdentifiableError
refinement), a request that is well formed but outside what a model offers
raises UnsupportedModelError, and an internal routine that fails to converge
raises NumericError.
"""


class IntdistError(Exception):
    """Base class for all library errors."""


class DomainError(IntdistError, ValueError):
    """A parameter or input value is outside the mathematical domain."""


class DegenerateDataError(IntdistError, ValueError):
    """The data cannot support the requested computation (too few points,
    constant sample, empty histogram)."""


class NonIdentifiableError(DegenerateDataError):
    """The fit has too little structure to pin down the parameters."""


class UnsupportedModelError(IntdistError, ValueError):
    """The requested model or method combination is not provided."""


class NumericError(IntdistError, ArithmeticError):
    """An internal numeric routine failed to converge to tolerance."""
