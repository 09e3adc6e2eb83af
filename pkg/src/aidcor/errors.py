"""Exception hierarchy.

Validation and domain problems subclass :class:`ValueError` so callers that
only care about "bad input" can catch that; the CLI maps them to exit code 2.
"""


class AidcorError(Exception):
    """Base class for every error raised by this package."""


class NonFiniteError(AidcorError, ValueError):
    """Input contains NaN or infinite entries."""


class SingularMatrixError(AidcorError, ValueError):
    """A matrix expected to be positive definite is (numerically) singular."""


class LengthMismatchError(AidcorError, ValueError):
    """Two samples or series that must be paired have different lengths."""


class TooFewSamplesError(AidcorError, ValueError):
    """Not enough observations for the requested statistic."""


class DomainError(AidcorError, ValueError):
    """Argument outside the domain of a special function or series."""


class NotPositiveDefiniteError(AidcorError, ValueError):
    """Joint covariance is not positive definite.

    ``eigenvalue`` carries the offending eigenvalue when one is known.
    """

    def __init__(self, message, eigenvalue=None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class NotScalarCovarianceError(AidcorError, ValueError):
    """A marginal covariance is not a multiple of the identity."""


class LagTooLargeError(AidcorError, ValueError):
    """Requested lag leaves too few overlapping observations."""


class MissingColumnError(AidcorError, KeyError):
    """A requested CSV column is not in the header."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class NonNumericCellError(AidcorError, ValueError):
    """A CSV cell could not be parsed as a finite real number."""

    def __init__(self, row, column, value):
        super().__init__(f"non-numeric cell at row {row}, column {column!r}: {value!r}")
        self.row = row
        self.column = column
        self.value = value


class RaggedRowError(AidcorError, ValueError):
    """A CSV row has a different number of fields than the header."""

    def __init__(self, row, expected, found):
        super().__init__(f"row {row} has {found} fields, expected {expected}")
        self.row = row
        self.expected = expected
        self.found = found
