"""Exception types shared across the package."""


class CopulagenError(Exception):
    """Base class for all package errors."""


class SchemaError(CopulagenError):
    """Schema inference, validation, or override failed."""


class CsvParseError(CopulagenError):
    """A CSV file could not be parsed into a table."""


class DomainError(CopulagenError):
    """A value falls outside the domain a fitted model knows about."""


class EigenConvergenceError(CopulagenError):
    """Jacobi eigendecomposition did not converge within the sweep cap."""


class CholeskyError(CopulagenError):
    """Cholesky factorization hit a non-positive pivot."""

    def __init__(self, pivot: int):
        super().__init__(f"non-positive pivot at index {pivot}")
        self.pivot = pivot


class ModelFormatError(CopulagenError):
    """A model file is corrupted or malformed."""


class UnsupportedVersionError(ModelFormatError):
    """A model file declares a format version this build cannot read."""
