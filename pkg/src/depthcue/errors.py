"""Exception types shared across the pipeline."""


class ShapeError(ValueError):
    """Raised when image/plane dimensions or channel counts do not match a contract."""


class FormatError(ValueError):
    """Raised for unsupported or unrecognized file formats."""


class DataError(ValueError):
    """Raised for semantically invalid data (e.g. a depth map with no valid samples)."""
