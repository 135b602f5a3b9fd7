"""Exception hierarchy shared by every index and the CLI."""


class ColorCountError(Exception):
    """Base class for all errors raised by this package."""


class RangeError(ColorCountError, IndexError):
    """A position, prefix length or query range lies outside the sequence."""


class NotFoundError(ColorCountError, LookupError):
    """A select query asked for an occurrence that does not exist."""


class ValidationError(ColorCountError, ValueError):
    """Build parameters or input symbols are invalid."""


class CorruptIndexError(ColorCountError):
    """A serialized index failed magic, version or checksum validation."""
