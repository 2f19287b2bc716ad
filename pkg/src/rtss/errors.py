"""Exception hierarchy shared by every module in the package."""


class Error(Exception):
    """Base class for all domain errors raised by this package."""


class ParameterError(Error, ValueError):
    """An argument violates an operation's contract."""


class FieldMismatchError(ParameterError):
    """Binary operation between elements of different prime fields."""


class InsufficientSharesError(Error):
    """Too few shares (or players) to reconstruct."""


class InconsistentSharesError(Error):
    """Extra shares were supplied and no single polynomial fits them all."""


class NotRepairableError(Error):
    """Some point of the design occurs in fewer than two blocks."""


class ProfileError(Error):
    """The design's union profile cannot support a ramp scheme (ell1 >= ell2)."""


class TooLargeError(Error):
    """An exhaustive scan would exceed its guard; raise the guard to override."""


class DesignParseError(Error):
    """Malformed design file."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CorruptShareError(Error):
    """Pooled subshares for the same point disagree."""
