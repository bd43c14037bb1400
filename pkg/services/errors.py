class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class InvariantViolation(RuntimeError):
    """Two computations of the same exact quantity disagreed."""


class RecordIOError(OSError):
    """Reading or writing scan records failed.

    `offset` is the number of records durably written (or read) before the
    failure, so a caller can report partial progress.
    """

    def __init__(self, message, path, offset=0):
        super().__init__(f"{message} (path={path}, offset={offset})")
        self.path = str(path)
        self.offset = offset
