"""Exception types raised by treehopf."""


class TreeHopfError(Exception):
    pass


class TreeSyntaxError(TreeHopfError, ValueError):
    """Malformed bracket text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


class ResourceLimitError(TreeHopfError):
    """An enumeration would exceed the configured size cap."""


class ArgumentOrderError(TreeHopfError, ValueError):
    pass


class DegreeMismatchError(TreeHopfError, ValueError):
    pass


class InvalidWordError(TreeHopfError, ValueError):
    pass


class ConsistencyError(TreeHopfError, ArithmeticError):
    """An internal identity that must hold exactly did not (a bug)."""
