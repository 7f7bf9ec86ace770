"""Exception types shared across the package."""


class SpecError(ValueError):
    """Malformed textual input (group spec, structure spec, diagram, table file).

    ``line`` and ``column`` are 1-based when known, else None.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class GroupMismatchError(ValueError):
    """Operands belong to different groups."""


class BudgetExceededError(RuntimeError):
    """An exhaustive scan would exceed the configured tuple budget."""


class SkewUndefinedError(ValueError):
    """The skew equation [a z a] = a has no unique solution in the table."""


class NotTernaryGroupError(ValueError):
    """Input table is not a ternary group (quasigroup + associativity)."""


class NotKnotTheoreticError(ValueError):
    """Input structure is not a knot-theoretic ternary group."""


class IncompatiblePairError(ValueError):
    """The flat/virtual operation pair fails the compatibility law."""
