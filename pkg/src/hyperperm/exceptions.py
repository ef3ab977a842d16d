"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Tensor extents are invalid or incompatible for an operation."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class HtParseError(ValueError):
    """Malformed ``.ht`` or archive text; carries a 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ResourceLimitExceeded(RuntimeError):
    """A configured enumeration budget was exhausted before completion."""
