"""Exceptions raised by the clocked lambda calculus toolkit."""


class ClockedError(Exception):
    """Base class for all errors raised by this package."""


class ModeMismatch(ClockedError):
    """Plain and atomic annotations were mixed, or a rule was used in the wrong mode."""


class RuleMismatch(ClockedError):
    """The subterm at the requested path is not a redex of the requested rule."""


class NotARedex(ClockedError):
    pass


class UnknownName(ClockedError, KeyError):
    pass


class BadArity(ClockedError, ValueError):
    pass


class ParseError(ClockedError, ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column
