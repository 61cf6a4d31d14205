"""
Exception hierarchy shared by every asmbase module.

Each concrete error also derives from the builtin exception a caller would
naturally catch for the same situation, so ``except ValueError`` around a
parser call keeps working.
"""


class AsmError(Exception):
    """Base class for all asmbase errors."""


class AsmSyntaxError(AsmError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} at line {line}, column {column}"
        super().__init__(message)


class SortError(AsmError, ValueError):
    pass


class InconsistentUpdateSet(AsmError, ValueError):
    def __init__(self, location, values):
        self.location = location
        self.values = tuple(values)
        super().__init__(
            f"Inconsistent update set: location {location} receives {self.values!r}"
        )


class UnboundVariable(AsmError, LookupError):
    def __init__(self, variable):
        self.variable = variable
        super().__init__(f"Variable {variable} is not bound by the valuation")


class ResourceLimit(AsmError, RuntimeError):
    def __init__(self, limit: str, value: int, cap: int):
        self.limit = limit
        self.value = value
        self.cap = cap
        super().__init__(f"Resource limit {limit} exceeded: {value} > {cap}")


class IllFormedInstantiation(AsmError, ValueError):
    pass


class LineError(AsmError, ValueError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")
