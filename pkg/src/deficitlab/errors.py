"""Exception hierarchy. Every error carries a stable ``code`` string."""


class DeficitLabError(Exception):
    code = "ERROR"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)


class SpecError(DeficitLabError):
    code = "REJECT_SPEC"


class ContextMismatchError(DeficitLabError):
    code = "CONTEXT_MISMATCH"


class DivisionByZeroError(DeficitLabError, ZeroDivisionError):
    code = "DIVISION_BY_ZERO"


class ZeroPolynomialError(DeficitLabError):
    code = "ZERO_POLYNOMIAL"


class DegreeOverflowError(DeficitLabError):
    code = "DEGREE_OVERFLOW"


class ParseError(DeficitLabError):
    """Base for text-level errors; ``position`` is a 0-based character offset."""

    code = "SYNTAX_ERROR"

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)


class UnknownSymbolError(ParseError):
    code = "UNKNOWN_SYMBOL"


class ArityViolationError(ParseError):
    code = "ARITY_VIOLATION"


class ArityMismatchError(DeficitLabError):
    code = "ARITY_MISMATCH"


class InadmissibleContextError(DeficitLabError):
    code = "INADMISSIBLE_CONTEXT"


class UnsatisfiableConstraintsError(DeficitLabError):
    code = "UNSATISFIABLE_CONSTRAINTS"


class DegreeIncompatibleError(DeficitLabError):
    code = "DEGREE_INCOMPATIBLE"


class CounterexampleError(DeficitLabError):
    """Raised when a theorem's conclusion fails although its hypotheses hold."""

    code = "COUNTEREXAMPLE"

    def __init__(self, message: str, report=None, reproducer: dict | None = None):
        self.report = report
        self.reproducer = reproducer
        super().__init__(message)
