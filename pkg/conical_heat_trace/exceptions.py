class ConicalHeatTraceError(Exception):
    """Base class of every error raised by conical_heat_trace."""


class DomainError(ConicalHeatTraceError, ValueError):
    pass


class CapacityError(ConicalHeatTraceError, IndexError):
    pass


class ValidationError(ConicalHeatTraceError, ValueError):
    pass


class FitError(ConicalHeatTraceError, ValueError):
    pass


class ProfileParseError(ConicalHeatTraceError, ValueError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConvergenceError(ConicalHeatTraceError, ArithmeticError):
    pass
