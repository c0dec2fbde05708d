"""应用层错误。"""

from .exceptions import (
    ApplicationError,
    BenchError,
    ConfigurationError,
    EscalationBudgetExceededError,
    InvalidOverrideError,
    OutputNotWritableError,
    ReferenceRunError,
    SolverBudgetExhaustedError,
    SolverError,
    UnknownSolverError,
)

__all__ = [
    "ApplicationError",
    "BenchError",
    "ConfigurationError",
    "EscalationBudgetExceededError",
    "InvalidOverrideError",
    "OutputNotWritableError",
    "ReferenceRunError",
    "SolverBudgetExhaustedError",
    "SolverError",
    "UnknownSolverError",
]
