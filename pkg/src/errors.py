"""
Exception hierarchy for the UC-reduction toolkit

Every error carries the process exit code the CLI reports for it.

How this file ties into the app:
- Library modules raise these when a precondition or a computation fails.
- `src/middleware.py` turns them into exit codes and structured log lines.
- Identity failures are NOT exceptions: they are reported (exit code 1).
"""

from typing import Any, Dict, Optional


EXIT_OK = 0
EXIT_IDENTITY_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_COMPUTATION_ERROR = 3
EXIT_SINGULAR_ABORT = 4


class UCHError(Exception):
    """Base class for all toolkit errors"""

    exit_code = EXIT_COMPUTATION_ERROR

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = context

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": type(self).__name__,
            "message": self.message,
            "exit_code": self.exit_code,
            **{k: v for k, v in self.context.items() if _jsonable(v)},
        }


class ConfigError(UCHError):
    """Invalid configuration, length mismatch or violated precondition"""

    exit_code = EXIT_CONFIG_ERROR


class ComputationError(UCHError):
    """A computation could not be completed"""

    exit_code = EXIT_COMPUTATION_ERROR


class DegenerateSolutionError(ComputationError):
    """A σ entry (or a product of them) used as a denominator vanishes identically"""

    def __init__(self, message: str, quantity: Optional[str] = None, **context: Any):
        super().__init__(message, quantity=quantity, **context)
        self.quantity = quantity


class IndeterminacyError(ComputationError):
    """A birational map was evaluated on its indeterminacy locus"""

    def __init__(self, message: str, denominator: Optional[str] = None, **context: Any):
        super().__init__(message, denominator=denominator, **context)
        self.denominator = denominator


class SingularLocusError(UCHError):
    """Integration reached the singular-locus guard band"""

    exit_code = EXIT_SINGULAR_ABORT

    def __init__(self, message: str, last_state: Optional[Dict[str, Any]] = None, **context: Any):
        super().__init__(message, last_state=last_state, **context)
        self.last_state = last_state


def _jsonable(value: Any) -> bool:
    return value is None or isinstance(value, (str, int, float, bool, list, dict, tuple))
