"""
Command wrapper for timing, metrics and exit-code mapping

Cross-cutting work done once per command (and per identity check):
- time the command
- turn toolkit exceptions into exit codes
- record metrics and emit structured log lines

How this file ties into the app:
- every function in `src/commands/` is decorated with `tracked_command`
- `src/identities.py`, `src/gvars.py`, `src/solutions.py`, `src/lax.py` and
  `src/symmetry.py` call `record_check` for every report they produce
"""

import time
import functools
from typing import Any, Callable, Dict, Optional

from pydantic import ValidationError

from dependencies import OBSERVABILITY_ENABLED, logger, metrics_collector, log_structured
from errors import EXIT_CONFIG_ERROR, EXIT_COMPUTATION_ERROR, EXIT_OK, UCHError


def record_check(identity: str, passed: bool, duration: float,
                 error: Optional[str] = None, metadata: Optional[Dict[str, Any]] = None):
    """Forward one check to the metrics collector when observability is on"""
    if OBSERVABILITY_ENABLED:
        metrics_collector.record_check(identity, passed, duration, error=error, metadata=metadata)


def _log(level: str, message: str, **fields):
    if OBSERVABILITY_ENABLED:
        log_structured(level, message, **fields)
    else:
        getattr(logger, level)(message)


def tracked_command(name: str) -> Callable[[Callable[..., int]], Callable[..., int]]:
    """Wrap a command so it always returns an exit code"""

    def decorator(func: Callable[..., int]) -> Callable[..., int]:
        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> int:
            # Start timing
            start_time = time.time()
            exit_code = EXIT_OK
            error_msg = None

            try:
                exit_code = func(*args, **kwargs)
                return exit_code

            except ValidationError as e:
                exit_code = EXIT_CONFIG_ERROR
                error_msg = str(e)
                _log("error", f"Invalid configuration for {name}", command=name, error=error_msg)
                return exit_code

            except UCHError as e:
                exit_code = e.exit_code
                error_msg = e.message
                _log("error", f"Command {name} failed: {error_msg}", command=name, detail=e.to_dict())
                return exit_code

            except ArithmeticError as e:
                exit_code = EXIT_COMPUTATION_ERROR
                error_msg = f"{type(e).__name__}: {e}"
                _log("error", f"Command {name} hit an arithmetic error", command=name, error=error_msg)
                return exit_code

            finally:
                duration = time.time() - start_time
                record_check(
                    f"command:{name}",
                    passed=exit_code == EXIT_OK,
                    duration=duration,
                    error=error_msg,
                    metadata={'exit_code': exit_code},
                )
                _log(
                    "info" if exit_code == EXIT_OK else "warning",
                    f"Command completed: {name}",
                    command=name,
                    exit_code=exit_code,
                    duration_ms=round(duration * 1000, 2),
                )

        return wrapper

    return decorator
