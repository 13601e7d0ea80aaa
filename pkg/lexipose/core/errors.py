"""Exception hierarchy shared by the library and the CLI.

The CLI maps each family onto an exit code; library code only raises.
"""

from typing import Optional


class LexiposeError(Exception):
    exit_code = 1


class InputError(LexiposeError):
    """File missing, unreadable or not parseable."""
    exit_code = 1


class DataValidationError(LexiposeError, ValueError):
    """Data violates a domain invariant (masses, skeletons, tolerances, lexicons)."""
    exit_code = 2


class FrameError(DataValidationError):
    def __init__(self, frame: Optional[int], message: str):
        self.frame = frame
        super().__init__(f"frame {frame}: {message}")


class ConfigurationError(LexiposeError):
    """Configuration rejected before any frame is processed."""
    exit_code = 3


def describe_validation_error(exc) -> str:
    """Flatten a pydantic ValidationError into a single line."""
    parts = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err.get("loc", ()))
        msg = err.get("msg", "invalid")
        parts.append(f"{loc}: {msg}" if loc else msg)
    return "; ".join(parts) or str(exc)


class FrameParseError(InputError):
    def __init__(self, frame: Optional[int], message: str):
        self.frame = frame
        super().__init__(f"frame {frame}: {message}")
