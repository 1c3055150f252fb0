import typing as tp

import numpy as np


class RkhsTrendError(Exception):
    """Root of every error raised by the package."""


class ValidationError(RkhsTrendError, ValueError):
    """An input violates a documented precondition."""


class IngestionError(ValidationError):
    def __init__(self, row: int, reason: str):
        self.row = row
        self.reason = reason
        super().__init__(f"row {row}: {reason}")


class DegenerateRatioError(ValidationError):
    """The I/C ratio is undefined because the trend does not move."""


class SingularSystemError(RkhsTrendError, ArithmeticError):
    pass


class ConvergenceError(RkhsTrendError, RuntimeError):
    pass


def check(
    condition: tp.Union[bool, np.bool_],
    message: str,
    error: tp.Type[Exception] = ValidationError,
) -> None:
    if not condition:
        raise error(message)
