import json
import logging
import sys
from typing import TextIO

from internal.errors import (
    BudgetExceededError,
    ConstructionError,
    InputError,
    MalformedCertificateError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


class ErrorHandler:
    """Turns exceptions escaping a command into an exit code and a diagnostic."""

    def __init__(self, err: TextIO = None):
        self.err = err or sys.stderr

    def exit_code(self, error: BaseException) -> int:
        if isinstance(error, BudgetExceededError):
            return EXIT_BUDGET
        if isinstance(error, ConstructionError):
            return EXIT_NEGATIVE
        if isinstance(error, (InputError, MalformedCertificateError)):
            return EXIT_INPUT
        if isinstance(error, (OSError, json.JSONDecodeError, ValueError)):
            return EXIT_INPUT
        raise error

    def handle(self, error: BaseException) -> int:
        code = self.exit_code(error)
        kind = type(error).__name__
        logger.debug(f"command failed with {kind}: {error}")
        self.err.write(f"error: {kind}: {error}\n")
        return code
