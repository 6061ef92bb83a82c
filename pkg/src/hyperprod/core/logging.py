"""Loguru logging configuration."""

import os
import sys
from pathlib import Path
from typing import Optional

from loguru import logger

# Replaced by the console sink below
logger.remove()

# Import-time level; setup_logging overrides it
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()

CONSOLE_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}"

_console_handler = logger.add(
    sys.stderr,
    format=CONSOLE_FORMAT,
    level=LOG_LEVEL,
    colorize=True,
)
_file_handler: Optional[int] = None


def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> None:
    """Reconfigure the console level and optionally attach a rotating file handler.

    Args:
        level: Log level name; keeps the import-time level when None.
        log_file: Path of the log file; no file logging when None.
    """
    global _console_handler, _file_handler

    effective = (level or LOG_LEVEL).upper()
    logger.remove(_console_handler)
    _console_handler = logger.add(
        sys.stderr, format=CONSOLE_FORMAT, level=effective, colorize=True
    )

    if _file_handler is not None:
        logger.remove(_file_handler)
        _file_handler = None
    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        _file_handler = logger.add(
            path,
            rotation="00:00",  # Rotate at midnight
            retention="30 days",
            compression="zip",
            format=FILE_FORMAT,
            level=effective,
            enqueue=True,  # Thread-safe logging
        )

    logger.debug(f"Logging initialized with level: {effective}")


__all__ = ["logger", "setup_logging"]
