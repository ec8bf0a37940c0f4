"""Console logging for the granulum command line."""

import logging
import sys
from typing import Optional, TextIO, Union

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# Loggers that only add noise at DEBUG
NOISY_LOGGERS = ("concurrent.futures",)


def resolve_level(level: Union[int, str, None], debug: bool = False) -> int:
    """Numeric level from an int, a level name ("info") or the debug flag."""
    if level is None:
        return logging.DEBUG if debug else logging.WARNING
    if isinstance(level, int):
        return level
    value = logging.getLevelName(str(level).strip().upper())
    if not isinstance(value, int):
        raise ValueError(f"Unknown log level {level!r}")
    return value


def configure_logging(debug: bool = False, level: Union[int, str, None] = None,
                      stream: Optional[TextIO] = None) -> logging.Logger:
    """Configure the root logger for a command-line run.

    Records go to stderr unless another stream is given, since stdout
    carries the JSON documents. Calling it again replaces the handler.

    Args:
        debug: DEBUG instead of the WARNING default.
        level: Explicit level (number or name), overriding debug.
        stream: Target stream.

    Returns:
        Root logger instance.
    """
    log_level = resolve_level(level, debug)

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)

    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)

    console_handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    console_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root_logger.addHandler(console_handler)

    for name in NOISY_LOGGERS:
        logging.getLogger(name).setLevel(max(log_level, logging.WARNING))

    return root_logger
