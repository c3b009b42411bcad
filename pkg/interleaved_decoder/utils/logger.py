"""
Logging configuration for the interleaved decoder.

Provides structured logging setup with configurable output formats and
levels. Log records go to stderr so that command output on stdout stays
byte-identical between runs.
"""

import functools
import logging
import sys
import time
from pathlib import Path
from typing import Any, Callable, Optional

import structlog
from structlog.stdlib import LoggerFactory


def setup_logging(
    log_level: str = "WARNING",
    log_file: Optional[str] = None,
    log_format: str = "console",
    enable_console: bool = True,
) -> None:
    """
    Setup structured logging.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Path to log file (optional)
        log_format: Log format ("json" or "console")
        enable_console: Enable logging to stderr
    """
    processors = [
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.stdlib.PositionalArgumentsFormatter(),
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]

    if log_format == "json":
        processors.append(structlog.processors.JSONRenderer())
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=False))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        logger_factory=LoggerFactory(),
        cache_logger_on_first_use=True,
    )

    level = getattr(logging, log_level.upper())
    root_logger = logging.getLogger()
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)
    root_logger.setLevel(level)

    if enable_console:
        console = logging.StreamHandler(sys.stderr)
        console.setFormatter(logging.Formatter("%(message)s"))
        root_logger.addHandler(console)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_path)
        file_handler.setLevel(level)
        file_handler.setFormatter(logging.Formatter("%(message)s"))
        root_logger.addHandler(file_handler)

    structlog.get_logger(__name__).debug(
        "Logging configured",
        level=log_level,
        file=log_file,
        format=log_format,
        console=enable_console,
    )


class LogContext:
    """
    Context manager binding structured context to a logger.

    Usage:
        with LogContext(command="simfail", seed=7) as log:
            log.info("Simulation started")
    """

    def __init__(self, **context: Any):
        self.context = context
        self.logger = structlog.get_logger()

    def __enter__(self) -> structlog.BoundLogger:
        self.bound_logger = self.logger.bind(**self.context)
        return self.bound_logger

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        pass


def log_performance(operation: str) -> Callable[[Callable[..., Any]], Callable[..., Any]]:
    """
    Decorator logging the duration of an operation.

    Args:
        operation: Operation name to log
    """

    def decorator(func: Callable[..., Any]) -> Callable[..., Any]:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            start = time.perf_counter()
            with LogContext(operation=operation) as log:
                try:
                    result = func(*args, **kwargs)
                except Exception as e:
                    log.error("Operation failed", duration=time.perf_counter() - start, error=str(e))
                    raise
                log.info("Operation completed", duration=time.perf_counter() - start)
                return result

        return wrapper

    return decorator
