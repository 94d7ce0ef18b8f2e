"""
Logging utilities with LADDER_WORKBENCH_ENV guards.

Implements environment-aware logging so sweeps stay quiet under test/production.
"""

import logging
import os

DEFAULT_LOGGER = "ladder_workbench"


def log_debug(message: str, logger_name: str = DEFAULT_LOGGER):
    """
    Log debug message only in development environment.

    Suppressed when LADDER_WORKBENCH_ENV is 'test' or 'production' so that
    per-step values of long sweeps do not flood the output.

    Args:
        message: Debug message to log
        logger_name: Logger namespace (default: "ladder_workbench")

    Example:
        >>> log_debug("comp step t=2 norm=0.5")  # Only logs if env != test|production
    """
    env = os.getenv("LADDER_WORKBENCH_ENV", "development")

    if env not in ["test", "production"]:
        logging.getLogger(logger_name).debug(message)


def log_info(message: str, logger_name: str = DEFAULT_LOGGER):
    """
    Log info message (allowed in all environments).

    Args:
        message: Info message to log
        logger_name: Logger namespace (default: "ladder_workbench")

    Example:
        >>> log_info("Space chain built for N=3, M=2 (ranks 1, 4, 7, 8)")
    """
    logging.getLogger(logger_name).info(message)


def log_error(message: str, title: str = "Workbench Error"):
    """
    Log error with a grouping title (always logged, never suppressed).

    Args:
        message: Error message/traceback
        title: Error title used to group related failures

    Example:
        >>> log_error("eps must lie in (0, 0.5)", title="Bound Parameters Rejected")
    """
    logging.getLogger(DEFAULT_LOGGER).error(f"[{title}] {message}")


def configure_cli_logging(verbose: bool = False):
    """Attach a stderr handler to the package logger (CLI entry point only)."""
    logger = logging.getLogger(DEFAULT_LOGGER)
    # rebind on every call so the handler writes to the current sys.stderr
    for old in list(logger.handlers):
        logger.removeHandler(old)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)
