"""Unit tests for logging utilities."""

import logging

from ladder_workbench.utils.logging import (
    DEFAULT_LOGGER,
    configure_cli_logging,
    log_debug,
    log_error,
    log_info,
)


def test_log_debug_in_development(monkeypatch, caplog):
    """Debug messages pass through outside test/production."""
    monkeypatch.setenv("LADDER_WORKBENCH_ENV", "development")
    caplog.set_level(logging.DEBUG, logger=DEFAULT_LOGGER)

    log_debug("comp step t=1 norm=0.5")

    assert "comp step t=1 norm=0.5" in caplog.text


def test_log_debug_suppressed_in_test(caplog):
    """The autouse fixture sets LADDER_WORKBENCH_ENV=test."""
    caplog.set_level(logging.DEBUG, logger=DEFAULT_LOGGER)

    log_debug("should not appear")

    assert "should not appear" not in caplog.text


def test_log_debug_suppressed_in_production(monkeypatch, caplog):
    monkeypatch.setenv("LADDER_WORKBENCH_ENV", "production")
    caplog.set_level(logging.DEBUG, logger=DEFAULT_LOGGER)

    log_debug("hidden")

    assert not caplog.records


def test_log_info_always_emitted(monkeypatch, caplog):
    """Info messages are emitted in every environment."""
    monkeypatch.setenv("LADDER_WORKBENCH_ENV", "production")
    caplog.set_level(logging.INFO, logger=DEFAULT_LOGGER)

    log_info("Space chain built")

    assert [r.getMessage() for r in caplog.records] == ["Space chain built"]


def test_log_error_formatting(caplog):
    """Errors carry their grouping title."""
    caplog.set_level(logging.ERROR, logger=DEFAULT_LOGGER)

    log_error("eps out of range", title="Bound Parameters Rejected")

    record = caplog.records[-1]
    assert record.levelno == logging.ERROR
    assert record.getMessage() == "[Bound Parameters Rejected] eps out of range"


def test_configure_cli_logging_sets_level():
    logger = logging.getLogger(DEFAULT_LOGGER)
    configure_cli_logging(verbose=True)
    assert logger.level == logging.DEBUG
    configure_cli_logging(verbose=False)
    assert logger.level == logging.INFO
    assert len(logger.handlers) == 1
