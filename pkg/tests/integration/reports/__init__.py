"""Integration tests for reports."""
