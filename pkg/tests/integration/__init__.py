"""Integration tests for ladder-workbench."""
