"""Unit tests for ladder-workbench."""
