"""Test package for ladder-workbench."""
