"""Bound sweep report."""
