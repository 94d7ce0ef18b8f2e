"""Unit tests for app hooks configuration."""

import importlib

import pytest

from ladder_workbench import hooks
from ladder_workbench.commands import resolve_hook
from ladder_workbench.utils.errors import ParameterError


def test_hooks_has_app_name():
    """Test that hooks defines app_name."""
    assert hooks.app_name == "ladder_workbench"
    assert hooks.app_title == "Ladder Workbench"


def test_subcommands_cover_cli():
    assert set(hooks.subcommands) == {"bound", "verify", "reduce", "report"}


def test_bound_methods_and_suites():
    assert set(hooks.bound_methods) == {"comp", "mladv", "madv", "sdpt", "poly", "perm"}
    assert list(hooks.verify_suites) == ["space", "ladder", "reduction", "sdpt", "poly", "perm"]


@pytest.mark.parametrize(
    "registry",
    [hooks.subcommands, hooks.bound_methods, hooks.verify_suites, hooks.problems],
)
def test_every_hook_resolves(registry):
    """Every dotted path names an importable callable."""
    for dotted in registry.values():
        module_path, _, attr = dotted.rpartition(".")
        assert callable(getattr(importlib.import_module(module_path), attr))


def test_resolve_hook_unknown_name():
    with pytest.raises(ParameterError, match="unknown method 'lp'"):
        resolve_hook(hooks.bound_methods, "lp", "method")
