"""
Subcommand handlers and the helpers they share: hook resolution, report
envelopes and JSON output.
"""

import importlib
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from ladder_workbench import __version__
from ladder_workbench.utils.config import RunConfig
from ladder_workbench.utils.errors import ParameterError
from ladder_workbench.utils.results import to_jsonable


def resolve_hook(registry: dict, name: str, what: str):
    """
    Import the callable registered under name.

    Raises:
        ParameterError: If name is not registered
    """
    if name not in registry:
        raise ParameterError(f"unknown {what} '{name}', expected one of {sorted(registry)}")
    module_path, _, attr = registry[name].rpartition(".")
    return getattr(importlib.import_module(module_path), attr)


def envelope(cfg: RunConfig, result) -> dict:
    """Wrap a result with its provenance: config echo, seed and version."""
    payload = {
        "command": cfg.command,
        "config": cfg.echo(),
        "seed": cfg.seed,
        "version": __version__,
        "result": result.to_dict() if hasattr(result, "to_dict") else result,
    }
    if not cfg.no_timestamp:
        payload["timestamp"] = datetime.now(timezone.utc).isoformat()
    return to_jsonable(payload)


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def write_output(text: str, out: str | None):
    """Write to the --out path, or stdout when none is given."""
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text)


def require(value, flag: str, what: str):
    if value is None:
        raise ParameterError(f"{what} needs --{flag}")
    return value
