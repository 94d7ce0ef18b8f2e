"""
Run configuration: defaults, JSON config files and CLI flag overrides.

Precedence is defaults < config file < command-line flags.
"""

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from ladder_workbench.utils.errors import ParameterError

DEFAULTS = {
    "max_state_dim": 2**18,
    "max_kron_entries": 2**20,
    "rank_tol": 1e-9,
    "check_tol": 1e-9,
    "seed": 20240601,
    "fidelity_restarts": 64,
    "max_search_steps": 100000,
    "max_perm_n": 6,
}

_active = dict(DEFAULTS)


def get_conf(key: str):
    """
    Return the active value of a configuration key.

    Args:
        key: One of the keys of DEFAULTS

    Raises:
        ParameterError: If the key is unknown
    """
    if key not in _active:
        raise ParameterError(f"unknown configuration key '{key}'")
    return _active[key]


def set_active(values: dict):
    """Install caps and tolerances for the current process (CLI entry point)."""
    unknown = set(values) - set(DEFAULTS)
    if unknown:
        raise ParameterError(f"unknown configuration keys: {sorted(unknown)}")
    _active.update(values)


def reset_active():
    """Restore the defaults (used by tests)."""
    _active.clear()
    _active.update(DEFAULTS)


@dataclass
class RunConfig:
    """Everything one CLI invocation needs, echoed into every report."""

    command: str = "bound"
    method: str | None = None
    problem: str | None = None
    n: int | None = None
    m: int | None = None
    k: int | None = None
    eps: float | None = None
    kappa: float | None = None
    lam: float | None = None
    eta: float | None = None
    t: int | None = None
    mode: str = "numeric"
    suite: str | None = None
    truth_table: str | None = None
    input: str | None = None
    out: str | None = None
    no_timestamp: bool = False
    settings: dict = field(default_factory=lambda: dict(DEFAULTS))

    @property
    def tol(self) -> float:
        return self.settings["check_tol"]

    @property
    def seed(self) -> int:
        return self.settings["seed"]

    def echo(self) -> dict:
        """JSON-safe copy used as report provenance."""
        data = asdict(self)
        data.pop("out")
        return data


# CLI flag name -> (RunConfig field or settings key, is_setting)
FLAG_TARGETS = {
    "tol": ("check_tol", True),
    "seed": ("seed", True),
}


def load_config(path: str | None) -> dict:
    """
    Read a JSON config file.

    Top-level keys may be RunConfig fields or DEFAULTS keys.

    Args:
        path: Path to a JSON object, or None for an empty config

    Returns:
        dict: Parsed configuration

    Raises:
        ParameterError: If the file is missing, malformed or has unknown keys
    """
    if not path:
        return {}

    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError as e:
        raise ParameterError(f"config file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ParameterError(f"config file {path} is not valid JSON: {e}") from e

    if not isinstance(data, dict):
        raise ParameterError(f"config file {path} must hold a JSON object")

    allowed = set(RunConfig.__dataclass_fields__) | set(DEFAULTS) | set(FLAG_TARGETS)
    unknown = set(data) - allowed
    if unknown:
        raise ParameterError(f"unknown keys in config file {path}: {sorted(unknown)}")
    return data


def resolve_run_config(file_cfg: dict, flags: dict) -> RunConfig:
    """
    Merge config-file values and explicit flags (flags win) into a RunConfig.

    Args:
        file_cfg: Output of load_config
        flags: Flags given on the command line; None means "not given"

    Returns:
        RunConfig: Fully resolved configuration
    """
    cfg = RunConfig()
    settings = dict(DEFAULTS)

    for source in (file_cfg, {k: v for k, v in flags.items() if v is not None}):
        for key, value in source.items():
            if key in FLAG_TARGETS:
                settings[FLAG_TARGETS[key][0]] = value
            elif key in DEFAULTS:
                settings[key] = value
            elif key in RunConfig.__dataclass_fields__ and key != "settings":
                setattr(cfg, key, value)

    cfg.settings = settings
    return cfg
