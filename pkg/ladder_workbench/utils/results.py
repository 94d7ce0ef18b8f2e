"""
Report types shared by every module: bound reports and check reports.

All of them serialize to plain JSON types through to_dict().
"""

import math
from dataclasses import dataclass, field

import numpy as np


def to_jsonable(value):
    """Convert numpy scalars/arrays, tuples and sets into JSON-safe values."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((to_jsonable(v) for v in value), key=repr)
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return value
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


@dataclass
class Check:
    """One numeric check: the largest violation seen against a tolerance."""

    name: str
    max_violation: float
    tol: float
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.max_violation <= self.tol)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "max_violation": to_jsonable(self.max_violation),
            "tol": self.tol,
            "pass": self.passed,
            "info": to_jsonable(self.info),
        }


@dataclass
class CheckReport:
    """A named group of checks; passes iff every check passes."""

    name: str
    checks: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def add(self, name: str, max_violation: float, tol: float, **info) -> Check:
        check = Check(name, float(max_violation), tol, info)
        self.checks.append(check)
        return check

    def extend(self, other: "CheckReport"):
        for check in other.checks:
            self.checks.append(
                Check(f"{other.name}.{check.name}", check.max_violation, check.tol, check.info)
            )

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def max_violation(self) -> float:
        return max((c.max_violation for c in self.checks), default=0.0)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "info": to_jsonable(self.info),
        }


@dataclass
class BoundReport:
    """
    A computed lower bound (or success-probability bound) with its evidence.

    value is the smallest T (int), a real-valued bound, or None when the
    accumulated steps never reach the target ("unbounded").
    """

    bound_name: str
    value: float | int | None
    parameters: dict = field(default_factory=dict)
    per_step: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    verdicts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def unbounded(self) -> bool:
        return self.value is None

    def to_dict(self) -> dict:
        return {
            "bound_name": self.bound_name,
            "value": to_jsonable(self.value),
            "unbounded": self.unbounded,
            "parameters": to_jsonable(self.parameters),
            "per_step": to_jsonable(self.per_step),
            "witnesses": to_jsonable(self.witnesses),
            "verdicts": to_jsonable(self.verdicts),
            "notes": list(self.notes),
        }
