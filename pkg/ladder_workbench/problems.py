"""
Named problem catalog used by the CLI and the verification suites.
"""

from __future__ import annotations

import itertools

from ladder_workbench.compressed import Property
from ladder_workbench.oracle import ProblemSpec
from ladder_workbench.perm import PermSpec
from ladder_workbench.poly import BooleanFunction
from ladder_workbench.utils.errors import ParameterError

BOOLEAN_FAMILIES = {
    "parity": BooleanFunction.parity,
    "or": BooleanFunction.or_,
    "and": BooleanFunction.and_,
    "majority": BooleanFunction.majority,
    "constant": BooleanFunction.constant,
}


def _require(value, flag: str, problem: str):
    if value is None:
        raise ParameterError(f"problem '{problem}' needs --{flag}")
    return value


def collision(n: int, m: int) -> ProblemSpec:
    """Find x < x′ with f(x) = f(x′); Σ lists the pairs lexicographically."""
    pairs = tuple(itertools.combinations(range(n), 2))
    if not pairs:
        raise ParameterError(f"collision needs N >= 2, got N={n}")

    def target(f: tuple) -> frozenset:
        return frozenset((a, b) for a, b in pairs if f[a] == f[b])

    return ProblemSpec(n, m, target, pairs, name="collision", params={"k": 2})


def collision_property(n: int, m: int) -> Property:
    tuples = frozenset(
        ((a, y), (b, y)) for a, b in itertools.combinations(range(n), 2) for y in range(m)
    )
    return Property(2, tuples, "collision")


def preimage(n: int, m: int, target: int = 0) -> ProblemSpec:
    """Find x with f(x) = target."""
    if not 0 <= target < m:
        raise ParameterError(f"preimage target must lie in [0, M) = [0, {m}), got {target}")

    def valid(f: tuple) -> frozenset:
        return frozenset(x for x in range(n) if f[x] == target)

    return ProblemSpec(
        n, m, valid, tuple(range(n)), name="preimage", params={"k": 1, "target": target}
    )


def preimage_property(n: int, m: int, target: int = 0) -> Property:
    return Property(1, frozenset(((x, target),) for x in range(n)), "preimage")


def boolean_function(name: str, n: int | None = None, truth_table: str | None = None):
    """
    A catalog Boolean function, or one given by truth table.

    Tables are bitstrings ('0110') or hex with a 0x prefix ('0x6', needs n).
    """
    if truth_table:
        if truth_table.lower().startswith("0x"):
            return BooleanFunction.from_hex(truth_table, _require(n, "n", "truth table"))
        return BooleanFunction.from_bitstring(truth_table)
    if name not in BOOLEAN_FAMILIES:
        raise ParameterError(
            f"unknown Boolean function '{name}', expected one of {sorted(BOOLEAN_FAMILIES)}"
        )
    return BOOLEAN_FAMILIES[name](_require(n, "n", name))


def permutation_inversion(n: int) -> PermSpec:
    return PermSpec(n)


def get_problem(name: str, n: int | None = None, m: int | None = None, truth_table=None):
    """
    Look up a query problem by catalog name.

    Returns:
        ProblemSpec: For Boolean functions and permutations, the underlying query problem

    Raises:
        ParameterError: For an unknown name or a missing size
    """
    if name == "collision":
        return collision(_require(n, "n", name), _require(m, "m", name))
    if name == "preimage":
        return preimage(_require(n, "n", name), _require(m, "m", name))
    if name in ("perm", "permutation_inversion"):
        return permutation_inversion(_require(n, "n", name)).problem
    if name in BOOLEAN_FAMILIES or name == "table":
        return boolean_function(name, n, truth_table).to_spec()
    raise ParameterError(
        f"unknown problem '{name}', expected collision, preimage, perm, table "
        f"or one of {sorted(BOOLEAN_FAMILIES)}"
    )


def get_property(name: str, n: int, m: int) -> Property:
    """Success property of a compressed-oracle problem."""
    if name == "collision":
        return collision_property(n, m)
    if name == "preimage":
        return preimage_property(n, m)
    raise ParameterError(f"problem '{name}' has no compressed-oracle property")
