"""
Compressed-oracle databases, the Comp isometry and the compressed bound.

Databases live in (Y ∪ {⊥})^X and are indexed in base M+1 with ⊥ as digit M
and x = 0 the least significant digit.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from ladder_workbench.linalg import (
    Isometry,
    check_dim,
    kron_all,
    projector_distance,
    spectral_norm,
)
from ladder_workbench.oracle import ProblemSpec, phase_diagonal
from ladder_workbench.utils.config import get_conf
from ladder_workbench.utils.errors import ParameterError, SizeError
from ladder_workbench.utils.logging import log_debug, log_info
from ladder_workbench.utils.results import BoundReport, CheckReport

TIE_SLACK = 1e-12


@dataclass(frozen=True)
class Database:
    """Partial function table; None marks ⊥."""

    entries: tuple

    @property
    def size(self) -> int:
        return sum(1 for v in self.entries if v is not None)

    def union(self, x: int, y: int) -> Database:
        """D ∪ (x, y), defined only where D(x) = ⊥."""
        if self.entries[x] is not None:
            raise ParameterError(f"cannot add ({x}, {y}): D({x}) = {self.entries[x]} is set")
        entries = list(self.entries)
        entries[x] = y
        return Database(tuple(entries))

    def remove(self, x: int, y: int) -> Database:
        """D \\ (x, y), defined only where D(x) = y."""
        if self.entries[x] != y:
            raise ParameterError(f"cannot remove ({x}, {y}): D({x}) = {self.entries[x]}")
        entries = list(self.entries)
        entries[x] = None
        return Database(tuple(entries))

    def to_pairs(self) -> list:
        return [[x, y] for x, y in enumerate(self.entries)]


@dataclass(frozen=True)
class Property:
    """A set of k-tuples of (x, y) pairs; a database is in D_P if it agrees with one tuple."""

    arity: int
    tuples: frozenset
    name: str = "property"

    def __post_init__(self):
        if self.arity < 1:
            raise ParameterError(f"property arity must be at least 1, got {self.arity}")
        for tup in self.tuples:
            if len(tup) != self.arity:
                raise ParameterError(f"tuple {tup} does not have arity {self.arity}")

    def to_pairs(self) -> list:
        return sorted([list(pair) for pair in tup] for tup in self.tuples)


def db_index(d: Database, m: int) -> int:
    """Base-(M+1) code of a database, ⊥ as digit M."""
    return sum((m if v is None else int(v)) * (m + 1) ** x for x, v in enumerate(d.entries))


def db_from_index(index: int, n: int, m: int) -> Database:
    entries = []
    for _ in range(n):
        index, digit = divmod(index, m + 1)
        entries.append(None if digit == m else digit)
    return Database(tuple(entries))


def _require_full(spec: ProblemSpec, what: str):
    if not spec.is_full:
        raise ParameterError(f"{what} needs Func = Y^X, '{spec.name}' is a restricted family")


def db_dim(spec: ProblemSpec) -> int:
    return (spec.n_outputs + 1) ** spec.n_inputs


def db_table(spec: ProblemSpec) -> np.ndarray:
    """Digits of every database, shape ((M+1)^N, N); digit M is ⊥."""
    n, m = spec.n_inputs, spec.n_outputs
    check_dim(db_dim(spec), "database space")
    codes = np.arange(db_dim(spec))
    return (codes[:, None] // (m + 1) ** np.arange(n)[None, :]) % (m + 1)


def db_sizes(spec: ProblemSpec) -> np.ndarray:
    return np.sum(db_table(spec) != spec.n_outputs, axis=1)


def size_mask(spec: ProblemSpec, t: int) -> np.ndarray:
    """Indicator of D_{≤t}."""
    return db_sizes(spec) <= t


def comp_factor(m: int) -> np.ndarray:
    """Comp_x = |⊥⟩⟨0̂| + Σ_{z≠0} |ẑ⟩⟨ẑ|, an (M+1)×M real matrix."""
    factor = np.zeros((m + 1, m))
    factor[:m, :] = np.eye(m) - np.full((m, m), 1.0 / m)
    factor[m, :] = 1.0 / math.sqrt(m)
    return factor


def comp_isometry(spec: ProblemSpec) -> np.ndarray:
    """
    Comp = ⊗_x Comp_x from ℂ[Y^X] into ℂ[(Y ∪ {⊥})^X].

    Raises:
        ParameterError: If Func is not all of Y^X
        SizeError: If (M+1)^N exceeds the cap
    """
    _require_full(spec, "comp_isometry")
    check_dim(db_dim(spec), "database space")
    return kron_all([comp_factor(spec.n_outputs)] * spec.n_inputs).astype(complex)


def compressed_oracle(spec: ProblemSpec, x: int, y: int, comp: np.ndarray | None = None):
    """cO_{x,y} = Comp O_{x,y} Comp†, zero off the image of Comp."""
    comp = comp if comp is not None else comp_isometry(spec)
    dim = comp.shape[0]
    if dim * dim > get_conf("max_kron_entries"):
        raise SizeError(f"dense compressed oracle of dimension {dim} exceeds the entry cap")
    return (comp * phase_diagonal(spec, x, y)) @ comp.conj().T


def property_mask(spec: ProblemSpec, p: Property) -> np.ndarray:
    """Indicator of D_P over all database codes."""
    table = db_table(spec)
    mask = np.zeros(table.shape[0], dtype=bool)
    for tup in p.tuples:
        hit = np.ones(table.shape[0], dtype=bool)
        for x, y in tup:
            hit &= table[:, x] == y
        mask |= hit
    return mask


def property_databases(spec: ProblemSpec, p: Property) -> set:
    """D_P: databases consistent with at least one tuple of P."""
    n, m = spec.n_inputs, spec.n_outputs
    return {db_from_index(int(i), n, m) for i in np.flatnonzero(property_mask(spec, p))}


def db_projector(dbs, spec: ProblemSpec) -> Isometry:
    """Diagonal projector onto a set of computational database states."""
    m = spec.n_outputs
    return Isometry.from_indices(db_dim(spec), {db_index(d, m) for d in dbs})


def comp_step_norm(spec: ProblemSpec, p: Property, t: int, comp: np.ndarray | None = None):
    """
    max_{x,y} ‖P_{D≤t ∩ D_P} cO_{x,y} P_{D≤t−1 \\ D_P}‖ and its argmax.

    Sizes cap at N, so any t > N evaluates as t = N. Ties keep the
    lexicographically first (x, y).

    Returns:
        tuple: (value, (x, y))
    """
    if t < 1:
        raise ParameterError(f"t must be at least 1, got {t}")
    comp = comp if comp is not None else comp_isometry(spec)
    t_eff = min(t, spec.n_inputs)
    in_p = property_mask(spec, p)
    sizes = db_sizes(spec)
    left = comp[(sizes <= t_eff) & in_p]
    right = comp[(sizes <= t_eff - 1) & ~in_p]

    best, argmax = 0.0, (0, 0)
    if left.shape[0] == 0 or right.shape[0] == 0:
        return best, argmax
    right_h = right.conj().T
    for x, y in itertools.product(range(spec.n_inputs), range(spec.n_outputs)):
        value = spectral_norm((left * phase_diagonal(spec, x, y)) @ right_h)
        if value > best + TIE_SLACK:
            best, argmax = value, (x, y)
    return best, argmax


def collision_step_formula(m: int) -> Callable[[int], float]:
    """Per-step collision bound √((t−1)/M)."""
    return lambda t: math.sqrt((t - 1) / m)


def collision_step_check(spec: ProblemSpec, p: Property, t_max: int, tol: float = 1e-9):
    """comp_step_norm(t) against √((t−1)/M) for t = 1..t_max; t = 1 must give 0."""
    if t_max < 1:
        raise ParameterError(f"t_max must be at least 1, got {t_max}")
    comp = comp_isometry(spec)
    formula = collision_step_formula(spec.n_outputs)
    steps = [comp_step_norm(spec, p, t, comp)[0] for t in range(1, t_max + 1)]
    excess = [value - formula(t) for t, value in enumerate(steps, start=1)]
    report = CheckReport("collision_step", info={**spec.describe(), "steps": steps})
    report.add("below_closed_form", max(0.0, *excess), tol)
    report.add("first_step_zero", steps[0], 0.0)
    return report


def check_comp_eps(k: int, m: int, eps: float):
    """Gate of the compressed bound: ε ∈ (0, 1 − k/M)."""
    upper = 1 - k / m
    if not 0 < eps < upper:
        raise ParameterError(f"eps must lie in (0, 1 - k/M) = (0, {upper:.6g}), got {eps}")


def comp_lower_bound(
    spec: ProblemSpec,
    p: Property,
    eps: float,
    mode: str = "numeric",
    step_bound: Callable[[int], float] | None = None,
) -> BoundReport:
    """
    Smallest T with Σ_{t=1}^T step(t) ≥ √(1−ε) − √(k/M).

    Args:
        spec: Problem (only N and M are used in analytic mode)
        p: Success property of arity k
        eps: Error, must lie in (0, 1 − k/M)
        mode: "numeric" (comp_step_norm) or "analytic" (step_bound)
        step_bound: Per-step bound as a function of t, analytic mode only

    Returns:
        BoundReport: value None when the steps never reach the target

    Raises:
        ParameterError: If eps is out of range or the mode is misconfigured
    """
    k, m, n = p.arity, spec.n_outputs, spec.n_inputs
    check_comp_eps(k, m, eps)
    if mode not in ("numeric", "analytic"):
        raise ParameterError(f"mode must be 'numeric' or 'analytic', got '{mode}'")
    if mode == "analytic" and step_bound is None:
        raise ParameterError("analytic mode needs a step_bound formula")

    target = math.sqrt(1 - eps) - math.sqrt(k / m)
    log_info(f"comp_lower_bound: {p.name} N={n} M={m} eps={eps} mode={mode}")

    comp = comp_isometry(spec) if mode == "numeric" else None
    cache: dict = {}

    def step(t: int):
        if mode == "analytic":
            return float(step_bound(t)), None
        t_eff = min(t, n)
        if t_eff not in cache:
            cache[t_eff] = comp_step_norm(spec, p, t_eff, comp)
        return cache[t_eff]

    report = BoundReport(
        bound_name="COMP",
        value=None,
        parameters={
            "problem": spec.name,
            "property": p.name,
            "N": n,
            "M": m,
            "k": k,
            "eps": eps,
            "mode": mode,
            "target": target,
        },
    )
    total = 0.0
    for t in range(1, get_conf("max_search_steps") + 1):
        value, argmax = step(t)
        total += value
        report.per_step.append({"t": t, "step": value, "cumulative": total})
        if argmax is not None:
            report.witnesses.append({"t": t, "x": argmax[0], "y": argmax[1]})
        log_debug(f"comp step t={t}: {value:.6g} (cumulative {total:.6g})")
        if total >= target:
            report.value = t
            break
        if mode == "numeric" and t >= n and value <= TIE_SLACK:
            report.notes.append("steps vanish on the plateau t >= N; the target is never reached")
            break
    else:
        report.notes.append("search cap reached before the target")

    return report


def space_equivalence_check(spec: ProblemSpec, chain, tol: float = 1e-9) -> CheckReport:
    """Comp† P_{D≤t} Comp against the Space_t(Uniform) projector, for every t."""
    comp = comp_isometry(spec)
    sizes = db_sizes(spec)
    report = CheckReport("space_equivalence", info=spec.describe())
    worst, per_t = 0.0, []
    for t, iso in enumerate(chain.projectors):
        rows = comp[sizes <= t]
        lifted = rows.conj().T @ rows
        dist = projector_distance(lifted, iso.projector())
        per_t.append(dist)
        worst = max(worst, dist)
    report.add("comp_vs_space", worst, tol, per_t=per_t)
    return report


def compressed_oracle_check(spec: ProblemSpec, tol: float = 1e-10) -> CheckReport:
    """
    Comp is an isometry, cO is unitary on the image of Comp, and cO changes
    database size by at most one.
    """
    comp = comp_isometry(spec)
    image = comp @ comp.conj().T
    sizes = db_sizes(spec)
    far = np.abs(sizes[:, None] - sizes[None, :]) > 1

    unitarity, leak = 0.0, 0.0
    for x, y in itertools.product(range(spec.n_inputs), range(spec.n_outputs)):
        c_o = compressed_oracle(spec, x, y, comp)
        unitarity = max(unitarity, float(np.max(np.abs(c_o.conj().T @ c_o - image))))
        leak = max(leak, float(np.max(np.abs(c_o[far]), initial=0.0)))

    report = CheckReport("compressed_oracle", info=spec.describe())
    isometry_err = np.max(np.abs(comp.conj().T @ comp - np.eye(comp.shape[1])))
    report.add("comp_isometry", isometry_err, tol)
    report.add("unitary_on_image", unitarity, tol)
    report.add("size_change_at_most_one", leak, tol)
    return report
