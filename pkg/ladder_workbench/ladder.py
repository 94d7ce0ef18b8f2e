"""
Reachable-space chains, multiplicative ladder adversary matrices and the
progress-measure bounds built on them.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from ladder_workbench.linalg import (
    HermEig,
    Isometry,
    fidelity,
    herm_eig,
    join,
    mat_inv_sqrt,
    mat_sqrt,
    range_isometry,
    span_isometry,
    spectral_norm,
    subspace_excess,
)
from ladder_workbench.oracle import (
    InputDistribution,
    ProblemSpec,
    QueryAlgorithm,
    SimTrace,
    phase_diagonal,
    run_algorithm,
    success_probability,
)
from ladder_workbench.utils.config import get_conf
from ladder_workbench.utils.errors import ContractViolation, ParameterError
from ladder_workbench.utils.logging import log_debug, log_info
from ladder_workbench.utils.results import BoundReport, CheckReport

TIE_SLACK = 1e-12
GROUP_TOL = 1e-6


@dataclass(frozen=True)
class VStateSpec:
    """Constraints f(x_i) = y_i defining a v-state; repeats are allowed."""

    xs: tuple
    ys: tuple

    def __post_init__(self):
        if len(self.xs) != len(self.ys):
            raise ParameterError(f"xs and ys differ in length: {self.xs} vs {self.ys}")


def consistent_mask(spec: ProblemSpec, xs: Sequence[int], ys: Sequence[int]) -> np.ndarray:
    """Indicator over Func of the tables with f(x_i) = y_i for every i."""
    mask = np.ones(spec.dim, dtype=bool)
    for x, y in zip(xs, ys, strict=True):
        mask &= spec.table[:, x] == y
    return mask


def v_state(dist: InputDistribution, spec: ProblemSpec, v: VStateSpec):
    """
    The normalized restriction of |δ⟩ to the tables consistent with v.

    Returns:
        tuple | None: (unit vector, α) with α = Σ_{f consistent} δ(f), or None when α = 0
    """
    mask = consistent_mask(spec, v.xs, v.ys)
    weights = np.asarray(dist.weights, dtype=float)
    alpha = float(weights[mask].sum())
    if alpha <= 0.0:
        return None
    vec = np.where(mask, np.sqrt(weights), 0.0).astype(complex) / math.sqrt(alpha)
    return vec, alpha


@dataclass(frozen=True)
class SpaceChain:
    """Π_{≤0} ⊆ … ⊆ Π_{≤N}; indices beyond N read Π_{≤N}."""

    projectors: tuple

    @property
    def top(self) -> int:
        return len(self.projectors) - 1

    def at(self, t: int) -> Isometry:
        if t < 0:
            raise ParameterError(f"space index must be non-negative, got {t}")
        return self.projectors[min(t, self.top)]

    def increment(self, t: int) -> Isometry:
        """Π_t = Π_{≤t} − Π_{≤t−1} as an isometry (Π_0 = Π_{≤0})."""
        current = self.at(t)
        if t == 0:
            return current
        previous = self.at(t - 1)
        return range_isometry(current.columns - previous.apply(current.columns))

    @property
    def increments(self) -> list:
        return [self.increment(t) for t in range(len(self.projectors))]

    def nesting_error(self) -> float:
        return max(
            (subspace_excess(a, b) for a, b in itertools.pairwise(self.projectors)), default=0.0
        )


def space_chain(dist: InputDistribution, spec: ProblemSpec) -> SpaceChain:
    """
    Space_t(δ) for t = 0..N.

    Space_t is spanned by Space_{t−1} and the v-states on sorted distinct
    x-tuples of length t, with the y-tuples realised by the support of δ.
    """
    n = spec.n_inputs
    support = spec.table[np.asarray(dist.weights) > 0]
    basis = span_isometry([dist.purification])
    projectors = [basis]
    for t in range(1, n + 1):
        vectors = []
        for xs in itertools.combinations(range(n), t):
            for ys in sorted({tuple(row) for row in support[:, list(xs)]}):
                state = v_state(dist, spec, VStateSpec(xs, ys))
                if state is not None:
                    vectors.append(state[0])
        if vectors:
            basis = span_isometry(np.column_stack([basis.columns, *vectors]))
        projectors.append(basis)
        log_debug(f"Space_{t}({spec.name}) has rank {basis.rank}")
    log_info(f"space chain for {spec.name}: ranks {[p.rank for p in projectors]}")
    return SpaceChain(tuple(projectors))


@dataclass(frozen=True)
class MlaMatrix:
    """Γ = Σ_i κ^i Λ_i over orthogonal eigenspaces Λ_0..Λ_ℓ."""

    kappa: float
    eigenspaces: tuple

    def __post_init__(self):
        if self.kappa <= 1:
            raise ParameterError(f"kappa must exceed 1, got {self.kappa}")
        if not self.eigenspaces:
            raise ParameterError("an MLA matrix needs at least one eigenspace")

    @property
    def ladder_levels(self) -> int:
        return len(self.eigenspaces) - 1

    @property
    def dim(self) -> int:
        return self.eigenspaces[0].ambient_dim

    @property
    def max_eigenvalue(self) -> float:
        return self.kappa**self.ladder_levels

    def dense(self) -> np.ndarray:
        gamma = np.zeros((self.dim, self.dim), dtype=complex)
        for i, space in enumerate(self.eigenspaces):
            gamma += self.kappa**i * space.projector()
        return gamma

    @classmethod
    def from_dense(cls, gamma: np.ndarray, kappa: float | None = None) -> MlaMatrix:
        """
        Group the spectrum of a dense Γ into levels κ^0..κ^ℓ.

        Eigenvalues within relative 1e-6 share a level. Without an explicit
        kappa it is inferred from the smallest ratio between consecutive groups.

        Raises:
            ContractViolation: If the minimum eigenvalue is not 1 or the
                groups are not powers of one κ
        """
        eig: HermEig = herm_eig(gamma)
        values = eig.values
        if abs(values[0] - 1.0) > 1e-9:
            raise ContractViolation(f"minimum eigenvalue is {values[0]:.12g}, expected 1")

        groups = [[0]]
        for i in range(1, len(values)):
            if values[i] - values[groups[-1][0]] <= GROUP_TOL * values[i]:
                groups[-1].append(i)
            else:
                groups.append([i])
        levels_values = [float(np.mean(values[g])) for g in groups]

        if kappa is None:
            if len(groups) == 1:
                raise ContractViolation("cannot infer kappa from a single eigenvalue group")
            kappa = min(b / a for a, b in itertools.pairwise(levels_values))
        exponents = [math.log(v) / math.log(kappa) for v in levels_values]
        levels = [round(e) for e in exponents]
        pairs = zip(exponents, levels, strict=True)
        if any(abs(e - lv) > GROUP_TOL * max(1.0, e) for e, lv in pairs):
            raise ContractViolation(f"eigenvalues {levels_values} are not powers of kappa={kappa}")

        spaces = [Isometry.empty(len(values)) for _ in range(max(levels) + 1)]
        for g, level in zip(groups, levels, strict=True):
            spaces[level] = Isometry(eig.vectors[:, g].astype(complex))
        return cls(kappa=float(kappa), eigenspaces=tuple(spaces))

    def split(self, lam: float) -> tuple:
        """(Λ_bad, Λ_good): eigenspaces with κ^i < λ, and the rest."""
        bad = [s for i, s in enumerate(self.eigenspaces) if self.kappa**i < lam * (1 - 1e-12)]
        good = [s for i, s in enumerate(self.eigenspaces) if self.kappa**i >= lam * (1 - 1e-12)]
        empty = Isometry.empty(self.dim)
        return (join(*bad) if bad else empty), (join(*good) if good else empty)


@dataclass
class ProgressTrace:
    """W^0..W^T and the ratios W^{t+1}/W^t."""

    values: list
    step_ratios: list
    adv_time_error: float = 0.0


@dataclass
class BoundParams:
    """λ, η, ε together with the bad and good eigenspaces of Γ at λ."""

    lam: float
    eta: float
    eps: float
    bad_projector: Isometry
    good_projector: Isometry

    def __post_init__(self):
        if self.eta > 1 - self.eps + 1e-12:
            raise ParameterError(
                f"eta must satisfy eta <= 1 - eps = {1 - self.eps:.6g}, got {self.eta}"
            )

    @classmethod
    def from_gamma(cls, gamma: MlaMatrix, lam: float, eta: float, eps: float) -> BoundParams:
        bad, good = gamma.split(lam)
        return cls(lam=lam, eta=eta, eps=eps, bad_projector=bad, good_projector=good)

    @property
    def target(self) -> float:
        return progress_target(self.lam, self.eta, self.eps)


def progress_target(lam: float, eta: float, eps: float) -> float:
    """1 + (λ−1)(√(1−ε) − √η)²."""
    return 1 + (lam - 1) * (math.sqrt(1 - eps) - math.sqrt(eta)) ** 2


def _sandwich(left: np.ndarray, diag: np.ndarray, right: np.ndarray) -> float:
    """‖L diag(d) R‖ for an L of shape (r, D) and R of shape (D, c)."""
    if left.shape[0] == 0 or right.shape[1] == 0:
        return 0.0
    return spectral_norm((left * diag) @ right)


def validate_mla(gamma: MlaMatrix, chain: SpaceChain, spec: ProblemSpec, tol: float = 1e-9):
    """
    Checks that make Γ an MLA matrix for the chain:
    eigenvalues κ^0..κ^ℓ, commutation with every Π_{≤t}, and the ladder
    condition ‖Λ_{i′} O_{x,y} Λ_i‖ = 0 for |i′ − i| > 1.
    """
    report = CheckReport("validate_mla", info={"kappa": gamma.kappa, "levels": gamma.ladder_levels})
    dim = gamma.dim

    total = sum(s.projector() for s in gamma.eigenspaces)
    report.add("eigenspaces_complete", np.max(np.abs(total - np.eye(dim))), tol)
    stacked = Isometry(np.hstack([s.columns for s in gamma.eigenspaces]))
    report.add("eigenspaces_orthonormal", stacked.orthogonality_error(), tol)

    expected = np.sort(
        np.concatenate(
            [np.full(s.rank, gamma.kappa**i) for i, s in enumerate(gamma.eigenspaces)]
        )
    )
    observed = herm_eig(gamma.dense()).values
    spectrum_err = (
        float(np.max(np.abs(observed - expected))) / gamma.max_eigenvalue
        if expected.size == observed.size
        else math.inf
    )
    report.add("eigenvalues_are_powers", spectrum_err, tol, min_eigenvalue=float(observed[0]))

    commute = 0.0
    for space, proj in itertools.product(gamma.eigenspaces, chain.projectors):
        if space.rank == 0:
            continue
        p_lam, p_t = space.projector(), proj.projector()
        commute = max(commute, spectral_norm(p_lam @ p_t - p_t @ p_lam))
    report.add("commutes_with_chain", commute, tol)

    ladder = 0.0
    levels = range(len(gamma.eigenspaces))
    for i, j in itertools.product(levels, levels):
        if abs(i - j) <= 1:
            continue
        left = gamma.eigenspaces[j].columns.conj().T
        right = gamma.eigenspaces[i].columns
        for x, y in itertools.product(range(spec.n_inputs), range(spec.n_outputs)):
            ladder = max(ladder, _sandwich(left, phase_diagonal(spec, x, y), right))
    report.add("ladder", ladder, tol)
    return report


def progress(gamma: MlaMatrix, trace: SimTrace, chain: SpaceChain | None = None) -> ProgressTrace:
    """
    W^t = Tr[Γ ρ_I^t] along a simulated run.

    With a chain, also reports max_t |Tr[Γ Π_{≤t} ρ_I^t] − W^t|.

    Raises:
        ContractViolation: If |δ⟩ is not a 1-eigenvector of Γ
    """
    dense = gamma.dense()
    rho0 = trace.input_densities[0]
    err = float(np.max(np.abs(dense @ rho0 - rho0)))
    if err > 1e-9:
        raise ContractViolation(f"|delta> is not a 1-eigenvector of Gamma (deviation {err:.3e})")

    values = [float(np.real(np.trace(dense @ rho))) for rho in trace.input_densities]
    ratios = [b / a for a, b in itertools.pairwise(values)]
    adv_time = 0.0
    if chain is not None:
        for t, rho in enumerate(trace.input_densities):
            restricted = float(np.real(np.trace(dense @ chain.at(t).projector() @ rho)))
            adv_time = max(adv_time, abs(restricted - values[t]))
    return ProgressTrace(values=values, step_ratios=ratios, adv_time_error=adv_time)


def ladder_step_norm(gamma: MlaMatrix, chain: SpaceChain, spec: ProblemSpec, t: int):
    """
    max_{i,x,y} ‖Λ_{i+1} Π_{≤t+1} O_{x,y} Π_{≤t} Λ_i‖ with its argmax.

    Returns:
        tuple: (value, (i, x, y)); ties keep the lexicographically first triple
    """
    best, argmax = 0.0, (0, 0, 0)
    upper, lower = chain.at(t + 1).projector(), chain.at(t).projector()
    for i in range(gamma.ladder_levels):
        left = gamma.eigenspaces[i + 1].columns.conj().T @ upper
        right = lower @ gamma.eigenspaces[i].columns
        for x, y in itertools.product(range(spec.n_inputs), range(spec.n_outputs)):
            value = _sandwich(left, phase_diagonal(spec, x, y), right)
            if value > best + TIE_SLACK:
                best, argmax = value, (i, x, y)
    return best, argmax


def mladv_step_bound(gamma: MlaMatrix, chain: SpaceChain, spec: ProblemSpec, t: int):
    """
    Upper bound on W^{t+1}/W^t: (1 + ((κ−1)/√κ) · ladder_step_norm)².

    Returns:
        tuple: (bound, (i, x, y))
    """
    norm, argmax = ladder_step_norm(gamma, chain, spec, t)
    coefficient = (gamma.kappa - 1) / math.sqrt(gamma.kappa)
    return (1 + coefficient * norm) ** 2, argmax


def madv_step_bound(gamma: np.ndarray, spec: ProblemSpec):
    """
    max_{x,y} ‖O_{x,y}† Γ^{1/2} O_{x,y} Γ^{−1/2}‖², valid for any positive definite Γ.

    Returns:
        tuple: (bound, (x, y))

    Raises:
        SingularityError: If Γ is singular
    """
    root = mat_sqrt(gamma)
    inv_root = mat_inv_sqrt(gamma)
    best, argmax = 0.0, (0, 0)
    for x, y in itertools.product(range(spec.n_inputs), range(spec.n_outputs)):
        phase = phase_diagonal(spec, x, y)
        conjugated = (phase.conj()[:, None] * root * phase[None, :]) @ inv_root
        value = spectral_norm(conjugated) ** 2
        if value > best + TIE_SLACK:
            best, argmax = value, (x, y)
    return best, argmax


def _check_lambda(gamma: MlaMatrix, lam: float):
    if not 1 < lam <= gamma.max_eigenvalue * (1 + 1e-12):
        raise ParameterError(
            f"lambda must lie in (1, kappa^l] = (1, {gamma.max_eigenvalue:.6g}], got {lam}"
        )


def max_fz_overlap(spec: ProblemSpec, space: Isometry):
    """max_z ‖F_z P‖² over Σ and the maximizing z."""
    best, argmax = 0.0, None
    for z in spec.sigma:
        rows = np.array([z in valid for valid in spec.targets])
        value = spectral_norm(space.columns[rows]) ** 2 if rows.any() and space.rank else 0.0
        if argmax is None or value > best + TIE_SLACK:
            best, argmax = value, z
    return best, argmax


def eta_for(gamma: MlaMatrix, lam: float, spec: ProblemSpec) -> float:
    """max_{z ∈ Σ} ‖F_z Λ_bad‖² at threshold λ."""
    _check_lambda(gamma, lam)
    bad, _ = gamma.split(lam)
    value, z = max_fz_overlap(spec, bad)
    log_debug(f"eta_for lambda={lam:.6g}: {value:.6g} at z={z}")
    return value


def _check_eps(eps: float, eta: float):
    if not 0 < eps < 1 - eta:
        raise ParameterError(f"eps must lie in (0, 1 - eta) = (0, {1 - eta:.6g}), got {eps}")


def mladv_lower_bound(
    gamma: MlaMatrix,
    chain: SpaceChain,
    spec: ProblemSpec,
    lam: float,
    eta: float | None,
    eps: float,
) -> BoundReport:
    """
    Smallest T with Π_{t=1}^T step(t−1) ≥ 1 + (λ−1)(√(1−ε) − √η)².

    Args:
        gamma: An MLA matrix for the chain
        chain: Reachable-space chain of the input distribution
        spec: Problem
        lam: Good-subspace threshold λ ∈ (1, κ^ℓ]
        eps: Error in (0, 1 − η)
        eta: Overlap bound; defaults to eta_for and may not be smaller

    Returns:
        BoundReport: T = 0 when the target is at most 1, None when the steps plateau at 1

    Raises:
        ParameterError: If λ, η or ε are out of range
    """
    _check_lambda(gamma, lam)
    eta_min = eta_for(gamma, lam, spec)
    if eta is None:
        eta = eta_min
    elif eta < eta_min - 1e-9:
        raise ParameterError(f"eta must be at least eta_for = {eta_min:.9g}, got {eta}")
    _check_eps(eps, eta)

    target = progress_target(lam, eta, eps)
    log_info(f"mladv_lower_bound: {spec.name} kappa={gamma.kappa:.6g} lam={lam:.6g} eps={eps}")
    report = BoundReport(
        bound_name="MLADV",
        value=None,
        parameters={
            "problem": spec.name,
            "kappa": gamma.kappa,
            "lambda": lam,
            "eta": eta,
            "eta_for": eta_min,
            "eps": eps,
            "target": target,
        },
    )
    if target <= 1.0:
        report.value = 0
        return report

    cache: dict = {}
    top = chain.top
    product = 1.0
    for t in range(1, get_conf("max_search_steps") + 1):
        key = min(t - 1, top)
        if key not in cache:
            cache[key] = mladv_step_bound(gamma, chain, spec, key)
        step, argmax = cache[key]
        product *= step
        report.per_step.append({"t": t, "step": step, "cumulative": product})
        report.witnesses.append({"t": t, "i": argmax[0], "x": argmax[1], "y": argmax[2]})
        log_debug(f"mladv step t={t}: {step:.6g} (product {product:.6g})")
        if product >= target:
            report.value = t
            break
        if t - 1 >= top and step <= 1 + TIE_SLACK:
            report.notes.append("steps equal 1 on the plateau; the target is never reached")
            break
    else:
        report.notes.append("search cap reached before the target")
    return report


def madv_lower_bound(
    gamma: np.ndarray, spec: ProblemSpec, lam: float, eta: float, eps: float
) -> BoundReport:
    """
    Q ≥ log(1 + (λ−1)(√(1−ε) − √η)²) / log(madv_step_bound).

    The report's value is the ceiling of the ratio; the ratio itself is kept
    in the parameters.
    """
    if lam <= 1:
        raise ParameterError(f"lambda must exceed 1, got {lam}")
    _check_eps(eps, eta)
    target = progress_target(lam, eta, eps)
    step, argmax = madv_step_bound(gamma, spec)
    report = BoundReport(
        bound_name="MADV",
        value=None,
        parameters={"problem": spec.name, "lambda": lam, "eta": eta, "eps": eps, "target": target},
        per_step=[{"step": step}],
        witnesses=[{"x": argmax[0], "y": argmax[1]}],
    )
    if step <= 1 + TIE_SLACK:
        report.notes.append("a single query never increases progress; no bound")
        return report
    ratio = math.log(target) / math.log(step)
    report.parameters["ratio"] = ratio
    report.value = max(0, math.ceil(ratio - 1e-12))
    return report


def label_of(spec: ProblemSpec, f_index: int):
    """The first valid output of f in Σ order, or None if f has none."""
    valid = spec.targets[f_index]
    return next((z for z in spec.sigma if z in valid), None)


def label_gram(spec: ProblemSpec) -> np.ndarray:
    """M_{f,f′} = 1 iff f and f′ share a label; unsolvable inputs get zero rows."""
    labels = [label_of(spec, i) for i in range(spec.dim)]
    gram = np.zeros((spec.dim, spec.dim))
    for i, j in itertools.product(range(spec.dim), repeat=2):
        if labels[i] is not None and labels[i] == labels[j]:
            gram[i, j] = 1.0
    return gram


def gen_feasible_gram(spec: ProblemSpec, eps: float, seed: int | None = None) -> np.ndarray:
    """
    Gram matrix N_{f,f′} = ⟨ψ_{f′}|ψ_f⟩ of output states that succeed with
    probability at least 1 − ε on every solvable input.

    ψ_f = √(1−ε′_f)|F(f)⟩ + √ε′_f|junk_f⟩ with ε′_f = ε·U(0,1) and junk
    in dimensions orthogonal to Σ; inputs without a valid output get pure junk.
    """
    seed = seed if seed is not None else get_conf("seed")
    rng = np.random.default_rng(seed)
    n_sigma, d = len(spec.sigma), spec.dim
    states = np.zeros((n_sigma + d, d), dtype=complex)
    for i in range(d):
        junk = rng.normal(size=d) + 1j * rng.normal(size=d)
        junk /= np.linalg.norm(junk)
        label = label_of(spec, i)
        if label is None:
            states[n_sigma:, i] = junk
            continue
        slack = eps * rng.uniform()
        states[spec.sigma.index(label), i] = math.sqrt(1 - slack)
        states[n_sigma:, i] = math.sqrt(slack) * junk
    return states.T @ states.conj()


def output_condition_check(
    gamma: MlaMatrix,
    params: BoundParams,
    feasible_gram: np.ndarray,
    target_gram: np.ndarray,
    tol: float = 1e-8,
) -> CheckReport:
    """
    Output condition on a feasible Gram N.

    The verdict is the normalized form Tr[Γ (N ∘ uu†)] ≥ target, with u the
    uniform unit vector over the inputs that have a valid output (non-zero
    diagonal of the target Gram). The unnormalized Tr[Γ N] is at least the
    dimension for any unit-diagonal N and is kept as info only.
    """
    dense = gamma.dense()
    traced = float(np.real(np.trace(dense @ feasible_gram)))
    report = CheckReport(
        "output_condition", info={"target": params.target, "trace_gamma_n": traced}
    )
    eig = herm_eig(feasible_gram)
    report.add("feasible_psd", max(0.0, -float(eig.values[0])), 1e-10)
    report.add("feasible_unit_diagonal", np.max(np.abs(np.diag(feasible_gram) - 1)), 1e-10)

    solvable = np.real(np.diag(target_gram)) > 0
    u = solvable / math.sqrt(max(int(solvable.sum()), 1))
    weighted = float(np.real(np.trace(dense @ (feasible_gram * np.outer(u, u)))))
    report.add("normalized_progress", max(0.0, params.target - weighted), tol, value=weighted)
    return report


def hadamard_fidelity_heuristic(
    a: np.ndarray, b: np.ndarray, restarts: int | None = None, seed: int | None = None
) -> float:
    """
    Upper estimate of min_u F(a ∘ uu†, b ∘ uu†) over unit vectors u.

    Nelder-Mead descent from seeded random starts; any u found only
    witnesses an upper bound on the true minimum.
    """
    restarts = restarts if restarts is not None else get_conf("fidelity_restarts")
    seed = seed if seed is not None else get_conf("seed")
    rng = np.random.default_rng(seed)
    d = a.shape[0]

    def objective(params: np.ndarray) -> float:
        u = params[:d] + 1j * params[d:]
        norm = np.linalg.norm(u)
        if norm < 1e-12:
            return 1.0
        u = u / norm
        outer = np.outer(u, u.conj())
        return fidelity(a * outer, b * outer, trace_tol=1e-7)

    best = math.inf
    for _ in range(restarts):
        start = rng.normal(size=2 * d)
        result = minimize(
            objective,
            start,
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000},
        )
        best = min(best, float(result.fun), objective(start))
    return best


def one_query_check(chain: SpaceChain, spec: ProblemSpec, tol: float = 1e-10) -> CheckReport:
    """‖O_{x,y} Π_{≤t} − Π_{≤t+1} O_{x,y} Π_{≤t}‖ for every x, y and t < N."""
    worst, where = 0.0, None
    for t in range(chain.top):
        lower, upper = chain.at(t), chain.at(t + 1)
        for x, y in itertools.product(range(spec.n_inputs), range(spec.n_outputs)):
            moved = phase_diagonal(spec, x, y)[:, None] * lower.columns
            value = spectral_norm(moved - upper.apply(moved))
            if value > worst + TIE_SLACK:
                worst, where = value, {"t": t, "x": x, "y": y}
    report = CheckReport("one_query", info=spec.describe())
    report.add("one_query", worst, tol, argmax=where)
    return report


def monotonicity_check(
    gamma: MlaMatrix, chain: SpaceChain, spec: ProblemSpec, tol: float = 1e-9
) -> CheckReport:
    """‖Λ_i Π_{≤t} O_{x,y} Π_{≤t−1} Λ_{i−1}‖ is non-decreasing in t."""
    worst = 0.0
    for i in range(1, len(gamma.eigenspaces)):
        for x, y in itertools.product(range(spec.n_inputs), range(spec.n_outputs)):
            phase = phase_diagonal(spec, x, y)
            previous = 0.0
            for t in range(1, chain.top + 2):
                left = gamma.eigenspaces[i].columns.conj().T @ chain.at(t).projector()
                right = chain.at(t - 1).projector() @ gamma.eigenspaces[i - 1].columns
                value = _sandwich(left, phase, right)
                worst = max(worst, previous - value)
                previous = value
    report = CheckReport("monotonicity", info={"levels": gamma.ladder_levels})
    report.add("non_decreasing", worst, tol)
    return report


@dataclass
class SoundnessSample:
    name: str
    success: float
    values: list = field(default_factory=list)


def progress_soundness_check(
    gamma: MlaMatrix,
    chain: SpaceChain,
    spec: ProblemSpec,
    algorithms: Sequence[QueryAlgorithm],
    lam: float,
    tol: float = 1e-8,
) -> CheckReport:
    """
    Simulate algorithms and check W^0 = 1, every ratio W^{t+1}/W^t against the
    ladder and general step bounds, and W^T ≥ 1 + (λ−1)(√s − √η)² whenever the
    measured success s is at least η = eta_for(Γ, λ).
    """
    dist = InputDistribution.uniform(spec)
    eta = eta_for(gamma, lam, spec)
    madv, _ = madv_step_bound(gamma.dense(), spec)
    steps: dict = {}

    start_err, ratio_err, madv_err, final_err, adv_time = 0.0, 0.0, 0.0, 0.0, 0.0
    samples = []
    for alg in algorithms:
        trace = run_algorithm(alg, dist, spec)
        prog = progress(gamma, trace, chain)
        success = success_probability(trace, spec, alg)
        samples.append(SoundnessSample(alg.name, success, prog.values))
        start_err = max(start_err, abs(prog.values[0] - 1.0))
        adv_time = max(adv_time, prog.adv_time_error)
        for t, ratio in enumerate(prog.step_ratios):
            key = min(t, chain.top)
            if key not in steps:
                steps[key] = mladv_step_bound(gamma, chain, spec, key)[0]
            ratio_err = max(ratio_err, ratio - steps[key])
            madv_err = max(madv_err, ratio - madv)
        if success >= eta:
            needed = 1 + (lam - 1) * (math.sqrt(success) - math.sqrt(eta)) ** 2
            final_err = max(final_err, needed - prog.values[-1])

    report = CheckReport(
        "progress_soundness",
        info={"eta": eta, "lambda": lam, "successes": [s.success for s in samples]},
    )
    report.add("initial_progress", start_err, 1e-9)
    report.add("restricted_progress", adv_time, 1e-9)
    report.add("ladder_step_bound", max(ratio_err, 0.0), tol)
    report.add("general_step_bound", max(madv_err, 0.0), tol)
    report.add("final_progress", max(final_err, 0.0), tol)
    return report
