"""
Function spaces, oracles and the T-query statevector simulator.

The input register is ℂ[Func] with Func listed by ascending base-M code of the
function table (x = 0 is the least significant digit). Registers are ordered
W ⊗ X ⊗ Y ⊗ I, with the workspace W = W_O ⊗ W_aux.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.stats import unitary_group

from ladder_workbench.linalg import Isometry, check_dim, kron_all
from ladder_workbench.utils.config import get_conf
from ladder_workbench.utils.errors import ContractViolation, ParameterError, SizeError
from ladder_workbench.utils.logging import log_debug, log_info
from ladder_workbench.utils.results import CheckReport

UNITARY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """
    A query problem: X = [N]₀, Y = [M]₀, the admissible inputs Func ⊆ Y^X and
    the set-valued target F: Func → 2^Σ.

    Args:
        n_inputs: N = |X|
        n_outputs: M = |Y|
        target: Maps a function table (tuple of length N) to the set of valid outputs
        sigma: Output alphabet Σ, in the order the output register encodes it
        func_filter: Optional predicate selecting Func from Y^X
        name: Catalog name used in reports
        domain: Explicit ordered Func (overrides the base-M enumeration)
    """

    n_inputs: int
    n_outputs: int
    target: Callable[[tuple], frozenset]
    sigma: tuple
    func_filter: Callable[[tuple], bool] | None = None
    name: str = "custom"
    domain: tuple | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n_inputs < 1:
            raise ParameterError(f"N must be at least 1, got {self.n_inputs}")
        if self.n_outputs < 2:
            raise ParameterError(f"M must be at least 2, got {self.n_outputs}")

    @cached_property
    def funcs(self) -> tuple:
        if self.domain is not None:
            funcs = tuple(tuple(f) for f in self.domain)
        else:
            check_dim(self.n_outputs**self.n_inputs, "function space Y^X")
            product = itertools.product(range(self.n_outputs), repeat=self.n_inputs)
            funcs = tuple(
                f
                for f in (tuple(reversed(t)) for t in product)
                if self.func_filter is None or self.func_filter(f)
            )
        if not funcs:
            raise ParameterError(f"problem '{self.name}' has an empty input set Func")
        return funcs

    @cached_property
    def table(self) -> np.ndarray:
        """Function values as an integer array of shape (|Func|, N)."""
        return np.array(self.funcs, dtype=int).reshape(len(self.funcs), self.n_inputs)

    @cached_property
    def index(self) -> dict:
        return {f: i for i, f in enumerate(self.funcs)}

    @cached_property
    def targets(self) -> tuple:
        return tuple(frozenset(self.target(f)) for f in self.funcs)

    @property
    def dim(self) -> int:
        return len(self.funcs)

    @property
    def is_full(self) -> bool:
        """True when Func is all of Y^X."""
        return self.dim == self.n_outputs**self.n_inputs

    def describe(self) -> dict:
        return {"name": self.name, "N": self.n_inputs, "M": self.n_outputs, **self.params}


@dataclass(frozen=True)
class InputDistribution:
    """Distribution δ over Func, aligned with spec.funcs."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if np.any(w < 0):
            raise ContractViolation("input distribution has negative weights")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ContractViolation(f"input distribution sums to {w.sum():.15f}, expected 1")

    @classmethod
    def uniform(cls, spec: ProblemSpec) -> InputDistribution:
        return cls(np.full(spec.dim, 1.0 / spec.dim))

    @property
    def purification(self) -> np.ndarray:
        """|δ⟩ = Σ_f √δ(f) |f⟩."""
        return np.sqrt(np.asarray(self.weights, dtype=float)).astype(complex)


@dataclass(frozen=True)
class QueryAlgorithm:
    """
    U_0..U_T acting on W ⊗ X ⊗ Y, with W = W_O ⊗ W_aux.

    The answer z = sigma[i] is read from basis state |i⟩ of W_O; values
    i ≥ |Σ| never count as a valid output.
    """

    unitaries: tuple
    output_dim: int
    aux_dim: int = 1
    name: str = "custom"

    @property
    def t_queries(self) -> int:
        return len(self.unitaries) - 1

    @property
    def workspace_dim(self) -> int:
        return self.output_dim * self.aux_dim


@dataclass
class SimTrace:
    """States ψ_0..ψ_T, shape (|W|, N, M, |Func|), and input densities ρ_I^t."""

    states: list
    input_densities: list


def qft(m: int, with_bot: bool = False) -> np.ndarray:
    """
    Quantum Fourier transform over Z_m, entry (z, y) = e^{2πi·yz/m}/√m.

    Args:
        m: Modulus, at least 2
        with_bot: Append ⊥ as basis state m, mapped to itself

    Raises:
        ParameterError: If m < 2
    """
    if m < 2:
        raise ParameterError(f"qft needs m >= 2, got {m}")
    z, y = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    mat = np.exp(2j * np.pi * y * z / m) / np.sqrt(m)
    if not with_bot:
        return mat
    ext = np.zeros((m + 1, m + 1), dtype=complex)
    ext[:m, :m] = mat
    ext[m, m] = 1.0
    return ext


def phase_diagonal(spec: ProblemSpec, x: int, y: int) -> np.ndarray:
    """Diagonal of O_{x,y}: e^{2πi·y·f(x)/M} for every f in Func."""
    return np.exp(2j * np.pi * y * spec.table[:, x] / spec.n_outputs)


def phase_oracle_component(spec: ProblemSpec, x: int, y: int) -> np.ndarray:
    """O_{x,y} as a dense diagonal unitary on ℂ[Func]."""
    return np.diag(phase_diagonal(spec, x, y))


def _check_operator(dim: int, what: str):
    check_dim(dim, what)
    check_dim(dim * dim, f"dense {what}", cap=get_conf("max_kron_entries"))


def purified_oracle(spec: ProblemSpec) -> np.ndarray:
    """
    The purified oracle |x, y, f⟩ → |x, (y + f(x)) mod M, f⟩ on X ⊗ Y ⊗ I.

    Raises:
        SizeError: If N·M·|Func| exceeds the configured caps
    """
    n, m, d = spec.n_inputs, spec.n_outputs, spec.dim
    dim = n * m * d
    _check_operator(dim, "purified oracle")

    oracle = np.zeros((dim, dim), dtype=complex)
    for x, y, fi in itertools.product(range(n), range(m), range(d)):
        src = (x * m + y) * d + fi
        dst = (x * m + (y + spec.table[fi, x]) % m) * d + fi
        oracle[dst, src] = 1.0
    return oracle


def oracle_reconstruction_check(spec: ProblemSpec, tol: float = 1e-10):
    """
    Compare O with Σ_{x,y} |x⟩⟨x| ⊗ |ŷ⟩⟨ŷ| ⊗ O_{x,−y}.

    With the +2πi forward transform, |ŷ⟩ picks up the phase e^{−2πi·y·f(x)/M},
    so the Fourier block at ŷ is O_{x,−y}.
    """
    n, m = spec.n_inputs, spec.n_outputs
    oracle = purified_oracle(spec)
    fourier = qft(m)
    rebuilt = np.zeros_like(oracle)
    for x, y in itertools.product(range(n), range(m)):
        ex = np.zeros((n, n))
        ex[x, x] = 1.0
        yhat = np.outer(fourier[:, y], fourier[:, y].conj())
        rebuilt += kron_all([ex, yhat, phase_oracle_component(spec, x, (-y) % m)])

    report = CheckReport("oracle_reconstruction", info=spec.describe())
    unitarity = np.max(np.abs(oracle.conj().T @ oracle - np.eye(oracle.shape[0])))
    report.add("unitary", unitarity, tol)
    report.add("fourier_blocks", np.max(np.abs(oracle - rebuilt)), tol)
    return report


def fourier_query_check(spec: ProblemSpec, tol: float = 1e-10):
    """
    Check O|x, ŷ, f̂⟩ = |x, ŷ, (f − y·δ_x)^⟩ with QFT^⊗N on the input register.

    Raises:
        ParameterError: If Func is a restricted family (the identity needs Y^X)
    """
    if not spec.is_full:
        raise ParameterError("fourier_query_check needs Func = Y^X")

    n, m, d = spec.n_inputs, spec.n_outputs, spec.dim
    oracle = purified_oracle(spec)
    fourier = qft(m)
    input_qft = kron_all([fourier] * n)
    strides = m ** np.arange(n)

    worst = 0.0
    for x, y in itertools.product(range(n), range(m)):
        ex = np.zeros((n, 1))
        ex[x, 0] = 1.0
        yhat = fourier[:, [y]]
        before = kron_all([ex, yhat, input_qft])
        shifted = spec.table.copy()
        shifted[:, x] = (shifted[:, x] - y) % m
        perm = shifted @ strides
        after = kron_all([ex, yhat, input_qft[:, perm]])
        worst = max(worst, float(np.max(np.abs(oracle @ before - after))))

    report = CheckReport("fourier_query", info=spec.describe())
    report.add("fourier_shift", worst, tol, basis_states=n * m * d)
    return report


def _oracle_index(spec: ProblemSpec) -> np.ndarray:
    """idx[0, x, y_new, f] = (y_new − f(x)) mod M, for take_along_axis on Y."""
    m = spec.n_outputs
    y_new = np.arange(m)[None, :, None]
    fx = spec.table.T[:, None, :]
    return ((y_new - fx) % m)[None, ...]


def apply_oracle(psi: np.ndarray, spec: ProblemSpec, index: np.ndarray | None = None):
    """Apply the purified oracle to a state of shape (|W|, N, M, |Func|)."""
    index = index if index is not None else _oracle_index(spec)
    full = np.broadcast_to(index, psi.shape)
    return np.take_along_axis(psi, full, axis=2)


def _check_unitary(u: np.ndarray, dim: int, position: int):
    if u.shape != (dim, dim):
        raise ContractViolation(f"U_{position} has shape {u.shape}, expected {(dim, dim)}")
    err = float(np.max(np.abs(u.conj().T @ u - np.eye(dim))))
    if err > UNITARY_TOL:
        raise ContractViolation(f"U_{position} is not unitary (max |U^H U - I| = {err:.3e})")


def input_density(psi: np.ndarray) -> np.ndarray:
    """Reduced state of the input register: trace out W ⊗ X ⊗ Y."""
    flat = psi.reshape(-1, psi.shape[-1])
    return flat.T @ flat.conj()


def run_algorithm(alg: QueryAlgorithm, dist: InputDistribution, spec: ProblemSpec) -> SimTrace:
    """
    Simulate ψ_t = U_t O U_{t−1} O … O U_0 |0⟩|δ⟩ for t = 0..T.

    Args:
        alg: The query algorithm
        dist: Input distribution aligned with spec.funcs
        spec: Problem the oracle answers for

    Returns:
        SimTrace: States and reduced input densities

    Raises:
        ContractViolation: If some U_t is not a unitary on W ⊗ X ⊗ Y
        SizeError: If the full state dimension exceeds the cap
    """
    n, m, d = spec.n_inputs, spec.n_outputs, spec.dim
    wd = alg.workspace_dim
    if alg.output_dim < len(spec.sigma):
        raise ContractViolation(
            f"output register has dimension {alg.output_dim}, below |Sigma| = {len(spec.sigma)}"
        )
    if len(dist.weights) != d:
        raise ContractViolation(f"distribution has {len(dist.weights)} weights, Func has {d}")
    query_dim = wd * n * m
    check_dim(query_dim * d, "algorithm state")
    for position, u in enumerate(alg.unitaries):
        _check_unitary(np.asarray(u), query_dim, position)

    psi = np.zeros((wd, n, m, d), dtype=complex)
    psi[0, 0, 0, :] = dist.purification
    index = _oracle_index(spec)

    states, densities = [], []
    for t, u in enumerate(alg.unitaries):
        if t > 0:
            psi = apply_oracle(psi, spec, index)
        psi = (np.asarray(u) @ psi.reshape(query_dim, d)).reshape(wd, n, m, d)
        states.append(psi)
        densities.append(input_density(psi))

    log_debug(f"simulated {alg.name} with T={alg.t_queries} on {spec.name}")
    return SimTrace(states=states, input_densities=densities)


def success_probability(trace: SimTrace, spec: ProblemSpec, alg: QueryAlgorithm) -> float:
    """‖Λ_succ ψ_T‖² with Λ_succ = Σ_z |z⟩⟨z|_{W_O} ⊗ F_z."""
    psi = trace.states[-1].reshape(alg.output_dim, alg.aux_dim, -1, spec.dim)
    weight = np.sum(np.abs(psi) ** 2, axis=(1, 2))
    total = 0.0
    for zi, z in enumerate(spec.sigma):
        mask = np.array([z in valid for valid in spec.targets])
        total += float(np.sum(weight[zi, mask]))
    return total


def f_z_projector(spec: ProblemSpec, z) -> Isometry:
    """F_z: projector onto the inputs whose valid-output set contains z."""
    rows = [i for i, valid in enumerate(spec.targets) if z in valid]
    return Isometry.from_indices(spec.dim, rows)


def identity_algorithm(spec: ProblemSpec, t: int, aux_dim: int = 1) -> QueryAlgorithm:
    """T-query algorithm whose unitaries are all the identity."""
    dim = len(spec.sigma) * aux_dim * spec.n_inputs * spec.n_outputs
    eye = np.eye(dim, dtype=complex)
    return QueryAlgorithm(tuple(eye for _ in range(t + 1)), len(spec.sigma), aux_dim, "identity")


def random_algorithm(
    spec: ProblemSpec, t: int, aux_dim: int = 1, seed: int | None = None
) -> QueryAlgorithm:
    """Haar-random unitaries U_0..U_T drawn from a seeded generator."""
    seed = seed if seed is not None else get_conf("seed")
    rng = np.random.default_rng(seed)
    dim = len(spec.sigma) * aux_dim * spec.n_inputs * spec.n_outputs
    check_dim(dim * spec.dim, "algorithm state")
    unitaries = tuple(unitary_group.rvs(dim, random_state=rng) for _ in range(t + 1))
    return QueryAlgorithm(unitaries, len(spec.sigma), aux_dim, f"random(seed={seed})")


def _permutation_unitary(shape: tuple, mapping: Callable[[tuple], tuple]) -> np.ndarray:
    """Permutation matrix sending basis tuple s to mapping(s) over the given register shape."""
    dim = int(np.prod(shape))
    u = np.zeros((dim, dim), dtype=complex)
    for src in np.ndindex(*shape):
        u[np.ravel_multi_index(mapping(src), shape), np.ravel_multi_index(src, shape)] = 1.0
    if not np.allclose(u.sum(axis=0), 1.0) or not np.allclose(u.sum(axis=1), 1.0):
        raise ContractViolation("register mapping is not a bijection")
    return u


def lookup_algorithm(
    spec: ProblemSpec, xs: Sequence[int], answer: Callable[[tuple], object]
) -> QueryAlgorithm:
    """
    The classical lookup algorithm: query x_1..x_t, store each answer, output answer(ys).

    The workspace is W_O ⊗ Y^t; slot i of W_aux receives f(x_{i+1}). The last
    unitary returns X to 0 and adds the index of answer(ys) in Σ to W_O.

    Args:
        spec: Problem whose Σ encodes the output register
        xs: Query positions in order (repeats allowed)
        answer: Maps the tuple of observed values to an element of Σ

    Raises:
        SizeError: If the workspace makes the state exceed the cap
    """
    xs = tuple(int(x) for x in xs)
    n, m = spec.n_inputs, spec.n_outputs
    t = len(xs)
    out = len(spec.sigma)
    aux_dim = m**t
    if aux_dim * out * n * m * spec.dim > get_conf("max_state_dim"):
        raise SizeError(f"lookup workspace for T={t} exceeds the state cap")
    shape = (out,) + (m,) * t + (n, m)

    def move_x(x_from: int, x_to: int) -> Callable[[int], int]:
        def swap(x: int) -> int:
            if x == x_from:
                return x_to
            if x == x_to:
                return x_from
            return x

        return swap

    def step(position: int) -> Callable[[tuple], tuple]:
        # position-th unitary: store the previous answer, then point X at the next query
        def mapping(s: tuple) -> tuple:
            s = list(s)
            slots = s[1 : 1 + t]
            x_reg, y_reg = s[1 + t], s[2 + t]
            if position > 0:
                slot = position - 1
                slots[slot], y_reg = y_reg, slots[slot]
            x_prev = xs[position - 1] if position > 0 else 0
            x_next = xs[position] if position < t else 0
            x_reg = move_x(x_prev, x_next)(x_reg)
            z = s[0]
            if position == t:
                z = (z + spec.sigma.index(answer(tuple(slots)))) % out
            return (z, *slots, x_reg, y_reg)

        return mapping

    unitaries = tuple(
        _permutation_unitary(shape, step(position)) for position in range(t + 1)
    )
    return QueryAlgorithm(unitaries, out, aux_dim, f"lookup{xs}")


def sweep_success(spec: ProblemSpec, algorithms, dist: InputDistribution | None = None) -> list:
    """Success probability of each algorithm in turn (used by suites)."""
    dist = dist or InputDistribution.uniform(spec)
    results = []
    for alg in algorithms:
        trace = run_algorithm(alg, dist, spec)
        results.append(success_probability(trace, spec, alg))
    log_info(f"simulated {len(results)} algorithms on {spec.name}")
    return results
