"""
Dense complex matrix core.

Kronecker products, norms, Hermitian eigendecomposition, projector algebra in
isometry (column-basis) form, matrix square roots and fidelity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np
import scipy.linalg as sla

from ladder_workbench.utils.config import get_conf
from ladder_workbench.utils.errors import ContractViolation, SingularityError, SizeError

HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class Isometry:
    """
    Orthonormal columns V spanning a subspace; the projector is V V†.

    Projectors stay in this form until a dense matrix is requested.
    """

    columns: np.ndarray

    @classmethod
    def empty(cls, ambient_dim: int) -> Isometry:
        return cls(np.zeros((ambient_dim, 0), dtype=complex))

    @classmethod
    def identity(cls, ambient_dim: int) -> Isometry:
        return cls(np.eye(ambient_dim, dtype=complex))

    @classmethod
    def from_indices(cls, ambient_dim: int, indices) -> Isometry:
        """Coordinate subspace spanned by the given basis vectors."""
        indices = sorted(int(i) for i in indices)
        cols = np.zeros((ambient_dim, len(indices)), dtype=complex)
        cols[indices, np.arange(len(indices))] = 1.0
        return cls(cols)

    @property
    def ambient_dim(self) -> int:
        return self.columns.shape[0]

    @property
    def rank(self) -> int:
        return self.columns.shape[1]

    def projector(self) -> np.ndarray:
        return self.columns @ self.columns.conj().T

    def apply(self, vec: np.ndarray) -> np.ndarray:
        return self.columns @ (self.columns.conj().T @ vec)

    def complement(self, tol: float | None = None) -> Isometry:
        """Orthogonal complement inside the ambient space."""
        if self.rank == 0:
            return Isometry.identity(self.ambient_dim)
        if self.rank == self.ambient_dim:
            return Isometry.empty(self.ambient_dim)
        residual = np.eye(self.ambient_dim, dtype=complex) - self.projector()
        return range_isometry(residual, tol)

    def orthogonality_error(self) -> float:
        """max |V†V − I| entrywise."""
        if self.rank == 0:
            return 0.0
        gram = self.columns.conj().T @ self.columns
        return float(np.max(np.abs(gram - np.eye(self.rank))))


@dataclass(frozen=True)
class HermEig:
    """Ascending real eigenvalues with orthonormal eigenvectors as columns."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


def _check_kron_size(n_entries: int, max_entries: int | None):
    cap = max_entries if max_entries is not None else get_conf("max_kron_entries")
    if n_entries > cap:
        raise SizeError(f"kron result would have {n_entries} entries, above the cap {cap}")


def check_dim(dim: int, what: str, cap: int | None = None):
    """
    Refuse to allocate a state space above the configured dimension cap.

    Raises:
        SizeError: If dim exceeds cap (default: config max_state_dim)
    """
    cap = cap if cap is not None else get_conf("max_state_dim")
    if dim > cap:
        raise SizeError(f"{what} has dimension {dim}, above the cap {cap}")


def kron(a: np.ndarray, b: np.ndarray, max_entries: int | None = None) -> np.ndarray:
    """
    Kronecker product with entry ((i·rows_b + k), (j·cols_b + l)) = a(i,j)·b(k,l).

    Args:
        a: Left factor
        b: Right factor
        max_entries: Cap on the result's entry count (default: config max_kron_entries)

    Raises:
        SizeError: If the result would exceed the cap
    """
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    _check_kron_size(a.size * b.size, max_entries)
    return np.kron(a, b)


def kron_all(mats, max_entries: int | None = None) -> np.ndarray:
    """Left-to-right Kronecker product of a non-empty sequence."""
    return reduce(lambda x, y: kron(x, y, max_entries), mats)


def spectral_norm(a: np.ndarray) -> float:
    """Largest singular value (operator norm); 0 for an empty matrix."""
    a = np.atleast_2d(a)
    if a.size == 0:
        return 0.0
    return float(sla.svdvals(a)[0])


def holder_bound(a: np.ndarray) -> float:
    """
    Upper bound √(‖A‖₁·‖A‖∞) on the spectral norm.

    ‖A‖₁ is the largest absolute column sum and ‖A‖∞ the largest absolute row sum.
    """
    a = np.atleast_2d(a)
    if a.size == 0:
        return 0.0
    absolute = np.abs(a)
    return float(np.sqrt(absolute.sum(axis=0).max() * absolute.sum(axis=1).max()))


def hermitian_error(a: np.ndarray) -> float:
    a = np.atleast_2d(a)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - a.conj().T)))


def herm_eig(a: np.ndarray, tol: float = HERMITIAN_TOL) -> HermEig:
    """
    Eigendecomposition of a Hermitian matrix.

    Raises:
        ContractViolation: If a deviates from a† by more than tol entrywise
    """
    a = np.atleast_2d(np.asarray(a))
    err = hermitian_error(a)
    if err > tol:
        raise ContractViolation(f"matrix is not Hermitian (max |A - A^H| = {err:.3e})")
    hermitian = (a + a.conj().T) / 2
    values, vectors = sla.eigh(hermitian)
    return HermEig(values=values, vectors=vectors)


def range_isometry(a: np.ndarray, tol: float | None = None) -> Isometry:
    """
    Orthonormal basis of the column space of a.

    Rank counts singular values above tol times the largest one.
    """
    a = np.atleast_2d(a)
    tol = tol if tol is not None else get_conf("rank_tol")
    if a.shape[1] == 0:
        return Isometry.empty(a.shape[0])
    u, s, _ = sla.svd(a, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return Isometry.empty(a.shape[0])
    rank = int(np.sum(s > tol * s[0]))
    return Isometry(u[:, :rank].astype(complex))


def span_isometry(vectors, ambient_dim: int | None = None, tol: float | None = None) -> Isometry:
    """
    Orthonormal basis of the span of the given vectors.

    Args:
        vectors: Sequence of 1-D arrays of one ambient dimension, or a 2-D
            array whose columns are the vectors
        ambient_dim: Required when vectors is empty
        tol: Relative rank tolerance (default: config rank_tol)

    Returns:
        Isometry: rank-0 isometry for an empty list
    """
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        stacked = vectors
    else:
        vectors = list(vectors)
        if not vectors:
            if ambient_dim is None:
                raise ContractViolation("ambient_dim is required for an empty vector list")
            return Isometry.empty(ambient_dim)
        dims = {len(v) for v in vectors}
        if len(dims) != 1:
            raise ContractViolation(f"vectors have mixed dimensions {sorted(dims)}")
        stacked = np.column_stack(vectors)
    return range_isometry(stacked, tol)


def join(*isometries: Isometry, tol: float | None = None) -> Isometry:
    """Span of the union of several subspaces."""
    cols = np.hstack([iso.columns for iso in isometries])
    return range_isometry(cols, tol)


def subspace_excess(inner: Isometry, outer: Isometry) -> float:
    """‖(I − P_outer) P_inner‖, zero iff inner ⊆ outer."""
    if inner.rank == 0:
        return 0.0
    residual = inner.columns - outer.apply(inner.columns)
    return spectral_norm(residual)


def projector_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius distance between two dense operators."""
    return float(np.linalg.norm(a - b))


def _psd_eig(a: np.ndarray, name: str) -> HermEig:
    eig = herm_eig(a)
    scale = max(1.0, float(np.max(np.abs(eig.values))) if eig.values.size else 1.0)
    if eig.values.size and eig.values[0] < -1e-9 * scale:
        raise ContractViolation(f"{name} is not PSD (min eigenvalue {eig.values[0]:.3e})")
    return eig


def mat_sqrt(a: np.ndarray) -> np.ndarray:
    """
    Principal square root of a Hermitian PSD matrix.

    Raises:
        ContractViolation: If a is not Hermitian PSD
    """
    eig = _psd_eig(a, "operand")
    roots = np.sqrt(np.clip(eig.values, 0.0, None))
    return (eig.vectors * roots) @ eig.vectors.conj().T


def mat_inv_sqrt(a: np.ndarray, min_eig: float = 1e-12) -> np.ndarray:
    """
    Inverse principal square root of a Hermitian positive definite matrix.

    Raises:
        SingularityError: If the smallest eigenvalue is at most min_eig
    """
    eig = _psd_eig(a, "operand")
    if eig.values.size and eig.values[0] <= min_eig:
        raise SingularityError(
            f"matrix is singular to tolerance {min_eig:.1e} (min eigenvalue {eig.values[0]:.3e})"
        )
    return (eig.vectors / np.sqrt(eig.values)) @ eig.vectors.conj().T


def fidelity(rho: np.ndarray, sigma: np.ndarray, trace_tol: float = 1e-9) -> float:
    """
    Fidelity Tr √(√ρ σ √ρ) of two density matrices.

    Raises:
        ContractViolation: If either operand is not PSD with unit trace

    Example:
        >>> fidelity(np.diag([1.0, 0.0]), np.full((2, 2), 0.5))  # 1/√2
    """
    for name, mat in (("rho", rho), ("sigma", sigma)):
        _psd_eig(mat, name)
        trace = float(np.real(np.trace(mat)))
        if abs(trace - 1.0) > trace_tol:
            raise ContractViolation(f"{name} has trace {trace:.12f}, expected 1")

    root = mat_sqrt(rho)
    inner = root @ sigma @ root
    values = sla.eigh((inner + inner.conj().T) / 2, eigvals_only=True)
    return float(np.sum(np.sqrt(np.clip(values, 0.0, None))))
