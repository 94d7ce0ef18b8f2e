"""Unit tests for the dense linear-algebra kernel."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ladder_workbench.linalg import (
    Isometry,
    check_dim,
    fidelity,
    herm_eig,
    holder_bound,
    join,
    kron,
    kron_all,
    mat_inv_sqrt,
    mat_sqrt,
    projector_distance,
    range_isometry,
    span_isometry,
    spectral_norm,
    subspace_excess,
)
from ladder_workbench.utils.config import set_active
from ladder_workbench.utils.errors import ContractViolation, SingularityError, SizeError

pytestmark = pytest.mark.unit


def _random_matrix(seed: int, rows: int, cols: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


def _random_density(seed: int, dim: int) -> np.ndarray:
    a = _random_matrix(seed, dim, dim)
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


class TestNorms:
    """Spectral norm and the Hölder bound."""

    def test_spectral_norm_of_diagonal(self):
        assert spectral_norm(np.diag([3.0, -5.0, 1.0])) == pytest.approx(5.0)

    def test_spectral_norm_of_empty_is_zero(self):
        assert spectral_norm(np.zeros((4, 0))) == 0.0

    def test_holder_bound_on_all_ones(self):
        """J_n has spectral norm n, and both row and column sums are n."""
        j = np.ones((4, 4))
        assert holder_bound(j) == pytest.approx(4.0)
        assert spectral_norm(j) == pytest.approx(4.0)

    @settings(max_examples=500, deadline=None)
    @given(
        seed=st.integers(min_value=0, max_value=2**31),
        rows=st.integers(min_value=1, max_value=12),
        cols=st.integers(min_value=1, max_value=12),
    )
    def test_holder_dominates_spectral(self, seed, rows, cols):
        a = _random_matrix(seed, rows, cols)
        assert holder_bound(a) >= spectral_norm(a) - 1e-10


class TestKron:
    def test_index_convention(self):
        a = np.array([[1, 2], [3, 4]])
        b = np.array([[0, 1], [1, 0]])
        out = kron(a, b)
        assert out[1 * 2 + 0, 0 * 2 + 1] == a[1, 0] * b[0, 1]

    def test_kron_all_left_to_right(self):
        mats = [np.eye(2), np.diag([1.0, 2.0]), np.array([[0.0, 1.0], [1.0, 0.0]])]
        expected = np.kron(np.kron(mats[0], mats[1]), mats[2])
        assert np.allclose(kron_all(mats), expected)

    def test_kron_cap(self):
        with pytest.raises(SizeError):
            kron(np.ones((8, 8)), np.ones((8, 8)), max_entries=100)

    def test_check_dim_uses_config_cap(self):
        set_active({"max_state_dim": 10})
        with pytest.raises(SizeError):
            check_dim(11, "state")
        check_dim(10, "state")


class TestEigen:
    def test_herm_eig_reconstructs(self):
        a = _random_matrix(3, 5, 5)
        h = a + a.conj().T
        eig = herm_eig(h)
        assert np.all(np.diff(eig.values) >= 0)
        assert np.allclose(eig.reconstruct(), h)

    def test_herm_eig_rejects_non_hermitian(self):
        with pytest.raises(ContractViolation):
            herm_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_mat_sqrt_squares_back(self):
        rho = _random_density(5, 4)
        root = mat_sqrt(rho)
        assert np.allclose(root @ root, rho, atol=1e-10)

    def test_mat_inv_sqrt_of_psd(self):
        a = np.diag([4.0, 9.0])
        assert np.allclose(mat_inv_sqrt(a), np.diag([0.5, 1 / 3]))

    def test_mat_inv_sqrt_singular(self):
        with pytest.raises(SingularityError):
            mat_inv_sqrt(np.diag([1.0, 0.0]))

    def test_mat_sqrt_rejects_negative(self):
        with pytest.raises(ContractViolation):
            mat_sqrt(np.diag([1.0, -1.0]))


class TestSubspaces:
    def test_range_isometry_rank(self):
        a = np.array([[1.0, 2.0], [2.0, 4.0], [0.0, 0.0]])
        iso = range_isometry(a)
        assert iso.rank == 1
        assert iso.orthogonality_error() < 1e-12

    def test_span_isometry_empty_needs_dim(self):
        assert span_isometry([], ambient_dim=3).rank == 0
        with pytest.raises(ContractViolation):
            span_isometry([])

    def test_span_isometry_mixed_dims(self):
        with pytest.raises(ContractViolation):
            span_isometry([np.ones(2), np.ones(3)])

    def test_complement_and_join(self):
        iso = Isometry.from_indices(4, [0, 2])
        comp = iso.complement()
        assert comp.rank == 2
        assert np.allclose(join(iso, comp).projector(), np.eye(4))

    def test_projector_distance_is_frobenius(self):
        full = Isometry.identity(2).projector()
        half = Isometry.from_indices(2, [0]).projector()
        assert projector_distance(full, half) == pytest.approx(1.0)
        assert projector_distance(half, half) == 0.0

    def test_subspace_excess(self):
        small = Isometry.from_indices(3, [0])
        big = Isometry.from_indices(3, [0, 1])
        assert subspace_excess(small, big) == pytest.approx(0.0)
        assert subspace_excess(big, small) == pytest.approx(1.0)

    @settings(max_examples=50, deadline=None)
    @given(
        seed=st.integers(min_value=0, max_value=2**31),
        count=st.integers(min_value=1, max_value=6),
    )
    def test_span_isometry_is_orthonormal_and_spans(self, seed, count):
        vectors = list(_random_matrix(seed, 6, count).T)
        iso = span_isometry(vectors)
        assert iso.rank == count
        assert iso.orthogonality_error() < 1e-10
        for v in vectors:
            assert np.allclose(iso.apply(v), v)


class TestFidelity:
    def test_pure_versus_mixed(self):
        assert fidelity(np.diag([1.0, 0.0]), np.full((2, 2), 0.5)) == pytest.approx(
            math.sqrt(0.5)
        )

    def test_identical_states(self):
        rho = _random_density(7, 3)
        assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-8)

    def test_rejects_bad_trace(self):
        with pytest.raises(ContractViolation):
            fidelity(np.eye(2), np.eye(2) / 2)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2**31), dim=st.integers(2, 5))
    def test_symmetric_and_bounded(self, seed, dim):
        rho, sigma = _random_density(seed, dim), _random_density(seed + 1, dim)
        forward, backward = fidelity(rho, sigma), fidelity(sigma, rho)
        assert forward == pytest.approx(backward, abs=1e-7)
        assert 0.0 <= forward <= 1.0 + 1e-9
