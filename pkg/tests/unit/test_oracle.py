"""Unit tests for function spaces, oracles and the statevector simulator."""

import numpy as np
import pytest

from ladder_workbench.oracle import (
    InputDistribution,
    ProblemSpec,
    QueryAlgorithm,
    f_z_projector,
    fourier_query_check,
    identity_algorithm,
    lookup_algorithm,
    oracle_reconstruction_check,
    purified_oracle,
    qft,
    random_algorithm,
    run_algorithm,
    success_probability,
    sweep_success,
)
from ladder_workbench.perm import PermSpec
from ladder_workbench.problems import collision, preimage
from ladder_workbench.utils.config import set_active
from ladder_workbench.utils.errors import ContractViolation, ParameterError, SizeError

pytestmark = pytest.mark.unit


class TestProblemSpec:
    """Function enumeration and target sets."""

    def test_function_order_is_base_m_code(self):
        spec = collision(2, 2)
        assert spec.funcs == ((0, 0), (1, 0), (0, 1), (1, 1))
        codes = [sum(v * 2**x for x, v in enumerate(f)) for f in spec.funcs]
        assert codes == sorted(codes)

    def test_targets(self):
        spec = preimage(2, 3)
        assert spec.targets[spec.index[(0, 2)]] == frozenset({0})
        assert spec.targets[spec.index[(1, 2)]] == frozenset()

    def test_rejects_small_alphabet(self):
        with pytest.raises(ParameterError):
            ProblemSpec(2, 1, lambda f: frozenset(), (0,))

    def test_empty_domain(self):
        spec = ProblemSpec(2, 2, lambda f: frozenset(), (0,), func_filter=lambda f: False)
        with pytest.raises(ParameterError):
            _ = spec.funcs

    def test_function_space_cap(self):
        set_active({"max_state_dim": 100})
        with pytest.raises(SizeError):
            _ = collision(7, 2).funcs


class TestOracles:
    def test_qft_is_unitary(self):
        for m in (2, 3, 5):
            f = qft(m)
            assert np.allclose(f.conj().T @ f, np.eye(m))
        ext = qft(3, with_bot=True)
        assert ext.shape == (4, 4)
        assert ext[3, 3] == 1.0

    def test_qft_rejects_m_below_two(self):
        with pytest.raises(ParameterError):
            qft(1)

    def test_purified_oracle_adds_value(self):
        spec = preimage(2, 3)
        oracle = purified_oracle(spec)
        fi = spec.index[(2, 1)]
        d = spec.dim
        src = (1 * 3 + 1) * d + fi
        dst = (1 * 3 + (1 + 1) % 3) * d + fi
        assert oracle[dst, src] == 1.0

    @pytest.mark.parametrize("spec", [collision(2, 2), preimage(2, 3), collision(3, 2)])
    def test_reconstruction_and_fourier_shift(self, spec):
        assert oracle_reconstruction_check(spec).passed
        assert fourier_query_check(spec).passed

    def test_fourier_check_needs_full_space(self):
        with pytest.raises(ParameterError):
            fourier_query_check(PermSpec(3).problem)


class TestSimulator:
    """run_algorithm, input densities and success probabilities."""

    def test_identity_algorithm_success(self):
        """Without moving X, z = (0, 1) is output, right on half the inputs."""
        spec = collision(2, 2)
        alg = identity_algorithm(spec, 1)
        trace = run_algorithm(alg, InputDistribution.uniform(spec), spec)
        assert success_probability(trace, spec, alg) == pytest.approx(0.5)

    def test_input_density_decoheres_on_queried_value(self):
        spec = collision(2, 2)
        dist = InputDistribution.uniform(spec)
        trace = run_algorithm(identity_algorithm(spec, 1), dist, spec)
        before, after = trace.input_densities
        assert np.allclose(before, np.full((4, 4), 0.25))
        for i, f in enumerate(spec.funcs):
            for j, g in enumerate(spec.funcs):
                expected = 0.25 if f[0] == g[0] else 0.0
                assert after[i, j] == pytest.approx(expected)

    def test_random_algorithm_is_seeded(self):
        spec = preimage(2, 2)
        a = random_algorithm(spec, 2, seed=5)
        b = random_algorithm(spec, 2, seed=5)
        assert all(np.array_equal(u, v) for u, v in zip(a.unitaries, b.unitaries))
        trace = run_algorithm(a, InputDistribution.uniform(spec), spec)
        for rho in trace.input_densities:
            assert np.trace(rho).real == pytest.approx(1.0)

    def test_lookup_preimage(self):
        """Query x = 0; answer 0 on a hit, otherwise guess 1."""
        spec = preimage(2, 2)
        alg = lookup_algorithm(spec, [0], lambda ys: 0 if ys[0] == 0 else 1)
        assert sweep_success(spec, [alg]) == [pytest.approx(0.75)]

    def test_rejects_non_unitary(self):
        spec = preimage(2, 2)
        dim = 2 * 2 * 2
        bad = np.zeros((dim, dim))
        alg = QueryAlgorithm((np.eye(dim), bad), output_dim=2)
        with pytest.raises(ContractViolation, match="U_1"):
            run_algorithm(alg, InputDistribution.uniform(spec), spec)

    def test_rejects_small_output_register(self):
        spec = collision(3, 2)
        alg = identity_algorithm(preimage(3, 2), 0)
        alg = QueryAlgorithm(alg.unitaries, output_dim=1, aux_dim=3)
        with pytest.raises(ContractViolation):
            run_algorithm(alg, InputDistribution.uniform(spec), spec)

    def test_distribution_must_normalize(self):
        with pytest.raises(ContractViolation):
            InputDistribution(np.array([0.5, 0.6]))


def test_f_z_projector_rank():
    spec = collision(3, 2)
    iso = f_z_projector(spec, (0, 1))
    assert iso.rank == 4
    assert iso.orthogonality_error() == 0.0
