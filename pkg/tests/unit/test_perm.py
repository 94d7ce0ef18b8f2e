"""Unit tests for permutation inversion chains and bounds."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ladder_workbench.ladder import validate_mla
from ladder_workbench.perm import (
    PermSpec,
    b_slot_check,
    check_perm_proj,
    cited_step_bound,
    lehmer_rank,
    lehmer_unrank,
    one_line,
    perm_chains,
    perm_eta,
    perm_lookup_success,
    perm_mla,
    perm_step_norm,
    perm_step_report,
    perm_subset_check,
    perm_success_bound,
    perm_v_state,
)
from ladder_workbench.utils.errors import ParameterError, SizeError

pytestmark = pytest.mark.unit


@pytest.fixture(scope="module")
def perm_4():
    spec = PermSpec(4)
    return spec, perm_chains(spec)


class TestLehmer:
    def test_matches_itertools_order(self):
        for rank, perm in enumerate(itertools.permutations(range(4))):
            assert lehmer_rank(perm) == rank

    @given(st.integers(min_value=1, max_value=7).flatmap(
        lambda n: st.tuples(st.just(n), st.integers(0, math.factorial(n) - 1))
    ))
    def test_unrank_inverts_rank(self, case):
        n, rank = case
        assert lehmer_rank(lehmer_unrank(rank, n)) == rank

    def test_unrank_out_of_range(self):
        with pytest.raises(ParameterError):
            lehmer_unrank(6, 3)

    def test_one_line(self):
        assert one_line((2, 0, 1)) == "[2 0 1]"


class TestPermSpec:
    def test_problem(self):
        spec = PermSpec(3)
        problem = spec.problem
        assert problem.dim == 6
        assert not problem.is_full
        assert problem.targets[problem.index[(1, 0, 2)]] == frozenset({1})
        assert spec.rank((2, 1, 0)) == 5

    def test_size_gates(self):
        with pytest.raises(ParameterError):
            PermSpec(1)
        with pytest.raises(SizeError):
            PermSpec(7)

    def test_v_state(self):
        spec = PermSpec(3)
        vec = perm_v_state(spec, (0,), (1,))
        assert np.count_nonzero(vec) == 2
        assert np.allclose(vec[vec != 0], 1 / math.sqrt(2))

    def test_v_state_needs_injective_constraints(self):
        spec = PermSpec(3)
        assert perm_v_state(spec, (0, 1), (1, 1)) is None
        assert perm_v_state(spec, (0, 0), (1, 2)) is None


class TestChains:
    """A_{t−1} ⊆ B_t ⊆ A_t and the Π̂ projectors."""

    @pytest.mark.parametrize("n", [3, 4])
    def test_subset_chain(self, n):
        report = perm_subset_check(perm_chains(PermSpec(n)))
        assert report.passed, report.to_dict()

    def test_b_slot(self, perm_4):
        spec, chains = perm_4
        assert b_slot_check(spec, chains).passed

    def test_b_index(self, perm_4):
        _, chains = perm_4
        assert chains.b(1) is chains.b_chain[0]
        with pytest.raises(ParameterError):
            chains.b(0)

    def test_projectors(self, perm_4):
        spec, chains = perm_4
        report = check_perm_proj(spec, chains)
        assert report.passed, report.to_dict()

    def test_two_level_gamma(self, perm_4):
        spec, chains = perm_4
        gamma = perm_mla(spec, 2.0, chains)
        assert gamma.eigenspaces[1].rank == chains.hat_high[-1].rank
        report = validate_mla(gamma, chains.space_chain, spec.problem)
        assert report.passed, report.to_dict()

    def test_kappa_gate(self, perm_4):
        spec, chains = perm_4
        with pytest.raises(ParameterError):
            perm_mla(spec, 1.0, chains)


class TestSteps:
    def test_step_norms_are_contractions(self, perm_4):
        spec, chains = perm_4
        report = perm_step_report(spec, chains)
        assert report.passed
        assert len(report.info["steps"]) == 4

    def test_step_t_must_be_positive(self, perm_4):
        spec, chains = perm_4
        with pytest.raises(ParameterError):
            perm_step_norm(spec, 0, chains)

    def test_cited_step_bound(self):
        assert cited_step_bound(8, 1) == 1.0
        assert cited_step_bound(100, 1) == pytest.approx(2 * math.sqrt(2) / math.sqrt(96))
        assert cited_step_bound(4, 1) is None


class TestEta:
    def test_perm_eta_n4(self, perm_4):
        spec, chains = perm_4
        report = perm_eta(spec, 1, chains)
        assert report.passed, report.to_dict()
        assert report.info["f_z_ranks"] == [6, 6, 6, 6]
        assert report.info["bound"] == pytest.approx(1 / math.sqrt(2))

    def test_needs_n_above_2t(self, perm_4):
        spec, chains = perm_4
        with pytest.raises(ParameterError):
            perm_eta(spec, 2, chains)


class TestSuccessBound:
    def test_cited_value(self):
        report = perm_success_bound(1000, 10)
        assert report.value == pytest.approx(0.8935, abs=1e-4)
        assert report.parameters["derived-chain"] >= report.value
        assert report.verdicts["derived_at_least_cited"]

    def test_zero_queries(self):
        assert perm_success_bound(10, 0).value == pytest.approx(0.1)

    @pytest.mark.parametrize("n,t", [(4, 1), (8, 2), (5, -1)])
    def test_gates(self, n, t):
        with pytest.raises(ParameterError):
            perm_success_bound(n, t)


class TestLookup:
    @pytest.mark.parametrize("n,t", [(3, 0), (3, 1), (4, 0), (5, 1)])
    def test_lookup_matches_counting(self, n, t):
        report = perm_lookup_success(PermSpec(n), t)
        assert report.info["success"] == pytest.approx((t + 1) / n)
        assert report.passed, report.to_dict()

    def test_lookup_with_zero_queries_at_n6(self):
        report = perm_lookup_success(PermSpec(6), 0)
        assert report.info["success"] == pytest.approx(1 / 6)
        assert "below_derived_bound" in [c.name for c in report.checks]

    def test_lookup_range(self):
        with pytest.raises(ParameterError):
            perm_lookup_success(PermSpec(3), 3)
