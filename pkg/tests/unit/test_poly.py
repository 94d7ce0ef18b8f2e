"""Unit tests for Boolean functions, approximate degree and the parity ladder."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ladder_workbench.poly import (
    BooleanFunction,
    approx_degree,
    best_approximation,
    exact_degree,
    magnin_fact_spotcheck,
    mobius_coefficients,
    parity_ladder_check,
    parity_ladder_gamma,
    parity_vectors,
    poly_kappa_log2,
    poly_reduction_bound,
    subsets_up_to,
    target_gram,
)
from ladder_workbench.utils.errors import ParameterError

pytestmark = pytest.mark.unit


class TestBooleanFunction:
    def test_families(self):
        assert BooleanFunction.parity(2).truth_table == (0, 1, 1, 0)
        assert BooleanFunction.or_(2).truth_table == (0, 1, 1, 1)
        assert BooleanFunction.and_(2).truth_table == (0, 0, 0, 1)
        assert BooleanFunction.majority(3).truth_table == (0, 0, 0, 1, 0, 1, 1, 1)
        assert BooleanFunction.constant(2, 1).truth_table == (1, 1, 1, 1)

    def test_bit_order(self):
        """Index 1 is the input with x_0 = 1."""
        assert BooleanFunction.bits(1, 3) == (1, 0, 0)
        assert BooleanFunction.bits(6, 3) == (0, 1, 1)

    def test_parsers(self):
        assert BooleanFunction.from_bitstring("01 10").truth_table == (0, 1, 1, 0)
        assert BooleanFunction.from_hex("0x6", 2).truth_table == (0, 1, 1, 0)
        assert BooleanFunction.from_hex("E", 2).truth_table == (0, 1, 1, 1)

    @pytest.mark.parametrize("text", ["", "011", "0120"])
    def test_bad_bitstrings(self, text):
        with pytest.raises(ParameterError):
            BooleanFunction.from_bitstring(text)

    def test_bad_hex(self):
        with pytest.raises(ParameterError):
            BooleanFunction.from_hex("0x1F", 2)
        with pytest.raises(ParameterError):
            BooleanFunction.from_hex("xyz", 2)

    def test_validation(self):
        with pytest.raises(ParameterError):
            BooleanFunction(2, (0, 1, 1))
        with pytest.raises(ParameterError):
            BooleanFunction(1, (0, 2))

    def test_to_spec(self):
        spec = BooleanFunction.parity(2).to_spec()
        assert spec.sigma == (0, 1)
        assert spec.targets[spec.index[(1, 0)]] == frozenset({1})
        assert spec.targets[spec.index[(1, 1)]] == frozenset({0})


class TestDegrees:
    """Exact degree by Möbius inversion and approximate degree by LP."""

    def test_subsets(self):
        assert subsets_up_to(3, 1) == [(), (0,), (1,), (2,)]

    def test_mobius_of_and(self):
        coefficients = mobius_coefficients(BooleanFunction.and_(2))
        assert coefficients == {(): 0, (0,): 0, (1,): 0, (0, 1): 1}

    @pytest.mark.parametrize(
        "f,expected",
        [
            (BooleanFunction.parity(3), 3),
            (BooleanFunction.or_(2), 2),
            (BooleanFunction.constant(3), 0),
            (BooleanFunction.majority(3), 3),
        ],
    )
    def test_exact_degree(self, f, expected):
        assert exact_degree(f) == expected

    def test_approx_zero_matches_exact_on_all_two_bit_functions(self):
        for bits in itertools.product((0, 1), repeat=4):
            f = BooleanFunction(2, bits)
            assert approx_degree(f, 0)[0] == exact_degree(f)

    def test_or_at_one_third(self):
        d, witness = approx_degree(BooleanFunction.or_(2), 1 / 3)
        assert d == 1
        assert witness.max_deviation == pytest.approx(0.25, abs=1e-7)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_parity_is_hard_to_approximate(self, n):
        assert approx_degree(BooleanFunction.parity(n), 1 / 3)[0] == n

    def test_error_one_is_degree_zero(self):
        assert approx_degree(BooleanFunction.parity(3), 1.0)[0] == 0

    def test_limits(self):
        with pytest.raises(ParameterError):
            approx_degree(BooleanFunction.parity(5), 0.1)
        with pytest.raises(ParameterError):
            approx_degree(BooleanFunction.parity(2), -0.1)

    @settings(max_examples=30, deadline=None)
    @given(bits=st.tuples(*[st.integers(0, 1)] * 8), d=st.integers(0, 3))
    def test_witness_deviation_is_reported_honestly(self, bits, d):
        f = BooleanFunction(3, bits)
        approx = best_approximation(f, d)
        errors = [
            abs(approx.evaluate(BooleanFunction.bits(i, 3)) - f.truth_table[i]) for i in range(8)
        ]
        assert max(errors) == pytest.approx(approx.max_deviation, abs=1e-7)


class TestParityLadder:
    def test_parity_vectors_orthonormal(self):
        chis = np.column_stack(list(parity_vectors(3).values()))
        assert np.allclose(chis.T @ chis, np.eye(8))

    def test_gamma_levels(self):
        gamma = parity_ladder_gamma(3, 4.0)
        assert [s.rank for s in gamma.eigenspaces] == [1, 3, 3, 1]

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_parity_ladder_check(self, n):
        report = parity_ladder_check(n)
        assert report.passed, report.to_dict()

    def test_target_gram(self):
        assert np.array_equal(target_gram(BooleanFunction.parity(1)), np.eye(2))


class TestPolyReduction:
    def test_kappa(self):
        assert poly_kappa_log2(2, 0.5) == pytest.approx(12.0)

    def test_parity_two(self):
        report = poly_reduction_bound(BooleanFunction.parity(2), 1 / 3)
        assert report.value == pytest.approx(0.5)
        assert report.parameters["degree"] == 2
        assert all(report.verdicts.values())

    def test_degree_zero(self):
        report = poly_reduction_bound(BooleanFunction.constant(2), 0.5)
        assert report.value == 0.0

    @pytest.mark.parametrize("eps", [0.0, -0.1, 1.5])
    def test_eps_gate(self, eps):
        with pytest.raises(ParameterError):
            poly_reduction_bound(BooleanFunction.parity(2), eps)


class TestOutputFactSpotcheck:
    def test_parity_two(self):
        report = magnin_fact_spotcheck(BooleanFunction.parity(2), 1 / 3, samples=20, seed=11)
        assert report.passed, report.to_dict()
        assert report.info["samples"] == 20

    def test_zero_error(self):
        report = magnin_fact_spotcheck(BooleanFunction.or_(2), 0.0, samples=5, seed=1)
        assert report.info["rhs"] == 0.0
        assert report.passed

    def test_limits(self):
        with pytest.raises(ParameterError):
            magnin_fact_spotcheck(BooleanFunction.parity(4), 0.1)
        with pytest.raises(ParameterError):
            magnin_fact_spotcheck(BooleanFunction.parity(2), 1.5)
