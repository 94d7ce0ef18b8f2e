"""Unit tests for compressed-oracle databases and the compressed bound."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ladder_workbench.compressed import (
    Database,
    Property,
    check_comp_eps,
    collision_step_formula,
    comp_factor,
    comp_isometry,
    comp_lower_bound,
    comp_step_norm,
    compressed_oracle_check,
    db_projector,
    db_from_index,
    db_index,
    property_databases,
    property_mask,
    space_equivalence_check,
)
from ladder_workbench.problems import collision, collision_property, preimage, preimage_property
from ladder_workbench.utils.errors import ParameterError

pytestmark = pytest.mark.unit


class TestDatabase:
    def test_union_and_remove(self):
        d = Database((None, 1, None))
        assert d.size == 1
        grown = d.union(0, 2)
        assert grown.entries == (2, 1, None)
        assert grown.remove(0, 2) == d

    def test_union_on_set_entry(self):
        with pytest.raises(ParameterError):
            Database((0, None)).union(0, 1)

    def test_remove_wrong_value(self):
        with pytest.raises(ParameterError):
            Database((0, None)).remove(0, 1)

    def test_bot_is_digit_m(self):
        assert db_index(Database((None, 0)), 2) == 2
        assert db_index(Database((1, None)), 2) == 1 + 2 * 3

    @given(
        n=st.integers(min_value=1, max_value=4),
        m=st.integers(min_value=2, max_value=4),
        data=st.data(),
    )
    def test_index_inverse(self, n, m, data):
        index = data.draw(st.integers(min_value=0, max_value=(m + 1) ** n - 1))
        assert db_index(db_from_index(index, n, m), m) == index


class TestProperty:
    def test_arity_must_match(self):
        with pytest.raises(ParameterError):
            Property(2, frozenset({((0, 0),)}))

    def test_collision_databases(self):
        spec = collision(2, 2)
        dbs = property_databases(spec, collision_property(2, 2))
        assert dbs == {Database((0, 0)), Database((1, 1))}

    def test_db_projector_on_collision_databases(self):
        spec, prop = collision(3, 2), collision_property(3, 2)
        dbs = property_databases(spec, prop)
        iso = db_projector(dbs, spec)
        proj = iso.projector()
        assert iso.rank == len(dbs) == int(property_mask(spec, prop).sum())
        assert np.allclose(proj, np.diag(np.diag(proj)))
        assert np.allclose(np.diag(proj).real, property_mask(spec, prop))


class TestComp:
    def test_factor_is_isometry(self):
        for m in (2, 3, 4):
            f = comp_factor(m)
            assert np.allclose(f.T @ f, np.eye(m))

    def test_factor_maps_uniform_to_bot(self):
        m = 3
        uniform = np.full(m, 1 / math.sqrt(m))
        out = comp_factor(m) @ uniform
        assert out[m] == pytest.approx(1.0)
        assert np.allclose(out[:m], 0.0)

    def test_comp_needs_full_space(self):
        from ladder_workbench.perm import PermSpec

        with pytest.raises(ParameterError):
            comp_isometry(PermSpec(3).problem)

    @pytest.mark.parametrize("spec", [collision(2, 2), preimage(2, 3)])
    def test_compressed_oracle_identities(self, spec):
        assert compressed_oracle_check(spec).passed

    def test_space_equivalence(self, collision_3_2):
        spec, _, chain = collision_3_2
        report = space_equivalence_check(spec, chain)
        assert report.passed, report.to_dict()


class TestStepNorm:
    def test_first_step_of_collision_is_zero(self):
        """A single query cannot record two entries."""
        spec = collision(3, 2)
        value, argmax = comp_step_norm(spec, collision_property(3, 2), 1)
        assert value == 0.0
        assert argmax == (0, 0)

    def test_step_is_a_norm_of_a_contraction(self):
        spec = collision(3, 2)
        value, (x, y) = comp_step_norm(spec, collision_property(3, 2), 2)
        assert 0.0 < value <= 1.0 + 1e-12
        assert 0 <= x < 3 and 0 <= y < 2

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_collision_steps_below_closed_form(self, m):
        """comp_step_norm ≤ √((t−1)/M) at N = 4 for t = 1..4."""
        spec, prop = collision(4, m), collision_property(4, m)
        comp = comp_isometry(spec)
        formula = collision_step_formula(m)
        for t in range(1, 5):
            value, _ = comp_step_norm(spec, prop, t, comp)
            assert value <= formula(t) + 1e-9, (t, value, formula(t))
        assert comp_step_norm(spec, prop, 1, comp)[0] == 0.0

    def test_t_must_be_positive(self):
        with pytest.raises(ParameterError):
            comp_step_norm(collision(2, 2), collision_property(2, 2), 0)


class TestCompLowerBound:
    """Smallest T with accumulated steps above √(1−ε) − √(k/M)."""

    def test_preimage_example(self):
        report = comp_lower_bound(preimage(3, 4), preimage_property(3, 4), 0.1)
        assert report.value == 1
        assert report.parameters["target"] == pytest.approx(math.sqrt(0.9) - 0.5)

    def test_collision_example(self):
        report = comp_lower_bound(collision(2, 14), collision_property(2, 14), 0.1)
        assert report.value == 4
        assert len(report.witnesses) == 4

    @pytest.mark.parametrize("m,expected", [(4, 2), (8, 3), (16, 3), (64, 6)])
    def test_analytic_collision(self, m, expected):
        report = comp_lower_bound(
            collision(2, m),
            collision_property(2, m),
            0.1,
            mode="analytic",
            step_bound=collision_step_formula(m),
        )
        assert report.value == expected
        assert report.per_step[0]["step"] == 0.0

    @pytest.mark.parametrize("m", [16, 64, 1024])
    @pytest.mark.parametrize("eps", [0.1, 0.5, 0.85])
    def test_analytic_collision_closed_form(self, m, eps):
        """T is minimal and T ≥ (√(1−ε) − √(2/M))^{2/3} M^{1/3} − 1."""
        step = collision_step_formula(m)
        report = comp_lower_bound(
            collision(2, m), collision_property(2, m), eps, mode="analytic", step_bound=step
        )
        big_t = report.value
        target = math.sqrt(1 - eps) - math.sqrt(2 / m)
        assert sum(step(t) for t in range(1, big_t + 1)) >= target
        assert sum(step(t) for t in range(1, big_t)) < target
        assert big_t >= target ** (2 / 3) * m ** (1 / 3) - 1

    def test_eps_gate(self):
        with pytest.raises(ParameterError, match="1 - k/M"):
            check_comp_eps(2, 2, 0.9)
        with pytest.raises(ParameterError):
            comp_lower_bound(collision(2, 4), collision_property(2, 4), 0.5)
        check_comp_eps(1, 4, 0.7)

    def test_mode_validation(self):
        spec, prop = collision(2, 4), collision_property(2, 4)
        with pytest.raises(ParameterError):
            comp_lower_bound(spec, prop, 0.1, mode="symbolic")
        with pytest.raises(ParameterError):
            comp_lower_bound(spec, prop, 0.1, mode="analytic")
