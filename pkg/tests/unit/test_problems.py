"""Unit tests for the named problem catalog."""

import pytest

from ladder_workbench.poly import BooleanFunction
from ladder_workbench.problems import (
    boolean_function,
    collision,
    collision_property,
    get_problem,
    get_property,
    preimage,
    preimage_property,
)
from ladder_workbench.utils.errors import ParameterError

pytestmark = pytest.mark.unit


class TestCollision:
    def test_sigma_and_targets(self):
        spec = collision(3, 2)
        assert spec.sigma == ((0, 1), (0, 2), (1, 2))
        assert spec.targets[spec.index[(1, 0, 1)]] == frozenset({(0, 2)})
        assert spec.params["k"] == 2

    def test_needs_two_inputs(self):
        with pytest.raises(ParameterError):
            collision(1, 2)

    def test_property(self):
        prop = collision_property(2, 3)
        assert prop.arity == 2
        assert len(prop.tuples) == 3


class TestPreimage:
    def test_target_value(self):
        spec = preimage(2, 3, target=2)
        assert spec.targets[spec.index[(2, 2)]] == frozenset({0, 1})

    def test_target_range(self):
        with pytest.raises(ParameterError):
            preimage(2, 3, target=3)

    def test_property(self):
        assert preimage_property(3, 4).tuples == frozenset({((0, 0),), ((1, 0),), ((2, 0),)})


class TestBooleanCatalog:
    def test_named_family(self):
        assert boolean_function("parity", 3) == BooleanFunction.parity(3)

    def test_tables(self):
        assert boolean_function("table", truth_table="0001").truth_table == (0, 0, 0, 1)
        assert boolean_function("table", 2, "0x8").truth_table == (0, 0, 0, 1)

    def test_hex_needs_n(self):
        with pytest.raises(ParameterError, match="--n"):
            boolean_function("table", truth_table="0x8")

    def test_unknown_family(self):
        with pytest.raises(ParameterError):
            boolean_function("xor", 2)


class TestGetProblem:
    @pytest.mark.parametrize(
        "name,n,m,dim",
        [("collision", 2, 3, 9), ("preimage", 3, 2, 8), ("perm", 3, None, 6), ("or", 2, None, 4)],
    )
    def test_lookup(self, name, n, m, dim):
        assert get_problem(name, n, m).dim == dim

    def test_missing_size(self):
        with pytest.raises(ParameterError, match="--m"):
            get_problem("collision", 3)

    def test_unknown(self):
        with pytest.raises(ParameterError, match="unknown problem"):
            get_problem("sorting", 3, 3)

    def test_property_lookup(self):
        assert get_property("preimage", 2, 2).name == "preimage"
        with pytest.raises(ParameterError):
            get_property("parity", 2, 2)
