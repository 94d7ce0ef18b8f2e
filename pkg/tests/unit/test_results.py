"""Unit tests for report types and JSON conversion."""

import json

import numpy as np
import pytest

from ladder_workbench.utils.results import BoundReport, CheckReport, to_jsonable

pytestmark = pytest.mark.unit


def test_to_jsonable_numpy_and_containers():
    value = {
        1: np.float64(0.5),
        "ints": np.arange(3),
        "pair": (np.int64(2), True),
        "set": frozenset({3, 1}),
        "z": 1 + 2j,
        "inf": float("inf"),
    }
    out = to_jsonable(value)
    assert out == {
        "1": 0.5,
        "ints": [0, 1, 2],
        "pair": [2, True],
        "set": [1, 3],
        "z": [1.0, 2.0],
        "inf": "inf",
    }
    json.dumps(out)


class TestCheckReport:
    def test_pass_and_fail(self):
        report = CheckReport("demo")
        report.add("tight", 1e-12, 1e-9)
        assert report.passed
        report.add("loose", 0.1, 1e-9)
        assert not report.passed
        assert report.max_violation == pytest.approx(0.1)

    def test_empty_report_passes(self):
        assert CheckReport("empty").passed

    def test_extend_prefixes_names(self):
        inner = CheckReport("inner")
        inner.add("a", 0.0, 1e-9)
        outer = CheckReport("outer")
        outer.extend(inner)
        assert [c.name for c in outer.checks] == ["inner.a"]

    def test_to_dict(self):
        report = CheckReport("demo", info={"n": np.int64(3)})
        report.add("a", 0.0, 1e-9, where=(1, 2))
        data = report.to_dict()
        assert data["pass"] is True
        assert data["info"] == {"n": 3}
        assert data["checks"][0]["info"] == {"where": [1, 2]}


class TestBoundReport:
    def test_unbounded(self):
        report = BoundReport("COMP", None)
        assert report.unbounded
        assert report.to_dict()["unbounded"] is True

    def test_serializes(self):
        report = BoundReport("MLADV", 3, parameters={"eps": 0.1}, per_step=[np.float64(0.25)])
        data = json.loads(json.dumps(report.to_dict()))
        assert data["value"] == 3
        assert data["per_step"] == [0.25]
