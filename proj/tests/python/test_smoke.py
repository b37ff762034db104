"""Smoke tests for the python bindings: the main operations end to end."""

import pytest

cellposet = pytest.importorskip("cellposet")


def test_check_ball():
    rep = cellposet.check_ball([1, 0, 0, 1, 0])
    assert rep["admissible"]
    assert rep["failures"] == []

    rep = cellposet.check_ball([1, 0, 1, 0, 1, 0])
    assert not rep["admissible"]
    assert rep["first_failing"] == 3
    assert {f["condition"] for f in rep["failures"]} == {3, 5, 6}


def test_check_sphere():
    assert cellposet.check_sphere([1, 0, 1])["admissible"]
    assert not cellposet.check_sphere([1, 0, 1, 1])["admissible"]


def test_boundary_transform():
    assert cellposet.boundary_h([1, 0, 0, 0]) == [1, 1, 1]
    assert cellposet.boundary_h([1, 1, 0, 0]) == [1, 2, 1]


def test_width_statistics():
    h = [0, 2, 1, 1, 0]
    assert cellposet.width(h) == 3
    assert cellposet.width_formula(h) == 3
    assert cellposet.init_number(h) == 1


def test_realize_and_verify_roundtrip():
    out = cellposet.realize([1, 1, 1, 2, 0])
    assert out["case"] == 3
    assert out["h"] == [1, 1, 1, 2, 0]
    assert out["case3"]["n"] == 1
    assert out["case3"]["core"] == [1, 1, 1, 1, 0]

    rep = cellposet.verify(out["poset"], out["trace"], [1, 1, 1, 2, 0])
    assert rep["ok"]
    assert len(rep["checks"]) == 8

    rep = cellposet.verify(out["poset"], out["trace"], [1, 1, 1, 1, 0])
    assert not rep["ok"]


def test_realize_refuses_inadmissible():
    with pytest.raises(ValueError):
        cellposet.realize([1, 0, 1, 0, 1, 0])


def test_info():
    out = cellposet.realize([1, 0, 0, 1, 0])
    info = cellposet.info(out["poset"])
    assert info["valid"]
    assert info["f"] == [1, 4, 6, 5, 2]
    assert info["h"] == [1, 0, 0, 1, 0]
    assert not info["boundary_empty"]


def test_small_sweep():
    rep = cellposet.sweep(3, 5)
    assert rep["all_certified"]
    assert rep["admissible"] > 0
    assert rep["inadmissible"] > 0
