import json

import pytest

import dendrotensor as dt

FIGURE = json.dumps(
    {
        "levels": [["1", "2", "3", "4"], ["1", "2", "3"], ["1"]],
        "maps": [{"1": "1", "2": "1", "3": "3", "4": "3"}, {"1": "1", "2": "1", "3": "*"}],
    }
)


def test_omega_figure():
    assert dt.omega(FIGURE) == "{ℓ2:1[ℓ1:1[ℓ0:1,ℓ0:2],ℓ1:2[]];ℓ1:3[ℓ0:3,ℓ0:4]}"
    assert dt.omega(json.dumps({"levels": [[]], "maps": []})) == "{}"
    dot = dt.omega_dot(FIGURE)
    assert dot.startswith("digraph") and "style=dashed" in dot


def test_hom_from_an_edge_counts_edges():
    assert dt.hom_count("e", "r[a,b[c]]") == 4


def test_linear_shuffles_are_lattice_paths():
    assert len(dt.shuffles(["a0[a1[a2]]", "b0[b1]"])) == 3
    assert len(dt.shuffles(["a0[a1[a2]]", "b0[b1[b2]]"])) == 6


def test_tensor_hom():
    assert dt.tensor_hom_count("r[a,b]", ["r[a,b]", "e"]) == 2


def test_free_algebra_on_a_corolla():
    assert dt.free_algebra_count("{r[a,b]}", [2, 3, 0], "r") == 6


def test_pointed_maps():
    assert dt.classify("3:2:1,*,2") == "inert"
    assert dt.factorize("3:1:1,*,1") == ("3:2:1,*,2", "2:1:1,1")


def test_errors():
    with pytest.raises(dt.ParseError):
        dt.normalize("r[a")
    with pytest.raises(dt.Error):
        dt.run_suite("nonsense")


def test_suite_reports_are_deterministic():
    a = dt.run_suite("segal", seed=7, instances=10)
    b = dt.run_suite("segal", seed=7, instances=10)
    assert a == b
    assert a["status"] == "pass" and a["instances"] == 10
    assert "functoriality" in dt.suite_names()
