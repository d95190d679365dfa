from __future__ import annotations

import json

import pytest

from flipmod.errors import InvalidSpec, Untriangulable
from flipmod.surface import (
    Feature,
    TopologySpec,
    disc,
    euler_characteristic,
    face_count,
    gamma,
    interior_arc_count,
    pi,
    validate_spec,
)


@pytest.mark.parametrize("n", range(3, 10))
def test_disc_has_n_minus_3_arcs(n):
    assert interior_arc_count(disc(n)) == n - 3
    assert face_count(disc(n)) == n - 2


@pytest.mark.parametrize("n", range(1, 9))
def test_single_loop_arc_count(n):
    assert interior_arc_count(gamma(n)) == n + 1


@pytest.mark.parametrize("n", range(1, 9))
def test_two_loop_arc_count(n):
    assert interior_arc_count(pi(n)) == n + 5


def test_interior_points_and_genus_add_arcs():
    spec = TopologySpec(genus=1, loops=(Feature(True, "0"),), interior=(Feature(True, "p"),), n=2)
    assert interior_arc_count(spec) == 2 + 4 + 3 + 6 - 3


def test_small_discs_are_untriangulable():
    with pytest.raises(Untriangulable):
        validate_spec(disc(2))
    with pytest.raises(InvalidSpec) as info:
        interior_arc_count(disc(1))
    assert info.value.reason == "untriangulable"


def test_bad_n_and_genus():
    with pytest.raises(InvalidSpec) as info:
        validate_spec(TopologySpec(n=0))
    assert info.value.reason == "bad-n"
    with pytest.raises(InvalidSpec) as info:
        validate_spec(TopologySpec(genus=-1, n=3))
    assert info.value.reason == "bad-genus"


def test_duplicate_and_missing_labels():
    with pytest.raises(InvalidSpec) as info:
        validate_spec(TopologySpec(loops=(Feature(True, "x"), Feature(True, "x")), n=2))
    assert info.value.reason == "duplicate-label"
    with pytest.raises(InvalidSpec) as info:
        validate_spec(TopologySpec(loops=(Feature(True, None),), n=2))
    assert info.value.reason == "missing-label"


def test_euler_characteristic():
    assert euler_characteristic(disc(5)) == 1
    assert euler_characteristic(gamma(5)) == 0
    assert euler_characteristic(pi(5)) == -1


def test_named_specs_and_vertex_ids():
    spec = pi(4)
    assert spec.num_vertices == 6
    assert spec.vertex_id("a1") == 0
    assert spec.vertex_id("a4") == 3
    assert spec.vertex_id("a-") == spec.loop_vertex("-") == 4
    assert spec.vertex_id("+") == 5
    with pytest.raises(KeyError):
        spec.vertex_id("a5")
    assert spec.vertex_label(0).kind == "privileged"
    assert spec.vertex_label(4).kind == "marked_loop"


def test_json_round_trip():
    spec = TopologySpec(genus=1, loops=(Feature(True, "0"), Feature(False)), interior=(Feature(True, "p"),), n=4)
    back = TopologySpec.from_json(json.loads(spec.dumps()))
    assert back == spec
    assert TopologySpec.from_json("gamma", 5) == gamma(5)


def test_from_json_rejects_garbage():
    with pytest.raises(InvalidSpec) as info:
        TopologySpec.from_json({"genus": "x", "n": 3})
    assert info.value.reason == "parse"
