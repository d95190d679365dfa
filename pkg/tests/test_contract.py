from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from flipmod import families
from flipmod.canon import canonical_code, equivalent
from flipmod.contract import delete_vertex, flip_incident_to, incident_flip_count, insert_ear, project_path
from flipmod.errors import NotAdjacent, TooFewVertices, Untriangulable
from flipmod.flip import FlipSequence, flip, flippable_arcs
from flipmod.trimap import ears, has_ear_at, validate

from helpers import triangulations


@settings(max_examples=80, deadline=None)
@given(triangulations(), st.integers(1, 20))
def test_deletion_gives_a_valid_triangulation(T, p):
    p = (p - 1) % T.n + 1
    try:
        D = delete_vertex(T, p)
    except Untriangulable:
        assert T.spec.k == 0 and T.n == 3
        return
    validate(D)
    assert D.n == T.n - 1
    assert len(D.interior_arcs()) == len(T.interior_arcs()) - 1


@settings(max_examples=80, deadline=None)
@given(triangulations(), st.integers(1, 20))
def test_insert_then_delete_is_identity(T, q):
    q = (q - 1) % (T.n + 1) + 1
    E = insert_ear(T, q)
    validate(E)
    assert has_ear_at(E, q)
    assert equivalent(delete_vertex(E, q), T)


@settings(max_examples=60, deadline=None)
@given(triangulations())
def test_delete_then_insert_restores_ears(T):
    # with two vertices one face can hold both boundary arcs, so the tip is ambiguous
    for q in ears(T):
        if T.n > 3 or (T.n == 3 and T.spec.k):
            assert equivalent(insert_ear(delete_vertex(T, q), q), T)


@settings(max_examples=60, deadline=None)
@given(triangulations(), st.integers(1, 20))
def test_flip_projects_to_flip_or_identity(T, p):
    p = (p - 1) % T.n + 1
    if T.n < 2:
        return
    D = delete_vertex(T, p)
    targets = {canonical_code(flip(D, e)[0]) for e in flippable_arcs(D)} | {canonical_code(D)}
    for e in flippable_arcs(T):
        assert canonical_code(delete_vertex(flip(T, e)[0], p)) in targets


def test_zigzag_deletion():
    assert equivalent(delete_vertex(families.zigzag(5), 5), families.zigzag(4))
    assert not equivalent(delete_vertex(families.zigzag(7), 7), families.zigzag(6))


def test_cannot_delete_below_a_triangle():
    with pytest.raises(Untriangulable):
        delete_vertex(families.zigzag(3), 1)
    T = families.a_triangulation(1, "-")
    with pytest.raises(TooFewVertices):
        delete_vertex(T, 1)


def test_incidence_on_two_vertex_loop():
    T = families.a_triangulation(2, "-")
    for e in flippable_arcs(T):
        R = flip(T, e)[0]
        assert flip_incident_to(T, R, 1) and flip_incident_to(T, R, 2)


def test_incidence_needs_adjacent_pair():
    with pytest.raises(NotAdjacent):
        flip_incident_to(families.polygon_fan(6, 1), families.polygon_fan(6, 4), 1)


def test_projected_path_is_shorter_by_incident_flips():
    rng = random.Random(5)
    for T in (families.a_triangulation(5, "-"), families.b_triangulation(3, "+"), families.zigzag(8)):
        seq = FlipSequence(T)
        for _ in range(25):
            seq.push(rng.choice(flippable_arcs(seq.end)))
        for p in range(1, T.n + 1):
            proj = project_path(seq, p)
            assert proj.validate()
            assert len(proj) <= len(seq) - incident_flip_count(seq, p)
            assert equivalent(proj.end, delete_vertex(seq.end, p))


@pytest.mark.parametrize("n", [2, 3])
def test_small_family_deletion(n):
    for sign in "-+":
        assert equivalent(delete_vertex(families.a_triangulation(n, sign), n), families.a_triangulation(n - 1, sign))
        assert equivalent(delete_vertex(families.b_triangulation(n, sign), n), families.b_triangulation(n - 1, sign))
