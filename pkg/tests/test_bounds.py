from __future__ import annotations

import random

import pytest

from flipmod import families
from flipmod.bounds import (
    Pod,
    ear_pair_normalize,
    find_pods,
    gamma_upper_path,
    general_upper_path,
    join_pods,
    make_all_incident,
    move_pod,
)
from flipmod.canon import canonical_code, equivalent
from flipmod.errors import NotAdjacentPods, NotAPod, Obstructed, PreconditionViolated, SpecMismatch
from flipmod.explorer import build_graph, distance
from flipmod.surface import gamma, pi
from flipmod.trimap import has_ear_at, interior_degree, validate


def test_make_all_incident_reaches_a_star():
    for T in (families.a_triangulation(5, "-"), families.a_triangulation(6, "+")):
        seq = make_all_incident(T)
        assert seq.validate()
        L = T.n
        assert all(L in seq.end.ends(e) for e in seq.end.interior_arcs())
        assert len(find_pods(seq.end)) == 1


def test_gamma_path_respects_bound():
    G = build_graph(gamma(4), seed=families.gamma_star(4, 1))
    rng = random.Random(1)
    for _ in range(40):
        i, j = rng.randrange(len(G)), rng.randrange(len(G))
        seq = gamma_upper_path(G.reps[i], G.reps[j])
        assert seq.validate()
        assert equivalent(seq.start, G.reps[i]) and equivalent(seq.end, G.reps[j])
        assert len(seq) <= 5 * 4 // 2 - 2


def test_gamma_path_trivial_cases():
    T = families.a_triangulation(3, "-")
    assert len(gamma_upper_path(T, T)) == 0
    with pytest.raises(SpecMismatch):
        gamma_upper_path(T, families.a_triangulation(4, "-"))


def test_star_pods_walk_around():
    n = 5
    T = families.gamma_star(n, 1)
    for u in range(2, n + 2):
        T = move_pod(T, find_pods(T)[0], "ccw")[0]
        assert find_pods(T)[0].anchor == (u - 1) % n + 1
    assert equivalent(T, families.gamma_star(n, 1))
    back = move_pod(move_pod(T, find_pods(T)[0], "cw")[0], find_pods(T)[0].x, "ccw")
    assert equivalent(back[0], T)


def test_pod_by_dart_and_not_a_pod():
    T = families.gamma_star(4, 2)
    (P,) = find_pods(T)
    assert isinstance(P, Pod) and P.anchor == 2 and P.multiplicity == 1
    other = next(e for e in T.interior_arcs() if e not in (P.x, P.y, P.loop) and T.twin[e] not in (P.x, P.y, P.loop))
    with pytest.raises(NotAPod):
        move_pod(T, other, "cw")


def test_pods_of_two_loop_family():
    B = families.b_triangulation(4, "-")
    pods = find_pods(B)
    assert [p.anchor for p in pods] == [1, 3]
    with pytest.raises(NotAdjacentPods):
        join_pods(B, pods[0], pods[1])


def stacked_pods():
    """A two-loop triangulation whose two pods share an arc."""
    G = build_graph(pi(2), seed=families.b_triangulation(2, "-"))
    for T in G.reps:
        pods = find_pods(T)
        for P in pods:
            for Q in pods:
                if T.twin[P.y] == Q.x:
                    return T, P, Q
    raise AssertionError("no stacked pods found")


def test_join_pods_merges_peas():
    T, P, Q = stacked_pods()
    J = join_pods(T, P, Q)[0]
    validate(J)
    pods = find_pods(J)
    assert len(pods) == len(find_pods(T)) - 1
    assert max(p.multiplicity for p in pods) == 2
    with pytest.raises(Obstructed):
        move_pod(T, P, "ccw")


def test_ear_pair_normalize():
    U, V = families.a_triangulation(6, "-"), families.a_triangulation(6, "+")
    a = min(range(1, 7), key=lambda p: interior_degree(U, p - 1) + interior_degree(V, p - 1))
    P, Q = ear_pair_normalize(U, V, a)
    assert has_ear_at(P.end, a) and has_ear_at(Q.end, a)
    assert len(P) + len(Q) <= 4
    with pytest.raises(PreconditionViolated):
        ear_pair_normalize(families.polygon_fan(8, 1), families.polygon_fan(8, 1), 1)
    with pytest.raises(PreconditionViolated):
        ear_pair_normalize(families.a_triangulation(1, "-"), families.a_triangulation(1, "+"), 1)


def test_already_eared_pair_needs_no_flips():
    Z = families.zigzag(8)
    P, Q = ear_pair_normalize(Z, Z, 1)
    assert len(P) == len(Q) == 0


@pytest.mark.parametrize("pair", [
    (lambda: families.zigzag(9), lambda: families.polygon_fan(9, 4)),
    (lambda: families.a_triangulation(6, "-"), lambda: families.a_triangulation(6, "+")),
    (lambda: families.b_triangulation(4, "-"), lambda: families.b_triangulation(4, "+")),
])
def test_general_path_is_valid_and_not_below_distance(pair):
    U, V = pair[0](), pair[1]()
    seq = general_upper_path(U, V)
    assert seq.validate()
    assert canonical_code(seq.start) == canonical_code(U)
    assert canonical_code(seq.end) == canonical_code(V)
    assert len(seq) >= distance(U, V)[0]
    assert len(set(seq.codes())) == len(seq) + 1


def test_general_path_identity():
    T = families.b_triangulation(3, "+")
    assert len(general_upper_path(T, T)) == 0
