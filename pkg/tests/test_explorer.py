from __future__ import annotations

import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracle_strip
from flipmod import families
from flipmod.canon import canonical_code, equivalent
from flipmod.errors import BudgetExceeded, SpecMismatch
from flipmod.explorer import (
    Budget,
    FlipGraph,
    build_graph,
    diameter,
    distance,
    eccentricity,
    export_dot,
    load,
    multi_bfs,
    save,
)
from flipmod.surface import disc, gamma, pi

# Exact values from exhaustive search.
PI_SIZES = {1: 32, 2: 192, 3: 960}
PI_DIAMETERS = {1: 6, 2: 9, 3: 11}
GAMMA_DIAMETERS = {1: 0, 2: 3, 3: 5, 4: 7, 5: 10, 6: 12}
DISC_DIAMETERS = {4: 1, 5: 2, 6: 4, 7: 5, 8: 7, 9: 9, 10: 11}


def gamma_graph(n):
    return build_graph(gamma(n), seed=families.gamma_star(n, 1))


def test_single_vertex_graph():
    G = gamma_graph(1)
    assert len(G) == 1 and G.num_edges == 0
    assert diameter(G)[0] == 0


def test_two_vertex_graph_is_a_path():
    G = gamma_graph(2)
    assert len(G) == 4 and G.num_edges == 3
    assert sorted(G.degrees()) == [1, 1, 2, 2]
    assert sorted(eccentricity(G, v) for v in range(4)) == [2, 2, 3, 3]


@pytest.mark.parametrize("n", range(1, 7))
def test_gamma_sizes_are_binomial(n):
    assert len(gamma_graph(n)) == math.comb(2 * n, n - 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_gamma_diameters(n):
    assert diameter(gamma_graph(n))[0] == GAMMA_DIAMETERS[n]


@pytest.mark.parametrize("n", range(1, 6))
def test_gamma_matches_strip_model(n):
    nodes, adj = oracle_strip.graph(n)
    G = gamma_graph(n)
    assert len(nodes) == len(G)
    assert sum(len(v) for v in adj) // 2 == G.num_edges
    assert oracle_strip.diameter(adj) == diameter(G)[0]


@pytest.mark.parametrize("n", range(4, 11))
def test_disc_is_the_associahedron(n):
    G = build_graph(disc(n), seed=families.zigzag(n))
    assert len(G) == math.comb(2 * (n - 2), n - 2) // (n - 1)
    assert diameter(G)[0] == DISC_DIAMETERS[n]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_two_loop_graphs(n):
    G = build_graph(pi(n), seed=families.b_triangulation(n, "-"))
    assert len(G) == PI_SIZES[n]
    assert diameter(G)[0] == PI_DIAMETERS[n]


def test_seed_choice_does_not_matter():
    a = build_graph(gamma(4), seed=families.gamma_star(4, 1))
    b = build_graph(gamma(4), seed=families.a_triangulation(4, "+"))
    assert set(a.nodes) == set(b.nodes)


def test_seed_must_match_spec():
    with pytest.raises(SpecMismatch):
        build_graph(gamma(4), seed=families.zigzag(4))


def test_budget_stops_enumeration():
    with pytest.raises(BudgetExceeded):
        build_graph(gamma(5), seed=families.gamma_star(5, 1), budget=Budget(max_nodes=50))


def test_parallel_build_matches_serial():
    a = build_graph(gamma(4), seed=families.gamma_star(4, 1), workers=1)
    b = build_graph(gamma(4), seed=families.gamma_star(4, 1), workers=2, chunk_size=8)
    assert a.nodes == b.nodes and a.adj == b.adj


def test_multi_bfs_matches_single_source():
    G = gamma_graph(4)
    sources = list(range(0, len(G), 3))[:64]
    D = multi_bfs(G, sources)
    for row, s in zip(D, sources):
        assert np.array_equal(row, np.asarray(G.bfs(s)))
        assert list(row) == G.bfs_python(s)


def random_graph(rng, size, extra):
    adj = [set() for _ in range(size)]
    for v in range(1, size):
        u = rng.randrange(v)
        adj[u].add(v)
        adj[v].add(u)
    for _ in range(extra):
        u, v = rng.randrange(size), rng.randrange(size)
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return FlipGraph(disc(3), [bytes([i % 256, i // 256]) for i in range(size)], [None] * size, [sorted(a) for a in adj])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 160), st.integers(0, 60), st.integers(0, 2**32 - 1))
def test_diameter_matches_brute_force(size, extra, seed):
    G = random_graph(random.Random(seed), size, extra)
    brute = max(max(G.bfs_python(s)) for s in range(size))
    d, (u, v) = diameter(G, batch=4)
    assert d == brute
    assert G.bfs_python(u)[v] == d


def test_distance_basics():
    U, V = families.a_triangulation(4, "-"), families.a_triangulation(4, "+")
    assert distance(U, U)[0] == 0
    d, seq = distance(U, V)
    assert distance(V, U)[0] == d
    assert equivalent(seq.start, U) and equivalent(seq.end, V)
    G = gamma_graph(4)
    assert G.distance(U, V) == d
    assert distance(G, U, V)[0] == d


def test_distance_agrees_with_graph_on_all_pairs():
    G = gamma_graph(3)
    for i in range(len(G)):
        dist = G.bfs_python(i)
        for j in range(i, len(G), 4):
            assert distance(G.reps[i], G.reps[j])[0] == dist[j]


def test_triangle_inequality():
    G = gamma_graph(5)
    rng = random.Random(2)
    for _ in range(50):
        a, b, c = (rng.randrange(len(G)) for _ in range(3))
        da = G.bfs_python(a)
        db = G.bfs_python(b)
        assert da[c] <= da[b] + db[c]


def test_distance_budget():
    with pytest.raises(BudgetExceeded):
        distance(families.zigzag(11), families.polygon_fan(11, 4), budget=Budget(max_nodes=10))


def test_save_load_round_trip(tmp_path):
    G = gamma_graph(3)
    for name in ("g.json", "g.json.gz"):
        path = tmp_path / name
        save(G, path)
        H = load(path)
        assert H.nodes == G.nodes and H.adj == G.adj and H.spec == G.spec
        assert canonical_code(H.reps[5]) == G.nodes[5]
        first = path.read_bytes()
        save(H, path)
        assert path.read_bytes() == first


def test_load_checks_spec(tmp_path):
    path = tmp_path / "g.json"
    save(gamma_graph(2), path)
    with pytest.raises(SpecMismatch):
        load(path, spec=gamma(3))


def test_export_dot(tmp_path):
    path = tmp_path / "g.dot"
    export_dot(gamma_graph(2), path)
    text = path.read_text()
    assert text.startswith("graph MF {")
    assert text.count(" -- ") == 3
    assert text.count("label=") == 4
