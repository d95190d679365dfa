"""Named verification suites shared by the command line and the test-suite.

A suite is a function returning a list of :class:`Check` records; it never
raises on a failed check, so every item is reported.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from functools import lru_cache

from .canon import canonical_code, equivalent, equivalent_up_to_mirror
from .contract import delete_vertex, flip_incident_to, incident_flip_count, project_path
from .errors import BudgetExceeded
from .explorer import build_graph, diameter, distance
from .families import a_triangulation, b_triangulation, gamma_star, zigzag
from .flip import FlipSequence, flip, flippable_arcs
from .surface import disc, gamma, interior_arc_count, pi
from .trimap import has_ear_at, interior_degree, validate


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    value: object = None
    extra: dict = field(default_factory=dict)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status}\t{self.name}\t{self.detail}"


def gamma_diameter_law(n):
    return 5 * n // 2 - 2 if n >= 1 else 0


@lru_cache(maxsize=None)
def graph_of(name, n, workers=1):
    """Cached full modular flip-graph of a named surface."""
    spec = {"gamma": gamma, "pi": pi, "disc": disc}[name](n)
    if name == "gamma":
        seed = gamma_star(n, 1)
    elif name == "pi":
        seed = b_triangulation(n, "-")
    else:
        seed = zigzag(n)
    return build_graph(spec, seed=seed, workers=workers)


def diameter_of(name, n):
    G = graph_of(name, n)
    if "diameter" not in G.meta:
        G.meta["diameter"] = diameter(G)[0]
    return G.meta["diameter"]


def _rng(seed):
    return random.Random(seed)


# 1
def gamma_one(**_):
    G = graph_of("gamma", 1)
    T = G.reps[0]
    arcs = flippable_arcs(T)
    self_eq = all(equivalent(flip(T, e)[0], T) for e in arcs)
    ok = len(G) == 1 and diameter_of("gamma", 1) == 0 and len(T.interior_arcs()) == 2 and len(arcs) == 2 and self_eq
    return [Check("MF(Gamma_1) single node, two self-equivalent flips", ok,
                  f"nodes={len(G)} arcs={len(T.interior_arcs())} flips={len(arcs)} self_equivalent={self_eq}")]


# 2
def gamma_two(**_):
    G = graph_of("gamma", 2)
    degs = sorted(G.degrees())
    d = diameter_of("gamma", 2)
    bad = 0
    for T in G.reps:
        for e in flippable_arcs(T):
            R = flip(T, e)[0]
            if not (flip_incident_to(T, R, 1) and flip_incident_to(T, R, 2)):
                bad += 1
    ok = len(G) == 4 and degs == [1, 1, 2, 2] and G.num_edges == 3 and d == 3 and bad == 0
    return [Check("MF(Gamma_2) is a path on four nodes, every flip incident to alpha_1 and alpha_2", ok,
                  f"nodes={len(G)} degrees={degs} diameter={d} non_incident_flips={bad}")]


# 3
def gamma_diameter(nrange=range(1, 7), budget=None, **_):
    out = []
    for n in nrange:
        try:
            d = diameter_of("gamma", n)
        except BudgetExceeded as exc:
            out.append(Check(f"diam MF(Gamma_{n})", False, f"budget: {exc}"))
            continue
        pair = distance(a_triangulation(n, "-"), a_triangulation(n, "+"), graph=graph_of("gamma", n))[0]
        want = gamma_diameter_law(n)
        out.append(Check(f"diam MF(Gamma_{n}) = floor(5n/2)-2 = {want}, attained by (A^-, A^+)",
                         d == want and pair == want,
                         f"nodes={len(graph_of('gamma', n))} diameter={d} d(A^-,A^+)={pair}", value=d))
    return out


# 4
def pi_distances(**_):
    out = []
    for n, want in ((1, 3), (2, 7)):
        d = distance(b_triangulation(n, "-"), b_triangulation(n, "+"))[0]
        out.append(Check(f"d(B_{n}^-, B_{n}^+) = {want}", d == want, f"distance={d}", value=d))
    d = diameter_of("pi", 1)
    out.append(Check("diam MF(Pi_1) >= 5", d >= 5, f"nodes={len(graph_of('pi', 1))} diameter={d}", value=d))
    return out


# 5
def associahedron(n=13, **_):
    t0 = time.perf_counter()
    G = graph_of("disc", n)
    d = diameter_of("disc", n)
    want = 2 * n - 10
    from math import comb

    catalan = comb(2 * (n - 2), n - 2) // (n - 1)
    return [Check(f"disc n={n}: diameter {want} over {catalan} nodes", d == want and len(G) == catalan,
                  f"nodes={len(G)} diameter={d} seconds={time.perf_counter() - t0:.1f}", value=d)]


def _adjacent_or_equal(U, V):
    cu, cv = canonical_code(U), canonical_code(V)
    if cu == cv:
        return True
    return any(canonical_code(flip(U, e)[0]) == cv for e in flippable_arcs(U))


# 6
def deletion_laws(paths=1000, seed=0, **_):
    out = []
    bad = checked = 0
    for n in (2, 3):
        G = graph_of("gamma", n)
        for u, nbrs in enumerate(G.adj):
            for w in nbrs:
                if u < w:
                    for p in range(1, n + 1):
                        checked += 1
                        if not _adjacent_or_equal(delete_vertex(G.reps[u], p), delete_vertex(G.reps[w], p)):
                            bad += 1
    out.append(Check("deleting a vertex maps flips to flips or identities (Gamma_2, Gamma_3)", bad == 0,
                     f"checked={checked} violations={bad}"))

    rng = _rng(seed)
    bad = 0
    pools = [("gamma", 3), ("gamma", 4), ("disc", 7), ("pi", 2)]
    for i in range(paths):
        name, n = pools[i % len(pools)]
        G = graph_of(name, n)
        seq = FlipSequence(G.reps[rng.randrange(len(G))])
        for _ in range(rng.randint(1, 8)):
            seq.push(rng.choice(flippable_arcs(seq.end)))
        p = rng.randint(1, n)
        proj = project_path(seq, p)
        proj.validate()
        f = incident_flip_count(seq, p)
        if len(proj) != len(seq) - f or not equivalent(proj.end, delete_vertex(seq.end, p)):
            bad += 1
    out.append(Check("projected path has length k - f", bad == 0, f"paths={paths} violations={bad}"))

    G3, G2 = graph_of("gamma", 3), graph_of("gamma", 2)
    bad = checked = 0
    for u in range(len(G3)):
        du = G3.bfs(u)
        for v in range(len(G3)):
            geo = G3.geodesic(G3.reps[u], G3.reps[v])
            for p in range(1, 4):
                U2, V2 = delete_vertex(G3.reps[u], p), delete_vertex(G3.reps[v], p)
                lower = G2.distance(U2, V2) + incident_flip_count(geo, p)
                checked += 1
                if du[v] < lower:
                    bad += 1
    out.append(Check("d(U,V) >= d(U-p, V-p) + f on all pairs of MF(Gamma_3)", bad == 0,
                     f"checked={checked} violations={bad}"))
    return out


def _family(kind, n, sign):
    return (a_triangulation if kind == "A" else b_triangulation)(n, sign)


# 7
def family_recursions(nrange=range(2, 9), a_range=range(3, 7), b_range=(3, 4), budget=None, **_):
    out = []
    for kind in ("A", "B"):
        strict, mirrored = [], []
        for n in nrange:
            for sign in "-+":
                D = delete_vertex(_family(kind, n, sign), n)
                W = _family(kind, n - 1, sign)
                if not equivalent(D, W):
                    strict.append(f"{kind}{n}{sign}")
                    if not equivalent_up_to_mirror(D, W):
                        mirrored.append(f"{kind}{n}{sign}")
        out.append(Check(f"{kind}_n^+-(delete a_n) equivalent to {kind}_(n-1)^+- for n in {nrange.start}..{nrange.stop - 1}",
                         not strict, f"violations={strict or 0} (also failing up to reflection: {mirrored or 0})"))

    dA = {}
    for n in range(1, a_range.stop):
        dA[n] = distance(_family("A", n, "-"), _family("A", n, "+"), budget=budget)[0]
    bad = [n for n in a_range if dA[n] < min(dA[n - 1] + 3, dA[n - 2] + 5)]
    out.append(Check("d(A_n) >= min(d(A_n-1)+3, d(A_n-2)+5)", not bad,
                     f"distances={[dA[n] for n in sorted(dA)]} violations at n={bad or 0}", value=dA))

    dB = {}
    bad = []
    skipped = []
    for n in range(1, max(b_range) + 1):
        try:
            dB[n] = distance(_family("B", n, "-"), _family("B", n, "+"), budget=budget)[0]
        except BudgetExceeded:
            skipped.append(n)
            break
    for n in b_range:
        if n in dB and dB[n] < min(dB[n - 1] + 3, dB[n - 2] + 6):
            bad.append(n)
    out.append(Check("d(B_n) >= min(d(B_n-1)+3, d(B_n-2)+6)", not bad,
                     f"distances={[dB[n] for n in sorted(dB)]} violations at n={bad or 0} skipped={skipped or 0}",
                     value=dB))
    return out


# 8
def constructive_bounds(pairs=500, seed=0, **_):
    from .bounds import ear_pair_normalize, gamma_upper_path, general_upper_path

    rng = _rng(seed)
    out = []
    bad = 0
    for n in range(2, 6):
        G = graph_of("gamma", n)
        for _ in range(pairs):
            i, j = rng.randrange(len(G)), rng.randrange(len(G))
            P = gamma_upper_path(G.reps[i], G.reps[j])
            P.validate()
            d = int(G.bfs(i)[j])
            if not (d <= len(P) <= gamma_diameter_law(n)) or not equivalent(P.end, G.reps[j]):
                bad += 1
    out.append(Check("gamma_upper_path: exact <= length <= floor(5n/2)-2, n=2..5", bad == 0,
                     f"pairs={4 * pairs} violations={bad}"))

    bad = tried = 0
    for name, n in (("gamma", 3), ("gamma", 4), ("disc", 7), ("pi", 2)):
        G = graph_of(name, n)
        for _ in range(pairs):
            U, V = G.reps[rng.randrange(len(G))], G.reps[rng.randrange(len(G))]
            for a in range(1, n + 1):
                if interior_degree(U, a - 1) + interior_degree(V, a - 1) <= 4:
                    tried += 1
                    P, Q = ear_pair_normalize(U, V, a)
                    P.validate()
                    Q.validate()
                    if len(P) + len(Q) > 4 or not (has_ear_at(P.end, a) and has_ear_at(Q.end, a)):
                        bad += 1
    out.append(Check("ear_pair_normalize: at most 4 flips, ears verified", bad == 0,
                     f"qualifying={tried} violations={bad}"))

    bad = 0
    G = graph_of("disc", 8)
    for _ in range(100):
        i, j = rng.randrange(len(G)), rng.randrange(len(G))
        P = general_upper_path(G.reps[i], G.reps[j])
        P.validate()
        if len(P) < G.bfs(i)[j] or not equivalent(P.end, G.reps[j]) or not equivalent(P.start, G.reps[i]):
            bad += 1
    out.append(Check("general_upper_path on disc n=8: valid and >= exact distance", bad == 0,
                     f"pairs=100 violations={bad}"))
    return out


# 9
def structural_invariants(**_):
    out = []
    bad = checked = 0
    for name, n in (("gamma", 3), ("gamma", 4), ("disc", 7), ("pi", 2)):
        G = graph_of(name, n)
        for T in G.reps:
            validate(T)
            for e in flippable_arcs(T):
                checked += 1
                R, e2 = flip(T, e)
                if not equivalent(flip(R, e2)[0], T):
                    bad += 1
    out.append(Check("flipping twice restores the triangulation", bad == 0, f"flips={checked} violations={bad}"))

    bad = 0
    total = 0
    for name, n in (("gamma", 3), ("gamma", 4), ("disc", 7), ("pi", 2)):
        for T in graph_of(name, n).reps:
            total += 1
            try:
                validate(T)
            except Exception:
                bad += 1
    out.append(Check("Euler audit on every stored triangulation", bad == 0, f"triangulations={total} violations={bad}"))

    bad = 0
    for name, n in (("gamma", 3), ("gamma", 4), ("disc", 7), ("pi", 2)):
        for T in graph_of(name, n).reps:
            deg = [0] * T.spec.num_vertices
            for d in range(T.num_darts):
                if T.twin[d] < 0 or d < T.twin[d]:
                    deg[T.origin[d]] += 1
                    deg[T.target(d)] += 1
            edges = len(T.interior_arcs()) + len(T.boundary_darts())
            if sum(deg) != 2 * edges:
                bad += 1
    out.append(Check("handshake: sum of degrees = 2 * edges", bad == 0, f"violations={bad}"))

    bad = []
    for n in range(3, 10):
        if interior_arc_count(disc(n)) != n - 3 or len(zigzag(n).interior_arcs()) != n - 3:
            bad.append(f"disc{n}")
    for n in range(1, 9):
        if interior_arc_count(gamma(n)) != n + 1 or len(a_triangulation(n, "-").interior_arcs()) != n + 1:
            bad.append(f"gamma{n}")
        if interior_arc_count(pi(n)) != n + 5 or len(b_triangulation(n, "+").interior_arcs()) != n + 5:
            bad.append(f"pi{n}")
    out.append(Check("interior arc counts n-3, n+1, n+4k-3", not bad, f"violations={bad or 0}"))

    g = [diameter_of("gamma", n) for n in range(1, 7)]
    dd = [diameter_of("disc", n) for n in range(4, 11)]
    mono = all(a <= b for a, b in zip(g, g[1:])) and all(a <= b for a, b in zip(dd, dd[1:]))
    out.append(Check("diameters non-decreasing in n", mono, f"gamma 1..6={g} disc 4..10={dd}"))
    return out


# 10
def determinism(n=4, workers=(1, 2, 8), **_):
    blobs = []
    for w in workers:
        G = build_graph(gamma(n), seed=a_triangulation(n, "-"), workers=w)
        blobs.append(repr((G.nodes, G.adj)).encode())
    same = all(b == blobs[0] for b in blobs)
    return [Check(f"build_graph(Gamma_{n}) identical for workers {list(workers)}", same, f"bytes={len(blobs[0])}")]


def deletion_recursion(nrange=range(2, 9), **kw):
    return family_recursions(nrange=nrange, **kw)[:2]


def projection_disc(nrange=range(5, 9), seed=0, samples=40, **_):
    """Geodesics between disc triangulations sharing a diagonal keep it."""
    rng = _rng(seed)
    bad = checked = 0
    for n in nrange:
        G = graph_of("disc", n)
        diags = [_diagonals(T) for T in G.reps]
        for _ in range(samples):
            u, v = rng.randrange(len(G)), rng.randrange(len(G))
            common = diags[u] & diags[v]
            if not common:
                continue
            mu = min(common, key=sorted)
            keep = [i for i in range(len(G)) if mu in diags[i]]
            checked += 1
            if _restricted_distance(G, keep, u, v) != G.bfs(u)[v]:
                bad += 1
    return [Check(f"disc projection: shared diagonal survives geodesics (n={nrange.start}..{nrange.stop - 1})",
                  bad == 0, f"pairs={checked} violations={bad}")]


def _diagonals(T):
    return {frozenset((T.origin[d], T.target(d))) for d in T.interior_arcs()}


def _restricted_distance(G, keep, s, t):
    allowed = set(keep)
    dist = {s: 0}
    frontier = [s]
    while frontier and t not in dist:
        nxt = []
        for x in frontier:
            for y in G.adj[x]:
                if y in allowed and y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    return dist.get(t, -1)


SUITES = {
    "gamma-one": gamma_one,
    "gamma-two": gamma_two,
    "gamma-diameter": gamma_diameter,
    "pi-distances": pi_distances,
    "associahedron": associahedron,
    "deletion-laws": deletion_laws,
    "family-recursions": family_recursions,
    "deletion-recursion": deletion_recursion,
    "constructive-bounds": constructive_bounds,
    "invariants": structural_invariants,
    "determinism": determinism,
    "projection-disc": projection_disc,
}

# acceptance criterion number -> suite
ACCEPTANCE = {
    1: "gamma-one",
    2: "gamma-two",
    3: "gamma-diameter",
    4: "pi-distances",
    5: "associahedron",
    6: "deletion-laws",
    7: "family-recursions",
    8: "constructive-bounds",
    9: "invariants",
    10: "determinism",
}

NRANGE_SUITES = {"gamma-diameter", "deletion-recursion", "projection-disc", "family-recursions"}


def run(name, nrange=None, **kw):
    fn = SUITES[name]
    if nrange is not None and name in NRANGE_SUITES:
        kw["nrange"] = nrange
    return fn(**kw)
