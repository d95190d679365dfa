"""Deleting privileged vertices and projecting flip paths.

Deleting ``a_p`` slides it along ``alpha_p`` onto ``a_{p+1}``: the triangle
on ``alpha_p`` collapses, its edge entering ``a_p`` merges into the edge
leaving ``a_{p+1}``, and every ``a_i`` with ``i > p`` is renamed ``a_{i-1}``.
"""

from __future__ import annotations

from .canon import canonical_code, equivalent
from .errors import NotAdjacent, TooFewVertices, Untriangulable
from .flip import FlipSequence, flippable_arcs, flip, path_from_triangulations
from .trimap import Triangulation


def delete_vertex(T, p):
    n = T.n
    if n < 2:
        raise TooFewVertices("cannot delete the only privileged vertex")
    if not 1 <= p <= n:
        raise ValueError(f"p={p} outside 1..{n}")
    b = T.alpha(p)
    g = T.nxt[b]
    h = T.nxt[g]
    tg, th = T.twin[g], T.twin[h]
    if tg < 0 and th < 0:
        raise Untriangulable(f"deleting a_{p} leaves a bigon")
    twin = list(T.twin)
    if tg >= 0:
        twin[tg] = th
    if th >= 0:
        twin[th] = tg

    gone = p - 1
    keep = p % n

    def relabel(v):
        if v == gone:
            v = keep
        return v - 1 if v > gone else v

    removed = {b, g, h}
    remap = {}
    for d in range(T.num_darts):
        if d not in removed:
            remap[d] = len(remap)
    nxt, tw, origin = [], [], []
    for d in range(T.num_darts):
        if d in removed:
            continue
        nxt.append(remap[T.nxt[d]])
        t = twin[d]
        tw.append(remap[t] if t >= 0 else -1)
        origin.append(relabel(T.origin[d]))
    return Triangulation(T.spec.with_n(n - 1), nxt, tw, origin)


def insert_ear(T, q):
    """Inverse of deleting an ear: add ``a_q`` with an ear glued on the old boundary arc.

    ``T`` lives on ``n-1`` vertices; the result lives on ``n``, keeps every
    dart id of ``T`` and appends the three darts of the new ear.
    """
    n = T.n + 1
    if not 1 <= q <= n:
        raise ValueError(f"q={q} outside 1..{n}")
    old_p = (q - 2) % (n - 1) + 1
    b = T.alpha(old_p)
    cut = q - 1

    def relabel(v):
        return v + 1 if v >= cut else v

    base = T.num_darts
    nxt = list(T.nxt) + [base + 1, base + 2, base]
    twin = list(T.twin) + [-1, -1, b]
    twin[b] = base + 2
    origin = [relabel(v) for v in T.origin]
    a_prev = (q - 2) % n
    a_q = q - 1
    a_next = q % n
    origin += [a_prev, a_q, a_next]
    return Triangulation(T.spec.with_n(n), nxt, twin, origin)


def _check_adjacent(U, V):
    goal = canonical_code(V)
    for e in flippable_arcs(U):
        if canonical_code(flip(U, e)[0]) == goal:
            return
    raise NotAdjacent("triangulations are not related by a flip")


def flip_incident_to(U, V, p, check=True):
    """True iff the flip from ``U`` to ``V`` is incident to ``alpha_p``."""
    if check:
        _check_adjacent(U, V)
    return equivalent(delete_vertex(U, p), delete_vertex(V, p))


def incident_flip_count(path, p):
    codes = [canonical_code(delete_vertex(T, p)) for T in path.triangulations()]
    return sum(1 for a, b in zip(codes, codes[1:]) if a == b)


def project_path(path, p):
    """Delete ``a_p`` along the path and drop repeated triangulations."""
    kept = []
    last = None
    for T in path.triangulations():
        D = delete_vertex(T, p)
        c = canonical_code(D)
        if c != last:
            kept.append(D)
            last = c
    if len(kept) == 1:
        return FlipSequence(kept[0])
    return path_from_triangulations(kept)
