"""Constructive upper-bound paths, checkable against exact distances.

All choices break ties by lowest canonical arc rank so every path is
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canon import canonical_arc_order, canonical_code
from .contract import delete_vertex, insert_ear
from .errors import NotAdjacentPods, NotAPod, Obstructed, PreconditionViolated, SpecMismatch, Stuck
from .flip import FlipSequence, flip, is_flippable, path_from_triangulations
from .trimap import has_ear_at, interior_degree


def _loop_vertex(T):
    if T.spec.k < 1:
        raise PreconditionViolated("surface has no boundary loop")
    return T.n


def _by_rank(T, arcs):
    rank = canonical_arc_order(T)
    return sorted(arcs, key=rank.__getitem__)


def _incident(T, e, v):
    return T.origin[e] == v or T.origin[T.twin[e]] == v


def make_all_incident(T, target=None):
    """Flip arcs onto ``target`` (default the loop vertex) until every interior arc meets it.

    Each step flips the lowest-ranked flippable arc avoiding ``target`` whose
    flip raises the interior degree of ``target``.
    """
    v = _loop_vertex(T) if target is None else T.spec.vertex_id(target) if not isinstance(target, int) else target
    seq = FlipSequence(T)
    while True:
        cur = seq.end
        away = [e for e in cur.interior_arcs() if not _incident(cur, e, v)]
        if not away:
            return seq
        deg = interior_degree(cur, v)
        for e in _by_rank(cur, [e for e in away if is_flippable(cur, e)]):
            if interior_degree(flip(cur, e)[0], v) > deg:
                seq.push(e)
                break
        else:
            raise Stuck(f"no flip raises the degree of vertex {v}")


def _star_apex(T):
    """Privileged anchor of the loop face of a star triangulation."""
    pods = find_pods(T)
    if len(pods) != 1:
        raise PreconditionViolated("expected exactly one pod")
    return pods[0].anchor


def gamma_upper_path(U, V):
    """Path from ``U`` to ``V`` in MF(Gamma_n) of length at most floor(5n/2) - 2.

    Both ends are flipped to star triangulations; the pod of the first is
    then walked the short way round to the anchor of the second.
    """
    if U.spec != V.spec:
        raise SpecMismatch("triangulations belong to different surfaces")
    if canonical_code(U) == canonical_code(V):
        return FlipSequence(U)
    n = U.n
    P = make_all_incident(U)
    Q = make_all_incident(V)
    u, w = _star_apex(P.end), _star_apex(Q.end)
    steps = (w - u) % n
    direction = "ccw"
    if steps > n - steps:
        steps, direction = n - steps, "cw"
    for _ in range(steps):
        pod = find_pods(P.end)[0]
        arc = _pod_move_arc(P.end, pod, direction)
        P.push(arc)
    P.extend(Q.reversed())
    return P


def _reduce_degree(T, a):
    """One flip lowering the interior degree of ``a``, chosen by case analysis."""
    deg = interior_degree(T, a)

    def lowers(e):
        return is_flippable(T, e) and interior_degree(flip(T, e)[0], a) < deg

    incident = _by_rank(T, [e for e in T.interior_arcs() if _incident(T, e, a)])
    for e in incident:
        if lowers(e):
            return e
    for e in incident:
        if is_flippable(T, e):
            # an edge of the flip quadrilateral with both ends at a
            quad = [T.nxt[e], T.prev(e), T.nxt[T.twin[e]], T.prev(T.twin[e])]
            doubled = [T.arc_id(x) for x in quad if T.twin[x] >= 0 and T.origin[x] == a and T.target(x) == a]
            for x in _by_rank(T, doubled):
                if lowers(x):
                    return x
        else:
            # the self-folded triangle's third edge surrounds e
            face = T.face(e)
            around = [T.arc_id(x) for x in face if T.arc_id(x) != T.arc_id(e) and T.twin[x] >= 0]
            for x in _by_rank(T, around):
                if lowers(x):
                    return x
    for e in _by_rank(T, T.interior_arcs()):
        if lowers(e):
            return e
    raise Stuck(f"no flip lowers the degree of vertex {a}")


def ear_pair_normalize(U, V, a):
    """Flip ``U`` and ``V`` to triangulations with an ear at privileged ``a``.

    Requires ``n >= 2`` and interior degrees of ``a`` summing to at most 4;
    the two sequences then have total length at most 4.
    """
    if U.spec != V.spec:
        raise SpecMismatch("triangulations belong to different surfaces")
    if U.n < 2:
        raise PreconditionViolated("needs at least two privileged vertices")
    if not 1 <= a <= U.n:
        raise ValueError(f"a={a} outside 1..{U.n}")
    v = a - 1
    total = interior_degree(U, v) + interior_degree(V, v)
    if total > 4:
        raise PreconditionViolated(f"interior degrees of a_{a} sum to {total} > 4")
    out = []
    for T in (U, V):
        seq = FlipSequence(T)
        while interior_degree(seq.end, v) > 0:
            seq.push(_reduce_degree(seq.end, v))
        if not has_ear_at(seq.end, a):
            raise Stuck(f"degree of a_{a} is zero but there is no ear")
        out.append(seq)
    return out[0], out[1]


def general_upper_path(U, V, base_cutoff=4, budget=None):
    """Path from ``U`` to ``V`` by repeatedly earing off a low-degree vertex.

    Below ``base_cutoff`` privileged vertices, or when no vertex has combined
    degree at most 4, the remaining gap is closed by an exact geodesic.
    """
    from .explorer import distance

    if U.spec != V.spec:
        raise SpecMismatch("triangulations belong to different surfaces")
    tris = _upper_chain(U, V, base_cutoff, budget, distance)
    kept = [tris[0]]
    codes = [canonical_code(tris[0])]
    for T in tris[1:]:
        c = canonical_code(T)
        if c == codes[-1]:
            continue
        if c in codes:  # cut the loop
            i = codes.index(c)
            del kept[i + 1 :], codes[i + 1 :]
            continue
        kept.append(T)
        codes.append(c)
    return path_from_triangulations(kept) if len(kept) > 1 else FlipSequence(U)


def _upper_chain(U, V, base_cutoff, budget, distance):
    n = U.n
    if canonical_code(U) == canonical_code(V):
        return [U]
    if n <= base_cutoff or n < 2:
        return distance(U, V, budget=budget)[1].triangulations()
    sums = [interior_degree(U, p - 1) + interior_degree(V, p - 1) for p in range(1, n + 1)]
    best = min(sums)
    if best > 4:
        return distance(U, V, budget=budget)[1].triangulations()
    a = sums.index(best) + 1
    P, Q = ear_pair_normalize(U, V, a)
    try:
        inner = _upper_chain(delete_vertex(P.end, a), delete_vertex(Q.end, a), base_cutoff, budget, distance)
    except PreconditionViolated:
        return distance(U, V, budget=budget)[1].triangulations()
    lifted = [insert_ear(W, a) for W in inner]
    return P.triangulations() + lifted + Q.triangulations()[::-1]


@dataclass(frozen=True)
class Pod:
    """Loop face ``(loop, x, y)``: ``x`` runs centre to anchor, ``y`` anchor to centre."""

    loop: int
    x: int
    y: int
    center: int
    anchor: int  # privileged index, 1-based
    multiplicity: int


def _region_loops(T, loop):
    """Boundary loops on the far side of the loop arc ``loop``."""
    t = T.twin[loop]
    if t < 0:
        return 1
    n, k = T.n, T.spec.k
    blocked = {loop, t}
    seen = set()
    stack = [t]
    found = set()
    while stack:
        d = stack.pop()
        if d in seen:
            continue
        for x in T.face(d):
            seen.add(x)
            if T.twin[x] < 0:
                if n <= T.origin[x] < n + k:
                    found.add(T.origin[x])
            elif x not in blocked and T.twin[x] not in seen:
                stack.append(T.twin[x])
    return len(found)


def find_pods(T):
    n = T.n
    pods = []
    for face in T.faces():
        for i in range(3):
            c, x, y = face[i], face[(i + 1) % 3], face[(i + 2) % 3]
            v = T.origin[c]
            if T.target(c) != v or T.origin[x] != v:
                continue
            p = T.target(x)
            if p >= n or T.twin[x] < 0 or T.twin[y] < 0 or T.twin[x] == y:
                continue
            pods.append(Pod(c, x, y, v, p + 1, _region_loops(T, c)))
    pods.sort(key=lambda pod: (pod.anchor, pod.loop))
    return pods


def _as_pod(T, pod):
    if isinstance(pod, Pod):
        return pod
    for P in find_pods(T):
        if pod in (P.loop, P.x, P.y):
            return P
    raise NotAPod(f"dart {pod} does not bound a pod")


def _pod_move_arc(T, pod, direction):
    if direction == "ccw":
        t = T.twin[pod.y]
        alpha = T.nxt[t]
        if T.twin[alpha] >= 0 or T.origin[alpha] != pod.anchor - 1:
            raise Obstructed(f"pod at a_{pod.anchor} cannot move counterclockwise")
        return pod.y
    if direction == "cw":
        t = T.twin[pod.x]
        alpha = T.prev(t)
        if T.twin[alpha] >= 0 or T.target(alpha) != pod.anchor - 1:
            raise Obstructed(f"pod at a_{pod.anchor} cannot move clockwise")
        return pod.x
    raise ValueError(f"direction must be cw or ccw, got {direction!r}")


def move_pod(T, pod, direction):
    """Slide a pod one privileged vertex along the boundary with a single flip."""
    P = _as_pod(T, pod)
    arc = _pod_move_arc(T, P, direction)
    return flip(T, arc)


def join_pods(T, pod1, pod2):
    """Merge two pods sharing an arc into one pod holding both peas."""
    P1, P2 = _as_pod(T, pod1), _as_pod(T, pod2)
    if T.twin[P1.y] == P2.x:
        shared = P1.y
    elif T.twin[P2.y] == P1.x:
        shared = P2.y
    else:
        raise NotAdjacentPods("pods do not share an arc")
    return flip(T, shared)
