"""Triangulations as oriented combinatorial maps.

Every triangle contributes three darts, cycled counterclockwise by ``nxt``.
An interior arc is a pair of darts exchanged by ``twin``; a boundary arc is a
single dart whose ``twin`` is ``-1`` and whose face lies on its left.  The
dart of the privileged boundary arc ``alpha_p`` runs from ``a_p`` to
``a_{p+1}`` (``alpha_n`` from ``a_n`` to ``a_1``), so the privileged vertices
appear counterclockwise around the surface interior.

Arc ids are dart ids: an interior arc is named by the smaller of its two
darts, a boundary arc by its only dart.  Dart ids carry no meaning beyond a
single value; equality up to the mapping class group lives in :mod:`canon`.
"""

from __future__ import annotations

import json
from collections import namedtuple

from .errors import MalformedMap, NotBoundary, UnknownVertex
from .surface import TopologySpec, euler_characteristic, interior_arc_count

Triangle = namedtuple("Triangle", "darts vertices beta gamma")


class Triangulation:
    __slots__ = ("spec", "nxt", "twin", "origin", "_code", "_form")

    def __init__(self, spec, nxt, twin, origin):
        self.spec = spec
        self.nxt = tuple(nxt)
        self.twin = tuple(twin)
        self.origin = tuple(origin)
        self._code = None
        self._form = None

    @property
    def n(self):
        return self.spec.n

    @property
    def num_darts(self):
        return len(self.nxt)

    def __repr__(self):
        return f"Triangulation(n={self.n}, darts={self.num_darts}, arcs={len(self.interior_arcs())})"

    def __eq__(self, other):
        # literal equality of dart tables; use canon.equivalent for MF classes
        return (
            isinstance(other, Triangulation)
            and self.spec == other.spec
            and self.nxt == other.nxt
            and self.twin == other.twin
            and self.origin == other.origin
        )

    def __hash__(self):
        return hash((self.nxt, self.twin, self.origin))

    def __getstate__(self):
        return (self.spec, self.nxt, self.twin, self.origin)

    def __setstate__(self, state):
        self.spec, self.nxt, self.twin, self.origin = state
        self._code = None
        self._form = None

    def prev(self, d):
        return self.nxt[self.nxt[d]]

    def target(self, d):
        return self.origin[self.nxt[d]]

    def ends(self, d):
        return self.origin[d], self.origin[self.nxt[d]]

    def face(self, d):
        n1 = self.nxt[d]
        return (d, n1, self.nxt[n1])

    def faces(self):
        seen = [False] * len(self.nxt)
        out = []
        for d in range(len(self.nxt)):
            if not seen[d]:
                f = self.face(d)
                for x in f:
                    seen[x] = True
                out.append(f)
        return out

    def same_face(self, d, e):
        return e == d or e == self.nxt[d] or e == self.nxt[self.nxt[d]]

    def arc_id(self, d):
        t = self.twin[d]
        return d if t < 0 or d < t else t

    def interior_arcs(self):
        return [d for d, t in enumerate(self.twin) if t > d]

    def boundary_darts(self):
        return [d for d, t in enumerate(self.twin) if t < 0]

    def is_interior(self, arc):
        return self.twin[arc] >= 0

    def alpha(self, p):
        """Dart of the privileged boundary arc ``alpha_p`` (1-based)."""
        v = p - 1
        for d, t in enumerate(self.twin):
            if t < 0 and self.origin[d] == v:
                return d
        raise NotBoundary(f"alpha_{p} not found")

    def loop_dart(self, v):
        for d, t in enumerate(self.twin):
            if t < 0 and self.origin[d] == v:
                return d
        raise NotBoundary(f"vertex {v} carries no boundary loop")

    def arcs_between(self, u, v):
        """Interior arc ids joining vertices ``u`` and ``v`` (unordered)."""
        out = []
        for d in self.interior_arcs():
            a, b = self.ends(d)
            if (a, b) == (u, v) or (a, b) == (v, u):
                out.append(d)
        return out

    def vertex_of(self, label):
        return self.spec.vertex_id(label)

    def to_json(self):
        labels = [str(x) for x in self.spec.vertex_labels()]
        darts = []
        for d in range(len(self.nxt)):
            t = self.twin[d]
            o = labels[self.origin[d]]
            if t >= 0:
                mark = "interior"
            elif self.origin[d] < self.spec.n:
                mark = f"alpha{self.origin[d] + 1}"
            else:
                mark = f"loop:{o}"
            darts.append({"twin": t if t >= 0 else None, "next": self.nxt[d], "origin": o, "mark": mark})
        return {"darts": darts}

    def dumps(self):
        return json.dumps({"spec": self.spec.to_json(), **self.to_json()}, sort_keys=True)

    @classmethod
    def from_json(cls, spec, obj):
        index = {str(x): v for v, x in enumerate(spec.vertex_labels())}
        darts = obj["darts"]
        try:
            nxt = [int(x["next"]) for x in darts]
            twin = [-1 if x["twin"] is None else int(x["twin"]) for x in darts]
            origin = [index[x["origin"]] for x in darts]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedMap([f"unreadable dart table: {exc}"]) from exc
        return cls(spec, nxt, twin, origin)

    @classmethod
    def loads(cls, text):
        obj = json.loads(text)
        return cls.from_json(TopologySpec.from_json(obj["spec"]), obj)


def from_faces(spec, faces):
    """Assemble a triangulation from counterclockwise corner lists.

    Each face is three ``(origin, key)`` pairs: the dart leaving ``origin``
    along the edge ``key``.  Interior edges must appear exactly twice, in
    opposite directions; ``key=None`` marks a boundary dart.
    """
    nxt, twin, origin = [], [], []
    pending = {}
    for face in faces:
        if len(face) != 3:
            raise MalformedMap([f"face {face} is not a triangle"])
        base = len(nxt)
        for i, (v, key) in enumerate(face):
            d = base + i
            nxt.append(base + (i + 1) % 3)
            origin.append(v)
            twin.append(-1)
            if key is None:
                continue
            if key in pending:
                e = pending.pop(key)
                twin[d], twin[e] = e, d
            else:
                pending[key] = d
    if pending:
        raise MalformedMap([f"edge {k!r} used only once" for k in pending])
    return Triangulation(spec, nxt, twin, origin)


def validate(T):
    """Raise :class:`MalformedMap` listing every violated invariant, else return None."""
    problems = []
    spec = T.spec
    n, nd = spec.n, len(T.nxt)
    nv = spec.num_vertices
    if nd == 0 or nd % 3:
        problems.append(f"dart count {nd} is not a positive multiple of 3")
        raise MalformedMap(problems)
    for d in range(nd):
        x = T.nxt[d]
        if not 0 <= x < nd:
            problems.append(f"next[{d}]={x} out of range")
        elif T.nxt[T.nxt[x]] != d:
            problems.append(f"face through dart {d} is not a triangle")
        t = T.twin[d]
        if t >= nd:
            problems.append(f"twin[{d}]={t} out of range")
        elif t >= 0:
            if t == d:
                problems.append(f"twin has a fixed point at {d}")
            elif T.twin[t] != d:
                problems.append(f"twin not an involution at {d}")
        if not 0 <= T.origin[d] < nv:
            problems.append(f"origin[{d}]={T.origin[d]} is not a vertex")
    if problems:
        raise MalformedMap(problems)

    for d in range(nd):
        t = T.twin[d]
        if t >= 0 and (T.origin[t] != T.target(d) or T.origin[d] != T.target(t)):
            problems.append(f"twins {d},{t} disagree on endpoints")

    # boundary darts: one alpha_p per privileged vertex, one loop per loop vertex
    bd = {}
    for d in T.boundary_darts():
        bd.setdefault(T.origin[d], []).append(d)
    for v in range(nv):
        ds = bd.get(v, [])
        if v < n:
            if len(ds) != 1:
                problems.append(f"a_{v + 1} starts {len(ds)} boundary darts")
            elif T.target(ds[0]) != (v + 1) % n:
                problems.append(f"alpha_{v + 1} does not end at a_{(v + 1) % n + 1}")
        elif v < n + spec.k:
            if len(ds) != 1:
                problems.append(f"loop vertex {v} starts {len(ds)} boundary darts")
            elif T.target(ds[0]) != v:
                problems.append(f"boundary loop at vertex {v} is not a loop")
        elif ds:
            problems.append(f"interior point {v} lies on a boundary")

    # vertex links: darts around each vertex form one chain (boundary) or one cycle
    seen = [False] * nd
    links = {}
    for d in range(nd):
        if seen[d]:
            continue
        chain = _vertex_link(T, d)
        for x in chain:
            seen[x] = True
        links.setdefault(T.origin[d], []).append(chain)
        if any(T.origin[x] != T.origin[d] for x in chain):
            problems.append(f"origins disagree around dart {d}")
    for v in range(nv):
        if len(links.get(v, [])) != 1:
            problems.append(f"vertex {v} has {len(links.get(v, []))} link components")

    # connectivity through twins
    comp = _components(T)
    if comp != 1:
        problems.append(f"map has {comp} connected components")

    nf = nd // 3
    ne_int = len(T.interior_arcs())
    ne_bd = len(T.boundary_darts())
    chi = nv - (ne_int + ne_bd) + nf
    if chi != euler_characteristic(spec):
        problems.append(f"Euler audit failed: V-E+F={chi}, expected {euler_characteristic(spec)}")
    try:
        expect = interior_arc_count(spec)
    except Exception as exc:  # untriangulable spec
        problems.append(str(exc))
    else:
        if ne_int != expect:
            problems.append(f"{ne_int} interior arcs, expected {expect}")
    if problems:
        raise MalformedMap(problems)


def _vertex_link(T, d):
    """All darts leaving the vertex at ``d``: one cycle, or one chain at a boundary vertex."""
    out = [d]
    x = d
    while True:
        x = T.twin[T.prev(x)]
        if x < 0:
            break
        if x == d:
            return out
        out.append(x)
    x = d
    while True:
        t = T.twin[x]
        if t < 0:
            break
        x = T.nxt[t]
        out.append(x)
    return out


def _components(T):
    nd = len(T.nxt)
    seen = [False] * nd
    count = 0
    for s in range(nd):
        if seen[s]:
            continue
        count += 1
        stack = [s]
        seen[s] = True
        while stack:
            d = stack.pop()
            for e in (T.nxt[d], T.twin[d]):
                if e >= 0 and not seen[e]:
                    seen[e] = True
                    stack.append(e)
    return count


def triangle_at(T, b):
    """The face on the interior side of boundary dart ``b``.

    For ``b = alpha_p`` the ``beta`` edge is the one entering ``a_p`` and
    ``gamma`` the one leaving ``a_{p+1}``.
    """
    if not 0 <= b < T.num_darts or T.twin[b] >= 0:
        raise NotBoundary(f"arc {b} is not a boundary arc")
    darts = T.face(b)
    return Triangle(darts, tuple(T.origin[x] for x in darts), darts[2], darts[1])


def interior_degree(T, v):
    """Interior arcs at vertex ``v``, counting arcs with both ends at ``v`` twice."""
    v = T.spec.vertex_id(v) if not isinstance(v, int) else v
    if not 0 <= v < T.spec.num_vertices:
        raise UnknownVertex(f"vertex {v} not in this surface")
    return sum(1 for d, t in enumerate(T.twin) if t >= 0 and T.origin[d] == v)


def has_ear_at(T, q):
    """True iff the triangles on ``alpha_{q-1}`` and ``alpha_q`` coincide."""
    n = T.n
    p = (q - 2) % n + 1
    a, b = T.alpha(p), T.alpha(q)
    return T.same_face(a, b)


def ears(T):
    return [q for q in range(1, T.n + 1) if has_ear_at(T, q)]


def polygon(n, diagonals, spec=None):
    """Triangulation of the disc from a set of diagonals ``(i, j)`` (1-based)."""
    from .surface import disc

    spec = spec if spec is not None else disc(n)
    diags = {frozenset(d) for d in diagonals}
    tris = _polygon_triangles(list(range(1, n + 1)), diags)
    faces = []
    for tri in tris:
        corners = []
        for i in range(3):
            u, v = tri[i], tri[(i + 1) % 3]
            key = None if (v - u) % n == 1 else frozenset((u, v))
            corners.append((u - 1, key))
        faces.append(corners)
    return from_faces(spec, faces)


def _polygon_triangles(cycle, diags):
    # cycle is a ccw list of vertices; split along any diagonal present
    if len(cycle) == 3:
        return [tuple(cycle)]
    m = len(cycle)
    for i in range(m):
        for j in range(i + 2, m):
            if i == 0 and j == m - 1:
                continue
            if frozenset((cycle[i], cycle[j])) in diags:
                return _polygon_triangles(cycle[i : j + 1], diags) + _polygon_triangles(cycle[j:] + cycle[: i + 1], diags)
    raise MalformedMap([f"diagonals do not triangulate polygon {cycle}"])
