"""Flips: the elementary move between triangulations."""

from __future__ import annotations

from .canon import canonical_arc_order, canonical_code
from .errors import Unflippable
from .trimap import Triangulation


def is_flippable(T, e):
    t = T.twin[e]
    return t >= 0 and not T.same_face(e, t)


def flippable_arcs(T):
    """Interior arcs whose two sides lie in distinct triangles."""
    return [e for e in T.interior_arcs() if not T.same_face(e, T.twin[e])]


def flip(T, e):
    """Replace arc ``e`` by the other diagonal of its quadrilateral.

    Returns ``(T', e)``: the new arc reuses the darts of the old one, so its
    id is unchanged.
    """
    nxt, twin = T.nxt, T.twin
    d = e
    t = twin[d] if 0 <= d < len(twin) else -1
    if t < 0 or T.same_face(d, t):
        raise Unflippable(f"arc {e} cannot be flipped")
    d1 = nxt[d]
    d2 = nxt[d1]
    t1 = nxt[t]
    t2 = nxt[t1]
    new_nxt = list(nxt)
    new_nxt[d] = d2
    new_nxt[d2] = t1
    new_nxt[t1] = d
    new_nxt[t] = t2
    new_nxt[t2] = d1
    new_nxt[d1] = t
    origin = list(T.origin)
    origin[d] = T.origin[t2]
    origin[t] = T.origin[d2]
    return Triangulation(T.spec, new_nxt, twin, origin), min(d, t)


def neighbors(T):
    """``(arc, flipped)`` for every flippable arc, in canonical arc order."""
    arcs = flippable_arcs(T)
    rank = canonical_arc_order(T)
    arcs.sort(key=rank.__getitem__)
    return [(e, flip(T, e)[0]) for e in arcs]


def quadrilateral(T, e):
    """The four outer darts of the quadrilateral around interior arc ``e``."""
    t = T.twin[e]
    return (T.nxt[e], T.prev(e), T.nxt[t], T.prev(t))


class FlipSequence:
    """A start triangulation and the arcs flipped from it, one step at a time.

    ``steps`` holds ``(arc, result)`` pairs; ``arc`` is an id in the previous
    triangulation of the sequence, so the sequence replays from ``start`` alone.
    """

    def __init__(self, start, steps=()):
        self.start = start
        self.steps = list(steps)

    def __len__(self):
        return len(self.steps)

    def __repr__(self):
        return f"FlipSequence(length={len(self.steps)})"

    @property
    def end(self):
        return self.steps[-1][1] if self.steps else self.start

    @property
    def arcs(self):
        return [a for a, _ in self.steps]

    def triangulations(self):
        return [self.start] + [T for _, T in self.steps]

    def push(self, arc):
        T, _ = flip(self.end, arc)
        self.steps.append((arc, T))
        return T

    def extend(self, other):
        """Append ``other``, whose start must be equivalent to our end."""
        if canonical_code(other.start) != canonical_code(self.end):
            raise ValueError("sequences do not meet")
        for arc, T in replay_onto(self.end, other):
            self.steps.append((arc, T))
        return self

    def reversed(self):
        """The same path walked backwards, replayed by real flips."""
        tris = self.triangulations()
        out = FlipSequence(self.end)
        for i in range(len(tris) - 1, 0, -1):
            out.push(_matching_arc(out.end, tris[i - 1]))
        return out

    def validate(self):
        """Check that every step is a legal flip landing on the stored result."""
        T = self.start
        for arc, R in self.steps:
            S, _ = flip(T, arc)
            if canonical_code(S) != canonical_code(R):
                raise ValueError(f"step flipping {arc} does not produce the recorded triangulation")
            T = R
        return True

    def codes(self):
        return [canonical_code(T) for T in self.triangulations()]

    def to_json(self):
        return {"start": self.start.to_json(), "flips": self.arcs}

    @classmethod
    def from_json(cls, spec, obj):
        seq = cls(Triangulation.from_json(spec, obj["start"]))
        for arc in obj["flips"]:
            seq.push(int(arc))
        return seq


def _matching_arc(T, target):
    goal = canonical_code(target)
    for e in flippable_arcs(T):
        if canonical_code(flip(T, e)[0]) == goal:
            return e
    raise ValueError("triangulations are not adjacent")


def replay_onto(T, seq):
    """Re-express ``seq`` as flips starting from ``T`` (equivalent to ``seq.start``)."""
    out = []
    cur = T
    for _, R in seq.steps:
        e = _matching_arc(cur, R)
        cur = flip(cur, e)[0]
        out.append((e, cur))
    return out


def path_from_triangulations(tris):
    """Build a FlipSequence through consecutive adjacent triangulations."""
    seq = FlipSequence(tris[0])
    for R in tris[1:]:
        seq.push(_matching_arc(seq.end, R))
    return seq
