"""Topological types of filling surfaces and their Euler-characteristic arithmetic.

A filling surface is an orientable surface with one privileged boundary
curve carrying ``n`` marked vertices ``a_1..a_n``.  Extra topology comes
from genus, boundary loops (non-privileged boundary curves with a single
vertex) and interior points.  Loops and interior points are either marked
(fixed individually by the mapping class group, so they carry a label) or
unmarked (interchangeable).

Vertex ids used throughout the package are fixed by the TopologySpec::

    0 .. n-1              a_1 .. a_n on the privileged boundary
    n .. n+k-1            the vertex of each boundary loop, in list order
    n+k .. n+k+m-1        interior points, in list order
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Optional

from .errors import InvalidSpec, Untriangulable


@dataclass(frozen=True)
class Feature:
    """A boundary loop or an interior point."""

    marked: bool = True
    label: Optional[str] = None

    def to_json(self):
        d = {"marked": self.marked}
        if self.label is not None:
            d["label"] = self.label
        return d


@dataclass(frozen=True)
class VertexLabel:
    kind: str  # privileged | marked_loop | unmarked_loop | marked_interior | unmarked_interior
    index: int  # p for privileged vertices, list position otherwise
    label: Optional[str] = None

    @property
    def marked(self):
        return not self.kind.startswith("unmarked")

    def __str__(self):
        if self.kind == "privileged":
            return f"a{self.index}"
        if self.label is not None:
            return f"a{self.label}"
        return f"{self.kind}[{self.index}]"


@dataclass(frozen=True)
class TopologySpec:
    genus: int = 0
    loops: tuple = ()
    interior: tuple = ()
    n: int = 3
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "loops", tuple(_feature(f) for f in self.loops))
        object.__setattr__(self, "interior", tuple(_feature(f) for f in self.interior))

    @property
    def k(self):
        return len(self.loops)

    @property
    def num_vertices(self):
        return self.n + len(self.loops) + len(self.interior)

    def with_n(self, n):
        return replace(self, n=n)

    def loop_vertex(self, label):
        """Vertex id of the loop with the given label (``"0"``, ``"-"``, ``"+"``...)."""
        for i, f in enumerate(self.loops):
            if f.label == label:
                return self.n + i
        raise KeyError(label)

    def vertex_label(self, v):
        n, k = self.n, len(self.loops)
        if 0 <= v < n:
            return VertexLabel("privileged", v + 1)
        if n <= v < n + k:
            f = self.loops[v - n]
            return VertexLabel("marked_loop" if f.marked else "unmarked_loop", v - n, f.label if f.marked else None)
        if n + k <= v < self.num_vertices:
            f = self.interior[v - n - k]
            kind = "marked_interior" if f.marked else "unmarked_interior"
            return VertexLabel(kind, v - n - k, f.label if f.marked else None)
        raise IndexError(v)

    def vertex_labels(self):
        return [self.vertex_label(v) for v in range(self.num_vertices)]

    def vertex_id(self, label):
        """Inverse of :meth:`vertex_label`; also accepts ``"a3"``/``"a-"`` strings."""
        if isinstance(label, int):
            return label
        if isinstance(label, str):
            s = label[1:] if label.startswith("a") else label
            if s.isdigit() and s != "0":
                p = int(s)
                if 1 <= p <= self.n:
                    return p - 1
            for i, f in enumerate(self.loops):
                if f.marked and f.label == s:
                    return self.n + i
            for i, f in enumerate(self.interior):
                if f.marked and f.label == s:
                    return self.n + len(self.loops) + i
            raise KeyError(label)
        for v in range(self.num_vertices):
            if self.vertex_label(v) == label:
                return v
        raise KeyError(label)

    def to_json(self):
        return {
            "genus": self.genus,
            "loops": [f.to_json() for f in self.loops],
            "interior": [f.to_json() for f in self.interior],
            "n": self.n,
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj, n=None):
        """Build a spec from a JSON object or one of the shorthands ``disc``, ``gamma``, ``pi``."""
        if isinstance(obj, str):
            try:
                return named(obj, n if n is not None else 3)
            except InvalidSpec:
                obj = json.loads(obj)
        try:
            spec = cls(
                genus=int(obj.get("genus", 0)),
                loops=tuple(Feature(bool(f.get("marked", True)), f.get("label")) for f in obj.get("loops", [])),
                interior=tuple(Feature(bool(f.get("marked", True)), f.get("label")) for f in obj.get("interior", [])),
                n=int(n if n is not None else obj["n"]),
            )
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            raise InvalidSpec("parse", str(exc)) from exc
        return spec


def _feature(f):
    if isinstance(f, Feature):
        return f
    if isinstance(f, dict):
        return Feature(bool(f.get("marked", True)), f.get("label"))
    if isinstance(f, str):
        return Feature(True, f)
    raise TypeError(f"cannot interpret {f!r} as a loop or interior point")


def disc(n):
    return TopologySpec(n=n, name="disc")


def gamma(n):
    """Annulus with one boundary loop whose vertex is ``a_0``."""
    return TopologySpec(loops=(Feature(True, "0"),), n=n, name="gamma")


def pi(n):
    """Pair of pants: two marked boundary loops with vertices ``a_-`` and ``a_+``."""
    return TopologySpec(loops=(Feature(True, "-"), Feature(True, "+")), n=n, name="pi")


NAMED = {"disc": disc, "delta": disc, "gamma": gamma, "pi": pi}


def named(name, n):
    try:
        return NAMED[name.lower()](n)
    except KeyError:
        raise InvalidSpec("parse", f"unknown surface {name!r}") from None


def validate_spec(spec):
    if not isinstance(spec.n, int) or spec.n < 1:
        raise InvalidSpec("bad-n", f"n must be a positive integer, got {spec.n!r}")
    if spec.genus < 0:
        raise InvalidSpec("bad-genus", f"genus must be non-negative, got {spec.genus}")
    seen = set()
    for f in spec.loops + spec.interior:
        if not f.marked:
            continue
        if f.label is None:
            raise InvalidSpec("missing-label", "marked loops and points need a label")
        if f.label in seen:
            raise InvalidSpec("duplicate-label", f"label {f.label!r} used twice")
        seen.add(f.label)
    if _arc_count(spec, spec.n) < 0:
        raise Untriangulable(f"{spec.to_json()} admits no triangulation")


def euler_characteristic(spec):
    """Euler characteristic of the compact surface (privileged boundary plus loops)."""
    return 2 - 2 * spec.genus - (1 + len(spec.loops))


def _arc_count(spec, n):
    # V - E + F = chi with 3F = 2I + n + k
    m, k = len(spec.interior), len(spec.loops)
    return n + 4 * k + 3 * m + 6 * spec.genus - 3


def interior_arc_count(spec, n=None):
    """Number of interior arcs shared by every triangulation of ``spec`` with ``n`` vertices."""
    n = spec.n if n is None else n
    count = _arc_count(spec, n)
    if n < 1 or count < 0:
        raise Untriangulable(f"no triangulation with n={n}")
    return count


def face_count(spec, n=None):
    n = spec.n if n is None else n
    return (2 * interior_arc_count(spec, n) + n + len(spec.loops)) // 3
