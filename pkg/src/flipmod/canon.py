"""Canonical codes for triangulations modulo the mapping class group.

Homeomorphisms in the quotient fix the privileged boundary pointwise, so an
isomorphism between two triangulations must send the dart of ``alpha_n`` to
itself.  A rooted map isomorphism is unique when it exists, so a single
breadth-first renumbering from that dart yields a canonical form: no
minimisation over candidate roots is needed.  Unmarked loops (resp. interior
points) are renamed among themselves in first-visit order.
"""

from __future__ import annotations

import struct

from .errors import SpecMismatch
from .trimap import Triangulation


def _dart_order(T):
    """Breadth-first dart order from the root dart of ``alpha_n``."""
    nxt, twin, origin = T.nxt, T.twin, T.origin
    nd = len(nxt)
    root_vertex = T.spec.n - 1
    root = -1
    for d in range(nd):
        if twin[d] < 0 and origin[d] == root_vertex:
            root = d
            break
    order = [root]
    index = [-1] * nd
    index[root] = 0
    i = 0
    while i < len(order):
        d = order[i]
        i += 1
        e = nxt[d]
        if index[e] < 0:
            index[e] = len(order)
            order.append(e)
        e = twin[d]
        if e >= 0 and index[e] < 0:
            index[e] = len(order)
            order.append(e)
    return order, index


def canonical_form(T):
    """Return ``T`` renumbered in canonical order (cached on the instance)."""
    if T._form is not None:
        return T._form
    nxt, twin, origin = T.nxt, T.twin, T.origin
    order, index = _dart_order(T)
    vmap = _vertex_renaming(T.spec, origin, order)
    new_nxt = [index[nxt[d]] for d in order]
    new_twin = [index[twin[d]] if twin[d] >= 0 else -1 for d in order]
    if vmap is None:
        new_origin = [origin[d] for d in order]
    else:
        new_origin = [vmap[origin[d]] for d in order]
    form = Triangulation(T.spec, new_nxt, new_twin, new_origin)
    form._form = form
    T._form = form
    return form


def _vertex_renaming(spec, origin, order):
    n, k = spec.n, len(spec.loops)
    groups = []
    unmarked_loops = [n + i for i, f in enumerate(spec.loops) if not f.marked]
    unmarked_pts = [n + k + i for i, f in enumerate(spec.interior) if not f.marked]
    if len(unmarked_loops) > 1:
        groups.append(unmarked_loops)
    if len(unmarked_pts) > 1:
        groups.append(unmarked_pts)
    if not groups:
        return None
    vmap = list(range(spec.num_vertices))
    for group in groups:
        members = set(group)
        seen = []
        for d in order:
            v = origin[d]
            if v in members and v not in seen:
                seen.append(v)
        for slot, v in zip(group, seen):
            vmap[v] = slot
    return vmap


def canonical_code(T):
    """Bytes identifying the class of ``T`` in the modular flip-graph.

    Per dart in canonical order: next index, twin index (+1, 0 for boundary),
    vertex id; each as a big-endian 16-bit word.
    """
    if T._code is not None:
        return T._code
    F = canonical_form(T)
    vals = []
    for a, b, c in zip(F.nxt, F.twin, F.origin):
        vals.append(a)
        vals.append(b + 1)
        vals.append(c)
    code = struct.pack(f">{len(vals)}H", *vals)
    T._code = code
    F._code = code
    return code


def code_hex(code):
    return code.hex()


def equivalent(T1, T2):
    if T1.spec != T2.spec:
        raise SpecMismatch(f"{T1.spec.to_json()} vs {T2.spec.to_json()}")
    return canonical_code(T1) == canonical_code(T2)


def canonical_arc_order(T):
    """Map each interior arc id of ``T`` to its rank in canonical numbering."""
    _, index = _dart_order(T)
    twin = T.twin
    return {a: min(index[a], index[twin[a]]) for a in T.interior_arcs()}


def sorted_arcs(T, arcs=None):
    """Interior arc ids sorted by canonical rank (the package-wide tie-break)."""
    rank = canonical_arc_order(T)
    arcs = T.interior_arcs() if arcs is None else arcs
    return sorted(arcs, key=rank.__getitem__)


def mirror(T):
    """Orientation-reversed triangulation, relabelled ``a_i -> a_{2-i}`` so ``a_1`` is fixed.

    Not an element of the quotient for ``n >= 3``; used to compare
    triangulations up to reflection.
    """
    n = T.n
    nxt = [T.nxt[T.nxt[d]] for d in range(T.num_darts)]
    origin = []
    for d in range(T.num_darts):
        v = T.origin[T.nxt[d]]
        if v < n:
            v = (-v) % n  # a_i -> a_{2-i}, ids are 0-based
        origin.append(v)
    return Triangulation(T.spec, nxt, T.twin, origin)


def equivalent_up_to_mirror(T1, T2):
    return equivalent(T1, T2) or equivalent(mirror(T1), T2)
