"""Named triangulations: zigzags, fans, stars and the pierced-ear families.

Piercing the ear at ``a_q`` replaces that triangle by a loop arc based at
``a_q`` that encircles a new boundary loop, a pod of two arcs from ``a_q`` to
the loop vertex inside it, and one diagonal of the quadrilateral left between
the loop arc and the ear's base.
"""

from __future__ import annotations

import re

from .contract import delete_vertex
from .errors import InvalidSpec, TooSmall
from .surface import disc, gamma, pi
from .trimap import _polygon_triangles, ears, from_faces

MINUS, PLUS = "-", "+"

# Which diagonal of the quadrilateral (a_{q-1}, a_q, a_q', a_{q+1}) a pierce
# uses: "apex" joins the first copy of a_q to a_{q+1}, "base" joins a_{q-1}
# to the second copy.  Keys are (family, ear) with ear 1 at a_1 and ear 2 at
# a_{floor(n/2)+1}; the loop of a_+ always uses "apex".  Picked by exhaustive
# search as the choice under which the pairs reach the exact distances.
PIERCE_DIAGONAL = {("A", 1): "base", ("A", 2): "apex", ("B", 1): "apex", ("B", 2): "apex"}


def _sign(sign):
    if sign in ("-", "minus", -1):
        return MINUS
    if sign in ("+", "plus", 1):
        return PLUS
    raise ValueError(f"sign must be minus or plus, got {sign!r}")


def zigzag_diagonals(n):
    """``a_n a_2, a_2 a_{n-1}, a_{n-1} a_3, ...``: the n-3 zigzag diagonals."""
    walk = []
    lo, hi = 2, n
    take_hi = True
    while len(walk) < n - 2:
        if take_hi:
            walk.append(hi)
            hi -= 1
        else:
            walk.append(lo)
            lo += 1
        take_hi = not take_hi
    return list(zip(walk, walk[1:]))


def _disc_faces(n, diagonals):
    diags = {frozenset(d) for d in diagonals}
    faces = []
    for tri in _polygon_triangles(list(range(1, n + 1)), diags):
        corners = []
        for i in range(3):
            u, v = tri[i], tri[(i + 1) % 3]
            key = None if (v - u) % n == 1 else frozenset((u, v))
            corners.append((u - 1, key))
        faces.append(corners)
    return faces


def zigzag(n):
    if n < 3:
        raise TooSmall(f"zigzag needs n >= 3, got {n}")
    return from_faces(disc(n), _disc_faces(n, zigzag_diagonals(n)))


def polygon_fan(n, apex):
    if n < 3:
        raise TooSmall(f"fan needs n >= 3, got {n}")
    if not 1 <= apex <= n:
        raise ValueError(f"apex {apex} outside 1..{n}")
    others = [j for j in range(1, n + 1) if (j - apex) % n not in (0, 1, n - 1)]
    return from_faces(disc(n), _disc_faces(n, [(apex, j) for j in others]))


def _pierce(faces, n, q, loop_vertex, diagonal):
    """Replace the ear at ``a_q`` (1-based) in ``faces`` by a pierced ear."""
    l, a, r = (q - 2) % n, q - 1, q % n
    for i, face in enumerate(faces):
        if sorted(v for v, _ in face) == sorted((l, a, r)) and any(
            v == l and k is None for v, k in face
        ) and any(v == a and k is None for v, k in face):
            break
    else:
        raise ValueError(f"no ear at a_{q}")
    face = faces.pop(i)
    delta = next(k for v, k in face if v == r)
    L = loop_vertex
    tag = ("pierce", L)
    loop, e, f, d = tag + ("loop",), tag + ("e",), tag + ("f",), tag + ("d",)
    if diagonal == "apex":
        outer = [
            [(l, None), (a, d), (r, delta)],
            [(a, loop), (a, None), (r, d)],
        ]
    else:
        outer = [
            [(l, None), (a, loop), (a, d)],
            [(l, d), (a, None), (r, delta)],
        ]
    inner = [
        [(a, loop), (a, e), (L, f)],
        [(L, e), (a, f), (L, None)],
    ]
    faces.extend(outer + inner)
    return faces


def _star_faces(n, u, L):
    """Faces of the triangulation with every interior arc at ``L``, pod at ``a_u``."""
    faces = []
    u0 = u - 1
    for p in range(n):
        q = (p + 1) % n
        into_q = "f" if q == u0 else ("s", q)
        from_L = "e" if p == u0 else ("s", p)
        faces.append([(p, None), (q, into_q), (L, from_L)])
    faces.append([(L, "f"), (u0, "e"), (L, None)])
    return faces


def gamma_star(n, u):
    if not 1 <= u <= n:
        raise ValueError(f"u={u} outside 1..{n}")
    return from_faces(gamma(n), _star_faces(n, u, n))


def ear_apexes(n):
    """The two ears of the zigzag: ``a_1`` and ``a_{floor(n/2)+1}``."""
    return 1, n // 2 + 1


def a_triangulation(n, sign):
    sign = _sign(sign)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n < 3:
        T = a_triangulation(3, sign)
        for m in range(3, n, -1):
            T = delete_vertex(T, m)
        return T
    which = 1 if sign == MINUS else 2
    q = ear_apexes(n)[which - 1]
    faces = _pierce(_disc_faces(n, zigzag_diagonals(n)), n, q, n, PIERCE_DIAGONAL["A", which])
    return from_faces(gamma(n), faces)


def b_triangulation(n, sign):
    """``A_n^sign`` with the other zigzag ear pierced by the loop of ``a_+``.

    The loop of ``A_n`` becomes the loop of ``a_-``.  In ``B_n^+`` the roles
    are exchanged so that ``a_-`` sits at the second ear.
    """
    sign = _sign(sign)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n < 3:
        T = b_triangulation(3, sign)
        for m in range(3, n, -1):
            T = delete_vertex(T, m)
        return T
    minus_v, plus_v = n, n + 1
    first, second = (1, 2) if sign == MINUS else (2, 1)
    faces = _disc_faces(n, zigzag_diagonals(n))
    faces = _pierce(faces, n, ear_apexes(n)[first - 1], minus_v, PIERCE_DIAGONAL["A", first])
    q = ear_apexes(n)[second - 1]
    if n == 3:
        # the first pierce used up one of the two ears of the triangle
        q = ears(from_faces(pi(n), faces))[0]
    faces = _pierce(faces, n, q, plus_v, PIERCE_DIAGONAL["B", second])
    return from_faces(pi(n), faces)


_FAMILY = re.compile(r"^(Z|A|B|star|fan):(\d+)(?::([+-]|minus|plus|\d+))?$")


def parse_family(text):
    """Build a triangulation from ``Z:n``, ``A:n:+``, ``B:n:-``, ``star:n:u`` or ``fan:n:apex``."""
    m = _FAMILY.match(text.strip())
    if not m:
        raise InvalidSpec("parse", f"cannot parse family {text!r}")
    kind, n, arg = m.group(1), int(m.group(2)), m.group(3)
    if kind == "Z":
        if arg is not None:
            raise InvalidSpec("parse", f"Z takes no argument: {text!r}")
        return zigzag(n)
    if arg is None:
        raise InvalidSpec("parse", f"{kind} needs an argument: {text!r}")
    if kind in ("A", "B"):
        if arg.isdigit():
            raise InvalidSpec("parse", f"{kind} needs a sign: {text!r}")
        return (a_triangulation if kind == "A" else b_triangulation)(n, arg)
    if not arg.isdigit():
        raise InvalidSpec("parse", f"{kind} needs a vertex index: {text!r}")
    return (gamma_star if kind == "star" else polygon_fan)(n, int(arg))
