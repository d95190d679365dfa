"""Exhaustive exploration of modular flip-graphs.

Nodes are canonical codes; each node keeps one representative triangulation
in canonical form so that expansion never decodes a code.  Graphs are built
layer by layer; within a layer the newly discovered codes are sorted before
they receive indices, which makes node numbering independent of the number
of workers.
"""

from __future__ import annotations

import gzip
import hashlib
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .canon import canonical_code, canonical_form
from .errors import BudgetExceeded, FlipmodError, SpecMismatch
from .flip import FlipSequence, flip, flippable_arcs, path_from_triangulations
from .surface import TopologySpec
from .trimap import Triangulation, validate

log = logging.getLogger(__name__)

DEFAULT_MAX_NODES = 2_000_000


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value else default


@dataclass
class Budget:
    max_nodes: int = field(default_factory=lambda: _env_int("FLIPMOD_MAX_NODES", DEFAULT_MAX_NODES))
    max_memory_mb: int = field(default_factory=lambda: _env_int("FLIPMOD_MAX_MEMORY_MB", 0))

    def check(self, nodes):
        if nodes > self.max_nodes:
            raise BudgetExceeded(f"{nodes} nodes exceeds the budget of {self.max_nodes}")
        if self.max_memory_mb:
            import psutil

            rss = psutil.Process().memory_info().rss / 2**20
            if rss > self.max_memory_mb:
                raise BudgetExceeded(f"resident memory {rss:.0f} MiB exceeds {self.max_memory_mb} MiB")


def _expand(rep):
    """Canonical neighbours of one representative: list of (code, canonical rep)."""
    out = []
    for e in flippable_arcs(rep):
        R = flip(rep, e)[0]
        out.append((canonical_code(R), canonical_form(R)))
    return out


def _expand_chunk(reps):
    return [_expand(r) for r in reps]


class FlipGraph:
    """The explored modular flip-graph of one ``(spec, n)``."""

    def __init__(self, spec, nodes, reps, adj, meta=None):
        self.spec = spec
        self.nodes = list(nodes)
        self.reps = list(reps)
        self.adj = [list(a) for a in adj]
        self.meta = dict(meta or {})
        self.index = {c: i for i, c in enumerate(self.nodes)}
        self._csr = None

    @property
    def n(self):
        return self.spec.n

    def __len__(self):
        return len(self.nodes)

    def __repr__(self):
        return f"FlipGraph(n={self.n}, nodes={len(self.nodes)}, edges={self.num_edges})"

    @property
    def num_edges(self):
        return sum(len(a) for a in self.adj) // 2

    def degrees(self):
        return [len(a) for a in self.adj]

    def node_of(self, T):
        if T.spec != self.spec:
            raise SpecMismatch("triangulation belongs to another surface")
        return self.index[canonical_code(T)]

    def csr(self):
        if self._csr is None:
            rows = np.repeat(np.arange(len(self.adj)), [len(a) for a in self.adj])
            cols = np.fromiter((j for a in self.adj for j in a), dtype=np.int64, count=len(rows))
            data = np.ones(len(rows), dtype=np.int8)
            self._csr = csr_matrix((data, (rows, cols)), shape=(len(self.adj),) * 2)
        return self._csr

    def bfs(self, source):
        """Distances from ``source`` to every node, as an int array."""
        if len(self.nodes) == 1:
            return np.zeros(1, dtype=np.int64)
        dist = shortest_path(self.csr(), method="D", unweighted=True, indices=source)
        if np.isinf(dist).any():
            raise FlipmodError("flip-graph is disconnected")
        return dist.astype(np.int64)

    def bfs_python(self, source):
        dist = [-1] * len(self.adj)
        dist[source] = 0
        frontier = [source]
        while frontier:
            nxt = []
            for u in frontier:
                du = dist[u] + 1
                for w in self.adj[u]:
                    if dist[w] < 0:
                        dist[w] = du
                        nxt.append(w)
            frontier = nxt
        return dist

    def distance(self, U, V):
        return int(self.bfs(self.node_of(U))[self.node_of(V)])

    def shortest_path_nodes(self, s, t):
        parent = {s: None}
        frontier = [s]
        while frontier and t not in parent:
            nxt = []
            for u in frontier:
                for w in self.adj[u]:
                    if w not in parent:
                        parent[w] = u
                        nxt.append(w)
            frontier = nxt
        path = [t]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        return path[::-1]

    def geodesic(self, U, V):
        """A witness FlipSequence from ``U`` to ``V`` along a shortest path."""
        nodes = self.shortest_path_nodes(self.node_of(U), self.node_of(V))
        return path_from_triangulations([U] + [self.reps[i] for i in nodes[1:]])

    def to_json(self):
        return {
            "spec": self.spec.to_json(),
            "n": self.spec.n,
            "nodes": [c.hex() for c in self.nodes],
            "reps": [r.to_json() for r in self.reps],
            "adj": self.adj,
            "meta": self.meta,
        }


def build_graph(spec, n=None, seed=None, workers=None, budget=None, chunk_size=256):
    """BFS closure of ``seed`` under flips, modulo canonical equivalence."""
    if n is not None and n != spec.n:
        spec = spec.with_n(n)
    if seed is None:
        raise ValueError("a seed triangulation is required")
    if seed.spec != spec:
        raise SpecMismatch("seed does not belong to the requested surface")
    validate(seed)
    budget = budget or Budget()
    workers = workers if workers is not None else _env_int("FLIPMOD_WORKERS", 1)
    t0 = time.perf_counter()

    root = canonical_form(seed)
    nodes = [canonical_code(root)]
    reps = [root]
    index = {nodes[0]: 0}
    adj_codes = []
    frontier = [0]
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while frontier:
            batch = [reps[i] for i in frontier]
            if pool is None:
                expanded = _expand_chunk(batch)
            else:
                chunks = [batch[i : i + chunk_size] for i in range(0, len(batch), chunk_size)]
                expanded = [x for part in pool.map(_expand_chunk, chunks) for x in part]
            fresh = {}
            for u, nbrs in zip(frontier, expanded):
                codes = []
                for c, R in nbrs:
                    codes.append(c)
                    if c not in index and c not in fresh:
                        fresh[c] = R
                adj_codes.append((u, codes))
            frontier = []
            for c in sorted(fresh):
                index[c] = len(nodes)
                frontier.append(len(nodes))
                nodes.append(c)
                reps.append(fresh[c])
            budget.check(len(nodes))
    finally:
        if pool is not None:
            pool.shutdown()

    adj = [set() for _ in nodes]
    for u, codes in adj_codes:
        for c in codes:
            w = index[c]
            if w != u:  # flips within one class are dropped
                adj[u].add(w)
                adj[w].add(u)
    graph = FlipGraph(spec, nodes, reps, [sorted(a) for a in adj], {"seed": canonical_code(seed).hex()})
    graph.build_seconds = time.perf_counter() - t0
    log.info("built %r in %.2fs", graph, graph.build_seconds)
    return graph


def eccentricity(graph, node):
    return int(multi_bfs(graph, [node]).max())


def multi_bfs(graph, sources):
    """Distances from up to 64 sources at once, as an int16 array (sources x nodes).

    Each node carries a 64-bit word whose bit ``i`` records whether source
    ``i`` has reached it; one sparse OR-gather advances every search a level.
    """
    N = len(graph)
    sources = list(sources)
    if len(sources) > 64:
        raise ValueError("at most 64 sources per batch")
    dist = np.full((len(sources), N), -1, dtype=np.int16)
    if N == 1:
        dist[:] = 0
        return dist
    A = graph.csr()
    indptr, indices = A.indptr, A.indices
    visited = np.zeros(N, dtype="<u8")
    for i, s in enumerate(sources):
        visited[s] |= np.uint64(1) << np.uint64(i)
        dist[i, s] = 0
    frontier = visited.copy()
    level = 0
    while True:
        level += 1
        reached = np.bitwise_or.reduceat(frontier[indices], indptr[:-1])
        new = reached & ~visited
        if not new.any():
            break
        visited |= new
        frontier = new
        bits = np.unpackbits(new.view(np.uint8).reshape(N, 8), axis=1, bitorder="little")
        nodes, src = np.nonzero(bits[:, : len(sources)])
        dist[src, nodes] = level
    if (dist < 0).any():
        raise FlipmodError("flip-graph is disconnected")
    return dist


def diameter(graph, batch=64):
    """Exact diameter by eccentricity-bound refinement.

    Every BFS from ``v`` with eccentricity ``e`` gives each node ``w`` the
    bounds ``max(d, e - d) <= ecc(w) <= e + d`` with ``d = d(v, w)``.  Each
    round searches from the candidates with the largest upper bounds and,
    alternately, the smallest lower bounds (likely centres, which tighten
    upper bounds); a node stops being a candidate once its upper bound cannot
    beat the best distance already realised.  Returns ``(diameter, (u, v))``.
    """
    N = len(graph)
    if N == 1:
        return 0, (0, 0)
    lo = np.zeros(N, dtype=np.int64)
    hi = np.full(N, N, dtype=np.int64)
    deg = np.array(graph.degrees(), dtype=np.int64)
    best, pair = -1, (0, 0)
    alive = np.ones(N, dtype=bool)
    sweeps = 0
    size = 1
    pick_high = True
    while alive.any():
        idx = np.flatnonzero(alive)
        if pick_high:
            order = np.lexsort((idx, -deg[idx], -hi[idx]))
        else:
            order = np.lexsort((idx, deg[idx], lo[idx]))
        chosen = [int(v) for v in idx[order[:size]]]
        pick_high = not pick_high
        dists = multi_bfs(graph, chosen)
        sweeps += len(chosen)
        for v, dist in zip(chosen, dists.astype(np.int64)):
            e = int(dist.max())
            if e > best:
                best, pair = e, (v, int(np.argmax(dist)))
            np.maximum(lo, np.maximum(dist, e - dist), out=lo)
            np.minimum(hi, e + dist, out=hi)
            alive[v] = False
        alive &= hi > best
        size = min(batch, 2 * size)
    graph.meta["diameter_sweeps"] = sweeps
    return best, pair


def distance(*args, budget=None, graph=None):
    """Exact flip distance ``d(U, V)`` and a witness path.

    Called as ``distance(U, V)``, ``distance(graph, U, V)`` or
    ``distance(spec, U, V)``.  Uses a prebuilt graph when given, else a
    bidirectional BFS that explores only as much of the modular flip-graph as
    needed.
    """
    if len(args) == 3:
        head, U, V = args
        if isinstance(head, FlipGraph):
            graph = head
        elif isinstance(head, TopologySpec) and (head != U.spec or head != V.spec):
            raise SpecMismatch("triangulations do not belong to the given surface")
    elif len(args) == 2:
        U, V = args
    else:
        raise TypeError("distance takes (U, V) or (graph_or_spec, U, V)")
    if U.spec != V.spec:
        raise SpecMismatch("triangulations belong to different surfaces")
    if graph is not None:
        if graph.spec != U.spec:
            raise SpecMismatch("triangulations do not belong to the graph's surface")
        seq = graph.geodesic(U, V)
        return len(seq), seq
    budget = budget or Budget()
    cu, cv = canonical_code(U), canonical_code(V)
    if cu == cv:
        return 0, FlipSequence(U)
    # parent maps: code -> (parent code, canonical rep)
    side = [{cu: (None, canonical_form(U))}, {cv: (None, canonical_form(V))}]
    frontier = [[cu], [cv]]
    meet = None
    while meet is None:
        if not frontier[0] or not frontier[1]:
            raise FlipmodError("no path found; flip-graph disconnected?")
        s = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        mine, other = side[s], side[1 - s]
        nxt = []
        for c in frontier[s]:
            rep = mine[c][1]
            for c2, R in _expand(rep):
                if c2 in mine:
                    continue
                mine[c2] = (c, R)
                nxt.append(c2)
                if c2 in other and meet is None:
                    meet = c2
        frontier[s] = sorted(nxt)
        budget.check(len(side[0]) + len(side[1]))
        if meet is None:
            hits = [c for c in frontier[s] if c in other]
            if hits:
                meet = hits[0]
    chain = []
    c = meet
    while c is not None:
        chain.append(side[0][c][1])
        c = side[0][c][0]
    chain.reverse()
    c = side[1][meet][0]
    while c is not None:
        chain.append(side[1][c][1])
        c = side[1][c][0]
    seq = path_from_triangulations([U] + chain[1:-1] + [V]) if len(chain) > 1 else FlipSequence(U)
    return len(seq), seq


def save(graph, path):
    data = json.dumps(graph.to_json(), sort_keys=True, separators=(",", ":")).encode()
    try:
        if str(path).endswith(".gz"):
            with open(path, "wb") as fh:
                with gzip.GzipFile(fileobj=fh, mode="wb", mtime=0, filename="") as gz:
                    gz.write(data)
        else:
            with open(path, "wb") as fh:
                fh.write(data)
    except OSError as exc:
        raise OSError(f"cannot write graph to {path}: {exc}") from exc


def load(path, spec=None):
    try:
        if str(path).endswith(".gz"):
            with gzip.open(path, "rb") as fh:
                obj = json.loads(fh.read())
        else:
            with open(path, "rb") as fh:
                obj = json.loads(fh.read())
    except OSError as exc:
        raise OSError(f"cannot read graph from {path}: {exc}") from exc
    file_spec = TopologySpec.from_json(obj["spec"])
    if file_spec.n != obj["n"]:
        raise SpecMismatch(f"{path}: spec says n={file_spec.n} but graph says n={obj['n']}")
    if spec is not None and spec != file_spec:
        raise SpecMismatch(f"{path} holds a graph of {file_spec.to_json()}")
    nodes = [bytes.fromhex(h) for h in obj["nodes"]]
    reps = [Triangulation.from_json(file_spec, r) for r in obj["reps"]]
    return FlipGraph(file_spec, nodes, reps, obj["adj"], obj.get("meta"))


def export_dot(graph, path, prefix=8):
    """Write an undirected DOT file.

    Canonical codes all begin with the same root dart, so labels use a hex
    prefix of a digest of the code; the full code is kept as an attribute.
    """
    lines = ["graph MF {"]
    for i, c in enumerate(graph.nodes):
        label = hashlib.blake2b(c, digest_size=8).hexdigest()[:prefix]
        lines.append(f'  {i} [label="{label}", code="{c.hex()}"];')
    for u, nbrs in enumerate(graph.adj):
        for w in nbrs:
            if u < w:
                lines.append(f"  {u} -- {w};")
    lines.append("}")
    try:
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write DOT to {path}: {exc}") from exc
