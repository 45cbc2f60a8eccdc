"""Immutable DAG representation, topological ordering, interval subgraphs and
instance generators."""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CycleError, ParamError, SelfLoopError, VertexRangeError

Edge = tuple[int, int]


class Dag:
    """A directed acyclic graph over vertices ``0..n-1`` with a fixed topological order.

    Instances are immutable after construction; build them with :func:`build_dag`.
    ``topo`` lists vertices in topological order and ``topo_pos`` is its inverse.
    """

    __slots__ = ("n", "edges", "out_adj", "in_adj", "topo", "topo_pos", "_arrays")

    def __init__(self, n: int, edges: list[Edge], out_adj, in_adj, topo: list[int], topo_pos: list[int]):
        self.n = n
        self.edges = edges
        self.out_adj = out_adj
        self.in_adj = in_adj
        self.topo = topo
        self.topo_pos = topo_pos
        self._arrays = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Dag(n={self.n}, m={self.m})"

    def has_edge(self, u: int, v: int) -> bool:
        # adjacency lists are short in practice; callers needing bulk lookups build a set
        return v in self.out_adj[u]

    def edge_set(self) -> set[Edge]:
        return set(self.edges)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Edges as two int64 arrays of topological *positions* (src, dst), src < dst."""
        if self._arrays is None:
            pos = np.asarray(self.topo_pos, dtype=np.int64)
            if self.edges:
                e = np.asarray(self.edges, dtype=np.int64)
                src, dst = pos[e[:, 0]], pos[e[:, 1]]
            else:
                src = dst = np.zeros(0, dtype=np.int64)
            self._arrays = (src, dst)
        return self._arrays

    def verify_topo(self) -> bool:
        pos = self.topo_pos
        if sorted(self.topo) != list(range(self.n)):
            return False
        return all(pos[u] < pos[v] for u, v in self.edges)


def build_dag(n: int, edge_list: Iterable[Sequence[int]]) -> Dag:
    """Validate ``edge_list`` and build a :class:`Dag`.

    Duplicate edges are dropped (first occurrence wins). The topological order is
    Kahn's algorithm with the smallest-index zero-indegree vertex taken first, so
    it is reproducible.
    """
    if n < 0:
        raise ParamError("vertex count must be non-negative")
    seen: set[Edge] = set()
    edges: list[Edge] = []
    out_adj: list[list[int]] = [[] for _ in range(n)]
    in_adj: list[list[int]] = [[] for _ in range(n)]
    for pair in edge_list:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise SelfLoopError(u)
        if (u, v) in seen:
            continue
        seen.add((u, v))
        edges.append((u, v))
        out_adj[u].append(v)
        in_adj[v].append(u)

    indeg = [len(a) for a in in_adj]
    heap = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(heap)
    topo: list[int] = []
    while heap:
        u = heapq.heappop(heap)
        topo.append(u)
        for v in out_adj[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    if len(topo) < n:
        raise CycleError(_witness_cycle(n, in_adj, indeg))

    topo_pos = [0] * n
    for i, v in enumerate(topo):
        topo_pos[v] = i
    return Dag(n, edges, out_adj, in_adj, topo, topo_pos)


def _witness_cycle(n: int, in_adj: list[list[int]], indeg: list[int]) -> list[int]:
    # Every vertex left by Kahn's algorithm has a predecessor that was also left,
    # so walking predecessors must close a cycle.
    left = [v for v in range(n) if indeg[v] > 0]
    alive = set(left)
    order: dict[int, int] = {}
    walk: list[int] = []
    v = left[0]
    while v not in order:
        order[v] = len(walk)
        walk.append(v)
        v = next(u for u in in_adj[v] if u in alive)
    cyc = walk[order[v]:]
    cyc.reverse()
    k = cyc.index(min(cyc))
    cyc = cyc[k:] + cyc[:k]
    return cyc + [cyc[0]]


@dataclass(frozen=True)
class IntervalSubgraph:
    """Subgraph induced by the vertices at topological positions ``lo..hi``.

    ``dag`` uses local ids ``0..hi-lo`` which coincide with local topological
    positions; ``to_global[i]`` maps back to the parent's vertex id.
    """

    parent: Dag
    lo: int
    hi: int
    dag: Dag = field(repr=False)
    to_global: list[int] = field(repr=False)

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def to_local(self, v: int) -> int:
        p = self.parent.topo_pos[v]
        if not self.lo <= p <= self.hi:
            raise VertexRangeError(f"vertex {v} is outside positions {self.lo}..{self.hi}")
        return p - self.lo

    def global_edges(self) -> list[Edge]:
        g = self.to_global
        return [(g[u], g[v]) for u, v in self.dag.edges]


def interval_subgraph(g: Dag, lo: int, hi: int) -> IntervalSubgraph:
    if not (0 <= lo <= hi < g.n):
        raise VertexRangeError(f"interval {lo}..{hi} invalid for n={g.n}")
    verts = g.topo[lo:hi + 1]
    pos = g.topo_pos
    local: list[Edge] = []
    for u in verts:
        pu = pos[u] - lo
        for v in g.out_adj[u]:
            pv = pos[v]
            if pv <= hi:
                local.append((pu, pv - lo))
    size = hi - lo + 1
    out_adj: list[list[int]] = [[] for _ in range(size)]
    in_adj: list[list[int]] = [[] for _ in range(size)]
    for u, v in local:
        out_adj[u].append(v)
        in_adj[v].append(u)
    ident = list(range(size))
    sub = Dag(size, local, out_adj, in_adj, ident, list(ident))
    return IntervalSubgraph(g, lo, hi, sub, verts)


# --- generators -------------------------------------------------------------

def random_dag(n: int, m: int, seed: int) -> Dag:
    """``m`` distinct random pairs, oriented along a random permutation of the vertices."""
    if n < 0 or m < 0:
        raise ParamError("random family needs n >= 0 and m >= 0")
    total = n * (n - 1) // 2
    if m > total:
        raise ParamError(f"m={m} exceeds n(n-1)/2={total}")
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    if 2 * m <= total:
        chosen: set[Edge] = set()
        while len(chosen) < m:
            i, j = rng.randrange(n), rng.randrange(n)
            if i != j:
                chosen.add((i, j) if i < j else (j, i))
        pairs = sorted(chosen)
    else:
        allpairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        pairs = sorted(rng.sample(allpairs, m))
    return build_dag(n, [(perm[i], perm[j]) for i, j in pairs])


def layered_dag(width: int, layers: int, seed: int, cross: int | None = None) -> Dag:
    """``width`` vertex-disjoint chains of length ``layers`` plus random forward cross edges.

    Vertex ``l * width + c`` is the ``l``-th vertex of chain ``c``. Cross edges jump
    one to three layers ahead. ``cross`` defaults to ``3 * width * layers`` so the
    total edge count is about four times the vertex count. The chains give a cover
    of size ``width``; the true width may be smaller.
    """
    if width < 1 or layers < 1:
        raise ParamError("layered family needs width >= 1 and layers >= 1")
    n = width * layers
    if cross is None:
        cross = 3 * n
    if cross < 0:
        raise ParamError("cross edge count must be non-negative")
    rng = random.Random(seed)
    edges: list[Edge] = []
    for l in range(layers - 1):
        base = l * width
        for c in range(width):
            edges.append((base + c, base + width + c))
    chain = set(edges)
    capacity = sum(min(3, layers - 1 - l) for l in range(layers)) * width * width - len(chain)
    cross = min(cross, max(capacity, 0))
    extra: set[Edge] = set()
    while len(extra) < cross:
        l = rng.randrange(layers - 1)
        step = rng.randint(1, min(3, layers - 1 - l))
        e = (l * width + rng.randrange(width), (l + step) * width + rng.randrange(width))
        if e not in chain:
            extra.add(e)
    edges.extend(sorted(extra))
    return build_dag(n, edges)


def tight2(n: int) -> Dag:
    """The family on which a width-preserving sparsification needs ``2 - 4/(n+2)`` edges per vertex.

    There are ``n + 1`` columns of ``n`` pairwise unreachable vertices and ``n``
    hub vertices; hub ``j`` receives an edge from every vertex of column ``j`` and
    sends one to every vertex of column ``j + 1``. So ``|V| = n(n+2)``,
    ``|E| = 2n^2`` and the width is ``n``; every cover with ``n`` paths uses every edge.
    """
    if n < 1:
        raise ParamError("tight2 needs n >= 1")
    stride = n + 1

    def col(i: int, j: int) -> int:
        return j * stride + i

    def hub(j: int) -> int:
        return j * stride + n

    edges: list[Edge] = []
    for j in range(n):
        for i in range(n):
            edges.append((col(i, j), hub(j)))
            edges.append((hub(j), col(i, j + 1)))
    return build_dag(n * (n + 2), edges)


def generate(family: str, **params) -> Dag:
    """Dispatch to a generator: ``random(n, m, seed)``, ``layered(width, layers, seed[, cross])``
    or ``tight2(n)``."""
    try:
        if family == "random":
            return random_dag(params["n"], params["m"], params["seed"])
        if family == "layered":
            return layered_dag(params["width"], params["layers"], params["seed"], params.get("cross"))
        if family == "tight2":
            return tight2(params["n"])
    except KeyError as exc:
        raise ParamError(f"family {family!r} missing parameter {exc.args[0]!r}") from None
    raise ParamError(f"unknown family {family!r}")
