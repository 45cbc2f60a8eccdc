"""Divide-and-conquer minimum path cover.

The topological order is split in half recursively. Each half returns a
minimum path cover of a transitive sparsification of itself. To combine, the
two sparsified halves and the edges crossing between them form a
sparsification of the whole interval, which is sparsified once more with the
union of the two covers (at most ``t_l + t_r`` in-edges per vertex) and then
shrunk to a minimum cover. Every shrink starts from at most twice the width,
so it needs at most ``width`` decrementing paths.

Work happens on topological positions, so every interval is a contiguous id
range and the array kernels in :mod:`dagwidth._backend` do the heavy lifting.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .cover import PathCover
from .errors import InvariantViolation, ParamError
from .graph import Dag, build_dag

I64 = np.int64
DEFAULT_LEAF = 16


@dataclass
class Piece:
    """Solution of one interval, in global topological positions."""

    src: np.ndarray
    dst: np.ndarray
    flat: np.ndarray
    off: np.ndarray

    @property
    def npaths(self) -> int:
        return len(self.off) - 1


@dataclass
class DncResult:
    """``cover`` is a minimum path cover of both ``sparse`` and the input graph."""

    g: Dag
    cover: PathCover
    sparse_edges: list[tuple[int, int]]
    stats: dict = field(default_factory=dict)
    _sparse: Dag | None = field(default=None, repr=False)

    @property
    def width(self) -> int:
        return len(self.cover)

    @property
    def sparse(self) -> Dag:
        if self._sparse is None:
            self._sparse = build_dag(self.g.n, self.sparse_edges)
        return self._sparse


def _node_edges(n: int, src: np.ndarray, dst: np.ndarray, leaf_size: int) -> dict[tuple[int, int], tuple[np.ndarray, np.ndarray]]:
    """Group edges by the recursion node where they first cross the midpoint.

    Edges inside a leaf interval are assigned to that leaf.
    """
    m = len(src)
    lo = np.zeros(m, dtype=I64)
    hi = np.full(m, n - 1, dtype=I64)
    active = np.arange(m)
    while active.size:
        l, h = lo[active], hi[active]
        a, b = src[active], dst[active]
        mid = (l + h) // 2
        here = (h - l + 1 <= leaf_size) | ((a <= mid) & (b > mid))
        rest = ~here
        go_left = b[rest] <= mid[rest]
        moved = active[rest]
        hi[moved[go_left]] = mid[rest][go_left]
        lo[moved[~go_left]] = mid[rest][~go_left] + 1
        active = moved
    key = lo * n + hi
    order = np.argsort(key, kind="stable")
    key, s_src, s_dst = key[order], src[order], dst[order]
    cuts = np.flatnonzero(np.diff(key)) + 1
    groups: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}
    for ks, ss, ds in zip(np.split(key, cuts), np.split(s_src, cuts), np.split(s_dst, cuts)):
        if len(ks):
            k = int(ks[0])
            groups[(k // n, k % n)] = (ss, ds)
    return groups


_EMPTY = np.zeros(0, dtype=I64)


class _Solver:
    def __init__(self, g: Dag, leaf_size: int, backend: str | None):
        if leaf_size < 1:
            raise ParamError("leaf_size must be at least 1")
        self.g = g
        self.n = g.n
        self.leaf_size = leaf_size
        self.k = _backend.get(backend)
        src, dst = g.edge_arrays()
        self.groups = _node_edges(g.n, src, dst, leaf_size) if g.n else {}
        self.combines: list[tuple[int, int, int]] = []  # (|E''|, t_l + t_r, |V_node|)

    def edges_of(self, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
        return self.groups.get((lo, hi), (_EMPTY, _EMPTY))

    def is_leaf(self, lo: int, hi: int) -> bool:
        return hi - lo + 1 <= self.leaf_size

    def leaf(self, lo: int, hi: int) -> Piece:
        size = hi - lo + 1
        src, dst = self.edges_of(lo, hi)
        src, dst = src - lo, dst - lo
        ident = np.arange(size, dtype=I64)
        flat, off = self.k.shrink_paths(size, src, dst, ident, np.arange(size + 1, dtype=I64))
        s2, d2 = self.k.sparsify_edges(size, src, dst, flat, off)
        return Piece(s2 + lo, d2 + lo, flat + lo, off)

    def combine(self, lo: int, hi: int, left: Piece, right: Piece) -> Piece:
        size = hi - lo + 1
        csrc, cdst = self.edges_of(lo, hi)
        src = np.concatenate([left.src, right.src, csrc]) - lo
        dst = np.concatenate([left.dst, right.dst, cdst]) - lo
        flat = np.concatenate([left.flat, right.flat]) - lo
        off = np.concatenate([left.off, right.off[1:] + len(left.flat)])
        t = left.npaths + right.npaths
        s2, d2 = self.k.sparsify_edges(size, src, dst, flat, off)
        self.combines.append((len(s2), t, size))
        if len(s2) > t * size:
            raise InvariantViolation(f"combined sparsification has {len(s2)} edges, bound is {t}*{size}")
        flat2, off2 = self.k.shrink_paths(size, s2, d2, flat, off)
        return Piece(s2 + lo, d2 + lo, flat2 + lo, off2)

    def solve(self, lo: int, hi: int) -> Piece:
        if self.is_leaf(lo, hi):
            return self.leaf(lo, hi)
        mid = (lo + hi) // 2
        return self.combine(lo, hi, self.solve(lo, mid), self.solve(mid + 1, hi))

    def result(self, piece: Piece | None) -> DncResult:
        g = self.g
        if piece is None:
            return DncResult(g, PathCover(0), [], self.stats())
        topo = np.asarray(g.topo, dtype=I64)
        flat = topo[piece.flat].tolist()
        off = piece.off.tolist()
        cover = PathCover.from_paths(g.n, [flat[off[i]:off[i + 1]] for i in range(len(off) - 1)])
        edges = list(zip(topo[piece.src].tolist(), topo[piece.dst].tolist()))
        return DncResult(g, cover, edges, self.stats())

    def stats(self) -> dict:
        worst = max((e / (t * v) for e, t, v in self.combines), default=0.0)
        return {"combines": len(self.combines), "max_edge_ratio": worst}


def solve_dnc(g: Dag, leaf_size: int = DEFAULT_LEAF, backend: str | None = None) -> DncResult:
    """Minimum path cover by recursive halving of the topological order.

    Intervals of at most ``leaf_size`` vertices are solved directly by shrinking
    the one-path-per-vertex cover; ``leaf_size=1`` recurses down to single vertices.
    """
    sv = _Solver(g, leaf_size, backend)
    return sv.result(sv.solve(0, g.n - 1) if g.n else None)


def solve_dnc_parallel(g: Dag, workers: int, leaf_size: int = DEFAULT_LEAF, backend: str | None = None) -> DncResult:
    """Same result contract as :func:`solve_dnc`, with subproblems run on a thread pool.

    Intervals smaller than ``n / workers`` are solved as independent tasks; the
    combines above them then run level by level, all combines of one level
    concurrently.
    """
    if workers < 1:
        raise ParamError("workers must be at least 1")
    sv = _Solver(g, leaf_size, backend)
    if g.n == 0:
        return sv.result(None)
    cutoff = g.n / workers
    tasks: list[tuple[int, int]] = []
    levels: list[list[tuple[int, int]]] = []
    frontier = [(0, g.n - 1)]
    while frontier:
        internal = []
        nxt = []
        for lo, hi in frontier:
            if hi - lo + 1 < cutoff or sv.is_leaf(lo, hi):
                tasks.append((lo, hi))
            else:
                internal.append((lo, hi))
                mid = (lo + hi) // 2
                nxt += [(lo, mid), (mid + 1, hi)]
        if internal:
            levels.append(internal)
        frontier = nxt

    done: dict[tuple[int, int], Piece] = {}
    with ThreadPoolExecutor(max_workers=workers) as ex:
        for node, piece in zip(tasks, ex.map(lambda nd: sv.solve(*nd), tasks)):
            done[node] = piece
        for internal in reversed(levels):
            def run(nd):
                lo, hi = nd
                mid = (lo + hi) // 2
                return sv.combine(lo, hi, done[(lo, mid)], done[(mid + 1, hi)])
            for node, piece in zip(internal, ex.map(run, internal)):
                done[node] = piece
    return sv.result(done[(0, g.n - 1)])
