"""Transitive sparsification driven by a path cover.

For a target vertex ``v`` only the latest in-neighbour on each path needs to keep
its edge: an earlier in-neighbour ``u`` on the same path reaches the latest one
along the path, which reaches ``v``. Keeping one edge per (vertex, path) pair
bounds the edge count by ``t * |V|`` without changing reachability.
"""

from __future__ import annotations

from typing import Callable, Iterable

from .cover import PathCover
from .errors import NotASubgraphError
from .graph import Dag, Edge, IntervalSubgraph, build_dag


class SurvivorTable:
    """One slot per path holding the latest in-neighbour seen on that path.

    An absent slot stands for "no in-neighbour yet". Slots are keyed by path id,
    so ids need not be dense.
    """

    __slots__ = ("slots", "rank")

    def __init__(self, rank: Callable[[int], int] | list[int]):
        self.slots: dict[int, int] = {}
        self.rank = rank.__getitem__ if isinstance(rank, list) else rank

    def offer(self, path: int, u: int) -> None:
        cur = self.slots.get(path)
        if cur is None or self.rank(u) > self.rank(cur):
            self.slots[path] = u

    def force(self, path: int, u: int) -> None:
        self.slots[path] = u

    def survivors(self) -> list[int]:
        return list(dict.fromkeys(self.slots.values()))

    def __len__(self) -> int:
        return len(self.slots)


def sparsify_incoming(g: Dag, pc: PathCover, v: int, in_neighbors: Iterable[int] | None = None) -> list[Edge]:
    """Surviving in-edges of ``v``: at most one per path of ``pc``.

    ``in_neighbors`` defaults to ``g.in_adj[v]``; every one of them must lie on
    some path of ``pc``.
    """
    table = SurvivorTable(g.topo_pos)
    path_of = pc.path_of
    for u in (g.in_adj[v] if in_neighbors is None else in_neighbors):
        table.offer(path_of(u), u)
    return [(u, v) for u in table.survivors()]


def sparsify_all(g: Dag, pc: PathCover) -> Dag:
    """Transitive sparsification of ``g`` with at most ``len(pc) * n`` edges.

    Slots are first filled from the cover's own edges, which therefore all
    survive; then every edge of ``g`` is offered to the slot of its tail's path.
    """
    n = g.n
    pos = g.topo_pos
    # number the paths locally so stale ids in pc cannot matter
    path_of = [-1] * n
    slots: list[dict[int, int]] = [{} for _ in range(n)]
    nxt, vert = pc.nxt, pc.vert
    for i, h in enumerate(pc.heads):
        c = h
        path_of[vert[c]] = i
        while nxt[c] != -1:
            d = nxt[c]
            slots[vert[d]][i] = vert[c]
            path_of[vert[d]] = i
            c = d
    for u, v in g.edges:
        p = path_of[u]
        sl = slots[v]
        cur = sl.get(p)
        if cur is None or pos[u] > pos[cur]:
            sl[p] = u
    edges = [(u, v) for v in range(n) for u in dict.fromkeys(slots[v].values())]
    return build_dag(n, edges)


def merge_sparsification(g: Dag, sub: IntervalSubgraph, sub_sparse: Dag) -> Dag:
    """Replace the edges of ``sub`` inside ``g`` by those of ``sub_sparse``.

    ``sub_sparse`` uses the local ids of ``sub`` and must be a spanning subgraph
    of it.
    """
    if sub.parent is not g and sub.parent.edges != g.edges:
        raise NotASubgraphError("interval subgraph belongs to a different graph")
    if sub_sparse.n != sub.size:
        raise NotASubgraphError(f"sparsified graph has {sub_sparse.n} vertices, interval has {sub.size}")
    local = sub.dag.edge_set()
    keep = sub_sparse.edge_set()
    extra = keep - local
    if extra:
        raise NotASubgraphError(f"edges {sorted(extra)[:3]} are not in the interval subgraph")
    tg = sub.to_global
    dropped = {(tg[u], tg[v]) for u, v in local - keep}
    return build_dag(g.n, [e for e in g.edges if e not in dropped])
