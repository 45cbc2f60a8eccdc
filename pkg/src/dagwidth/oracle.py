"""Brute-force reference answers for small graphs.

These deliberately avoid the flow machinery: width comes from either a
branch-and-bound search for the largest antichain or from a maximum matching on
the transitive closure, and one-way cuts are enumerated exhaustively.
"""

from __future__ import annotations

from collections import deque

from .errors import TooLargeError
from .flow import FlowView
from .graph import Dag

SUBSET_LIMIT = 20
MATCHING_LIMIT = 500
OWCUT_LIMIT = 10


class ClosureMatrix:
    """Strict reachability: ``reaches(u, u)`` is False."""

    def __init__(self, n: int, rows: list[int]):
        self.n = n
        self.rows = rows  # rows[u] has bit v set iff u reaches v

    def reaches(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def matrix(self) -> list[list[bool]]:
        return [[self.reaches(u, v) for v in range(self.n)] for u in range(self.n)]

    def comparable(self, u: int, v: int) -> bool:
        return self.reaches(u, v) or self.reaches(v, u)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ClosureMatrix) and self.n == other.n and self.rows == other.rows

    def __repr__(self) -> str:
        return f"ClosureMatrix(n={self.n})"


def closure(g: Dag) -> ClosureMatrix:
    rows = [0] * g.n
    for u in reversed(g.topo):
        r = 0
        for v in g.out_adj[u]:
            r |= rows[v] | (1 << v)
        rows[u] = r
    return ClosureMatrix(g.n, rows)


def _width_subset(g: Dag) -> int:
    cl = closure(g)
    n = g.n
    comp = [cl.rows[v] for v in range(n)]
    for u in range(n):
        r = cl.rows[u]
        while r:
            low = r & -r
            comp[low.bit_length() - 1] |= 1 << u
            r ^= low
    best = 0

    def grow(cands: int, size: int) -> None:
        nonlocal best
        if size + bin(cands).count("1") <= best:
            return
        if not cands:
            best = size
            return
        low = cands & -cands
        v = low.bit_length() - 1
        grow(cands & ~comp[v] & ~low, size + 1)
        grow(cands & ~low, size)

    grow((1 << n) - 1, 0)
    return best


def _max_matching(n: int, adj: list[list[int]]) -> int:
    """Hopcroft-Karp on the bipartite graph left ``u`` -> right ``adj[u]``."""
    INF = n + 1
    match_l = [-1] * n
    match_r = [-1] * n
    dist = [0] * n

    def bfs() -> bool:
        q = deque()
        for u in range(n):
            if match_l[u] == -1:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u: int) -> bool:
        # iterative augmenting search along the layered graph
        stack = [(u, iter(adj[u]))]
        path = []
        while stack:
            x, it = stack[-1]
            advanced = False
            for v in it:
                w = match_r[v]
                if w == -1:
                    path.append((x, v))
                    for a, b in path:
                        match_l[a] = b
                        match_r[b] = a
                    return True
                if dist[w] == dist[x] + 1:
                    path.append((x, v))
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                dist[x] = INF
                stack.pop()
                if path:
                    path.pop()
        return False

    size = 0
    while bfs():
        for u in range(n):
            if match_l[u] == -1 and dfs(u):
                size += 1
    return size


def _width_matching(g: Dag) -> int:
    cl = closure(g)
    adj = []
    for u in range(g.n):
        r = cl.rows[u]
        row = []
        while r:
            low = r & -r
            row.append(low.bit_length() - 1)
            r ^= low
        adj.append(row)
    return g.n - _max_matching(g.n, adj)


def brute_width(g: Dag, mode: str = "auto") -> int:
    """Width of ``g``; ``mode`` is ``"subset"``, ``"matching"`` or ``"auto"``."""
    if mode == "auto":
        mode = "subset" if g.n <= SUBSET_LIMIT else "matching"
    if mode == "subset":
        if g.n > SUBSET_LIMIT:
            raise TooLargeError(f"subset search limited to {SUBSET_LIMIT} vertices, got {g.n}")
        return _width_subset(g)
    if mode == "matching":
        if g.n > MATCHING_LIMIT:
            raise TooLargeError(f"matching oracle limited to {MATCHING_LIMIT} vertices, got {g.n}")
        return _width_matching(g)
    raise ValueError(f"unknown mode {mode!r}")


def enumerate_owcuts(fv: FlowView | Dag) -> int:
    """Largest demand of a one-way cut of the split network, by exhaustive search.

    A vertex either has both split copies on the sink side (state 0), only its
    in-copy on the source side (state 1, its demand-1 edge crosses) or both on
    the source side (state 2). The other split is impossible because the split
    edge would run from the sink side back. Edge ``(u, v)`` forbids ``v_in`` on
    the source side while ``u_out`` is on the sink side.
    """
    g = fv.base if isinstance(fv, FlowView) else fv
    if g.n > OWCUT_LIMIT:
        raise TooLargeError(f"cut enumeration limited to {OWCUT_LIMIT} vertices, got {g.n}")
    order = g.topo
    state = [0] * g.n
    best = 0

    def assign(i: int) -> None:
        nonlocal best
        if i == len(order):
            ones = state.count(1)
            best = max(best, ones)
            return
        v = order[i]
        allowed_src = all(state[u] == 2 for u in g.in_adj[v])
        for s in (0, 1, 2):
            if s and not allowed_src:
                break
            state[v] = s
            assign(i + 1)
        state[v] = 0

    assign(0)
    return best
