"""Minimum flow with demands for path covers.

Every base vertex ``v`` is split into ``v_in = 2v`` and ``v_out = 2v + 1`` joined by
an edge of demand 1; a base edge ``(u, v)`` becomes ``(u_out, v_in)``; the source
``s = 2n`` feeds every ``v_in`` and every ``v_out`` drains into ``t = 2n + 1``.
Split vertices are virtual, only flow values are stored.

The residual network holds the reverse of every edge plus every edge whose
flow exceeds its demand. An s-t path in it is a *decrementing path*: pushing one
unit back along it lowers the flow value by one while keeping all demands met.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .cover import PathCover, verify_cover
from .errors import (InvalidCoverError, MalformedDecrementError, NotAFlowError,
                     StaleResidualError)
from .graph import Dag

DIRECT = "direct"
REVERSE = "reverse"


def v_in(v: int) -> int:
    return 2 * v


def v_out(v: int) -> int:
    return 2 * v + 1


@dataclass(frozen=True)
class ResidualStep:
    kind: str  # DIRECT or REVERSE
    tail: int
    head: int


class FlowView:
    """Flow values of the split network of ``base``.

    ``fnode[v]`` is the flow on ``(v_in, v_out)``, ``fedge[i]`` the flow on the
    split image of ``base.edges[i]``, ``fstart[v]``/``fend[v]`` the flow on
    ``(s, v_in)`` and ``(v_out, t)``.
    """

    def __init__(self, base: Dag, fnode: list[int], fedge: list[int], fstart: list[int], fend: list[int]):
        self.base = base
        self.n = base.n
        self.s = 2 * base.n
        self.t = 2 * base.n + 1
        self.fnode = fnode
        self.fedge = fedge
        self.fstart = fstart
        self.fend = fend
        self.eid = {e: i for i, e in enumerate(base.edges)}
        self.out_e: list[list[tuple[int, int]]] = [[] for _ in range(base.n)]
        self.in_e: list[list[tuple[int, int]]] = [[] for _ in range(base.n)]
        for i, (u, v) in enumerate(base.edges):
            self.out_e[u].append((v, i))
            self.in_e[v].append((u, i))
        for lst in self.out_e:
            lst.sort()
        for lst in self.in_e:
            lst.sort()

    @property
    def size(self) -> int:
        return sum(self.fstart)

    def demand(self, tail: int, head: int) -> int:
        return 1 if tail % 2 == 0 and head == tail + 1 and tail < self.s else 0

    def flow(self, tail: int, head: int) -> int:
        """Flow on an edge of the split network (0 for non-edges)."""
        s, t = self.s, self.t
        if tail == s:
            return self.fstart[head // 2] if head < s and head % 2 == 0 else 0
        if head == t:
            return self.fend[tail // 2] if tail < s and tail % 2 == 1 else 0
        if tail % 2 == 0:
            return self.fnode[tail // 2] if head == tail + 1 else 0
        i = self.eid.get((tail // 2, head // 2)) if head % 2 == 0 else None
        return 0 if i is None else self.fedge[i]

    def is_edge(self, tail: int, head: int) -> bool:
        s, t = self.s, self.t
        if tail == s:
            return head < s and head % 2 == 0
        if head == t:
            return tail < s and tail % 2 == 1
        if tail >= s or head >= s:
            return False
        if tail % 2 == 0:
            return head == tail + 1
        return head % 2 == 0 and (tail // 2, head // 2) in self.eid

    def is_residual(self, step: ResidualStep) -> bool:
        if step.kind == DIRECT:
            return (self.is_edge(step.tail, step.head)
                    and self.flow(step.tail, step.head) > self.demand(step.tail, step.head))
        return self.is_edge(step.head, step.tail)

    def residual_out(self, x: int) -> list[ResidualStep]:
        """Residual steps leaving ``x``, sorted by head. Steps back into ``s`` are omitted."""
        s, t = self.s, self.t
        steps: list[ResidualStep] = []
        if x == t:
            return steps
        if x == s:
            for v in range(self.n):
                if self.fstart[v] > 0:
                    steps.append(ResidualStep(DIRECT, s, 2 * v))
            return steps
        a = x // 2
        if x % 2 == 0:
            if self.fnode[a] > 1:
                steps.append(ResidualStep(DIRECT, x, x + 1))
            for u, _ in self.in_e[a]:
                steps.append(ResidualStep(REVERSE, x, 2 * u + 1))
        else:
            for w, i in self.out_e[a]:
                if self.fedge[i] > 0:
                    steps.append(ResidualStep(DIRECT, x, 2 * w))
            if self.fend[a] > 0:
                steps.append(ResidualStep(DIRECT, x, t))
            steps.append(ResidualStep(REVERSE, x, x - 1))
        steps.sort(key=lambda st: st.head)
        return steps

    def check(self) -> None:
        """Raise :class:`NotAFlowError` unless demands and conservation hold."""
        for v in range(self.n):
            if self.fnode[v] < 1:
                raise NotAFlowError(f"vertex {v} carries flow {self.fnode[v]} below its demand")
            inflow = self.fstart[v] + sum(self.fedge[i] for _, i in self.in_e[v])
            outflow = self.fend[v] + sum(self.fedge[i] for _, i in self.out_e[v])
            if inflow != self.fnode[v] or outflow != self.fnode[v]:
                raise NotAFlowError(f"conservation fails at vertex {v}")
        if min(self.fedge, default=0) < 0 or min(self.fstart, default=0) < 0 or min(self.fend, default=0) < 0:
            raise NotAFlowError("negative flow value")


def lift(g: Dag, pc: PathCover | Sequence[Sequence[int]]) -> FlowView:
    """The flow induced by a path cover: every path becomes one unit of s-t flow."""
    rep = verify_cover(g, pc, check_ids=False)
    if not rep.ok:
        raise InvalidCoverError(rep.violations)
    paths = pc.paths() if isinstance(pc, PathCover) else pc
    n = g.n
    fnode, fstart, fend = [0] * n, [0] * n, [0] * n
    fedge = [0] * g.m
    eid = {e: i for i, e in enumerate(g.edges)}
    for p in paths:
        fstart[p[0]] += 1
        fend[p[-1]] += 1
        for v in p:
            fnode[v] += 1
        for e in zip(p, p[1:]):
            fedge[eid[e]] += 1
    return FlowView(g, fnode, fedge, fstart, fend)


def find_decrementing_path(fv: FlowView) -> list[ResidualStep] | None:
    """Breadth-first search for an s-t path in the residual network."""
    s, t = fv.s, fv.t
    parent: dict[int, ResidualStep] = {}
    seen = {s}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        for step in fv.residual_out(x):
            y = step.head
            if y in seen:
                continue
            seen.add(y)
            parent[y] = step
            if y == t:
                path = []
                while y != s:
                    st = parent[y]
                    path.append(st)
                    y = st.tail
                path.reverse()
                return path
            queue.append(y)
    return None


def residual_reachable(fv: FlowView) -> set[int]:
    """Split vertices reachable from ``s`` in the residual network."""
    s = fv.s
    seen = {s}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        for step in fv.residual_out(x):
            if step.head not in seen:
                seen.add(step.head)
                queue.append(step.head)
    return seen


def _bump(fv: FlowView, tail: int, head: int, delta: int) -> None:
    s, t = fv.s, fv.t
    if tail == s:
        fv.fstart[head // 2] += delta
    elif head == t:
        fv.fend[tail // 2] += delta
    elif tail % 2 == 0:
        fv.fnode[tail // 2] += delta
    else:
        fv.fedge[fv.eid[(tail // 2, head // 2)]] += delta


def apply_decrementing(fv: FlowView, p: Sequence[ResidualStep]) -> FlowView:
    """Push one unit back along ``p``; the flow value drops by one."""
    if not p or p[0].tail != fv.s or p[-1].head != fv.t:
        raise MalformedDecrementError("a decrementing path must run from s to t")
    for a, b in zip(p, p[1:]):
        if a.head != b.tail:
            raise MalformedDecrementError(f"steps {a} and {b} do not connect")
    heads = [st.head for st in p]
    if len(set(heads)) != len(heads):
        raise MalformedDecrementError("decrementing path repeats a vertex")
    for st in p:
        if not fv.is_residual(st):
            raise StaleResidualError(f"{st} is not residual under the current flow")
    for st in p:
        if st.kind == DIRECT:
            _bump(fv, st.tail, st.head, -1)
        else:
            _bump(fv, st.head, st.tail, +1)
    return fv


def decompose(fv: FlowView) -> PathCover:
    """Split the flow into ``|f|`` base paths, always following the smallest-index
    out-neighbour that still carries flow before finishing at ``t``."""
    fv.check()
    n = fv.n
    fedge = fv.fedge[:]
    fend = fv.fend[:]
    ptr = [0] * n
    out_e = fv.out_e
    paths: list[list[int]] = []
    for v0 in range(n):
        for _ in range(fv.fstart[v0]):
            path = [v0]
            v = v0
            while True:
                lst = out_e[v]
                k = ptr[v]
                while k < len(lst) and fedge[lst[k][1]] == 0:
                    k += 1
                ptr[v] = k
                if k < len(lst):
                    w, i = lst[k]
                    fedge[i] -= 1
                    path.append(w)
                    v = w
                else:
                    fend[v] -= 1
                    break
            paths.append(path)
    return PathCover.from_paths(n, paths)


def shrink(fv: FlowView) -> PathCover:
    """Apply decrementing paths until none is left, then decompose the minimum flow."""
    while True:
        p = find_decrementing_path(fv)
        if p is None:
            break
        apply_decrementing(fv, p)
    return decompose(fv)


def shrink_cover(g: Dag, pc: PathCover | Sequence[Sequence[int]] | None = None) -> PathCover:
    """Minimum path cover of ``g`` by shrinking ``pc`` (default: one path per vertex)."""
    if pc is None:
        pc = [[v] for v in range(g.n)]
    return shrink(lift(g, pc))
