"""Rewrite a path cover so that it uses fewer than ``2|V|`` distinct edges.

Look at the support of the cover as an undirected simple graph. A vertex is
red when it touches at least three support edges, blue otherwise; an edge is
red when both ends are red. Around a cycle of red edges, each edge either
agrees with the walking direction (forward) or not (backward). Moving one
unit of every path off the backward edges and onto the forward ones keeps
every vertex covered and the path count fixed, so repeating it until a
backward edge is unused deletes that edge. Once no red cycle is left the red
edges form a forest and a counting argument bounds the support below ``2|V|``.

Each round raises the sum of squared multiplicities by at least the cycle
length when the cheaper side is the one emptied, which bounds the total work.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .cover import PathCover
from .errors import InvalidCycleError, InvariantViolation
from .graph import Dag, build_dag

BLUE, RED, PURPLE = "blue", "red", "purple"


class ColoredSupport:
    """Undirected view of a cover's support with lazily derived colours.

    Each vertex keeps its support neighbours in a list whose first ``live[v]``
    entries are still unprocessed by the cycle search; processing an entry swaps
    it behind that boundary.
    """

    def __init__(self, pc: PathCover):
        self.pc = pc
        self.n = pc.n
        self.adj: list[list[int]] = [[] for _ in range(pc.n)]
        self.pos: dict[tuple[int, int], int] = {}
        for u, v in pc.support():
            self._add(u, v)
            self._add(v, u)
        self.live = [len(a) for a in self.adj]

    def _add(self, a: int, b: int) -> None:
        self.pos[(a, b)] = len(self.adj[a])
        self.adj[a].append(b)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def red(self, v: int) -> bool:
        return len(self.adj[v]) >= 3

    def color(self, v: int) -> str:
        return RED if self.red(v) else BLUE

    def edge_color(self, u: int, v: int) -> str:
        ru, rv = self.red(u), self.red(v)
        return RED if ru and rv else BLUE if not (ru or rv) else PURPLE

    def directed(self, u: int, v: int) -> tuple[int, int]:
        """The orientation in which the pair ``{u, v}`` appears in the support."""
        return (u, v) if self.pc.multiplicity(u, v) else (v, u)

    def num_edges(self) -> int:
        return len(self.pos) // 2

    def _swap(self, a: int, i: int, j: int) -> None:
        if i == j:
            return
        lst = self.adj[a]
        lst[i], lst[j] = lst[j], lst[i]
        self.pos[(a, lst[i])] = i
        self.pos[(a, lst[j])] = j

    def mark_processed(self, a: int, b: int) -> None:
        i = self.pos[(a, b)]
        if i < self.live[a]:
            self.live[a] -= 1
            self._swap(a, i, self.live[a])

    def remove_edge(self, u: int, v: int) -> None:
        for a, b in ((u, v), (v, u)):
            i = self.pos[(a, b)]
            if i < self.live[a]:
                self.live[a] -= 1
                self._swap(a, i, self.live[a])
                i = self.live[a]
            self._swap(a, i, len(self.adj[a]) - 1)
            self.adj[a].pop()
            del self.pos[(a, b)]


@dataclass
class RedCycle:
    """Closed walk ``vertices[0] .. vertices[-1], vertices[0]`` in the undirected support."""

    vertices: list[int]
    forward: list[tuple[int, int]]
    backward: list[tuple[int, int]]

    @classmethod
    def from_vertices(cls, cs: ColoredSupport, vertices: list[int]) -> "RedCycle":
        if len(vertices) < 3 or len(set(vertices)) != len(vertices):
            raise InvalidCycleError(f"not a simple cycle: {vertices}")
        fwd, bwd = [], []
        pc = cs.pc
        for i, a in enumerate(vertices):
            b = vertices[(i + 1) % len(vertices)]
            if not (cs.red(a) and cs.red(b)):
                raise InvalidCycleError(f"edge {{{a}, {b}}} is not red")
            if pc.multiplicity(a, b):
                fwd.append((a, b))
            elif pc.multiplicity(b, a):
                bwd.append((b, a))
            else:
                raise InvalidCycleError(f"{{{a}, {b}}} is not a support edge")
        return cls(list(vertices), fwd, bwd)

    def __len__(self) -> int:
        return len(self.vertices)

    def reversed(self) -> "RedCycle":
        vs = [self.vertices[0]] + self.vertices[:0:-1]
        return RedCycle(vs, list(self.backward), list(self.forward))


class CycleSearch:
    """Depth-first search for red cycles that can resume after each splice.

    Edges are marked processed once they are known to be useless (not red, or
    leading into a finished subtree). When a cycle is spliced, the stack is cut
    back to the cycle's lowest vertex without marking the cycle edges; cut
    vertices become unvisited again and are remembered as extra roots.
    """

    def __init__(self, cs: ColoredSupport):
        n = cs.n
        self.cs = cs
        self.state = [0] * n  # 0 unvisited, 1 on stack, 2 finished
        self.parent = [-1] * n
        self.where = [-1] * n
        self.stack: list[int] = []
        self.next_root = 0
        self.pending: list[int] = []
        self.edge_scans = 0

    def _root(self) -> int | None:
        cs, state = self.cs, self.state
        while self.next_root < cs.n:
            r = self.next_root
            self.next_root += 1
            if state[r] == 0 and cs.red(r):
                return r
        while self.pending:
            r = self.pending.pop()
            if state[r] == 0 and cs.red(r):
                return r
        return None

    def _push(self, v: int, parent: int) -> None:
        self.state[v] = 1
        self.parent[v] = parent
        self.where[v] = len(self.stack)
        self.stack.append(v)

    def next(self) -> RedCycle | None:
        cs, state, stack = self.cs, self.state, self.stack
        while True:
            if not stack:
                r = self._root()
                if r is None:
                    return None
                self._push(r, -1)
            v = stack[-1]
            adj, live = cs.adj[v], cs.live
            while True:
                k = 0
                if k < live[v] and adj[k] == self.parent[v]:
                    k = 1
                if k >= live[v]:
                    state[v] = 2
                    stack.pop()
                    self.where[v] = -1
                    break
                w = adj[k]
                self.edge_scans += 1
                if not (cs.red(v) and cs.red(w)) or state[w] == 2:
                    cs.mark_processed(v, w)
                    continue
                if state[w] == 0:
                    self._push(w, v)
                    break
                return RedCycle.from_vertices(cs, stack[self.where[w]:])

    def resolved(self, cycle: RedCycle) -> None:
        """Unwind the stack after ``cycle`` (found by :meth:`next`) was spliced."""
        base = self.where[cycle.vertices[0]]
        for x in self.stack[base + 1:]:
            self.state[x] = 0
            self.where[x] = -1
            self.pending.append(x)
        del self.stack[base + 1:]
        w = self.stack[-1]
        if not self.cs.red(w):
            self.state[w] = 0
            self.where[w] = -1
            self.stack.pop()


def find_red_cycle(cs: ColoredSupport, dfs_state: CycleSearch | None = None) -> RedCycle | None:
    """Next red cycle of ``cs``; pass the same ``dfs_state`` to resume a search."""
    return (dfs_state or CycleSearch(cs)).next()


def _rotate_to_runs(vertices: list[int], backward_step: list[bool]) -> tuple[list[int], list[bool]]:
    # start at a step that is backward and preceded by a forward step
    l = len(vertices)
    for i in range(l):
        if backward_step[i] and not backward_step[i - 1]:
            return vertices[i:] + vertices[:i], backward_step[i:] + backward_step[:i]
    raise InvalidCycleError("cycle has no forward or no backward edge")


def _one_round(pc: PathCover, verts: list[int], back: list[bool]) -> None:
    """Shift one unit of flow from the backward steps to the forward steps."""
    l = len(verts)
    runs: list[tuple[bool, int, int]] = []  # (is_backward, first step, last step + 1)
    i = 0
    while i < l:
        j = i
        while j < l and back[j] == back[i]:
            j += 1
        runs.append((back[i], i, j))
        i = j
    cuts: list[tuple[int, int]] = []
    for is_back, a, b in runs:
        if is_back:
            # steps a..b-1 walk backward, so the directed path runs verts[b] -> verts[a]
            d = [verts[x % l] for x in range(b, a - 1, -1)]
            cuts.append(pc.splice_along(d))
    for start, end in cuts:
        cur = pc.unlink(start)
        while cur != end:
            nx = pc.unlink(cur)
            pc.free_cell(cur)
            cur = nx
    # runs alternate backward, forward, ...; the forward run after cut r leads from
    # the start of cut r to the end of cut r + 1
    fwd_runs = [(a, b) for is_back, a, b in runs if not is_back]
    for r, (a, b) in enumerate(fwd_runs):
        prev = cuts[r][0]
        for x in range(a + 1, b):
            c = pc.new_cell(verts[x % l])
            pc.link(prev, c)
            prev = c
        pc.link(prev, cuts[(r + 1) % len(cuts)][1])


def splice_cycle(cs: ColoredSupport, pc: PathCover, c: RedCycle,
                 on_round: Callable[[PathCover, RedCycle], None] | None = None) -> tuple[ColoredSupport, PathCover]:
    """Empty the cheaper side of ``c`` until one of its edges leaves the support.

    Backward edges are emptied when their total multiplicity does not exceed the
    forward total, otherwise the cycle is walked the other way round.
    """
    if not c.forward or not c.backward:
        raise InvalidCycleError("a red cycle needs both forward and backward edges")
    for u, v in c.forward + c.backward:
        if not pc.multiplicity(u, v):
            raise InvalidCycleError(f"edge ({u}, {v}) is not in the support")
    sf = sum(pc.multiplicity(u, v) for u, v in c.forward)
    sb = sum(pc.multiplicity(u, v) for u, v in c.backward)
    cyc = c if sf >= sb else c.reversed()
    verts = cyc.vertices
    l = len(verts)
    back = [not pc.multiplicity(verts[i], verts[(i + 1) % l]) for i in range(l)]
    verts, back = _rotate_to_runs(verts, back)
    rounds = min(pc.multiplicity(u, v) for u, v in cyc.backward)
    for _ in range(rounds):
        _one_round(pc, verts, back)
        if on_round is not None:
            on_round(pc, cyc)
    for u, v in cyc.backward:
        if not pc.multiplicity(u, v):
            cs.remove_edge(u, v)
    return cs, pc


def support_report(cs: ColoredSupport) -> list[str]:
    """Check the end state: red edges form a forest and fewer than ``2|V|`` edges remain."""
    bad = []
    n = cs.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b) in cs.pos:
        if a < b and cs.red(a) and cs.red(b):
            ra, rb = find(a), find(b)
            if ra == rb:
                bad.append(f"red edges still contain a cycle through {{{a}, {b}}}")
                break
            parent[ra] = rb
    if n and cs.num_edges() >= 2 * n:
        bad.append(f"support has {cs.num_edges()} edges, not below 2*{n}")
    return bad


def sparsify_support(g: Dag, pc: PathCover, on_round: Callable[[PathCover, RedCycle], None] | None = None,
                     inplace: bool = False) -> PathCover:
    """Equal-size cover of ``g`` whose support has fewer than ``2|V|`` edges.

    Works on a copy unless ``inplace`` is set. ``on_round`` is called after
    every unit shift with the cover and the cycle in its emptied orientation.
    """
    if not inplace:
        pc = pc.copy()
    cs = ColoredSupport(pc)
    search = CycleSearch(cs)
    while True:
        cyc = search.next()
        if cyc is None:
            break
        splice_cycle(cs, pc, cyc, on_round)
        search.resolved(cyc)
    bad = support_report(cs)
    if bad:
        raise InvariantViolation("; ".join(bad))
    pc.restamp()
    return pc


def width_preserving_subgraph(g: Dag, solver: str = "progressive") -> Dag:
    """Spanning subgraph with fewer than ``2|V|`` edges and the same width."""
    if solver == "progressive":
        from .progressive import solve_progressive
        mpc = solve_progressive(g)
    elif solver == "dnc":
        from .dnc import solve_dnc
        mpc = solve_dnc(g).cover
    else:
        raise ValueError(f"unknown solver {solver!r}")
    out = sparsify_support(g, mpc, inplace=True)
    return build_dag(g.n, out.support())
