"""Path covers stored as doubly linked cell chains.

A *cell* is one occurrence of a vertex in one path. Paths are chains of cells
linked through ``nxt``/``prv``. An occurrence of edge ``(u, v)`` is identified by
its *target* cell (the ``v`` cell whose predecessor is a ``u`` cell); swapping the
successors of two cells of the same vertex keeps every such identification
valid, which is what makes splicing constant time per exchange.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import MissingEdgeError
from .graph import Dag, Edge

NIL = -1


class PathCover:
    """A multiset of vertex paths over vertices ``0..n-1``.

    ``len(pc)`` is the number of paths. Multiplicities are kept incrementally in
    ``succ[u][v]``, an insertion-ordered set of target cells, so
    ``multiplicity(u, v) == len(succ[u][v])`` and an edge with multiplicity zero
    has no entry at all.
    """

    def __init__(self, n: int):
        self.n = n
        self.vert: list[int] = []
        self.nxt: list[int] = []
        self.prv: list[int] = []
        self.pid: list[int] = []
        self._free: list[int] = []
        self.cells_of: list[dict[int, None]] = [{} for _ in range(n)]
        self.succ: list[dict[int, dict[int, None]]] = [{} for _ in range(n)]
        self.heads: dict[int, None] = {}
        self.tails: dict[int, None] = {}
        self.tails_at: list[dict[int, None]] = [{} for _ in range(n)]

    # -- construction ----------------------------------------------------

    @classmethod
    def from_paths(cls, n: int, paths: Iterable[Sequence[int]]) -> "PathCover":
        pc = cls(n)
        for p in paths:
            pc.add_path(p)
        return pc

    def add_path(self, path: Sequence[int], pid: int | None = None) -> int:
        """Append a path and return its head cell."""
        if len(path) == 0:
            raise ValueError("paths must be non-empty")
        if pid is None:
            pid = len(self.heads)
        head = prev = self.new_cell(path[0], pid)
        for v in path[1:]:
            c = self.new_cell(v, pid)
            self.link(prev, c)
            prev = c
        return head

    def copy(self) -> "PathCover":
        pc = PathCover.__new__(PathCover)
        pc.n = self.n
        pc.vert = self.vert[:]
        pc.nxt = self.nxt[:]
        pc.prv = self.prv[:]
        pc.pid = self.pid[:]
        pc._free = self._free[:]
        pc.cells_of = [dict(d) for d in self.cells_of]
        pc.succ = [{v: dict(cs) for v, cs in d.items()} for d in self.succ]
        pc.heads = dict(self.heads)
        pc.tails = dict(self.tails)
        pc.tails_at = [dict(d) for d in self.tails_at]
        return pc

    # -- cell primitives -------------------------------------------------

    def new_cell(self, v: int, pid: int = -1) -> int:
        """Create an isolated cell (a one-vertex path) for vertex ``v``."""
        if self._free:
            c = self._free.pop()
            self.vert[c] = v
            self.nxt[c] = NIL
            self.prv[c] = NIL
            self.pid[c] = pid
        else:
            c = len(self.vert)
            self.vert.append(v)
            self.nxt.append(NIL)
            self.prv.append(NIL)
            self.pid.append(pid)
        self.cells_of[v][c] = None
        self.heads[c] = None
        self.tails[c] = None
        self.tails_at[v][c] = None
        return c

    def free_cell(self, c: int) -> None:
        """Delete an isolated cell."""
        assert self.nxt[c] == NIL and self.prv[c] == NIL
        v = self.vert[c]
        del self.cells_of[v][c]
        del self.heads[c]
        del self.tails[c]
        del self.tails_at[v][c]
        self.vert[c] = NIL
        self._free.append(c)

    def link(self, a: int, b: int) -> None:
        """Make ``b`` (a head) the successor of ``a`` (a tail)."""
        u, v = self.vert[a], self.vert[b]
        self.nxt[a] = b
        self.prv[b] = a
        d = self.succ[u]
        occ = d.get(v)
        if occ is None:
            d[v] = {b: None}
        else:
            occ[b] = None
        del self.heads[b]
        del self.tails[a]
        del self.tails_at[u][a]

    def unlink(self, a: int) -> int:
        """Cut the chain after ``a``; returns the former successor, now a head."""
        b = self.nxt[a]
        u, v = self.vert[a], self.vert[b]
        d = self.succ[u]
        occ = d[v]
        del occ[b]
        if not occ:
            del d[v]
        self.nxt[a] = NIL
        self.prv[b] = NIL
        self.heads[b] = None
        self.tails[a] = None
        self.tails_at[u][a] = None
        return b

    def swap_next(self, a: int, b: int) -> None:
        """Exchange the suffixes after two distinct cells of the same vertex."""
        nxt, prv = self.nxt, self.prv
        na, nb = nxt[a], nxt[b]
        nxt[a] = nb
        nxt[b] = na
        if nb != NIL:
            prv[nb] = a
        if na != NIL:
            prv[na] = b
        if (na == NIL) != (nb == NIL):
            ta = self.tails_at[self.vert[a]]
            old, new = (a, b) if na == NIL else (b, a)
            del self.tails[old]
            del ta[old]
            self.tails[new] = None
            ta[new] = None

    def occurrence(self, u: int, v: int) -> int:
        """Target cell of the first recorded occurrence of edge ``(u, v)``."""
        occ = self.succ[u].get(v)
        if not occ:
            raise MissingEdgeError((u, v))
        return next(iter(occ))

    # -- queries ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self.heads)

    @property
    def size(self) -> int:
        return len(self.heads)

    def multiplicity(self, u: int, v: int) -> int:
        if not (0 <= u < self.n):
            return 0
        occ = self.succ[u].get(v)
        return len(occ) if occ else 0

    def mu_map(self) -> dict[Edge, int]:
        return {(u, v): len(cs) for u, d in enumerate(self.succ) for v, cs in d.items()}

    def support(self) -> list[Edge]:
        return [(u, v) for u, d in enumerate(self.succ) for v in d]

    def support_size(self) -> int:
        return sum(len(d) for d in self.succ)

    def phi(self) -> int:
        """Sum of squared edge multiplicities."""
        return sum(len(cs) ** 2 for d in self.succ for cs in d.values())

    def through(self, v: int) -> int:
        """Number of paths containing ``v`` (the flow on its split edge)."""
        return len(self.cells_of[v])

    def path_of(self, v: int) -> int | None:
        cells = self.cells_of[v]
        if not cells:
            return None
        return self.pid[next(iter(cells))]

    def chain(self, head: int) -> Iterator[int]:
        c = head
        nxt = self.nxt
        while c != NIL:
            yield c
            c = nxt[c]

    def paths(self) -> list[list[int]]:
        vert = self.vert
        return [[vert[c] for c in self.chain(h)] for h in self.heads]

    def sorted_paths(self) -> list[list[int]]:
        return sorted(self.paths())

    def restamp(self) -> None:
        """Give every path a fresh id ``0..t-1`` (in head order) on all of its cells."""
        pid = self.pid
        for i, h in enumerate(self.heads):
            for c in self.chain(h):
                pid[c] = i

    # -- splicing --------------------------------------------------------

    def splice_along(self, d: Sequence[int]) -> tuple[int, int]:
        """Reconnect paths so one of them contains ``d`` as a contiguous subpath.

        Every edge of ``d`` must have positive multiplicity. Multiplicities and the
        number of paths are unchanged; path ids may become stale. Returns the
        first and last cells of ``d`` inside the host path. Runs in ``O(len(d))``.
        """
        if len(d) < 2:
            raise ValueError("splice_along needs a proper path (at least one edge)")
        succ = self.succ
        for i in range(len(d) - 1):
            if not succ[d[i]].get(d[i + 1]):
                raise MissingEdgeError((d[i], d[i + 1]))
        nxt, prv, vert = self.nxt, self.prv, self.vert
        first = next(iter(succ[d[0]][d[1]]))
        cur = first
        for i in range(2, len(d)):
            y = d[i]
            nc = nxt[cur]
            if nc != NIL and vert[nc] == y:
                cur = nc
                continue
            target = next(iter(succ[d[i - 1]][y]))
            self.swap_next(cur, prv[target])
            cur = target
        return prv[first], cur


def multiplicity(pc: PathCover, e: Edge) -> int:
    return pc.multiplicity(e[0], e[1])


def splice_along(pc: PathCover, d: Sequence[int]) -> PathCover:
    pc.splice_along(d)
    return pc


@dataclass
class CoverReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def verify_cover(g: Dag, pc: PathCover | Sequence[Sequence[int]], check_ids: bool = True,
                 required: Iterable[int] | None = None) -> CoverReport:
    """Check a cover against ``g``: coverage, path edges, multiplicity index and path ids.

    Plain lists of paths are accepted too; then only coverage and edges are checked.
    ``required`` restricts the coverage check to the given vertices.
    """
    rep = CoverReport()
    bad = rep.violations
    edge_set = g.edge_set()
    covered = [False] * g.n
    if isinstance(pc, PathCover):
        if pc.n != g.n:
            bad.append(f"cover is over {pc.n} vertices, graph has {g.n}")
            return rep
        paths: list[list[int]] = []
        cell_paths: list[list[int]] = []
        budget = len(pc.vert) + 1
        for h in pc.heads:
            if pc.prv[h] != NIL:
                bad.append(f"head cell {h} has a predecessor")
            cells = []
            c = h
            while c != NIL and len(cells) <= budget:
                cells.append(c)
                c = pc.nxt[c]
            if c != NIL:
                bad.append(f"chain from head cell {h} does not terminate")
                return rep
            cell_paths.append(cells)
            paths.append([pc.vert[c] for c in cells])
    else:
        paths = [list(p) for p in pc]
        cell_paths = []

    counts: dict[Edge, int] = {}
    for i, p in enumerate(paths):
        if not p:
            bad.append(f"path {i} is empty")
            continue
        for v in p:
            if not 0 <= v < g.n:
                bad.append(f"path {i} has out-of-range vertex {v}")
                return rep
            covered[v] = True
        for a, b in zip(p, p[1:]):
            if (a, b) not in edge_set:
                bad.append(f"path {i} uses non-edge ({a}, {b})")
            counts[(a, b)] = counts.get((a, b), 0) + 1
    for v in (range(g.n) if required is None else required):
        if not covered[v]:
            bad.append(f"vertex {v} uncovered")

    if isinstance(pc, PathCover):
        mu = pc.mu_map()
        if mu != counts:
            diff = sorted(set(mu.items()) ^ set(counts.items()))[:3]
            bad.append(f"multiplicity index disagrees with paths: {diff}")
        live = sum(len(cs) for cs in cell_paths)
        if live != sum(len(d) for d in pc.cells_of):
            bad.append("per-vertex cell index disagrees with paths")
        ntails = sum(1 for cs in cell_paths if cs)
        if len(pc.tails) != ntails or any(cs[-1] not in pc.tails for cs in cell_paths):
            bad.append("tail index disagrees with paths")
        if check_ids:
            stamp_of_path: dict[int, int] = {}
            for i, cells in enumerate(cell_paths):
                stamps = {pc.pid[c] for c in cells}
                if len(stamps) != 1:
                    bad.append(f"path {i} carries mixed ids {sorted(stamps)}")
                    continue
                s = stamps.pop()
                if s in stamp_of_path:
                    bad.append(f"paths {stamp_of_path[s]} and {i} share id {s}")
                stamp_of_path[s] = i
    return rep
