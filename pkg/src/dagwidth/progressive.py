"""Vertex-by-vertex minimum path cover with level-guided residual search.

Vertices are admitted in topological order. Before admission the new vertex's
in-edges are thinned to one per cover path. The new vertex starts as its own
path; a decrementing path in the residual network then shows whether it can be
absorbed by the existing paths.

Every split vertex carries a level. Residual edges never climb levels, the
last split edge of every path climbs, and the number of paths whose last
vertex sits at level ``>= l`` strictly decreases in ``l``. The search
therefore works through one queue per level, highest level first, and only the
region it touches needs new levels afterwards. Layers are merged when two
consecutive path counts become equal.

Levels are stored per *layer object* with a union-find over objects, so
merging two layers is constant work no matter how many vertices they hold.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cover import NIL, PathCover, verify_cover
from .errors import InvariantViolation, MalformedDecrementError, MissingEdgeError
from .graph import Dag, build_dag
from .sparsify import sparsify_incoming


class LevelAssignment:
    """Levels of split vertices ``2v`` (in) and ``2v + 1`` (out).

    ``counts[l]`` for ``l >= 1`` is the number of paths whose level (the level of
    their last out-vertex) is at least ``l``; ``counts[0]`` is unused.
    """

    def __init__(self, n: int):
        self.obj = [-1] * (2 * n)
        self.up = [0]
        self.order = [0]
        self.level_of = [0]
        self.counts = [0]
        self.merges = 0

    @property
    def top(self) -> int:
        """Highest level in use (``L``)."""
        return len(self.order) - 1

    def level(self, x: int) -> int:
        o = self.obj[x]
        up = self.up
        if up[o] != o:
            r = o
            while up[r] != r:
                r = up[r]
            while up[o] != r:
                up[o], o = r, up[o]
            self.obj[x] = r
            o = r
        return self.level_of[o]

    def set(self, x: int, l: int) -> None:
        while l >= len(self.order):
            o = len(self.up)
            self.up.append(o)
            self.level_of.append(len(self.order))
            self.order.append(o)
        self.obj[x] = self.order[l]

    def bump(self, l: int) -> None:
        if l == len(self.counts):
            self.counts.append(1)
        else:
            self.counts[l] += 1

    def merge(self, l: int) -> None:
        """Lower every level ``>= l`` by one (layers ``l - 1`` and ``l`` become one)."""
        self.up[self.order[l]] = self.order[l - 1]
        del self.order[l]
        for j in range(l, len(self.order)):
            self.level_of[self.order[j]] = j
        del self.counts[l]
        self.merges += 1

    def as_dict(self, admitted: list[int]) -> dict[int, int]:
        return {x: self.level(x) for v in admitted for x in (2 * v, 2 * v + 1)}


@dataclass
class SearchResult:
    path: list[int] | None
    l_min: int
    visited: list[int]


@dataclass
class ProgressiveStats:
    steps: int = 0
    found: int = 0
    charges: int = 0
    merges: int = 0
    max_visited: int = 0
    per_step: list[int] = field(default_factory=list, repr=False)


class ProgressiveState:
    def __init__(self, g: Dag):
        n = g.n
        self.g = g
        self.pc = PathCover(n)
        self.levels = LevelAssignment(n)
        self.sin: list[list[int]] = [[] for _ in range(n)]
        self.admitted: list[int] = []
        self.stamp = 0
        self.seen = [0] * (2 * n)
        self.parent = [0] * (2 * n)
        self.stats = ProgressiveStats()

    @property
    def ends(self) -> set[int]:
        """Out-vertices where some path ends."""
        return {2 * v + 1 for v in self.admitted if self.pc.tails_at[v]}

    def sparse_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in self.admitted for u in self.sin[v]]


def admit_vertex(st: ProgressiveState, v: int) -> ProgressiveState:
    pc = st.pc
    st.sin[v] = [u for u, _ in sparsify_incoming(st.g, pc, v)]
    pc.new_cell(v, len(pc))
    st.admitted.append(v)
    res = layered_search(st, v)
    found = res.path is not None
    if found:
        splice_decrementing(st, res.path)
    update_levels(st, v, res.l_min, res.visited, found)
    s = st.stats
    s.steps += 1
    s.found += found
    s.charges += len(res.visited)
    s.max_visited = max(s.max_visited, len(res.visited))
    s.per_step.append(len(res.visited))
    return st


def layered_search(st: ProgressiveState, v: int) -> SearchResult:
    """Search for a decrementing path that starts ``s -> v_in``.

    Returns the path as split-vertex ids ``[s, v_in, ..., a_out, t]`` (or None),
    the lowest level visited (0 if nothing was visited) and the visited
    split vertices.
    """
    st.stamp += 1
    stamp = st.stamp
    seen, par = st.seen, st.parent
    levels = st.levels
    lev = levels.level
    pc = st.pc
    succ, cells_of, tails_at = pc.succ, pc.cells_of, pc.tails_at
    sin = st.sin
    top = levels.top
    queues: list[list[int]] = [[] for _ in range(top + 1)]
    vin = 2 * v
    for u in sin[v]:
        x = 2 * u + 1
        if seen[x] != stamp:
            seen[x] = stamp
            par[x] = vin
            queues[lev(x)].append(x)

    visited: list[int] = []
    l_min = 0
    found = -1
    for j in range(top, -1, -1):
        q = queues[j]
        i = 0
        while i < len(q):
            x = q[i]
            i += 1
            visited.append(x)
            l_min = j
            a = x >> 1
            if x & 1:
                if tails_at[a]:
                    found = x
                    break
                nbrs = [2 * b for b in succ[a]]
                nbrs.append(x - 1)
            else:
                nbrs = [2 * u + 1 for u in sin[a]]
                if len(cells_of[a]) > 1:
                    nbrs.append(x + 1)
            for y in nbrs:
                if seen[y] != stamp:
                    seen[y] = stamp
                    par[y] = x
                    ly = lev(y)
                    if ly > j:
                        raise InvariantViolation(f"residual edge {x}->{y} climbs from level {j} to {ly}")
                    queues[ly].append(y)
        if found >= 0:
            break

    if found < 0:
        return SearchResult(None, l_min, visited)
    n = st.g.n
    path = [2 * n + 1]
    x = found
    while x != vin:
        path.append(x)
        x = par[x]
    path += [vin, 2 * n]
    path.reverse()
    return SearchResult(path, l_min, visited)


def splice_decrementing(st: ProgressiveState, d: list[int]) -> ProgressiveState:
    """Rewrite the cover along decrementing path ``d`` (split-vertex ids).

    Reverse stretches of ``d`` become new path pieces, stretches that follow
    flow are cut out of the path that :meth:`PathCover.splice_along` makes
    contain them, and the pieces are joined across stretch boundaries. The
    number of paths drops by one.
    """
    pc = st.pc
    n = st.g.n
    S, T = 2 * n, 2 * n + 1
    if len(d) < 4 or d[0] != S or d[-1] != T or d[1] >= S or d[1] & 1:
        raise MalformedDecrementError("decrementing path must look like s, v_in, ..., a_out, t")
    v = d[1] >> 1
    if len(pc.cells_of[v]) != 1:
        raise MalformedDecrementError(f"vertex {v} is not a fresh single-vertex path")
    frag = next(iter(pc.cells_of[v]))
    i = 1
    try:
        while True:
            # stretch against the flow, starting at the in-vertex d[i]
            while True:
                x, y = d[i], d[i + 1]
                if not y & 1 or y == x + 1:
                    raise MalformedDecrementError(f"expected a reverse step out of {x}, got {y}")
                u = y >> 1
                if d[i + 2] == y - 1:
                    c = pc.new_cell(u)
                    pc.link(c, frag)
                    frag = c
                    i += 2
                    continue
                break
            i += 1
            # stretch along the flow, starting at the out-vertex d[i]
            seq = [d[i] >> 1]
            j = i + 1
            final = False
            while True:
                w = d[j]
                if w == T:
                    final = True
                    break
                if w & 1 or w >= S:
                    raise MalformedDecrementError(f"unexpected vertex {w} after an out-vertex")
                seq.append(w >> 1)
                if d[j + 1] == w + 1:
                    j += 2
                    if j >= len(d):
                        raise MalformedDecrementError("path ends inside a forward stretch")
                    continue
                break
            if final:
                _splice_final(pc, seq, frag)
                return st
            first, last = pc.splice_along(seq)
            cur = pc.unlink(first)
            while cur != last:
                nx = pc.unlink(cur)
                pc.free_cell(cur)
                cur = nx
            pc.link(first, frag)
            frag = last
            i = j
    except (IndexError, MissingEdgeError) as exc:
        raise MalformedDecrementError(f"decrementing path does not fit the cover: {exc}") from None


def _splice_final(pc: PathCover, seq: list[int], frag: int) -> None:
    c = seq[0]
    if len(seq) == 1:
        if not pc.tails_at[c]:
            raise MalformedDecrementError(f"no path ends at {c}")
        pc.link(next(iter(pc.tails_at[c])), frag)
        return
    last_v = seq[-1]
    if not pc.tails_at[last_v]:
        raise MalformedDecrementError(f"no path ends at {last_v}")
    first, last = pc.splice_along(seq)
    if pc.nxt[last] != NIL:
        pc.swap_next(last, next(iter(pc.tails_at[last_v])))
    cur = pc.unlink(first)
    while True:
        nx = pc.nxt[cur]
        if nx != NIL:
            pc.unlink(cur)
        pc.free_cell(cur)
        if cur == last:
            break
        cur = nx
    pc.link(first, frag)


def update_levels(st: ProgressiveState, v: int, l_min: int, visited: list[int], found: bool) -> ProgressiveState:
    levels = st.levels
    for x in visited:
        levels.set(x, l_min)
    levels.set(2 * v, l_min)
    levels.set(2 * v + 1, l_min + 1)
    if found:
        _repair_path_ids(st, l_min)
        levels.bump(l_min + 1)
    else:
        # the new single-vertex path has level l_min + 1, no other path changed
        for j in range(1, l_min + 2):
            levels.bump(j)
    counts = levels.counts
    if l_min >= 1 and counts[l_min] == counts[l_min + 1]:
        levels.merge(l_min)
    return st


def _repair_path_ids(st: ProgressiveState, l: int) -> None:
    """Restamp path ids after splicing.

    Splicing only rewired cells at levels ``>= l``, and levels never decrease
    along a path, so the low prefix of each path is an untouched prefix of an
    old path whose id it keeps.
    """
    pc = st.pc
    lev = st.levels.level
    prv, nxt, vert, pid = pc.prv, pc.nxt, pc.vert, pc.pid
    used: set[int] = set()
    fresh: list[int] = []
    for tail in pc.tails:
        c = tail
        head = tail
        while c != NIL and lev(2 * vert[c]) >= l:
            head = c
            c = prv[c]
        if c == NIL:
            fresh.append(head)
            continue
        p = pid[c]
        used.add(p)
        c = nxt[c]
        while c != NIL:
            pid[c] = p
            c = nxt[c]
    if fresh:
        free = (i for i in range(len(pc)) if i not in used)
        for head in fresh:
            p = next(free)
            c = head
            while c != NIL:
                pid[c] = p
                c = nxt[c]


def check_invariants(st: ProgressiveState) -> None:
    """Raise :class:`InvariantViolation` unless every level invariant holds.

    Checks: residual edges never climb; each path's last split edge climbs;
    per-level path counts strictly decrease, match the maintained counters and
    leave no level ``1..L`` empty; residual out-degrees stay within ``|P| + 1``;
    each level cut is a minimum one-way cut of the paths at that level or
    above; the cover is valid with consistent ids and admits no decrementing
    path.
    """
    pc = st.pc
    lev = st.levels.level
    t = len(pc)
    bad: list[str] = []

    admitted = st.admitted
    adm = set(admitted)
    sub_edges = st.sparse_edges()
    # cover validity over the admitted prefix
    for p in pc.paths():
        for a in p:
            if a not in adm:
                bad.append(f"path uses unadmitted vertex {a}")
    sub_succ: dict[int, set[int]] = {}
    for u, v in sub_edges:
        sub_succ.setdefault(u, set()).add(v)
    for u, d in enumerate(pc.succ):
        for v in d:
            if v not in sub_succ.get(u, ()):
                bad.append(f"cover uses edge ({u}, {v}) missing from the sparsified graph")
    rep = verify_cover(_prefix_view(st), pc, required=admitted) if not bad else None
    if rep is not None and not rep.ok:
        bad += rep.violations

    # residual edges (excluding s and t)
    def residual_out(x: int) -> list[int]:
        a = x >> 1
        if x & 1:
            return [2 * b for b in pc.succ[a]] + [x - 1]
        out = [2 * u + 1 for u in st.sin[a]]
        if len(pc.cells_of[a]) > 1:
            out.append(x + 1)
        return out

    for a in admitted:
        for x in (2 * a, 2 * a + 1):
            outs = residual_out(x)
            deg = len(outs) + (1 if x & 1 and pc.tails_at[a] else 0)
            if deg > t + 1:
                bad.append(f"split vertex {x} has residual out-degree {deg} > {t + 1}")
            lx = lev(x)
            for y in outs:
                if lev(y) > lx:
                    bad.append(f"residual edge {x}->{y} climbs from {lx} to {lev(y)}")

    # last split edge of every path climbs; path levels
    path_levels = []
    for tail in pc.tails:
        a = pc.vert[tail]
        if not lev(2 * a) < lev(2 * a + 1):
            bad.append(f"last split edge of a path at vertex {a} does not climb")
        path_levels.append(lev(2 * a + 1))
    top = max((lev(x) for a in admitted for x in (2 * a, 2 * a + 1)), default=0)
    counts = [0] * (top + 2)
    for pl in path_levels:
        for l in range(1, pl + 1):
            counts[l] += 1
    for l in range(1, top):
        if not counts[l] > counts[l + 1]:
            bad.append(f"path counts not strictly decreasing at level {l}: {counts[1:top + 1]}")
    if counts[1:top + 1] != st.levels.counts[1:]:
        bad.append(f"maintained counts {st.levels.counts[1:]} differ from actual {counts[1:top + 1]}")
    if top != st.levels.top:
        bad.append(f"maximum level {top} differs from tracked {st.levels.top}")
    present = {lev(x) for a in admitted for x in (2 * a, 2 * a + 1)}
    for l in range(1, top + 1):
        if l not in present:
            bad.append(f"layer {l} is empty")

    bad += _level_cut_violations(st, sub_edges)
    if _has_decrementing_path(st):
        bad.append("cover is not minimum: a decrementing path exists")
    if bad:
        raise InvariantViolation("; ".join(bad[:10]))


def _prefix_view(st: ProgressiveState) -> Dag:
    """The sparsified graph of the admitted prefix (over all ``n`` vertex ids)."""
    return build_dag(st.g.n, st.sparse_edges())


def _level_cut_violations(st: ProgressiveState, sub_edges: list[tuple[int, int]]) -> list[str]:
    pc = st.pc
    lev = st.levels.level
    bad: list[str] = []
    maxpl: dict[int, int] = {}
    hist_node: dict[int, dict[int, int]] = {}
    hist_edge: dict[tuple[int, int], dict[int, int]] = {}
    for h in pc.heads:
        cells = list(pc.chain(h))
        verts = [pc.vert[c] for c in cells]
        pl = lev(2 * verts[-1] + 1)
        for a in verts:
            maxpl[a] = max(maxpl.get(a, 0), pl)
            hn = hist_node.setdefault(a, {})
            hn[pl] = hn.get(pl, 0) + 1
        for e in zip(verts, verts[1:]):
            he = hist_edge.setdefault(e, {})
            he[pl] = he.get(pl, 0) + 1

    def check(x: int, y: int, me: int, hist: dict[int, int], demand: int, label: str) -> None:
        lx, ly = lev(x), lev(y)
        if ly < min(lx, me):
            bad.append(f"{label} crosses level cut {ly + 1} backwards")
        for l in range(lx + 1, min(ly, me) + 1):
            f = sum(c for pl, c in hist.items() if pl >= l)
            if f != demand:
                bad.append(f"{label} crosses level cut {l} carrying {f}, demand {demand}")

    for a in st.admitted:
        check(2 * a, 2 * a + 1, maxpl.get(a, 0), hist_node.get(a, {}), 1, f"split edge of {a}")
    for u, v in sub_edges:
        check(2 * u + 1, 2 * v, min(maxpl.get(u, 0), maxpl.get(v, 0)), hist_edge.get((u, v), {}), 0, f"edge ({u}, {v})")
    return bad


def _has_decrementing_path(st: ProgressiveState) -> bool:
    pc = st.pc
    seen: set[int] = set()
    stack = []
    for h in pc.heads:
        x = 2 * pc.vert[h]
        if x not in seen:
            seen.add(x)
            stack.append(x)
    while stack:
        x = stack.pop()
        a = x >> 1
        if x & 1:
            if pc.tails_at[a]:
                return True
            outs = [2 * b for b in pc.succ[a]] + [x - 1]
        else:
            outs = [2 * u + 1 for u in st.sin[a]]
            if len(pc.cells_of[a]) > 1:
                outs.append(x + 1)
        for y in outs:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False


_audit = check_invariants


def solve_progressive(g: Dag, check_invariants: bool = False, state: ProgressiveState | None = None) -> PathCover:
    """Minimum path cover of ``g``; with ``check_invariants`` every step is audited."""
    st = state if state is not None else ProgressiveState(g)
    for v in g.topo:
        admit_vertex(st, v)
        if check_invariants:
            _audit(st)
    st.stats.merges = st.levels.merges
    return st.pc
