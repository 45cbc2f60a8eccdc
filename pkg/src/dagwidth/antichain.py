"""Maximum antichains read off a minimum path cover.

With a minimum flow there is no residual s-t path. The split vertices that the
source still reaches form the source side of a one-way cut of maximum demand;
the vertices whose split edge crosses that cut are pairwise unreachable and
there are exactly as many of them as paths.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .cover import PathCover
from .errors import NotMinimumError
from .flow import FlowView, lift, residual_reachable
from .graph import Dag


@dataclass
class Antichain:
    vertices: list[int]
    source_side: frozenset[int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.vertices)

    def in_source_side(self, x: int) -> bool:
        """Whether split vertex ``x`` lies on the source side of the certifying cut."""
        return x in self.source_side


def max_antichain(g: Dag, mpc: PathCover | list[list[int]]) -> Antichain:
    fv = lift(g, mpc)
    side = residual_reachable(fv)
    if fv.t in side:
        raise NotMinimumError("the cover admits a decrementing path")
    verts = [v for v in range(g.n) if 2 * v in side and 2 * v + 1 not in side]
    return Antichain(verts, frozenset(side))


@dataclass
class AntichainReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def verify_antichain(g: Dag, a: Iterable[int]) -> AntichainReport:
    """One search per member: no member may reach another."""
    rep = AntichainReport()
    members = list(a)
    mset = set(members)
    if len(mset) != len(members):
        rep.violations.append("antichain lists a vertex twice")
    for v in mset:
        if not 0 <= v < g.n:
            rep.violations.append(f"vertex {v} out of range")
            return rep
    for src in sorted(mset):
        seen = {src}
        queue = deque([src])
        while queue:
            x = queue.popleft()
            for y in g.out_adj[x]:
                if y in seen:
                    continue
                if y in mset:
                    rep.violations.append(f"{src} reaches {y}")
                seen.add(y)
                queue.append(y)
    return rep


def certificate_violations(fv: FlowView, ac: Antichain) -> list[str]:
    """Check that the antichain's cut is a one-way cut with tight crossing edges.

    No residual step may leave the source side, no network edge may run from the
    sink side back to the source side, and every edge leaving the source side
    must carry exactly its demand.
    """
    bad = []
    side = ac.source_side
    s, t = fv.s, fv.t
    if s not in side or t in side:
        bad.append("source must be inside and sink outside the cut")
    for x in side:
        for step in fv.residual_out(x):
            if step.head not in side:
                bad.append(f"residual step {step.tail}->{step.head} leaves the source side")
    edges = [(s, 2 * v) for v in range(fv.n)] + [(2 * v + 1, t) for v in range(fv.n)]
    edges += [(2 * v, 2 * v + 1) for v in range(fv.n)]
    edges += [(2 * u + 1, 2 * v) for u, v in fv.base.edges]
    for x, y in edges:
        if x not in side and y in side:
            bad.append(f"edge {x}->{y} runs from the sink side to the source side")
        if x in side and y not in side and fv.flow(x, y) != fv.demand(x, y):
            bad.append(f"crossing edge {x}->{y} carries {fv.flow(x, y)}, demand {fv.demand(x, y)}")
    return bad
