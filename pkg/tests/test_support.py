import random

import pytest
from hypothesis import given, strategies as st

from dagwidth.cover import PathCover, verify_cover
from dagwidth.errors import InvalidCycleError
from dagwidth.graph import build_dag, random_dag, tight2
from dagwidth.oracle import brute_width
from dagwidth.progressive import solve_progressive
from dagwidth.support import (ColoredSupport, CycleSearch, RedCycle, find_red_cycle, sparsify_support,
                              splice_cycle, support_report, width_preserving_subgraph)

from conftest import chain, dags, random_cover

# a triangle 0-1-2 whose corners each have a third support edge
TRI_EDGES = [(3, 0), (0, 1), (1, 4), (0, 2), (2, 5), (1, 2)]


def triangle_cover(extra=()):
    g = build_dag(6, TRI_EDGES)
    pc = PathCover.from_paths(6, [[3, 0, 1, 4], [0, 2, 5], [1, 2], *extra])
    return g, pc


def test_chain_cover_unchanged():
    g = chain(3)
    out = sparsify_support(g, PathCover.from_paths(3, [[0, 1, 2]]))
    assert out.paths() == [[0, 1, 2]] and out.support_size() == 2


def test_tight2_keeps_every_edge():
    g = tight2(10)
    out = sparsify_support(g, solve_progressive(g))
    assert len(out) == 10
    assert out.support_size() == 200
    assert out.support_size() / g.n == 2 - 4 / 12


def test_red_triangle_loses_an_edge():
    g, pc = triangle_cover()
    assert pc.support_size() == 6
    out = sparsify_support(g, pc)
    assert out.support_size() == 5
    assert len(out) == len(pc)
    assert verify_cover(g, out).ok
    assert out.multiplicity(0, 2) == 0
    assert pc.support_size() == 6  # input untouched


def test_colors():
    _, pc = triangle_cover()
    cs = ColoredSupport(pc)
    assert [cs.color(v) for v in range(6)] == ["red", "red", "red", "blue", "blue", "blue"]
    assert cs.edge_color(0, 1) == "red"
    assert cs.edge_color(3, 0) == "purple"
    assert cs.edge_color(3, 4) == "blue"
    assert cs.num_edges() == 6


def test_find_triangle():
    _, pc = triangle_cover()
    cyc = find_red_cycle(ColoredSupport(pc))
    assert sorted(cyc.vertices) == [0, 1, 2]
    assert sorted(cyc.forward + cyc.backward) == [(0, 1), (0, 2), (1, 2)]


def test_tree_support_has_no_cycle():
    pc = PathCover.from_paths(5, [[0, 1, 2], [3, 1, 4]])
    assert find_red_cycle(ColoredSupport(pc)) is None


def test_all_blue_has_no_cycle():
    pc = PathCover.from_paths(4, [[0, 1, 2, 3]])
    assert find_red_cycle(ColoredSupport(pc)) is None


def test_tie_empties_backward_side():
    g, pc = triangle_cover(extra=[[0, 2]])
    cs = ColoredSupport(pc)
    cyc = RedCycle.from_vertices(cs, [0, 1, 2])
    assert cyc.forward == [(0, 1), (1, 2)] and cyc.backward == [(0, 2)]
    splice_cycle(cs, pc, cyc)
    assert pc.multiplicity(0, 2) == 0
    assert (pc.multiplicity(0, 1), pc.multiplicity(1, 2)) == (3, 3)
    assert verify_cover(g, pc, check_ids=False).ok


def test_single_round_when_backward_edge_is_thin():
    g, pc = triangle_cover()
    cs = ColoredSupport(pc)
    rounds = []
    splice_cycle(cs, pc, RedCycle.from_vertices(cs, [0, 1, 2]), on_round=lambda p, c: rounds.append(1))
    assert len(rounds) == 1
    assert (0, 2) not in set(pc.support())
    assert cs.num_edges() == 5


def test_invalid_cycles():
    _, pc = triangle_cover()
    cs = ColoredSupport(pc)
    with pytest.raises(InvalidCycleError):
        RedCycle.from_vertices(cs, [0, 1])
    with pytest.raises(InvalidCycleError):
        RedCycle.from_vertices(cs, [0, 1, 4])
    with pytest.raises(InvalidCycleError):
        RedCycle.from_vertices(cs, [0, 1, 1])
    with pytest.raises(InvalidCycleError):
        splice_cycle(cs, pc, RedCycle([0, 1, 2], [(0, 1), (1, 2), (2, 0)], []))


def test_search_resumes_after_splice():
    g, pc = triangle_cover()
    cs = ColoredSupport(pc)
    search = CycleSearch(cs)
    cyc = search.next()
    splice_cycle(cs, pc, cyc)
    search.resolved(cyc)
    assert search.next() is None
    assert support_report(cs) == []


def test_width_preserving_examples():
    assert width_preserving_subgraph(chain(4)).edges == chain(4).edges
    t = tight2(5)
    assert width_preserving_subgraph(t).edge_set() == t.edge_set()
    g = random_dag(10, 30, seed=1)
    h = width_preserving_subgraph(g)
    assert h.m < 20 and brute_width(h) == brute_width(g)
    assert width_preserving_subgraph(g, solver="dnc").m < 20
    with pytest.raises(ValueError):
        width_preserving_subgraph(g, solver="magic")


def test_empty_graph():
    out = sparsify_support(build_dag(0, []), PathCover(0))
    assert len(out) == 0


@given(dags(max_n=40), st.integers(0, 2**31))
def test_rounds_shift_one_unit_and_raise_potential(g, seed):
    pc = random_cover(g, random.Random(seed)).copy()
    last = {"mu": pc.mu_map(), "phi": pc.phi()}
    size = len(pc)

    def check_round(p, cyc):
        mu, phi = p.mu_map(), p.phi()
        prev = last["mu"]
        F, B = set(cyc.forward), set(cyc.backward)
        for e in set(mu) | set(prev):
            delta = mu.get(e, 0) - prev.get(e, 0)
            assert delta == (1 if e in F else -1 if e in B else 0)
        sf = sum(prev[e] for e in F)
        sb = sum(prev[e] for e in B)
        assert sf >= sb
        assert phi - last["phi"] == len(F) + len(B) + 2 * (sf - sb) >= len(cyc)
        last["mu"], last["phi"] = mu, phi

    out = sparsify_support(g, pc, on_round=check_round, inplace=True)
    assert len(out) == size
    assert verify_cover(g, out).ok
    assert g.n == 0 or out.support_size() < 2 * g.n
    assert out.phi() <= 2 * size * size * max(g.n, 1)
