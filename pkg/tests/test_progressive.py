import pytest
from hypothesis import given

from dagwidth.cover import verify_cover
from dagwidth.errors import InvariantViolation
from dagwidth.flow import find_decrementing_path, lift
from dagwidth.graph import build_dag, interval_subgraph, layered_dag, random_dag, tight2
from dagwidth.oracle import brute_width
from dagwidth.progressive import (ProgressiveState, admit_vertex, check_invariants, layered_search,
                                  solve_progressive)
from dagwidth.sparsify import sparsify_incoming

from conftest import chain, corpus, dags, diamond


def begin_step(st, v):
    """The part of a vertex step that runs before the search."""
    st.sin[v] = [u for u, _ in sparsify_incoming(st.g, st.pc, v)]
    st.pc.new_cell(v, len(st.pc))
    st.admitted.append(v)


def test_examples():
    assert solve_progressive(chain(5)).paths() == [[0, 1, 2, 3, 4]]
    assert len(solve_progressive(diamond())) == 2
    assert len(solve_progressive(tight2(4))) == 4
    assert len(solve_progressive(chain(0))) == 0


def test_first_isolated_vertex_levels():
    st = ProgressiveState(build_dag(2, []))
    admit_vertex(st, 0)
    assert len(st.pc) == 1
    assert (st.levels.level(0), st.levels.level(1)) == (0, 1)
    assert st.levels.counts[1] == 1
    admit_vertex(st, 1)
    assert len(st.pc) == 2
    assert (st.levels.level(2), st.levels.level(3)) == (0, 1)
    check_invariants(st)


def test_isolated_admission_visits_nothing():
    st = ProgressiveState(build_dag(2, []))
    admit_vertex(st, 0)
    begin_step(st, 1)
    res = layered_search(st, 1)
    assert res.path is None and res.visited == [] and res.l_min == 0


def test_two_vertex_chain_search_and_splice():
    g = chain(2)
    st = ProgressiveState(g)
    admit_vertex(st, 0)
    begin_step(st, 1)
    res = layered_search(st, 1)
    s, t = 2 * g.n, 2 * g.n + 1
    assert res.path == [s, 2, 1, t]
    st2 = ProgressiveState(g)
    solve_progressive(g, state=st2)
    assert st2.pc.paths() == [[0, 1]]
    assert st2.stats.found == 1


def test_diamond_prefix_widths():
    g = diamond()
    st = ProgressiveState(g)
    widths = []
    for v in g.topo:
        admit_vertex(st, v)
        widths.append(len(st.pc))
    assert widths == [1, 1, 2, 2]
    assert st.stats.found == 2


def test_last_diamond_step_is_absorbed():
    g = diamond()
    st = ProgressiveState(g)
    for v in g.topo[:3]:
        admit_vertex(st, v)
    assert len(st.pc) == 2
    begin_step(st, 3)
    res = layered_search(st, 3)
    assert res.path is not None
    assert res.path[-2] in st.ends


def test_merges_happen_and_invariants_hold():
    g = layered_dag(3, 10, seed=2)
    st = ProgressiveState(g)
    solve_progressive(g, check_invariants=True, state=st)
    assert st.stats.merges > 0
    check_invariants(st)


def test_corrupted_levels_are_detected():
    g = chain(3)
    st = ProgressiveState(g)
    solve_progressive(g, state=st)
    check_invariants(st)
    lv = st.levels
    # put the path's last in-vertex above its out-vertex
    lv.set(2 * 2, lv.top + 1)
    with pytest.raises(InvariantViolation):
        check_invariants(st)


def test_corrupted_counts_are_detected():
    g = build_dag(3, [])
    st = ProgressiveState(g)
    solve_progressive(g, state=st)
    st.levels.counts[1] += 1
    with pytest.raises(InvariantViolation):
        check_invariants(st)


def test_ends_match_path_tails():
    g = random_dag(30, 60, seed=3)
    st = ProgressiveState(g)
    solve_progressive(g, state=st)
    assert st.ends == {2 * p[-1] + 1 for p in st.pc.paths()}


@given(dags(max_n=25))
def test_audited_run(g):
    pc = solve_progressive(g, check_invariants=True)
    assert verify_cover(g, pc).ok
    assert find_decrementing_path(lift(g, pc)) is None


@given(dags(max_n=12))
def test_prefix_optimality(g):
    st = ProgressiveState(g)
    for i, v in enumerate(g.topo):
        admit_vertex(st, v)
        assert len(st.pc) == brute_width(interval_subgraph(g, 0, i).dag)


def test_charging_bound_measured():
    worst = 0.0
    for g in corpus(150, 120, seed=5, min_n=2):
        st = ProgressiveState(g)
        k = len(solve_progressive(g, state=st))
        worst = max(worst, st.stats.charges / (k * k * g.n))
    print(f"max charges / (k^2 |V|) = {worst:.3f}")
    assert worst <= 2.0


@pytest.mark.parametrize("seed", range(3))
def test_larger_instances_are_minimum(seed):
    g = random_dag(400, 1600, seed)
    pc = solve_progressive(g)
    assert verify_cover(g, pc).ok
    assert len(pc) == brute_width(g, "matching")
