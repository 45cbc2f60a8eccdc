import pytest
from hypothesis import given, strategies as st

from dagwidth.errors import CycleError, ParamError, SelfLoopError, VertexRangeError
from dagwidth.graph import build_dag, generate, interval_subgraph, layered_dag, random_dag, tight2
from dagwidth.oracle import brute_width

from conftest import chain, dags, diamond


def test_chain_topo():
    assert build_dag(3, [(0, 1), (1, 2)]).topo == [0, 1, 2]


def test_singleton():
    g = build_dag(1, [])
    assert g.topo == [0] and g.m == 0


def test_empty_graph():
    g = build_dag(0, [])
    assert g.n == 0 and g.topo == []


def test_cycle_witness():
    with pytest.raises(CycleError) as exc:
        build_dag(3, [(0, 1), (1, 2), (2, 0)])
    assert exc.value.cycle == [0, 1, 2, 0]


def test_cycle_witness_is_real_cycle():
    edges = [(0, 1), (1, 2), (2, 3), (3, 1), (4, 0)]
    with pytest.raises(CycleError) as exc:
        build_dag(5, edges)
    cyc = exc.value.cycle
    assert cyc[0] == cyc[-1]
    assert all(e in set(edges) for e in zip(cyc, cyc[1:]))


def test_self_loop():
    with pytest.raises(SelfLoopError):
        build_dag(2, [(1, 1)])


def test_out_of_range_is_index_error():
    with pytest.raises(IndexError):
        build_dag(2, [(0, 2)])
    with pytest.raises(VertexRangeError):
        build_dag(2, [(-1, 0)])


def test_duplicates_dropped():
    g = build_dag(3, [(0, 1), (0, 1), (1, 2)])
    assert g.edges == [(0, 1), (1, 2)]


def test_min_index_tie_break():
    g = build_dag(4, [(3, 0), (2, 1)])
    assert g.topo == [2, 1, 3, 0]


def test_adjacency_matches_edges():
    g = diamond()
    assert g.out_adj[0] == [1, 2] and g.in_adj[3] == [1, 2]
    assert g.has_edge(1, 3) and not g.has_edge(3, 1)


def test_interval_diamond_middle():
    sub = interval_subgraph(diamond(), 1, 2)
    assert sorted(sub.to_global) == [1, 2]
    assert sub.dag.m == 0


def test_interval_full_equals_parent():
    g = diamond()
    sub = interval_subgraph(g, 0, g.n - 1)
    assert sorted(sub.global_edges()) == sorted(g.edges)
    assert sub.size == g.n


def test_interval_chain_prefix():
    sub = interval_subgraph(chain(3), 0, 1)
    assert sub.to_global == [0, 1]
    assert sub.global_edges() == [(0, 1)]


def test_interval_range_errors():
    g = chain(3)
    for lo, hi in [(-1, 1), (2, 1), (0, 3)]:
        with pytest.raises(IndexError):
            interval_subgraph(g, lo, hi)


def test_tight2_sizes():
    g = tight2(10)
    assert (g.n, g.m) == (120, 200)
    g = tight2(1)
    assert (g.n, g.m) == (3, 2)


def test_random_without_edges():
    g = random_dag(5, 0, seed=7)
    assert g.n == 5 and g.m == 0


def test_random_is_reproducible():
    assert random_dag(30, 80, 5).edges == random_dag(30, 80, 5).edges
    assert random_dag(30, 80, 5).m == 80


def test_generate_dispatch_and_errors():
    assert generate("tight2", n=2).n == 8
    assert generate("random", n=6, m=15, seed=1).m == 15
    assert generate("layered", width=3, layers=4, seed=0).n == 12
    with pytest.raises(ParamError):
        generate("random", n=4, m=7, seed=0)
    with pytest.raises(ParamError):
        generate("random", n=4)
    with pytest.raises(ParamError):
        generate("grid", n=4)
    with pytest.raises(ParamError):
        tight2(0)


def test_layered_chain_cover_bounds_width():
    g = layered_dag(4, 6, seed=3)
    assert brute_width(g) <= 4
    assert g.m >= 4 * 5


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_tight2_width_by_oracle(n):
    assert brute_width(tight2(n), "matching") == n


@given(dags(max_n=25))
def test_topo_order_is_valid(g):
    assert g.verify_topo()
    assert sorted(g.topo) == list(range(g.n))
    assert all(g.topo[g.topo_pos[v]] == v for v in range(g.n))


@given(dags(max_n=10, min_n=1), st.data())
def test_interval_width_never_exceeds_parent(g, data):
    lo = data.draw(st.integers(0, g.n - 1))
    hi = data.draw(st.integers(lo, g.n - 1))
    sub = interval_subgraph(g, lo, hi)
    assert sub.size == hi - lo + 1
    assert brute_width(sub.dag) <= brute_width(g)
    inside = set(g.topo[lo:hi + 1])
    assert sorted(sub.global_edges()) == sorted(e for e in g.edges if e[0] in inside and e[1] in inside)
