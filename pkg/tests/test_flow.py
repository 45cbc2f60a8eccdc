import random

import pytest
from hypothesis import given, strategies as st

from dagwidth.cover import verify_cover
from dagwidth.errors import InvalidCoverError, MalformedDecrementError, NotAFlowError, StaleResidualError
from dagwidth.flow import (DIRECT, REVERSE, ResidualStep, apply_decrementing, decompose, find_decrementing_path,
                           lift, shrink, shrink_cover)
from dagwidth.graph import build_dag, tight2
from dagwidth.oracle import brute_width, enumerate_owcuts

from conftest import chain, dags, diamond, random_cover


def test_lift_chain():
    fv = lift(chain(3), [[0, 1, 2]])
    assert fv.size == 1
    assert all(fv.flow(2 * v, 2 * v + 1) == 1 for v in range(3))


def test_lift_singletons():
    assert lift(build_dag(2, []), [[0], [1]]).size == 2


def test_lift_diamond_shared_source():
    g = build_dag(5, [(1, 2), (1, 3), (2, 4), (3, 4)])
    fv = lift(g, [[1, 2, 4], [1, 3, 4], [0]])
    assert fv.flow(2, 3) == 2
    assert fv.flow(3, 4) == 1


def test_lift_rejects_invalid_cover():
    with pytest.raises(InvalidCoverError):
        lift(chain(3), [[0, 1]])


def test_decrementing_path_exists_for_singletons():
    fv = lift(chain(3), [[0], [1], [2]])
    p = find_decrementing_path(fv)
    assert p is not None
    assert p[0].tail == fv.s and p[-1].head == fv.t
    assert all(fv.is_residual(s) for s in p)


def test_no_decrementing_path_when_minimum():
    assert find_decrementing_path(lift(chain(3), [[0, 1, 2]])) is None
    assert find_decrementing_path(lift(build_dag(3, []), [[0], [1], [2]])) is None


def test_shrink_examples():
    assert shrink_cover(chain(3)).paths() == [[0, 1, 2]]
    assert len(shrink_cover(diamond())) == 2
    assert len(shrink_cover(tight2(2))) == 2


def test_apply_decrementing_twice_on_chain():
    fv = lift(chain(3), [[0], [1], [2]])
    for expected in (2, 1):
        apply_decrementing(fv, find_decrementing_path(fv))
        assert fv.size == expected
        fv.check()
    assert find_decrementing_path(fv) is None


def test_stale_step_rejected():
    fv = lift(chain(3), [[0], [1], [2]])
    p = find_decrementing_path(fv)
    apply_decrementing(fv, p)
    with pytest.raises((StaleResidualError, MalformedDecrementError)):
        apply_decrementing(fv, p)


def test_malformed_path_rejected():
    fv = lift(chain(2), [[0], [1]])
    with pytest.raises(MalformedDecrementError):
        apply_decrementing(fv, [ResidualStep(DIRECT, fv.s, 2)])
    with pytest.raises(MalformedDecrementError):
        apply_decrementing(fv, [])


def test_two_vertex_chain_residual_path():
    fv = lift(chain(2), [[0], [1]])
    p = find_decrementing_path(fv)
    assert [(s.kind, s.tail, s.head) for s in p] == [
        (DIRECT, fv.s, 2), (REVERSE, 2, 1), (DIRECT, 1, fv.t)]


def test_decompose_rejects_non_flow():
    fv = lift(chain(2), [[0, 1]])
    fv.fnode[0] = 0
    with pytest.raises(NotAFlowError):
        decompose(fv)


@given(dags(max_n=10), st.integers(0, 2**31))
def test_decompose_reproduces_flow(g, seed):
    pc = random_cover(g, random.Random(seed))
    fv = lift(g, pc)
    out = decompose(fv)
    assert len(out) == len(pc)
    assert verify_cover(g, out, check_ids=False).ok
    fv2 = lift(g, out)
    assert (fv2.fnode, fv2.fedge, fv2.fstart, fv2.fend) == (fv.fnode, fv.fedge, fv.fstart, fv.fend)


@given(dags(max_n=9), st.integers(0, 2**31))
def test_owcut_lower_bounds_every_cover(g, seed):
    pc = random_cover(g, random.Random(seed))
    assert enumerate_owcuts(g) <= lift(g, pc).size


@given(dags(max_n=12), st.integers(0, 2**31))
def test_shrink_is_minimum(g, seed):
    pc = random_cover(g, random.Random(seed))
    out = shrink(lift(g, pc))
    assert len(out) == brute_width(g)
    assert verify_cover(g, out).ok
    assert find_decrementing_path(lift(g, out)) is None


@given(dags(max_n=9))
def test_max_owcut_equals_min_flow(g):
    assert enumerate_owcuts(lift(g, [[v] for v in range(g.n)])) == len(shrink_cover(g))
