import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given

from dagwidth import _backend, _kernels_py
from dagwidth.dnc import solve_dnc
from dagwidth.graph import random_dag

from conftest import dags

compiled = pytest.mark.skipif(_backend.kernels_compiled is None, reason="compiled kernels not built")


def positions(g):
    pos = np.asarray(g.topo_pos, dtype=np.int64)
    src = pos[np.array([u for u, _ in g.edges], dtype=np.int64)] if g.m else np.zeros(0, np.int64)
    dst = pos[np.array([v for _, v in g.edges], dtype=np.int64)] if g.m else np.zeros(0, np.int64)
    return src, dst


def singletons(n):
    return np.arange(n, dtype=np.int64), np.arange(n + 1, dtype=np.int64)


def test_get_by_name():
    assert _backend.get("python") is _kernels_py
    assert _backend.get(None) is _backend.kernels
    with pytest.raises(ValueError):
        _backend.get("fortran")


def test_env_var_forces_fallback():
    code = "import dagwidth._backend as b; print(b.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                         env={"DAGWIDTH_PURE_PYTHON": "1", "PATH": ""}, check=True)
    assert out.stdout.strip() == "python"


def test_python_shrink_chain():
    flat, off = _kernels_py.shrink_paths(3, np.array([0, 1]), np.array([1, 2]), *singletons(3))
    assert flat.tolist() == [0, 1, 2] and off.tolist() == [0, 3]


def test_python_sparsify_drops_shortcut():
    src, dst = np.array([0, 0, 1]), np.array([1, 2, 2])
    s, d = _kernels_py.sparsify_edges(3, src, dst, np.array([0, 1, 2]), np.array([0, 3]))
    assert list(zip(s.tolist(), d.tolist())) == [(0, 1), (1, 2)]


def test_missing_edge_raises():
    with pytest.raises(ValueError):
        _kernels_py.shrink_paths(2, np.zeros(0, np.int64), np.zeros(0, np.int64),
                                 np.array([0, 1]), np.array([0, 2]))


@compiled
@given(dags(max_n=40))
def test_backends_agree(g):
    src, dst = positions(g)
    a = _backend.get("python").shrink_paths(g.n, src, dst, *singletons(g.n))
    b = _backend.get("compiled").shrink_paths(g.n, src, dst, *singletons(g.n))
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
    a2 = _backend.get("python").sparsify_edges(g.n, src, dst, *a)
    b2 = _backend.get("compiled").sparsify_edges(g.n, src, dst, *b)
    assert all(np.array_equal(x, y) for x, y in zip(a2, b2))


@compiled
@pytest.mark.parametrize("seed", range(5))
def test_solver_output_identical_across_backends(seed):
    g = random_dag(200, 900, seed)
    a = solve_dnc(g, backend="python")
    b = solve_dnc(g, backend="compiled")
    assert a.cover.sorted_paths() == b.cover.sorted_paths()
    assert sorted(a.sparse_edges) == sorted(b.sparse_edges)
