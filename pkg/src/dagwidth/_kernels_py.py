"""Pure-Python/numpy versions of the array kernels used by the divide-and-conquer solver.

Vertices are ``0..n-1`` and must already be numbered topologically. Paths come
flattened: path ``i`` is ``flat[off[i]:off[i+1]]``. Both functions return results
in a canonical order so the compiled kernels can be checked against them.
"""

from __future__ import annotations

from bisect import bisect_left

import numpy as np

I64 = np.int64


def _path_index(off: np.ndarray) -> np.ndarray:
    return np.repeat(np.arange(len(off) - 1, dtype=I64), np.diff(off))


def sparsify_edges(n: int, src, dst, flat, off) -> tuple[np.ndarray, np.ndarray]:
    """Keep, for every vertex and every path, only the latest in-neighbour on that path.

    Every edge of every path survives. Output edges are sorted by ``(src, dst)``.
    """
    src = np.asarray(src, dtype=I64)
    dst = np.asarray(dst, dtype=I64)
    flat = np.asarray(flat, dtype=I64)
    off = np.asarray(off, dtype=I64)
    if n == 0:
        return np.zeros(0, I64), np.zeros(0, I64)
    which = _path_index(off)
    pid = np.full(n, -1, dtype=I64)
    pid[flat] = which
    inner = np.ones(len(flat), dtype=bool)
    inner[off[1:] - 1] = False  # last entry of each path has no successor
    j = np.nonzero(inner)[0]
    cu, cv, cp = flat[j], flat[j + 1], which[j]
    u = np.concatenate([cu, src])
    v = np.concatenate([cv, dst])
    slot = np.concatenate([cp, pid[src]])
    order = np.lexsort((u, slot, v))
    u, v, slot = u[order], v[order], slot[order]
    last = np.ones(len(u), dtype=bool)
    last[:-1] = (v[1:] != v[:-1]) | (slot[1:] != slot[:-1])
    key = np.unique(u[last] * n + v[last])
    return key // n, key % n


def _csr(n: int, src: np.ndarray, dst: np.ndarray):
    order = np.lexsort((dst, src))
    osrc, odst = src[order], dst[order]
    ostart = np.searchsorted(osrc, np.arange(n + 1))
    iorder = np.lexsort((osrc, odst))
    istart = np.searchsorted(odst[iorder], np.arange(n + 1))
    return osrc, odst, ostart, iorder, istart


def shrink_paths(n: int, src, dst, flat, off) -> tuple[np.ndarray, np.ndarray]:
    """Minimum path cover of the graph ``(src, dst)`` starting from the given cover.

    Repeatedly finds a decrementing path by breadth-first search in the residual
    of the split network, applies it, and finally decomposes the flow greedily.
    """
    src = np.asarray(src, dtype=I64)
    dst = np.asarray(dst, dtype=I64)
    flat_a = np.asarray(flat, dtype=I64)
    off_a = np.asarray(off, dtype=I64)
    if n == 0:
        return np.zeros(0, I64), np.zeros(1, I64)
    osrc, odst, ostart, iorder, istart = _csr(n, src, dst)
    odst_l = odst.tolist()
    ostart_l = ostart.tolist()
    istart_l = istart.tolist()
    isrc_l = osrc[iorder].tolist()
    ieid_l = iorder.tolist()
    m = len(odst_l)

    fe = [0] * m
    fn = [0] * n
    fs = [0] * n
    ft = [0] * n
    fl = flat_a.tolist()
    ol = off_a.tolist()
    for i in range(len(ol) - 1):
        a, b = ol[i], ol[i + 1]
        fs[fl[a]] += 1
        ft[fl[b - 1]] += 1
        for j in range(a, b):
            fn[fl[j]] += 1
        for j in range(a, b - 1):
            u, w = fl[j], fl[j + 1]
            lo, hi = ostart_l[u], ostart_l[u + 1]
            k = bisect_left(odst_l, w, lo, hi)
            if k == hi or odst_l[k] != w:
                raise ValueError(f"path uses missing edge ({u}, {w})")
            fe[k] += 1

    S = 2 * n
    size = 2 * n + 2
    par = [-1] * size
    pe = [-1] * size
    mark = [0] * size
    it = 0
    while True:
        it += 1
        queue = []
        for v in range(n):
            if fs[v] > 0:
                x = 2 * v
                mark[x] = it
                par[x] = S
                queue.append(x)
        found = -1
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            a = x >> 1
            if x & 1 == 0:
                y = x + 1
                if fn[a] > 1 and mark[y] != it:
                    mark[y] = it
                    par[y] = x
                    queue.append(y)
                for k in range(istart_l[a], istart_l[a + 1]):
                    y = 2 * isrc_l[k] + 1
                    if mark[y] != it:
                        mark[y] = it
                        par[y] = x
                        pe[y] = ieid_l[k]
                        queue.append(y)
            else:
                if ft[a] > 0:
                    found = x
                    break
                for k in range(ostart_l[a], ostart_l[a + 1]):
                    if fe[k] > 0:
                        y = 2 * odst_l[k]
                        if mark[y] != it:
                            mark[y] = it
                            par[y] = x
                            pe[y] = k
                            queue.append(y)
                y = x - 1
                if mark[y] != it:
                    mark[y] = it
                    par[y] = x
                    queue.append(y)
        if found < 0:
            break
        ft[found >> 1] -= 1
        x = found
        while x != S:
            p = par[x]
            if p == S:
                fs[x >> 1] -= 1
            elif p & 1 == 0:
                if x == p + 1:
                    fn[p >> 1] -= 1
                else:
                    fe[pe[x]] += 1
            else:
                if x == p - 1:
                    fn[p >> 1] += 1
                else:
                    fe[pe[x]] -= 1
            x = p

    ptr = ostart_l[:n]
    out: list[int] = []
    offs = [0]
    for v0 in range(n):
        for _ in range(fs[v0]):
            v = v0
            out.append(v)
            while True:
                k, end = ptr[v], ostart_l[v + 1]
                while k < end and fe[k] == 0:
                    k += 1
                ptr[v] = k
                if k < end:
                    fe[k] -= 1
                    v = odst_l[k]
                    out.append(v)
                else:
                    ft[v] -= 1
                    break
            offs.append(len(out))
    return np.asarray(out, dtype=I64), np.asarray(offs, dtype=I64)
