# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the kernels in ``_kernels_py``; same inputs, same outputs."""

import numpy as np

from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free, calloc

ctypedef int64_t i64

I64 = np.int64


def sparsify_edges(Py_ssize_t n, src, dst, flat, off):
    cdef const i64[::1] s = np.ascontiguousarray(src, dtype=I64)
    cdef const i64[::1] d = np.ascontiguousarray(dst, dtype=I64)
    cdef const i64[::1] fl = np.ascontiguousarray(flat, dtype=I64)
    cdef const i64[::1] of = np.ascontiguousarray(off, dtype=I64)
    cdef Py_ssize_t m = s.shape[0]
    cdef Py_ssize_t t = of.shape[0] - 1
    cdef Py_ssize_t L = fl.shape[0]
    if n == 0:
        return np.zeros(0, I64), np.zeros(0, I64)

    out_u_arr = np.empty(m + L, dtype=I64)
    out_v_arr = np.empty(m + L, dtype=I64)
    cdef i64[::1] ou = out_u_arr
    cdef i64[::1] ov = out_v_arr
    cdef Py_ssize_t nout = 0

    cdef i64 *pid = <i64 *> malloc(n * sizeof(i64))
    cdef i64 *istart = <i64 *> calloc(n + 1, sizeof(i64))
    cdef i64 *isrc = <i64 *> malloc((m + 1) * sizeof(i64))
    cdef i64 *cstart = <i64 *> calloc(n + 1, sizeof(i64))
    cdef i64 *csrc = <i64 *> malloc((L + 1) * sizeof(i64))
    cdef i64 *cpath = <i64 *> malloc((L + 1) * sizeof(i64))
    cdef i64 *surv = <i64 *> malloc((t + 1) * sizeof(i64))
    cdef i64 *stamp = <i64 *> malloc((t + 1) * sizeof(i64))
    cdef i64 *touched = <i64 *> malloc((t + 1) * sizeof(i64))
    cdef i64 *mark = <i64 *> malloc(n * sizeof(i64))
    cdef Py_ssize_t i, j, k, v, u, p, nt
    try:
        with nogil:
            for v in range(n):
                pid[v] = -1
                mark[v] = -1
            for i in range(t):
                stamp[i] = -1
                for j in range(of[i], of[i + 1]):
                    pid[fl[j]] = i
            # in-edges grouped by head
            for k in range(m):
                istart[d[k] + 1] += 1
            for v in range(n):
                istart[v + 1] += istart[v]
            for k in range(m):
                v = d[k]
                isrc[istart[v]] = s[k]
                istart[v] += 1
            for v in range(n, 0, -1):
                istart[v] = istart[v - 1]
            istart[0] = 0
            # cover edges grouped by head
            for i in range(t):
                for j in range(of[i], of[i + 1] - 1):
                    cstart[fl[j + 1] + 1] += 1
            for v in range(n):
                cstart[v + 1] += cstart[v]
            for i in range(t):
                for j in range(of[i], of[i + 1] - 1):
                    v = fl[j + 1]
                    csrc[cstart[v]] = fl[j]
                    cpath[cstart[v]] = i
                    cstart[v] += 1
            for v in range(n, 0, -1):
                cstart[v] = cstart[v - 1]
            cstart[0] = 0

            for v in range(n):
                nt = 0
                for k in range(cstart[v], cstart[v + 1]):
                    p = cpath[k]
                    u = csrc[k]
                    if stamp[p] != v:
                        stamp[p] = v
                        surv[p] = u
                        touched[nt] = p
                        nt += 1
                    elif u > surv[p]:
                        surv[p] = u
                for k in range(istart[v], istart[v + 1]):
                    u = isrc[k]
                    p = pid[u]
                    if stamp[p] != v:
                        stamp[p] = v
                        surv[p] = u
                        touched[nt] = p
                        nt += 1
                    elif u > surv[p]:
                        surv[p] = u
                for k in range(nt):
                    u = surv[touched[k]]
                    if mark[u] != v:
                        mark[u] = v
                        ou[nout] = u
                        ov[nout] = v
                        nout += 1
    finally:
        free(pid); free(istart); free(isrc); free(cstart); free(csrc); free(cpath)
        free(surv); free(stamp); free(touched); free(mark)
    key = np.sort(out_u_arr[:nout] * n + out_v_arr[:nout])
    return key // n, key % n


def shrink_paths(Py_ssize_t n, src, dst, flat, off):
    src = np.asarray(src, dtype=I64)
    dst = np.asarray(dst, dtype=I64)
    if n == 0:
        return np.zeros(0, I64), np.zeros(1, I64)
    order = np.lexsort((dst, src))
    osrc_a = src[order]
    odst_a = np.ascontiguousarray(dst[order])
    ostart_a = np.searchsorted(osrc_a, np.arange(n + 1)).astype(I64)
    iorder_a = np.lexsort((osrc_a, odst_a)).astype(I64)
    istart_a = np.searchsorted(odst_a[iorder_a], np.arange(n + 1)).astype(I64)
    isrc_a = np.ascontiguousarray(osrc_a[iorder_a])

    cdef const i64[::1] odst = odst_a
    cdef const i64[::1] ostart = ostart_a
    cdef const i64[::1] istart = istart_a
    cdef const i64[::1] isrc = isrc_a
    cdef const i64[::1] ieid = iorder_a
    cdef const i64[::1] fl = np.ascontiguousarray(flat, dtype=I64)
    cdef const i64[::1] of = np.ascontiguousarray(off, dtype=I64)
    cdef Py_ssize_t m = odst.shape[0]
    cdef Py_ssize_t npaths = of.shape[0] - 1
    cdef Py_ssize_t size = 2 * n + 2
    cdef i64 S = 2 * n

    fe_a = np.zeros(m + 1, dtype=I64)
    fn_a = np.zeros(n, dtype=I64)
    fs_a = np.zeros(n, dtype=I64)
    ft_a = np.zeros(n, dtype=I64)
    cdef i64[::1] fe = fe_a
    cdef i64[::1] fn = fn_a
    cdef i64[::1] fs = fs_a
    cdef i64[::1] ft = ft_a

    cdef i64 *par = <i64 *> malloc(size * sizeof(i64))
    cdef i64 *pe = <i64 *> malloc(size * sizeof(i64))
    cdef i64 *mark = <i64 *> calloc(size, sizeof(i64))
    cdef i64 *queue = <i64 *> malloc(size * sizeof(i64))
    cdef Py_ssize_t i, j, k, a, b, lo, hi, mid, head, tail, x, y, p, v
    cdef i64 it = 0, found, bad_u = -1, bad_w = -1
    try:
        with nogil:
            for i in range(npaths):
                a = of[i]
                b = of[i + 1]
                fs[fl[a]] += 1
                ft[fl[b - 1]] += 1
                for j in range(a, b):
                    fn[fl[j]] += 1
                for j in range(a, b - 1):
                    lo = ostart[fl[j]]
                    hi = ostart[fl[j] + 1]
                    while lo < hi:
                        mid = (lo + hi) // 2
                        if odst[mid] < fl[j + 1]:
                            lo = mid + 1
                        else:
                            hi = mid
                    if lo == ostart[fl[j] + 1] or odst[lo] != fl[j + 1]:
                        bad_u = fl[j]
                        bad_w = fl[j + 1]
                        break
                    fe[lo] += 1
                if bad_u >= 0:
                    break

            while bad_u < 0:
                it += 1
                tail = 0
                for v in range(n):
                    if fs[v] > 0:
                        x = 2 * v
                        mark[x] = it
                        par[x] = S
                        queue[tail] = x
                        tail += 1
                found = -1
                head = 0
                while head < tail:
                    x = queue[head]
                    head += 1
                    a = x >> 1
                    if x & 1 == 0:
                        y = x + 1
                        if fn[a] > 1 and mark[y] != it:
                            mark[y] = it
                            par[y] = x
                            queue[tail] = y
                            tail += 1
                        for k in range(istart[a], istart[a + 1]):
                            y = 2 * isrc[k] + 1
                            if mark[y] != it:
                                mark[y] = it
                                par[y] = x
                                pe[y] = ieid[k]
                                queue[tail] = y
                                tail += 1
                    else:
                        if ft[a] > 0:
                            found = x
                            break
                        for k in range(ostart[a], ostart[a + 1]):
                            if fe[k] > 0:
                                y = 2 * odst[k]
                                if mark[y] != it:
                                    mark[y] = it
                                    par[y] = x
                                    pe[y] = k
                                    queue[tail] = y
                                    tail += 1
                        y = x - 1
                        if mark[y] != it:
                            mark[y] = it
                            par[y] = x
                            queue[tail] = y
                            tail += 1
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
    finally:
        free(par); free(pe); free(mark); free(queue)
    if bad_u >= 0:
        raise ValueError(f"path uses missing edge ({bad_u}, {bad_w})")

    total = int(fn_a.sum())
    npaths_out = int(fs_a.sum())
    out_a = np.empty(total, dtype=I64)
    offs_a = np.empty(npaths_out + 1, dtype=I64)
    ptr_a = np.array(ostart_a[:n], dtype=I64)
    cdef i64[::1] out = out_a
    cdef i64[::1] offs = offs_a
    cdef i64[::1] ptr = ptr_a
    cdef Py_ssize_t pos = 0, npo = 0, v0, rep, end
    with nogil:
        offs[0] = 0
        for v0 in range(n):
            for rep in range(fs[v0]):
                v = v0
                out[pos] = v
                pos += 1
                while True:
                    k = ptr[v]
                    end = ostart[v + 1]
                    while k < end and fe[k] == 0:
                        k += 1
                    ptr[v] = k
                    if k < end:
                        fe[k] -= 1
                        v = odst[k]
                        out[pos] = v
                        pos += 1
                    else:
                        ft[v] -= 1
                        break
                npo += 1
                offs[npo] = pos
    return out_a, offs_a
