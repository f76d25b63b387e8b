# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled versions of the hot kernels; see ``_pykernels`` for contracts."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs
from libcpp.string cimport string
from libcpp.unordered_set cimport unordered_set
from libcpp.algorithm cimport sort
from libcpp.vector cimport vector

cnp.import_array()


def power_iterate(B, double tol, long max_iter):
    cdef const double[:, ::1] M = np.ascontiguousarray(B, dtype=np.float64)
    cdef Py_ssize_t n = M.shape[0], i, j
    xa = np.ones(n)
    za = np.empty(n)
    cdef double[::1] x = xa
    cdef double[::1] z = za
    cdef double acc, lam, xx, xz, rho = 0.0, residual = float("inf"), r
    cdef long it = 0

    for i in range(n):
        acc = 0.0
        for j in range(n):
            acc += M[i, j] * x[j]
        z[i] = acc
    while it < max_iter:
        it += 1
        lam = 0.0
        for i in range(n):
            x[i] = z[i] + x[i]
            if x[i] > lam:
                lam = x[i]
        if lam <= 0.0:
            break
        for i in range(n):
            x[i] = x[i] / lam
        xx = 0.0
        xz = 0.0
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += M[i, j] * x[j]
            z[i] = acc
            xx += x[i] * x[i]
            xz += x[i] * acc
        rho = xz / xx
        if rho <= 0.0:
            continue
        residual = 0.0
        for i in range(n):
            r = fabs(z[i] - rho * x[i])
            if r > residual:
                residual = r
        residual = residual / rho
        if residual <= tol:
            return rho, xa, residual, it, True
    return rho, xa, residual, it, False


def bfs_distances(adj):
    cdef const cnp.uint8_t[:, ::1] A = np.ascontiguousarray(np.asarray(adj) != 0, dtype=np.uint8)
    cdef Py_ssize_t n = A.shape[0], src, u, v, head, tail
    out = np.full((n, n), -1, dtype=np.int64)
    cdef cnp.int64_t[:, ::1] dist = out
    cdef vector[Py_ssize_t] queue
    queue.resize(n)
    for src in range(n):
        dist[src, src] = 0
        queue[0] = src
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            for v in range(n):
                if A[u, v] and dist[src, v] < 0:
                    dist[src, v] = dist[src, u] + 1
                    queue[tail] = v
                    tail += 1
    return out


cdef inline int _popcount(unsigned long long x) nogil:
    return __builtin_popcountll(x)

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef string _encode(vector[int]& codes):
    cdef string s
    cdef size_t k
    for k in range(codes.size()):
        s.push_back(<char>(codes[k] >> 8))
        s.push_back(<char>(codes[k] & 0xFF))
    return s


def enumerate_bipartite(int a, int b):
    if a < 1 or b < 1 or a * b > 62:
        raise ValueError("part sizes out of range")
    cdef int n = a + b, i, j, v, w
    cdef unsigned long long full = (1ULL << n) - 1
    cdef unsigned long long row_mask = (1ULL << b) - 1
    cdef unsigned long long total = 1ULL << (a * b)
    cdef unsigned long long mask, row, reach, frontier, new, f
    cdef unsigned long long nb[64]
    cdef int deg[64]
    cdef int s
    cdef bint ok
    cdef long long connected = 0
    cdef vector[int] cu, cw
    cdef string ku, kw, key
    cdef unordered_set[string] keys
    reps = []

    mask = 0
    while mask < total:
        ok = True
        for v in range(n):
            nb[v] = 0
        for i in range(a):
            row = (mask >> (i * b)) & row_mask
            if row == 0:
                ok = False
                break
            nb[i] = row << a
            for j in range(b):
                if (row >> j) & 1:
                    nb[a + j] |= 1ULL << i
        if ok:
            for j in range(b):
                if nb[a + j] == 0:
                    ok = False
                    break
        if ok:
            reach = 1
            frontier = 1
            while frontier:
                new = 0
                f = frontier
                while f:
                    v = __builtin_ctzll(f)
                    new |= nb[v]
                    f &= f - 1
                frontier = new & ~reach
                reach |= new
            if reach == full:
                connected += 1
                for v in range(n):
                    deg[v] = _popcount(nb[v])
                cu.clear()
                cw.clear()
                for v in range(n):
                    s = 0
                    f = nb[v]
                    while f:
                        w = __builtin_ctzll(f)
                        s += deg[w]
                        f &= f - 1
                    if v < a:
                        cu.push_back(deg[v] * 128 + s)
                    else:
                        cw.push_back(deg[v] * 128 + s)
                sort(cu.begin(), cu.end())
                sort(cw.begin(), cw.end())
                ku = _encode(cu)
                kw = _encode(cw)
                if a == b and kw < ku:
                    key = kw
                    key.push_back(<char>0xFF)
                    key.append(ku)
                else:
                    key = ku
                    key.push_back(<char>0xFF)
                    key.append(kw)
                if keys.find(key) == keys.end():
                    keys.insert(key)
                    reps.append(mask)
        mask += 1
    return connected, reps
