"""Pure-Python/numpy versions of the hot kernels.

Used when the compiled ``_kernels`` extension is unavailable, or when
``SPECTRABOUND_PURE=1``. Both implementations follow identical arithmetic
so results agree to rounding.
"""

from __future__ import annotations

import numpy as np


def power_iterate(B, tol, max_iter):
    """Power iteration on ``B + I`` from the all-ones vector.

    Returns ``(rho, x, residual, iterations, converged)`` where ``x`` is
    normalized to max-entry 1 and ``residual = |Bx - rho x|_inf / rho``.
    """
    B = np.ascontiguousarray(B, dtype=np.float64)
    n = B.shape[0]
    x = np.ones(n)
    z = B @ x
    rho = 0.0
    residual = np.inf
    it = 0
    while it < max_iter:
        it += 1
        y = z + x
        lam = y.max()
        if lam <= 0.0:
            break
        x = y / lam
        z = B @ x
        rho = float(x @ z) / float(x @ x)
        if rho <= 0.0:
            continue
        residual = float(np.abs(z - rho * x).max()) / rho
        if residual <= tol:
            return rho, x, residual, it, True
    return rho, x, residual, it, False


def bfs_distances(adj):
    """All-pairs hop distances of the dense 0/1 arc matrix ``adj``.

    Unreachable pairs are ``-1``.
    """
    adj = np.asarray(adj)
    n = adj.shape[0]
    nbrs = [np.flatnonzero(adj[i]).tolist() for i in range(n)]
    dist = np.full((n, n), -1, dtype=np.int64)
    for src in range(n):
        row = dist[src]
        row[src] = 0
        frontier = [src]
        level = 0
        while frontier:
            level += 1
            nxt = []
            for u in frontier:
                for v in nbrs[u]:
                    if row[v] < 0:
                        row[v] = level
                        nxt.append(v)
            frontier = nxt
    return dist


def _popcount(x):
    return bin(x).count("1")


def enumerate_bipartite(a, b):
    """Enumerate connected spanning subgraphs of K_{a,b}.

    Edge ``(i, a + j)`` is bit ``i*b + j`` of the mask. Graphs are
    deduplicated on the per-part multisets of ``(degree, neighbour degree
    sum)``, which fix every quantity the chain test looks at. Returns
    ``(connected_count, representative_masks)``.
    """
    n = a + b
    full = (1 << n) - 1
    row_mask = (1 << b) - 1
    seen_keys = {}
    connected = 0
    for mask in range(1 << (a * b)):
        nb = [0] * n
        ok = True
        for i in range(a):
            row = (mask >> (i * b)) & row_mask
            if not row:
                ok = False
                break
            nb[i] = row << a
            for j in range(b):
                if row >> j & 1:
                    nb[a + j] |= 1 << i
        if not ok:
            continue
        if 0 in nb[a:]:
            continue
        reach = 1
        frontier = 1
        while frontier:
            new = 0
            v = 0
            f = frontier
            while f:
                if f & 1:
                    new |= nb[v]
                f >>= 1
                v += 1
            frontier = new & ~reach
            reach |= new
        if reach != full:
            continue
        connected += 1
        deg = [_popcount(x) for x in nb]
        codes = []
        for v in range(n):
            s = 0
            f = nb[v]
            w = 0
            while f:
                if f & 1:
                    s += deg[w]
                f >>= 1
                w += 1
            codes.append(deg[v] * 128 + s)
        ku = tuple(sorted(codes[:a]))
        kw = tuple(sorted(codes[a:]))
        key = (ku, kw) if (a != b or ku <= kw) else (kw, ku)
        if key not in seen_keys:
            seen_keys[key] = mask
    return connected, list(seen_keys.values())
