"""Exponential-time inner loops behind the exact oracles.

Every kernel exists twice: a numba ``@njit`` version and a pure numpy (or,
for the branch-and-bound search, pure Python) version.  The numba path is
used when numba imports and ``RELGRAPH_DISABLE_NUMBA`` is unset or ``0``.
Both paths must return identical arrays; ``tests/test_kernels.py`` checks
this and ``benchmarks/bench_kernels.py`` times them against each other.

Graphs enter as ``int64`` arrays of adjacency bitmasks, so n <= 62.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("RELGRAPH_DISABLE_NUMBA", "0").strip().lower() not in {"", "0", "false", "no"}

try:
    if _DISABLED:
        raise ImportError("numba disabled by RELGRAPH_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------- numpy path

def popcount_table_np(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        half = 1 << i
        pc[half:2 * half] = pc[:half] + 1
    return pc


def held_karp_table_np(adj: np.ndarray, n: int, start: int) -> np.ndarray:
    """reach[mask] = bitset of v such that some path from start covers exactly mask and ends at v."""
    reach = np.zeros(1 << n, dtype=np.int64)
    reach[1 << start] = 1 << start
    pc = popcount_table_np(n)
    masks = np.arange(1 << n, dtype=np.int64)
    masks = masks[(masks >> start) & 1 == 1]
    order = np.argsort(pc[masks], kind="stable")
    masks = masks[order]
    bounds = np.searchsorted(pc[masks], np.arange(n + 2))
    for p in range(1, n):
        layer = masks[bounds[p]:bounds[p + 1]]
        ends = reach[layer]
        live = ends != 0
        layer, ends = layer[live], ends[live]
        if layer.size == 0:
            continue
        nb = np.zeros_like(layer)
        for v in range(n):
            nb |= np.where((ends >> v) & 1 == 1, adj[v], 0)
        ext = nb & ~layer
        for w in range(n):
            sel = (ext >> w) & 1 == 1
            if sel.any():
                reach[layer[sel] | (1 << w)] |= 1 << w
    return reach


def closed_cover_table_np(closed: np.ndarray, n: int) -> np.ndarray:
    """cover[mask] = union of closed neighborhoods of the vertices in mask."""
    cover = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        half = 1 << i
        cover[half:2 * half] = cover[:half] | closed[i]
    return cover


def independent_table_np(adj: np.ndarray, n: int) -> np.ndarray:
    indep = np.zeros(1 << n, dtype=np.bool_)
    indep[0] = True
    idx = np.arange(1 << n, dtype=np.int64)
    for i in range(n):
        half = 1 << i
        indep[half:2 * half] = indep[:half] & ((idx[:half] & adj[i]) == 0)
    return indep


def zeta_np(a: np.ndarray, n: int) -> np.ndarray:
    """Subset-sum transform: out[X] = sum of a[S] over S subset of X."""
    a = a.astype(np.int64, copy=True)
    for i in range(n):
        view = a.reshape(-1, 2, 1 << i)
        view[:, 1, :] += view[:, 0, :]
    return a


def mobius_np(a: np.ndarray, n: int) -> np.ndarray:
    a = a.astype(np.int64, copy=True)
    for i in range(n):
        view = a.reshape(-1, 2, 1 << i)
        view[:, 1, :] -= view[:, 0, :]
    return a


def mis_search_py(adj: np.ndarray, n: int) -> int:
    """Lexicographically smallest maximum independent set, as a bitmask.

    Include-first branching on the lowest candidate vertex enumerates equal
    size sets in lexicographic order, and only strict improvements replace
    the incumbent, so the first maximum found is the smallest one.
    """
    adj_l = [int(x) for x in adj]
    best = [0, 0]  # size, mask

    def rec(cand: int, cur: int, size: int) -> None:
        if cand == 0:
            if size > best[0]:
                best[0], best[1] = size, cur
            return
        if size + cand.bit_count() <= best[0]:
            return
        low = cand & -cand
        v = low.bit_length() - 1
        rest = cand & ~low
        rec(rest & ~adj_l[v], cur | low, size + 1)
        if rest & adj_l[v]:
            rec(rest, cur, size)

    rec((1 << n) - 1, 0, 0)
    return best[1]


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def held_karp_table_nb(adj, n, start):
        size = 1 << n
        reach = np.zeros(size, dtype=np.int64)
        reach[1 << start] = 1 << start
        for mask in range(size):
            ends = reach[mask]
            if ends == 0:
                continue
            nb = 0
            for v in range(n):
                if (ends >> v) & 1:
                    nb |= adj[v]
            ext = nb & ~mask
            for w in range(n):
                if (ext >> w) & 1:
                    reach[mask | (1 << w)] |= 1 << w
        return reach

    @njit(cache=True)
    def closed_cover_table_nb(closed, n):
        cover = np.zeros(1 << n, dtype=np.int64)
        for i in range(n):
            half = 1 << i
            ci = closed[i]
            for j in range(half):
                cover[half + j] = cover[j] | ci
        return cover

    @njit(cache=True)
    def independent_table_nb(adj, n):
        indep = np.zeros(1 << n, dtype=np.bool_)
        indep[0] = True
        for i in range(n):
            half = 1 << i
            ai = adj[i]
            for j in range(half):
                indep[half + j] = indep[j] and (j & ai) == 0
        return indep

    @njit(cache=True)
    def zeta_nb(a, n):
        out = a.astype(np.int64).copy()
        for i in range(n):
            bit = 1 << i
            for x in range(1 << n):
                if x & bit:
                    out[x] += out[x ^ bit]
        return out

    @njit(cache=True)
    def mobius_nb(a, n):
        out = a.astype(np.int64).copy()
        for i in range(n):
            bit = 1 << i
            for x in range(1 << n):
                if x & bit:
                    out[x] -= out[x ^ bit]
        return out

    @njit(cache=True)
    def _popcount(x):
        c = 0
        while x:
            x &= x - 1
            c += 1
        return c

    @njit(cache=True)
    def mis_search_nb(adj, n):
        # Explicit DFS stack; stage 0 = enter, 1 = include done, 2 = exclude done.
        depth = n + 2
        cand = np.zeros(depth, dtype=np.int64)
        cur = np.zeros(depth, dtype=np.int64)
        size = np.zeros(depth, dtype=np.int64)
        stage = np.zeros(depth, dtype=np.int64)
        best_size = 0
        best = 0
        top = 0
        cand[0] = (1 << n) - 1
        while top >= 0:
            c = cand[top]
            if stage[top] == 0:
                if c == 0:
                    if size[top] > best_size:
                        best_size = size[top]
                        best = cur[top]
                    top -= 1
                    continue
                if size[top] + _popcount(c) <= best_size:
                    top -= 1
                    continue
                low = c & -c
                v = 0
                while (low >> v) != 1:
                    v += 1
                stage[top] = 1
                cand[top + 1] = (c & ~low) & ~adj[v]
                cur[top + 1] = cur[top] | low
                size[top + 1] = size[top] + 1
                stage[top + 1] = 0
                top += 1
            elif stage[top] == 1:
                low = c & -c
                v = 0
                while (low >> v) != 1:
                    v += 1
                rest = c & ~low
                stage[top] = 2
                if rest & adj[v]:
                    cand[top + 1] = rest
                    cur[top + 1] = cur[top]
                    size[top + 1] = size[top]
                    stage[top + 1] = 0
                    top += 1
            else:
                top -= 1
        return best


# ---------------------------------------------------------------- dispatch

if HAVE_NUMBA:
    held_karp_table = held_karp_table_nb
    closed_cover_table = closed_cover_table_nb
    independent_table = independent_table_nb
    zeta = zeta_nb
    mobius = mobius_nb

    def mis_search(adj, n):
        return int(mis_search_nb(adj, n))
else:
    held_karp_table = held_karp_table_np
    closed_cover_table = closed_cover_table_np
    independent_table = independent_table_np
    zeta = zeta_np
    mobius = mobius_np
    mis_search = mis_search_py

popcount_table = popcount_table_np


def as_masks(masks) -> np.ndarray:
    return np.asarray(list(masks), dtype=np.int64)
