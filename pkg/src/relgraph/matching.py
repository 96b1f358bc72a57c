"""Maximum-cardinality matching in general graphs (Edmonds' blossom algorithm).

Augmenting paths are grown by BFS from each free vertex; odd cycles
(blossoms) are contracted by redirecting ``base`` pointers.  O(n^3).
"""

from __future__ import annotations

from collections import deque

from .graph import Graph


def maximum_matching(g: Graph) -> list[int]:
    """Return ``mate`` with mate[v] = partner of v, or -1 when v is free."""
    n = g.n
    adj = [sorted(nb) for nb in g.adj]
    mate = [-1] * n

    # Greedy warm start; the augmenting phase fixes any suboptimality.
    for v in range(n):
        if mate[v] == -1:
            for u in adj[v]:
                if mate[u] == -1:
                    mate[v], mate[u] = u, v
                    break

    for root in range(n):
        if mate[root] != -1:
            continue
        end, parent = _find_augmenting_path(adj, mate, root)
        if end == -1:
            continue
        v = end
        while v != -1:
            pv = parent[v]
            nxt = mate[pv]
            mate[v], mate[pv] = pv, v
            v = nxt
    return mate


def _find_augmenting_path(adj, mate, root):
    n = len(adj)
    used = [False] * n
    parent = [-1] * n
    base = list(range(n))
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    return to, parent
                used[mate[to]] = True
                queue.append(mate[to])
    return -1, parent


def matching_pairs(mate: list[int]) -> list[tuple[int, int]]:
    return [(v, u) for v, u in enumerate(mate) if u > v]
