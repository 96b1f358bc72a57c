"""Moving solutions between graphs at bounded edit distance.

These routines turn a solution of a nearby graph into a (weaker) solution
of the given one: independent sets shrink by a degree factor, colorings grow
by a refinement factor, and Hamiltonian cycles of a supergraph leave long
arcs of original edges.
"""

from __future__ import annotations

import heapq
import math

from .certificates import CycleOrder, Partition, VertexSet
from .errors import ContractError
from .graph import Graph, dist_edits, dist_maxdeg


def bounded_degree_independent_set(g: Graph) -> VertexSet:
    """Min-degree peeling: keep a minimum-degree vertex, drop its neighbors, repeat.

    Every kept vertex removes at most Delta + 1 vertices, so the result has
    at least ceil(n / (Delta + 1)) vertices.
    """
    alive = set(range(g.n))
    deg = {v: g.degree(v) for v in alive}
    heap = [(deg[v], v) for v in alive]
    heapq.heapify(heap)
    chosen = []
    while heap:
        d, v = heapq.heappop(heap)
        if v not in alive or d != deg[v]:
            continue
        chosen.append(v)
        removed = [v] + [u for u in g.adj[v] if u in alive]
        alive.difference_update(removed)
        for u in removed:
            for w in g.adj[u]:
                if w in alive:
                    deg[w] -= 1
                    heapq.heappush(heap, (deg[w], w))
    return VertexSet(frozenset(chosen))


def degeneracy_order(g: Graph) -> list[int]:
    """Repeatedly remove a minimum-degree vertex (lowest index on ties)."""
    deg = [g.degree(v) for v in range(g.n)]
    heap = [(deg[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    removed = [False] * g.n
    order = []
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        for u in g.adj[v]:
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return order


def greedy_coloring(g: Graph, order) -> Partition:
    color: dict[int, int] = {}
    for v in order:
        used = {color[u] for u in g.adj[v] if u in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    classes: dict[int, set[int]] = {}
    for v, c in color.items():
        classes.setdefault(c, set()).add(v)
    return Partition(tuple(classes.values()))


def sqrt2m_coloring(g: Graph) -> Partition:
    """Proper coloring with at most min(ceil(sqrt(2m)), Delta + 1) colors (one if m = 0).

    Greedy in reverse degeneracy order uses at most degeneracy + 1 colors,
    and a d-degenerate graph has at least d(d+1)/2 edges.
    """
    return greedy_coloring(g, reversed(degeneracy_order(g)))


def sqrt2m_bound(m: int) -> int:
    return max(1, math.isqrt(2 * m - 1) + 1) if m else 1


def refine_partition(p: Partition, q: Partition) -> Partition:
    """Common refinement: all nonempty intersections of a part of p with a part of q."""
    if frozenset().union(*p.parts) != frozenset().union(*q.parts):
        raise ContractError("partitions cover different ground sets")
    cells = [a & b for a in p.parts for b in q.parts if a & b]
    return Partition(tuple(cells))


def _check_proper(h: Graph, p: Partition) -> None:
    if frozenset().union(*p.parts) != frozenset(range(h.n)):
        raise ContractError("partition does not cover the vertex set")
    if sum(len(x) for x in p.parts) != h.n:
        raise ContractError("partition parts overlap")
    for part in p.parts:
        if h.induced_edges(part):
            raise ContractError("partition is not a proper coloring of h")


def transfer_is_maxdeg(g: Graph, s: VertexSet, d: int) -> VertexSet:
    """An independent set of g of size >= ceil(|s| / (d+1)) inside s.

    Requires max degree of g[s] to be at most d, which holds whenever s is
    independent in some graph within max-degree distance d of g.
    """
    vs = sorted(s.vertices)
    if g.induced_max_degree(vs) > d:
        raise ContractError(f"g[s] has max degree {g.induced_max_degree(vs)} > {d}")
    index = {v: i for i, v in enumerate(vs)}
    sub = Graph.from_edges(len(vs), [(index[u], index[v]) for u, v in g.induced_edges(vs)])
    picked = bounded_degree_independent_set(sub).vertices
    return VertexSet(frozenset(vs[i] for i in picked))


def transfer_coloring_maxdeg(g: Graph, h: Graph, p: Partition, d: int) -> Partition:
    """Proper coloring of g from a proper coloring p of h, with at most |p|(d+1) parts.

    The edges of g missing from h form a graph of max degree <= d, which is
    greedily (d+1)-colored; intersecting both colorings is proper for g.
    """
    _check_proper(h, p)
    if dist_maxdeg(g, h) > d:
        raise ContractError(f"graphs are farther than max-degree distance {d}")
    extra = Graph.from_edges(g.n, g.edge_set() - h.edge_set())
    q = greedy_coloring(extra, range(g.n))
    return refine_partition(p, q)


def coloring_edits_bound(t: int, budget: int) -> float:
    """t + sqrt(2 t D), the part-count guarantee of transfer_coloring_edits."""
    return t + math.sqrt(2 * t * budget)


def within_coloring_edits_bound(parts: int, t: int, budget: int) -> bool:
    """Exact test of parts <= t + sqrt(2 t D)."""
    extra = parts - t
    return extra <= 0 or extra * extra <= 2 * t * budget


def transfer_coloring_edits(g: Graph, h: Graph, p: Partition, budget: int) -> Partition:
    """Proper coloring of g from a proper coloring p = (P_1..P_t) of h.

    Each g[P_i] has a_i edges (all of them edits, so sum a_i <= D) and is
    recolored with at most ceil(sqrt(2 a_i)) colors; by Cauchy-Schwarz the
    total stays within t + sqrt(2 t D).
    """
    _check_proper(h, p)
    if dist_edits(g, h) > budget:
        raise ContractError(f"graphs are farther than {budget} edits")
    out = []
    for part in p.parts:
        vs = sorted(part)
        index = {v: i for i, v in enumerate(vs)}
        sub = Graph.from_edges(len(vs), [(index[u], index[v]) for u, v in g.induced_edges(vs)])
        for cls in sqrt2m_coloring(sub).parts:
            out.append(frozenset(vs[i] for i in cls))
    return Partition(tuple(out))


def extract_original_path(cycle: CycleOrder, g: Graph) -> list[int]:
    """Longest arc of ``cycle`` using only edges of g, as a vertex sequence.

    When every cycle edge is in g the whole cycle is returned, closed
    (first vertex repeated at the end, n edges).  Otherwise the arc has at
    least ceil((n - a) / a) edges, a being the number of non-g cycle edges.
    """
    order = list(cycle.order)
    n = len(order)
    if n != g.n or sorted(order) != list(range(n)):
        raise ContractError("cycle order is not a permutation of the vertices")
    if n == 0:
        return []
    if n < 3:
        return order[:1]
    good = [g.has_edge(order[i], order[(i + 1) % n]) for i in range(n)]
    if all(good):
        return order + [order[0]]
    if not any(good):
        return order[:1]
    # Start right after a missing edge so no arc wraps around.
    start = next(i for i in range(n) if not good[i]) + 1
    best_len, best_at, run, run_at = 0, start, 0, start
    for j in range(n):
        i = (start + j) % n
        if good[i]:
            if run == 0:
                run_at = i
            run += 1
            if run > best_len:
                best_len, best_at = run, run_at
        else:
            run = 0
    return [order[(best_at + j) % n] for j in range(best_len + 1)]
