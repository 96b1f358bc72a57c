"""Polynomial-time REL solvers: answer a nearby instance within the budget.

One solver per (problem, metric) pair in the tractable regime:

=============  ==========  ===========
problem        metric      budget d(n)
=============  ==========  ===========
ham            maxdeg      1
ham            edits       n/3
ds             edits       n/e
is/clique/vc   maxdeg      n^(1/2)
is/clique/vc   edits       n^(4/3)
coloring/cc    maxdeg      n^(1/2)
coloring/cc    edits       n^(4/3)
=============  ==========  ===========

Every solver is deterministic; planted sets and partitions use the lowest
vertex indices.  :func:`solve` accepts a seed, which relabels the input by
a random permutation before solving and maps the answer back.
"""

from __future__ import annotations

import enum
import math
import random
from fractions import Fraction
from typing import Callable, Sequence

from . import oracles
from .budget import Budget, BudgetRule, Metric, iroot
from .certificates import (CliquePartition, CoverageShortfall, CycleOrder,
                           IsolatedVertex, Nil, Partition, PlantedIndependentSet,
                           Problem, RelAnswer, SeparatorPair, VertexSet,
                           normalize_cycle)
from .errors import ContractError
from .graph import (EditSet, Graph, Instance, complement, dist,
                    norm_edge, symmetric_difference)
from .matching import maximum_matching

BUDGET_RULES: dict[tuple[Problem, Metric], BudgetRule] = {
    (Problem.HAMILTONIAN_CYCLE, Metric.MAXDEG): BudgetRule.ONE,
    (Problem.HAMILTONIAN_CYCLE, Metric.EDITS): BudgetRule.THIRD,
    (Problem.DOMINATING_SET, Metric.EDITS): BudgetRule.OVER_E,
}
for _p in (Problem.INDEPENDENT_SET, Problem.CLIQUE, Problem.VERTEX_COVER,
           Problem.COLORING, Problem.CLIQUE_COVER):
    BUDGET_RULES[(_p, Metric.MAXDEG)] = BudgetRule.SQRT
    BUDGET_RULES[(_p, Metric.EDITS)] = BudgetRule.FOUR_THIRDS


def budget_for(problem: Problem | str, kind: Metric | str, n: int) -> Budget:
    key = (Problem(problem), Metric(kind))
    if key not in BUDGET_RULES:
        raise ContractError(f"no solver for {key[0].value} under {key[1].value}; "
                            f"supported: {supported_pairs()}")
    return Budget(key[1], BUDGET_RULES[key], n)


def supported_pairs() -> str:
    return ", ".join(f"{p.value}/{m.value}" for p, m in BUDGET_RULES)


def _answer(original: Graph, edited: Graph, k, positive: bool, certificate,
            budget: Budget) -> RelAnswer:
    return RelAnswer(
        edited=Instance(edited, k),
        edits=symmetric_difference(original, edited),
        positive=positive,
        certificate=certificate,
        distance=dist(original, edited, budget.kind),
        budget=budget,
    )


def _with_edits(g: Graph, adds=(), dels=()) -> Graph:
    edges = set(g.edges())
    edges.difference_update(norm_edge(u, v) for u, v in dels)
    edges.update(norm_edge(u, v) for u, v in adds)
    return Graph.from_edges(g.n, edges)


def _need_k(inst: Instance) -> int:
    if inst.k is None:
        raise ContractError("this problem needs a threshold k")
    return inst.k


# ------------------------------------------------------------ Hamiltonicity

def _separator_pair(g: Graph) -> SeparatorPair:
    comps = g.components()
    return SeparatorPair(comps[0][0], comps[1][0])


def rel_ham_maxdeg(g: Graph) -> RelAnswer:
    """Hamiltonian cycle within max-degree distance 1, via a maximum matching.

    Matched pairs u_i v_i are chained by the link edges v_i u_{i+1} (plus a
    closing edge); each vertex receives at most one link, so the edit graph
    is a matching.
    """
    budget = budget_for(Problem.HAMILTONIAN_CYCLE, Metric.MAXDEG, g.n)
    n = g.n
    if n < 3:
        return _answer(g, g, None, False, Nil(), budget)
    if not g.is_connected():
        return _answer(g, g, None, False, Nil(_separator_pair(g)), budget)
    mate = maximum_matching(g)
    pairs = sorted((v, u) for v, u in enumerate(mate) if u > v)
    if len(pairs) < n // 2:
        return _answer(g, g, None, False, Nil(), budget)

    order: list[int] = []
    if n % 2:
        free = next(v for v in range(n) if mate[v] == -1)
        # Connectivity gives the free vertex a matched neighbor; make that
        # neighbor u_1 by moving its pair to the front, oriented toward it.
        w = min(g.adj[free])
        first = next(p for p in pairs if w in p)
        pairs.remove(first)
        pairs.insert(0, (w, mate[w]))
        order.append(free)
    for u, v in pairs:
        order.extend((u, v))
    adds = [(order[i], order[i + 1]) for i in range(n - 1)
            if not g.has_edge(order[i], order[i + 1])]
    if not g.has_edge(order[-1], order[0]):
        adds.append((order[-1], order[0]))
    h = _with_edits(g, adds=adds)
    return _answer(g, h, None, True, CycleOrder(normalize_cycle(order)), budget)


def _grow(g: Graph, path: list[int], on_path: set[int]) -> None:
    """Extend the path greedily at either end while an outside neighbor exists."""
    while True:
        grew = False
        for end in (-1, 0):
            outside = g.adj[path[end]] - on_path
            if outside:
                w = min(outside)
                on_path.add(w)
                if end == -1:
                    path.append(w)
                else:
                    path.insert(0, w)
                grew = True
                break
        if not grew:
            return


def _rotate(g: Graph, path: list[int], on_path: set[int]) -> list[int] | None:
    """Path on h+1 vertices from a crossing pair v1~v_{i+1}, v_i~v_h, or None.

    The pair closes the path into a cycle; cutting that cycle next to a
    vertex with an outside neighbor and prepending the neighbor yields the
    longer path.
    """
    h = len(path)
    first, last = path[0], path[-1]
    for i in range(h - 1):
        if g.has_edge(first, path[i + 1]) and g.has_edge(path[i], last):
            # cycle: v_1..v_i, v_h..v_{i+1}, back to v_1
            cyc = path[:i + 1] + path[i + 1:][::-1]
            for j, x in enumerate(cyc):
                outside = g.adj[x] - on_path
                if outside:
                    w = min(outside)
                    # walk the cycle from x away from its predecessor
                    walk = cyc[j:] + cyc[:j]
                    return [w] + walk
            return None
    return None


def rel_ham_edits(g: Graph) -> RelAnswer:
    """Hamiltonian cycle within n/3 edge edits by greedy path growth.

    Let P = v_1..v_h be a maximal greedy path.  Then one of:

    * h = n: close the cycle (at most one added edge);
    * 3h >= 2n + 3: thread the n - h leftover vertices into the cycle
      (at most n - h + 1 <= n/3 added edges);
    * g disconnected: it is already non-Hamiltonian;
    * a crossing pair exists: rotate to a strictly longer path and repeat;
    * otherwise deg(v_1) + deg(v_h) <= h - 1, so an endpoint has degree
      at most (h-1)/2 <= n/3; deleting its edges isolates it.
    """
    budget = budget_for(Problem.HAMILTONIAN_CYCLE, Metric.EDITS, g.n)
    n = g.n
    if n < 3:
        return _answer(g, g, None, False, Nil(), budget)
    connected = g.is_connected()
    path = [0]
    on_path = {0}
    while True:
        _grow(g, path, on_path)
        h = len(path)
        if h == n:
            adds = [] if g.has_edge(path[-1], path[0]) else [(path[-1], path[0])]
            h_graph = _with_edits(g, adds=adds)
            return _answer(g, h_graph, None, True, CycleOrder(normalize_cycle(path)), budget)
        if 3 * h >= 2 * n + 3:
            rest = [v for v in range(n) if v not in on_path]
            order = path + rest
            adds = [(order[i], order[(i + 1) % n]) for i in range(n)
                    if not g.has_edge(order[i], order[(i + 1) % n])]
            h_graph = _with_edits(g, adds=adds)
            return _answer(g, h_graph, None, True, CycleOrder(normalize_cycle(order)), budget)
        if not connected:
            return _answer(g, g, None, False, Nil(_separator_pair(g)), budget)
        longer = _rotate(g, path, on_path)
        if longer is not None:
            path = longer
            on_path.add(path[0])
            continue
        v = min((path[0], path[-1]), key=lambda x: (g.degree(x), x))
        h_graph = _with_edits(g, dels=[(v, u) for u in g.adj[v]])
        return _answer(g, h_graph, None, False, Nil(IsolatedVertex(v)), budget)


# ---------------------------------------------------------- Dominating set

def coverage_threshold(n: int, k: int) -> Fraction:
    """(1 - (1 - 1/k)^k) * n, the greedy k-coverage guarantee when OPT = n."""
    if k < 1:
        raise ValueError("k must be positive")
    return (1 - (1 - Fraction(1, k)) ** k) * n


def greedy_max_coverage(g: Graph, k: int) -> tuple[list[int], set[int]]:
    """k rounds of greedy maximum coverage over closed neighborhoods.

    Each round picks the vertex covering the most new vertices (lowest index
    on ties); once everything is covered the remaining picks are the lowest
    unused indices, so exactly min(k, n) distinct vertices are returned.
    """
    covered: set[int] = set()
    picks: list[int] = []
    chosen: set[int] = set()
    for _ in range(min(k, g.n)):
        best, gain = -1, -1
        for v in range(g.n):
            if v in chosen:
                continue
            c = len(g.closed_neighborhood(v) - covered)
            if c > gain:
                best, gain = v, c
        picks.append(best)
        chosen.add(best)
        covered |= g.closed_neighborhood(best)
    return picks, covered


def rel_domset_edits(inst: Instance) -> RelAnswer:
    """Dominating set of size k within n/e added edges, via greedy k-coverage."""
    g = inst.graph
    k = _need_k(inst)
    n = g.n
    budget = budget_for(Problem.DOMINATING_SET, Metric.EDITS, n)
    if k == 0:
        if n == 0:
            return _answer(g, g, k, True, VertexSet(frozenset()), budget)
        return _answer(g, g, k, False, Nil(IsolatedVertex(0)) if g.degree(0) == 0 else Nil(), budget)
    picks, covered = greedy_max_coverage(g, k)
    bound = coverage_threshold(n, k)
    if len(covered) < bound:
        return _answer(g, g, k, False, Nil(CoverageShortfall(len(covered), bound)), budget)
    v = picks[0]
    uncovered = [x for x in range(n) if x not in covered]
    h = _with_edits(g, adds=[(v, x) for x in uncovered])
    return _answer(g, h, k, True, VertexSet(frozenset(picks)), budget)


# ------------------------------------------------------- Independent set

def _blocks(vertices: Sequence[int], parts: int) -> list[list[int]]:
    """Split into `parts` contiguous blocks whose sizes differ by at most one."""
    size, extra = divmod(len(vertices), parts)
    out, i = [], 0
    for j in range(parts):
        step = size + (1 if j < extra else 0)
        out.append(list(vertices[i:i + step]))
        i += step
    return out


def _complete_parts(g: Graph, parts) -> Graph:
    adds = [(u, v) for p in parts for a, u in enumerate(p) for v in p[a + 1:]
            if not g.has_edge(u, v)]
    return _with_edits(g, adds=adds)


def _clear_set(g: Graph, s: Sequence[int]) -> Graph:
    return _with_edits(g, dels=g.induced_edges(s))


def _oracle_fallback(problem: Problem, inst: Instance, budget: Budget) -> RelAnswer:
    """Exact answer at distance 0, for sizes where a branch would overshoot."""
    g = inst.graph
    cert = oracles.oracle_solve(problem, inst)
    return _answer(g, g, inst.k, not isinstance(cert, Nil), cert, budget)


def rel_is_maxdeg(inst: Instance) -> RelAnswer:
    """Independent set of size k within max-degree distance sqrt(n)."""
    g = inst.graph
    k = _need_k(inst)
    n = g.n
    budget = budget_for(Problem.INDEPENDENT_SET, Metric.MAXDEG, n)
    if k == 0:
        return _answer(g, g, k, True, VertexSet(frozenset()), budget)
    r = math.isqrt(n)
    if k <= r + 1:
        s = list(range(min(r + 1, n)))
        h = _clear_set(g, s)
        return _answer(g, h, k, True, VertexSet(frozenset(s[:k])), budget)
    parts = _blocks(range(n), k - 1)
    h = _complete_parts(g, parts)
    return _answer(g, h, k, False, Nil(CliquePartition(parts)), budget)


def rel_is_edits(inst: Instance) -> RelAnswer:
    """Independent set of size k within n^(4/3) edge edits."""
    g = inst.graph
    k = _need_k(inst)
    n = g.n
    budget = budget_for(Problem.INDEPENDENT_SET, Metric.EDITS, n)
    t = iroot(n * n, 3)
    if k <= t:
        s = list(range(k))
        h = _clear_set(g, s)
        ans = _answer(g, h, k, True, VertexSet(frozenset(s)), budget)
    else:
        parts = _blocks(range(n), t)
        h = _complete_parts(g, parts)
        ans = _answer(g, h, k, False, Nil(CliquePartition(parts)), budget)
    if not budget.admits(ans.distance):
        return _oracle_fallback(Problem.INDEPENDENT_SET, inst, budget)
    return ans


# ----------------------------------------------------------- Clique cover

def cliquecover_cutover(n: int, kind: Metric | str) -> int:
    """Smallest k for which the clique-cover solvers take the positive branch."""
    kind = Metric(kind)
    if n == 0:
        return 0
    if kind is Metric.MAXDEG:
        part = math.isqrt(n) + 1
    else:
        c = iroot(n, 3)
        if c ** 3 < n:
            c += 1
        part = c + 1
    return -(-n // part)


def _rel_cliquecover(inst: Instance, kind: Metric) -> RelAnswer:
    g = inst.graph
    k = _need_k(inst)
    n = g.n
    budget = budget_for(Problem.CLIQUE_COVER, kind, n)
    if k >= cliquecover_cutover(n, kind):
        parts = _blocks(range(n), k) if k else []
        h = _complete_parts(g, parts)
        ans = _answer(g, h, k, True, Partition(tuple(parts)), budget)
    else:
        s = list(range(k + 1))
        h = _clear_set(g, s)
        ans = _answer(g, h, k, False, Nil(PlantedIndependentSet(frozenset(s))), budget)
    if not budget.admits(ans.distance):
        return _oracle_fallback(Problem.CLIQUE_COVER, inst, budget)
    return ans


def rel_cliquecover_maxdeg(inst: Instance) -> RelAnswer:
    """Partition into k cliques within max-degree distance sqrt(n)."""
    return _rel_cliquecover(inst, Metric.MAXDEG)


def rel_cliquecover_edits(inst: Instance) -> RelAnswer:
    """Partition into k cliques within n^(4/3) edge edits."""
    return _rel_cliquecover(inst, Metric.EDITS)


# ------------------------------------------------- Length-preserving maps

class IsoMap(str, enum.Enum):
    """Involutive instance maps that preserve both metrics.

    COMPLEMENT_GRAPH sends (G, k) to (complement G, k) and pulls certificates
    back unchanged.  THRESHOLD_FLIP sends (G, k) to (G, n - k) and pulls a
    vertex set back to its complement.
    """

    COMPLEMENT_GRAPH = "complement"
    THRESHOLD_FLIP = "flip"

    def apply(self, inst: Instance) -> Instance:
        if self is IsoMap.COMPLEMENT_GRAPH:
            return Instance(complement(inst.graph), inst.k)
        return Instance(inst.graph, None if inst.k is None else inst.n - inst.k)

    inverse = apply  # both maps are involutions

    def pull_certificate(self, cert, n: int):
        if self is IsoMap.THRESHOLD_FLIP and isinstance(cert, VertexSet):
            return VertexSet(frozenset(range(n)) - cert.vertices)
        return cert

    def pull_edits(self, edits: EditSet) -> EditSet:
        return edits.swapped() if self is IsoMap.COMPLEMENT_GRAPH else edits


def rel_via_isomorphism(target: Problem, iso: IsoMap, inner: Callable[[Instance], RelAnswer],
                        inst: Instance) -> RelAnswer:
    """Solve ``target`` on inst by solving the image instance with ``inner``.

    Negativity hints are left as stated for the image instance; the verifier
    evaluates them through the same map.
    """
    image = iso.apply(inst)
    inner_ans = inner(image)
    edited = iso.inverse(inner_ans.edited)
    budget = Budget(inner_ans.budget.kind, BUDGET_RULES[(Problem(target), inner_ans.budget.kind)], inst.n)
    return RelAnswer(
        edited=edited,
        edits=iso.pull_edits(inner_ans.edits),
        positive=inner_ans.positive,
        certificate=iso.pull_certificate(inner_ans.certificate, inst.n),
        distance=inner_ans.distance,
        budget=budget,
    )


# ---------------------------------------------------------------- registry

def _ham(fn):
    def run(inst: Instance) -> RelAnswer:
        return fn(inst.graph)
    return run


def _via(target, iso, inner):
    def run(inst: Instance) -> RelAnswer:
        return rel_via_isomorphism(target, iso, inner, inst)
    return run


SOLVERS: dict[tuple[Problem, Metric], Callable[[Instance], RelAnswer]] = {
    (Problem.HAMILTONIAN_CYCLE, Metric.MAXDEG): _ham(rel_ham_maxdeg),
    (Problem.HAMILTONIAN_CYCLE, Metric.EDITS): _ham(rel_ham_edits),
    (Problem.DOMINATING_SET, Metric.EDITS): rel_domset_edits,
    (Problem.INDEPENDENT_SET, Metric.MAXDEG): rel_is_maxdeg,
    (Problem.INDEPENDENT_SET, Metric.EDITS): rel_is_edits,
    (Problem.CLIQUE_COVER, Metric.MAXDEG): rel_cliquecover_maxdeg,
    (Problem.CLIQUE_COVER, Metric.EDITS): rel_cliquecover_edits,
    (Problem.CLIQUE, Metric.MAXDEG): _via(Problem.CLIQUE, IsoMap.COMPLEMENT_GRAPH, rel_is_maxdeg),
    (Problem.CLIQUE, Metric.EDITS): _via(Problem.CLIQUE, IsoMap.COMPLEMENT_GRAPH, rel_is_edits),
    (Problem.VERTEX_COVER, Metric.MAXDEG): _via(Problem.VERTEX_COVER, IsoMap.THRESHOLD_FLIP, rel_is_maxdeg),
    (Problem.VERTEX_COVER, Metric.EDITS): _via(Problem.VERTEX_COVER, IsoMap.THRESHOLD_FLIP, rel_is_edits),
    (Problem.COLORING, Metric.MAXDEG): _via(Problem.COLORING, IsoMap.COMPLEMENT_GRAPH, rel_cliquecover_maxdeg),
    (Problem.COLORING, Metric.EDITS): _via(Problem.COLORING, IsoMap.COMPLEMENT_GRAPH, rel_cliquecover_edits),
}

# Problem each hint is stated for, and the map from the original instance.
HINT_FRAME: dict[Problem, tuple[Problem, IsoMap | None]] = {
    Problem.HAMILTONIAN_CYCLE: (Problem.HAMILTONIAN_CYCLE, None),
    Problem.DOMINATING_SET: (Problem.DOMINATING_SET, None),
    Problem.INDEPENDENT_SET: (Problem.INDEPENDENT_SET, None),
    Problem.CLIQUE_COVER: (Problem.CLIQUE_COVER, None),
    Problem.CLIQUE: (Problem.INDEPENDENT_SET, IsoMap.COMPLEMENT_GRAPH),
    Problem.VERTEX_COVER: (Problem.INDEPENDENT_SET, IsoMap.THRESHOLD_FLIP),
    Problem.COLORING: (Problem.CLIQUE_COVER, IsoMap.COMPLEMENT_GRAPH),
}


def _relabel_answer(ans: RelAnswer, inv: Sequence[int], original: Instance) -> RelAnswer:
    """Map an answer computed on a relabeled graph back to the original labels."""
    def vs(s):
        return frozenset(inv[v] for v in s)

    cert = ans.certificate
    if isinstance(cert, CycleOrder):
        cert = CycleOrder(normalize_cycle(inv[v] for v in cert.order))
    elif isinstance(cert, VertexSet):
        cert = VertexSet(vs(cert.vertices))
    elif isinstance(cert, Partition):
        cert = Partition(tuple(vs(p) for p in cert.parts))
    else:
        hint = cert.hint
        if isinstance(hint, IsolatedVertex):
            hint = IsolatedVertex(inv[hint.v])
        elif isinstance(hint, SeparatorPair):
            hint = SeparatorPair(inv[hint.a], inv[hint.b])
        elif isinstance(hint, CliquePartition):
            hint = CliquePartition(tuple(vs(p) for p in hint.parts))
        elif isinstance(hint, PlantedIndependentSet):
            hint = PlantedIndependentSet(vs(hint.vertices))
        cert = Nil(hint)
    edited = ans.edited.graph.relabel(inv)
    return RelAnswer(
        edited=Instance(edited, ans.edited.k),
        edits=symmetric_difference(original.graph, edited),
        positive=ans.positive,
        certificate=cert,
        distance=ans.distance,
        budget=ans.budget,
    )


def solve(problem: Problem | str, kind: Metric | str, inst: Instance,
          seed: int | None = None) -> RelAnswer:
    """Dispatch to the solver for (problem, metric)."""
    key = (Problem(problem), Metric(kind))
    if key not in SOLVERS:
        raise ContractError(f"no solver for {key[0].value} under {key[1].value}; "
                            f"supported: {supported_pairs()}")
    if key[0].needs_threshold and inst.k is None:
        raise ContractError(f"{key[0].value} needs a threshold k")
    if seed is None:
        return SOLVERS[key](inst)
    perm = list(range(inst.n))
    random.Random(seed).shuffle(perm)
    inv = [0] * inst.n
    for v, p in enumerate(perm):
        inv[p] = v
    shuffled = Instance(inst.graph.relabel(perm), inst.k)
    return _relabel_answer(SOLVERS[key](shuffled), inv, inst)
