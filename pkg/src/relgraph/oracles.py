"""Exact exponential-time solvers, used as ground truth and small-n fallbacks.

Each oracle refuses inputs above its cutoff with :class:`CutoffError`.
Outputs are deterministic: ties between optimal witnesses are broken toward
the lexicographically smallest sorted vertex tuple.
"""

from __future__ import annotations

import numpy as np

from . import _kernels as K
from .certificates import (Certificate, CycleOrder, Nil, Partition, Problem,
                           VertexSet, normalize_cycle, pad_partition)
from .errors import ContractError, CutoffError
from .graph import Graph, Instance, complement

HAM_CUTOFF = 18
DOMSET_CUTOFF = 18
MIS_CUTOFF = 24
CHROMATIC_CUTOFF = 16


def _check(what: str, g: Graph, cutoff: int) -> None:
    if g.n > cutoff:
        raise CutoffError(what, g.n, cutoff)


def _masks(g: Graph) -> np.ndarray:
    return K.as_masks(g.bitmasks())


def _bits(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def _lex_smallest(cands: np.ndarray, n: int) -> int:
    """Among equal-size vertex masks pick the lexicographically smallest set.

    With vertex 0 as the most significant bit, the lexicographically smaller
    set is the numerically larger reversed mask.
    """
    rev = np.zeros_like(cands)
    for i in range(n):
        rev |= ((cands >> i) & 1) << (n - 1 - i)
    return int(cands[int(np.argmax(rev))])


def _backtrack(reach: np.ndarray, adj: list[int], full: int, end: int, start: int) -> list[int]:
    path = [end]
    mask = full
    v = end
    while v != start:
        mask ^= 1 << v
        preds = int(reach[mask]) & adj[v]
        u = (preds & -preds).bit_length() - 1
        path.append(u)
        v = u
    path.reverse()
    return path


def oracle_hamiltonian_cycle(g: Graph, cutoff: int = HAM_CUTOFF) -> CycleOrder | Nil:
    """Held-Karp over vertex subsets; Nil when no Hamiltonian cycle exists (always for n < 3)."""
    _check("hamiltonian cycle oracle", g, cutoff)
    n = g.n
    if n < 3:
        return Nil()
    adj = g.bitmasks()
    reach = K.held_karp_table(_masks(g), n, 0)
    full = (1 << n) - 1
    ends = int(reach[full]) & adj[0]
    if not ends:
        return Nil()
    end = (ends & -ends).bit_length() - 1
    return CycleOrder(normalize_cycle(_backtrack(reach, adj, full, end, 0)))


def oracle_hamiltonian_path(g: Graph, s: int, t: int, cutoff: int = HAM_CUTOFF) -> list[int] | None:
    """An s-t Hamiltonian path, or None."""
    _check("hamiltonian path oracle", g, cutoff)
    n = g.n
    if s == t:
        return [s] if n == 1 else None
    adj = g.bitmasks()
    reach = K.held_karp_table(_masks(g), n, s)
    full = (1 << n) - 1
    if not (int(reach[full]) >> t) & 1:
        return None
    return _backtrack(reach, adj, full, t, s)


def oracle_min_dominating_set(g: Graph, cutoff: int = DOMSET_CUTOFF) -> VertexSet:
    _check("dominating set oracle", g, cutoff)
    n = g.n
    if n == 0:
        return VertexSet(frozenset())
    closed = K.as_masks(m | (1 << v) for v, m in enumerate(g.bitmasks()))
    cover = K.closed_cover_table(closed, n)
    full = (1 << n) - 1
    pc = K.popcount_table(n)
    hits = np.nonzero(cover == full)[0]
    best = pc[hits].min()
    winner = _lex_smallest(hits[pc[hits] == best].astype(np.int64), n)
    return VertexSet(frozenset(_bits(winner)))


def oracle_max_independent_set(g: Graph, cutoff: int = MIS_CUTOFF) -> VertexSet:
    _check("independent set oracle", g, cutoff)
    if g.n == 0:
        return VertexSet(frozenset())
    return VertexSet(frozenset(_bits(K.mis_search(_masks(g), g.n))))


def oracle_chromatic_number(g: Graph, cutoff: int = CHROMATIC_CUTOFF) -> Partition:
    """An optimal proper coloring as a partition into independent sets.

    cover_k[X] says whether X is a union of k independent sets; it is
    built by iterating the union product with the independent-set table
    (zeta transform, pointwise product, Moebius transform) until the full
    vertex set appears.  The partition is then peeled off top-down.
    """
    _check("chromatic number oracle", g, cutoff)
    n = g.n
    if n == 0:
        return Partition(())
    full = (1 << n) - 1
    indep = K.independent_table(_masks(g), n)
    zi = K.zeta(indep.astype(np.int64), n)
    layers = [np.zeros(1 << n, dtype=np.bool_)]
    layers[0][0] = True
    while not layers[-1][full]:
        prod = K.zeta(layers[-1].astype(np.int64), n) * zi
        layers.append(K.mobius(prod, n) > 0)
    idx = np.arange(1 << n, dtype=np.int64)
    parts = []
    mask = full
    for k in range(len(layers) - 1, 0, -1):
        low = mask & -mask
        # I must be independent, inside mask, contain its lowest vertex, and
        # leave a remainder coverable by k-1 independent sets.
        ok = (indep & ((idx & ~mask) == 0) & ((idx & low) != 0)
              & layers[k - 1][mask & ~idx])
        cands = idx[ok]
        if not cands.size:
            raise AssertionError("chromatic reconstruction failed")
        part = _lex_smallest(cands, n)
        parts.append(frozenset(_bits(part)))
        mask &= ~part
    return Partition(tuple(parts))


def oracle_max_clique(g: Graph, cutoff: int = MIS_CUTOFF) -> VertexSet:
    return oracle_max_independent_set(complement(g), cutoff)


def oracle_min_vertex_cover(g: Graph, cutoff: int = MIS_CUTOFF) -> VertexSet:
    mis = oracle_max_independent_set(g, cutoff)
    return VertexSet(frozenset(range(g.n)) - mis.vertices)


def oracle_clique_cover(g: Graph, cutoff: int = CHROMATIC_CUTOFF) -> Partition:
    """A minimum partition into cliques (its length is the clique cover number)."""
    return oracle_chromatic_number(complement(g), cutoff)


def oracle_clique_cover_number(g: Graph, cutoff: int = CHROMATIC_CUTOFF) -> int:
    return len(oracle_clique_cover(g, cutoff))


DEFAULT_CUTOFF = {
    Problem.HAMILTONIAN_CYCLE: HAM_CUTOFF,
    Problem.DOMINATING_SET: DOMSET_CUTOFF,
    Problem.INDEPENDENT_SET: MIS_CUTOFF,
    Problem.CLIQUE: MIS_CUTOFF,
    Problem.VERTEX_COVER: MIS_CUTOFF,
    Problem.COLORING: CHROMATIC_CUTOFF,
    Problem.CLIQUE_COVER: CHROMATIC_CUTOFF,
}


def oracle_solve(problem: Problem, inst: Instance, cutoff: int | None = None) -> Certificate:
    """Exact answer: a witness of size exactly k (or a cycle), else Nil."""
    problem = Problem(problem)
    g, k = inst.graph, inst.k
    if cutoff is None:
        cutoff = DEFAULT_CUTOFF[problem]
    if problem is Problem.HAMILTONIAN_CYCLE:
        return oracle_hamiltonian_cycle(g, cutoff)
    if k is None:
        raise ContractError(f"{problem.value} needs a threshold k")
    if problem is Problem.DOMINATING_SET:
        best = oracle_min_dominating_set(g, cutoff).vertices
        if len(best) > k:
            return Nil()
        extra = sorted(set(range(g.n)) - best)[:k - len(best)]
        return VertexSet(best | frozenset(extra))
    if problem in (Problem.INDEPENDENT_SET, Problem.CLIQUE):
        fn = oracle_max_independent_set if problem is Problem.INDEPENDENT_SET else oracle_max_clique
        best = sorted(fn(g, cutoff).vertices)
        return VertexSet(frozenset(best[:k])) if len(best) >= k else Nil()
    if problem is Problem.VERTEX_COVER:
        best = oracle_min_vertex_cover(g, cutoff).vertices
        if len(best) > k:
            return Nil()
        extra = sorted(set(range(g.n)) - best)[:k - len(best)]
        return VertexSet(best | frozenset(extra))
    fn = oracle_chromatic_number if problem is Problem.COLORING else oracle_clique_cover
    part = fn(g, cutoff)
    if len(part) > k:
        return Nil()
    return Partition(tuple(pad_partition(part.parts, k)))


def oracle_decide(problem: Problem, inst: Instance, cutoff: int | None = None) -> bool:
    return not isinstance(oracle_solve(problem, inst, cutoff), Nil)
