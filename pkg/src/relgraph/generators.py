"""Robust instance generators and their witness machinery.

* Hamiltonicity gadgets: a subcubic source graph H with degree-1 terminals
  s, t is copied around a ring (t of one copy is s of the next), every inner
  vertex becomes a clique and every inner edge a connector vertex joined to
  both cliques.  Positive instances stay Hamiltonian under deletions, and a
  Hamiltonian s-t path of one copy reads back as one of H.
* Dominating-set blow-up: every vertex becomes a clique, adjacent vertices
  become fully joined cliques.

The size parameter q depends on n, which depends on q; the value is found
by a monotone search (see :func:`solve_q_fixed_point`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .budget import floor_power
from .certificates import CycleOrder, VertexSet, normalize_cycle
from .errors import ContractError, ParseError
from .graph import Graph, Instance

ROBUST = "ham-robust"
BARRIER = "ham-barrier"
BLOWUP = "domset-blowup"
VARIANTS = (ROBUST, BARRIER, BLOWUP)

_Q_SEARCH_LIMIT = 1 << 16


def as_fraction(beta) -> Fraction:
    try:
        return Fraction(str(beta)) if not isinstance(beta, Fraction) else beta
    except (ValueError, ZeroDivisionError) as exc:
        raise ContractError(f"beta must be a rational number, got {beta!r}") from exc


def _vertex_count(variant: str, q: int, nu: int, m: int) -> int:
    if variant == ROBUST:
        return 2 * q * ((nu - 2) * (q + 2) + m - 1)
    if variant == BARRIER:
        return 2 * ((nu - 2) * q + m - 1)
    return q * nu


def _required_q(variant: str, n: int, beta: Fraction) -> int:
    if variant == ROBUST:
        return floor_power(n, Fraction(1, 2) - beta) + 1
    if variant == BARRIER:
        return floor_power(n, 1 - beta) + 3
    return 2 * floor_power(n, 1 - beta) + 1


def _check_beta(variant: str, beta: Fraction) -> None:
    upper = Fraction(1, 2) if variant == ROBUST else Fraction(1)
    if not 0 < beta < upper:
        raise ContractError(f"beta must lie in (0, {upper}) for {variant}, got {beta}")


def solve_q_fixed_point(nu: int, edges: int, beta, variant: str) -> int:
    """Smallest q with q = f(n(q)), else smallest q with q >= f(n(q)).

    f is the variant's size rule (floor(n^(1/2 - beta)) + 1 for the robust
    gadget, floor(n^(1 - beta)) + 3 for the barrier, 2 floor(n^(1 - beta)) + 1
    for the blow-up) and n(q) the resulting vertex count.  A larger q only
    adds robustness, so the fallback is sound.
    """
    if variant not in VARIANTS:
        raise ContractError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    beta = as_fraction(beta)
    _check_beta(variant, beta)
    start = 3 if variant == BARRIER else 1
    fallback = None
    q = start
    while q <= _Q_SEARCH_LIMIT:
        need = _required_q(variant, _vertex_count(variant, q, nu, edges), beta)
        if need == q:
            return q
        if need < q and fallback is None:
            fallback = q
        if fallback is not None and q >= 2 * fallback + 8:
            break
        q += 1
    if fallback is None:
        raise ContractError(f"no admissible q up to {_Q_SEARCH_LIMIT}; beta={beta} is too small for this source")
    return fallback


# ------------------------------------------------------------ Hamiltonicity

@dataclass(frozen=True)
class HamGadgetMeta:
    """Roles of the gadget's vertices.

    roles[x] is one of ("junction", i), ("clique", i, u, idx) or
    ("connector", i, u, v) with u < v; junction i is s of copy i and t of
    copy i - 1 (cyclically).
    """

    variant: str
    q: int
    beta: Fraction
    copies: int
    clique_size: int
    source: Graph
    s: int
    t: int
    roles: tuple[tuple, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.roles)

    @cached_property
    def _index(self) -> dict[tuple, int]:
        return {r: x for x, r in enumerate(self.roles)}

    def junction(self, i: int) -> int:
        return self._index[("junction", i % self.copies)]

    def clique(self, i: int, u: int) -> list[int]:
        return [self._index[("clique", i, u, j)] for j in range(self.clique_size)]

    def connector(self, i: int, u: int, v: int) -> int:
        """The vertex standing for edge uv of copy i (a junction when u or v is a terminal)."""
        a, b = min(u, v), max(u, v)
        if self.s in (a, b):
            return self.junction(i)
        if self.t in (a, b):
            return self.junction(i + 1)
        return self._index[("connector", i, a, b)]

    def copy_vertices(self, i: int) -> set[int]:
        out = {self.junction(i), self.junction(i + 1)}
        out.update(x for x, r in enumerate(self.roles) if r[0] != "junction" and r[1] == i)
        return out

    @property
    def deletion_allowance(self) -> int:
        """Deletions under which cycles are reconstructed: clique size minus 3."""
        return self.clique_size - 3

    def graph(self) -> Graph:
        return _gadget_edges_graph(self)


def _validate_source(h: Graph, s: int, t: int) -> None:
    if h.n < 3:
        raise ContractError(f"source graph needs at least 3 vertices, has {h.n}")
    for name, v in (("s", s), ("t", t)):
        if not 0 <= v < h.n:
            raise ContractError(f"{name}={v} is not a vertex of the source graph")
    if s == t:
        raise ContractError("s and t must differ")
    if h.max_degree() > 3:
        raise ContractError(f"source graph is not subcubic (max degree {h.max_degree()})")
    for name, v in (("s", s), ("t", t)):
        if h.degree(v) != 1:
            raise ContractError(f"deg({name}) = {h.degree(v)}, expected 1")
    ones = [v for v in range(h.n) if h.degree(v) == 1]
    if len(ones) != 2:
        raise ContractError(f"source graph must have exactly two degree-1 vertices, has {len(ones)}")
    zeros = [v for v in range(h.n) if h.degree(v) == 0]
    if zeros:
        raise ContractError(f"source graph has isolated vertex {zeros[0]}")
    if h.has_edge(s, t):
        raise ContractError("s and t must not be adjacent")


def terminals(h: Graph) -> tuple[int, int]:
    """The two degree-1 vertices of h, lower index first."""
    ones = [v for v in range(h.n) if h.degree(v) == 1]
    if len(ones) != 2:
        raise ContractError(f"source graph must have exactly two degree-1 vertices, has {len(ones)}")
    return ones[0], ones[1]


def _gadget_roles(h: Graph, s: int, t: int, copies: int, size: int) -> tuple[tuple, ...]:
    inner = [u for u in range(h.n) if u not in (s, t)]
    inner_edges = [(u, v) for u, v in h.edges() if s not in (u, v) and t not in (u, v)]
    roles: list[tuple] = []
    for i in range(copies):
        roles.append(("junction", i))
        for u in inner:
            roles.extend(("clique", i, u, j) for j in range(size))
        roles.extend(("connector", i, u, v) for u, v in inner_edges)
    return tuple(roles)


def _gadget_edges_graph(meta: HamGadgetMeta) -> Graph:
    h, s, t = meta.source, meta.s, meta.t
    s_next = next(iter(h.adj[s]))
    t_prev = next(iter(h.adj[t]))
    edges = []
    for i in range(meta.copies):
        for u in range(h.n):
            if u in (s, t):
                continue
            c = meta.clique(i, u)
            edges.extend((a, b) for j, a in enumerate(c) for b in c[j + 1:])
        for u, v in h.edges():
            if s in (u, v) or t in (u, v):
                continue
            x = meta.connector(i, u, v)
            edges.extend((x, y) for y in meta.clique(i, u) + meta.clique(i, v))
        edges.extend((meta.junction(i), y) for y in meta.clique(i, s_next))
        edges.extend((meta.junction(i + 1), y) for y in meta.clique(i, t_prev))
    return Graph.from_edges(meta.n, edges)


def _gen_gadget(variant: str, h: Graph, s: int | None, t: int | None, beta) -> tuple[Graph, HamGadgetMeta]:
    beta = as_fraction(beta)
    if s is None or t is None:
        s, t = terminals(h)
    _validate_source(h, s, t)
    q = solve_q_fixed_point(h.n, h.m, beta, variant)
    copies, size = (2 * q, q + 2) if variant == ROBUST else (2, q)
    meta = HamGadgetMeta(variant, q, beta, copies, size, h, s, t,
                         _gadget_roles(h, s, t, copies, size))
    return meta.graph(), meta


def gen_ham_robust(h: Graph, s: int | None = None, t: int | None = None,
                   beta=Fraction(49, 100)) -> tuple[Graph, HamGadgetMeta]:
    """2q copies, cliques of size q + 2, with q = floor(n^(1/2 - beta)) + 1.

    Deleting fewer than q edges keeps a Hamiltonian gadget Hamiltonian, and
    adding fewer than q edges keeps a non-Hamiltonian one non-Hamiltonian.
    """
    return _gen_gadget(ROBUST, h, s, t, beta)


def gen_barrier(h: Graph, s: int | None = None, t: int | None = None,
                beta=Fraction(1, 2)) -> tuple[Graph, HamGadgetMeta]:
    """Two copies, cliques of size q = floor(n^(1 - beta)) + 3."""
    return _gen_gadget(BARRIER, h, s, t, beta)


def satisfies_ore(g: Graph) -> bool:
    n = g.n
    if n < 3:
        return False
    deg = [g.degree(v) for v in range(n)]
    return all(g.has_edge(u, v) or deg[u] + deg[v] >= n
               for u in range(n) for v in range(u + 1, n))


def ore_hamiltonian_cycle(g: Graph) -> CycleOrder:
    """Hamiltonian cycle of a graph meeting Ore's degree-sum condition.

    Start from the identity order; while consecutive a_0, a_1 are
    non-adjacent, pick j with a_0 ~ a_j and a_1 ~ a_(j+1) (the degree sum
    guarantees one) and reverse a_1..a_j.  Each step removes a gap.
    """
    if not satisfies_ore(g):
        raise ContractError("graph does not satisfy Ore's condition")
    n = g.n
    order = list(range(n))
    while True:
        gap = next((i for i in range(n) if not g.has_edge(order[i], order[(i + 1) % n])), None)
        if gap is None:
            return CycleOrder(order)
        arr = order[gap:] + order[:gap]
        j = next(j for j in range(2, n - 1)
                 if g.has_edge(arr[0], arr[j]) and g.has_edge(arr[1], arr[j + 1]))
        order = [arr[0]] + arr[j:0:-1] + arr[j + 1:]


def _induced(g: Graph, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
    vs = list(vertices)
    index = {v: i for i, v in enumerate(vs)}
    return Graph.from_edges(len(vs), [(index[a], index[b]) for a, b in g.induced_edges(vs)]), vs


def _pass_through(g: Graph, a: int, b: int, block: Sequence[int]) -> list[int]:
    """A path a, ..., b whose interior is exactly ``block``.

    Take a Hamiltonian cycle of g[block] and look for consecutive c_j,
    c_(j+1) with a ~ c_j and b ~ c_(j+1); the cycle read from c_j away from
    c_(j+1) spans the block.
    """
    sub, vs = _induced(g, block)
    try:
        cyc = [vs[i] for i in ore_hamiltonian_cycle(sub).order]
    except ContractError as exc:
        raise ContractError(f"block around {a}-{b} is not Ore: too many deletions") from exc
    m = len(cyc)
    for direction in (cyc, cyc[::-1]):
        for j in range(m):
            cj, nxt = direction[j], direction[(j + 1) % m]
            if g.has_edge(a, cj) and g.has_edge(b, nxt):
                walk = [direction[(j - r) % m] for r in range(m)]
                return [a] + walk + [b]
    raise ContractError(f"no attachment pair for {a}-{b}: too many deletions")


def _check_source_path(h: Graph, s: int, t: int, path: Sequence[int]) -> None:
    if sorted(path) != list(range(h.n)):
        raise ContractError("source path does not visit every vertex exactly once")
    if path[0] != s or path[-1] != t:
        raise ContractError("source path must run from s to t")
    for a, b in zip(path, path[1:]):
        if not h.has_edge(a, b):
            raise ContractError(f"source path uses non-edge {a}-{b}")


def reconstruct_ham_cycle(g_minus: Graph, meta: HamGadgetMeta, p_h: Sequence[int]) -> CycleOrder:
    """Hamiltonian cycle of a gadget with a few edges deleted, from an s-t path of the source.

    The source path is mimicked in every copy: each clique is crossed
    between the connectors of its path edges, and a vertex's third
    connector is absorbed the first time one of its endpoints is crossed.
    """
    g = meta.graph()
    if g_minus.n != g.n:
        raise ContractError(f"graph has {g_minus.n} vertices, gadget has {g.n}")
    extra = g_minus.edge_set() - g.edge_set()
    if extra:
        raise ContractError(f"edge {min(extra)} is not a gadget edge")
    deleted = g.m - g_minus.m
    if deleted > meta.deletion_allowance:
        raise ContractError(f"{deleted} deletions exceed the allowance {meta.deletion_allowance}")
    h, s, t = meta.source, meta.s, meta.t
    p_h = list(p_h)
    _check_source_path(h, s, t, p_h)
    on_path = {frozenset(e) for e in zip(p_h, p_h[1:])}

    order: list[int] = []
    for i in range(meta.copies):
        absorbed: set[frozenset] = set()
        order.append(meta.junction(i))
        for pos in range(1, len(p_h) - 1):
            u, v, w = p_h[pos - 1], p_h[pos], p_h[pos + 1]
            block = meta.clique(i, v)
            for y in sorted(h.adj[v]):
                e = frozenset((v, y))
                if e not in on_path and e not in absorbed:
                    absorbed.add(e)
                    block = block + [meta.connector(i, v, y)]
            seg = _pass_through(g_minus, meta.connector(i, u, v), meta.connector(i, v, w), block)
            order.extend(seg[1:-1])
            if w != t:
                order.append(meta.connector(i, v, w))
    return CycleOrder(normalize_cycle(order))


def extract_st_path(p: Sequence[int], meta: HamGadgetMeta) -> list[int]:
    """Read an s-t Hamiltonian path of the source off a junction-to-junction path of one copy.

    The cliques are listed in order of first visit.  Raises ContractError
    when p is not a Hamiltonian path of a single copy or the reading is not
    a path of the source.
    """
    p = [int(x) for x in p]
    if len(p) < 2 or len(set(p)) != len(p) or not all(0 <= x < meta.n for x in p):
        raise ContractError("not a simple path of gadget vertices")
    copies = {meta.roles[x][1] for x in p if meta.roles[x][0] != "junction"}
    if len(copies) != 1:
        raise ContractError("path is not confined to one copy")
    i = copies.pop()
    ends = {meta.junction(i), meta.junction(i + 1)}
    if {p[0], p[-1]} != ends or len(ends) != 2:
        raise ContractError("path must join the two junctions of its copy")
    if set(p) != meta.copy_vertices(i):
        raise ContractError("path does not span its copy")
    if p[0] != meta.junction(i):
        p = p[::-1]
    g = meta.graph()
    for a, b in zip(p, p[1:]):
        if not g.has_edge(a, b):
            raise ContractError(f"path uses non-edge {a}-{b}")
    seen: list[int] = []
    for x in p:
        r = meta.roles[x]
        if r[0] == "clique" and r[2] not in seen:
            seen.append(r[2])
    out = [meta.s] + seen + [meta.t]
    _check_source_path(meta.source, meta.s, meta.t, out)
    return out


# ----------------------------------------------------------- Dominating set

@dataclass(frozen=True)
class BlowupMeta:
    """Vertex x of the blow-up is copy x % q of source vertex x // q."""

    q: int
    beta: Fraction
    k: int
    source: Graph

    @property
    def n(self) -> int:
        return self.q * self.source.n

    def vertex_map(self, x: int) -> tuple[int, int]:
        return divmod(x, self.q)

    def clique(self, v: int) -> list[int]:
        return list(range(v * self.q, (v + 1) * self.q))

    @property
    def budget(self) -> int:
        """floor(n^(1 - beta)): edits the blow-up is robust against."""
        return floor_power(self.n, 1 - self.beta)

    def graph(self) -> Graph:
        h = self.source
        edges = []
        for v in range(h.n):
            c = self.clique(v)
            edges.extend((a, b) for j, a in enumerate(c) for b in c[j + 1:])
        for u, v in h.edges():
            edges.extend((a, b) for a in self.clique(u) for b in self.clique(v))
        return Graph.from_edges(self.n, edges)


def gen_domset_blowup(h: Graph, k: int, beta=Fraction(1, 2)) -> tuple[Instance, BlowupMeta]:
    """Replace every vertex by a clique of size q = 2 floor(n^(1 - beta)) + 1; keep k."""
    beta = as_fraction(beta)
    _check_beta(BLOWUP, beta)
    if h.n == 0:
        raise ContractError("source graph must be nonempty")
    if not 0 <= k <= h.n:
        raise ContractError(f"k={k} outside [0, {h.n}]")
    q = solve_q_fixed_point(h.n, h.m, beta, BLOWUP)
    meta = BlowupMeta(q, beta, k, h)
    return Instance(meta.graph(), k), meta


def lift_dominating_set(s_h: VertexSet | Iterable[int], g_prime: Graph, meta: BlowupMeta) -> VertexSet:
    """Dominating set of an edited blow-up: one untouched clique vertex per chosen source vertex."""
    chosen = sorted(s_h.vertices if isinstance(s_h, VertexSet) else s_h)
    h = meta.source
    dominated = set(chosen)
    for v in chosen:
        dominated |= h.adj[v]
    if len(dominated) != h.n:
        raise ContractError("the given set does not dominate the source graph")
    g = meta.graph()
    if g_prime.n != g.n:
        raise ContractError(f"graph has {g_prime.n} vertices, blow-up has {g.n}")
    touched = set()
    for a, b in g.edge_set() ^ g_prime.edge_set():
        touched.update((a, b))
    out = []
    for v in chosen:
        free = [x for x in meta.clique(v) if x not in touched]
        if not free:
            raise ContractError(f"every vertex of clique {v} is touched by an edit")
        out.append(free[0])
    return VertexSet(frozenset(out))


# ------------------------------------------------------------ meta sidecar

def _edges_text(h: Graph) -> str:
    return " ".join(f"{u}-{v}" for u, v in h.edges())


def write_meta(meta: HamGadgetMeta | BlowupMeta) -> str:
    """Serialize meta as "key = value" lines."""
    lines: list[tuple[str, object]] = []
    if isinstance(meta, HamGadgetMeta):
        lines += [("reduction", meta.variant), ("q", meta.q), ("beta", meta.beta),
                  ("copies", meta.copies), ("clique_size", meta.clique_size), ("n", meta.n),
                  ("source.n", meta.source.n), ("source.edges", _edges_text(meta.source)),
                  ("source.s", meta.s), ("source.t", meta.t)]
        lines += [(f"vertex.{x}", " ".join(map(str, r))) for x, r in enumerate(meta.roles)]
    else:
        lines += [("reduction", BLOWUP), ("q", meta.q), ("beta", meta.beta), ("k", meta.k),
                  ("n", meta.n), ("source.n", meta.source.n),
                  ("source.edges", _edges_text(meta.source))]
        lines += [(f"vertex.{x}", "clique {} {}".format(*meta.vertex_map(x))) for x in range(meta.n)]
    return "".join(f"{key} = {value}\n" for key, value in lines)


def read_meta(text: str) -> HamGadgetMeta | BlowupMeta:
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ParseError(f"expected 'key = value', got {raw!r}", lineno)
        fields[key.strip()] = value.strip()
    try:
        variant = fields["reduction"]
        n_src = int(fields["source.n"])
        edges = [tuple(map(int, e.split("-"))) for e in fields["source.edges"].split()]
        source = Graph.from_edges(n_src, edges)
        q = int(fields["q"])
        beta = Fraction(fields["beta"])
        if variant == BLOWUP:
            meta = BlowupMeta(q, beta, int(fields["k"]), source)
        elif variant in (ROBUST, BARRIER):
            n = int(fields["n"])
            roles = []
            for x in range(n):
                kind, *nums = fields[f"vertex.{x}"].split()
                roles.append((kind, *map(int, nums)))
            meta = HamGadgetMeta(variant, q, beta, int(fields["copies"]), int(fields["clique_size"]),
                                 source, int(fields["source.s"]), int(fields["source.t"]), tuple(roles))
        else:
            raise ParseError(f"unknown reduction {variant!r}")
    except KeyError as exc:
        raise ParseError(f"missing key {exc.args[0]}") from exc
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc
    if int(fields.get("n", meta.n)) != meta.n:
        raise ParseError(f"n = {fields['n']} disagrees with the vertex roles")
    return meta
