"""Undirected simple graphs on vertices 0..n-1, edit sets and the two metrics."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .budget import Metric
from .errors import ContractError, DistanceInfiniteError

Edge = tuple[int, int]


class _Infinity:
    """The infinite distance between graphs on different vertex sets."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    __str__ = __repr__

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("relgraph.INF")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph.  ``adj[v]`` is the neighbor set of ``v``."""

    n: int
    adj: tuple[frozenset[int], ...]
    _edges: tuple[Edge, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise ContractError("adjacency length must equal n")
        edges = []
        for v, nb in enumerate(self.adj):
            for u in nb:
                if u == v:
                    raise ContractError(f"self-loop at {v}")
                if not 0 <= u < self.n:
                    raise ContractError(f"neighbor {u} of {v} out of range")
                if v not in self.adj[u]:
                    raise ContractError(f"asymmetric adjacency {v}-{u}")
                if v < u:
                    edges.append((v, u))
        edges.sort()
        object.__setattr__(self, "_edges", tuple(edges))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ContractError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ContractError(f"edge {u}-{v} out of range for n={n}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(s) for s in adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple(frozenset() for _ in range(n)))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, tuple(frozenset(set(range(n)) - {v}) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ContractError("a cycle needs n >= 3")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def petersen(cls) -> "Graph":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def m(self) -> int:
        return len(self._edges)

    def edges(self) -> tuple[Edge, ...]:
        """Edges (u, v) with u < v in lexicographic order."""
        return self._edges

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self._edges)

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(nb) for nb in self.adj), default=0)

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self.adj[v] | {v}

    def induced_edges(self, vertices: Iterable[int]) -> list[Edge]:
        s = set(vertices)
        return [(u, v) for (u, v) in self._edges if u in s and v in s]

    def induced_max_degree(self, vertices: Iterable[int]) -> int:
        s = set(vertices)
        return max((len(self.adj[v] & s) for v in s), default=0)

    def bitmasks(self) -> list[int]:
        """Adjacency as one integer bitmask per vertex."""
        out = []
        for nb in self.adj:
            mask = 0
            for u in nb:
                mask |= 1 << u
            out.append(mask)
        return out

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex v renamed perm[v]."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self._edges])

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for root in range(self.n):
            if seen[root]:
                continue
            seen[root] = True
            comp = [root]
            queue = deque([root])
            while queue:
                v = queue.popleft()
                for u in sorted(self.adj[v]):
                    if not seen[u]:
                        seen[u] = True
                        comp.append(u)
                        queue.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def reachable(self, source: int) -> set[int]:
        seen = {source}
        stack = [source]
        while stack:
            v = stack.pop()
            for u in self.adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen


@dataclass(frozen=True)
class Instance:
    """A graph together with the optional integer threshold k."""

    graph: Graph
    k: int | None = None

    def __post_init__(self) -> None:
        if self.k is not None and not 0 <= self.k <= self.graph.n:
            raise ContractError(f"threshold k={self.k} outside [0, {self.graph.n}]")

    @property
    def n(self) -> int:
        return self.graph.n


@dataclass(frozen=True)
class EditSet:
    """Signed edge edits; as a graph this is G xor H."""

    base_n: int
    adds: frozenset[Edge] = frozenset()
    dels: frozenset[Edge] = frozenset()

    def __post_init__(self) -> None:
        adds = frozenset(norm_edge(u, v) for u, v in self.adds)
        dels = frozenset(norm_edge(u, v) for u, v in self.dels)
        for u, v in adds | dels:
            if u == v or not (0 <= u < self.base_n and 0 <= v < self.base_n):
                raise ContractError(f"invalid edit pair {u}-{v}")
        if adds & dels:
            raise ContractError("an edge is both added and deleted")
        object.__setattr__(self, "adds", adds)
        object.__setattr__(self, "dels", dels)

    def __len__(self) -> int:
        return len(self.adds) + len(self.dels)

    def __iter__(self) -> Iterator[tuple[str, int, int]]:
        """Yield ("add"|"del", u, v) in a canonical order."""
        for u, v in sorted(self.adds):
            yield ("add", u, v)
        for u, v in sorted(self.dels):
            yield ("del", u, v)

    def as_graph(self) -> Graph:
        return Graph.from_edges(self.base_n, self.adds | self.dels)

    def max_degree(self) -> int:
        deg = [0] * self.base_n
        for u, v in self.adds | self.dels:
            deg[u] += 1
            deg[v] += 1
        return max(deg, default=0)

    def apply(self, g: Graph) -> Graph:
        if g.n != self.base_n:
            raise DistanceInfiniteError(f"edit set on {self.base_n} vertices applied to n={g.n}")
        edges = g.edge_set()
        if not self.dels <= edges:
            raise ContractError("deleting an edge that is absent")
        if self.adds & edges:
            raise ContractError("adding an edge that is present")
        return Graph.from_edges(g.n, (edges - self.dels) | self.adds)

    def swapped(self) -> "EditSet":
        """The same XOR graph seen from the complements: adds and dels trade places."""
        return EditSet(self.base_n, self.dels, self.adds)

    @classmethod
    def from_ops(cls, base_n: int, ops: Iterable[Sequence]) -> "EditSet":
        adds, dels = set(), set()
        for op, u, v in ops:
            e = norm_edge(int(u), int(v))
            if op == "add":
                target = adds
            elif op == "del":
                target = dels
            else:
                raise ContractError(f"unknown edit op {op!r}")
            if e in adds or e in dels:
                raise ContractError(f"duplicate edit {e}")
            target.add(e)
        return cls(base_n, frozenset(adds), frozenset(dels))


def symmetric_difference(g: Graph, h: Graph) -> EditSet:
    """The edit set turning g into h."""
    if g.n != h.n:
        raise DistanceInfiniteError(f"vertex counts differ: {g.n} vs {h.n}")
    eg, eh = g.edge_set(), h.edge_set()
    return EditSet(g.n, eh - eg, eg - eh)


def dist_edits(g: Graph, h: Graph):
    if g.n != h.n:
        return INF
    return len(g.edge_set() ^ h.edge_set())


def dist_maxdeg(g: Graph, h: Graph):
    if g.n != h.n:
        return INF
    return max((len(a ^ b) for a, b in zip(g.adj, h.adj)), default=0)


def dist(g: Graph, h: Graph, kind: Metric | str):
    kind = Metric(kind)
    return dist_edits(g, h) if kind is Metric.EDITS else dist_maxdeg(g, h)


def dist_instance(a: Instance, b: Instance, kind: Metric | str):
    if a.k != b.k:
        return INF
    return dist(a.graph, b.graph, kind)


def complement(g: Graph) -> Graph:
    full = frozenset(range(g.n))
    return Graph(g.n, tuple(full - nb - {v} for v, nb in enumerate(g.adj)))
