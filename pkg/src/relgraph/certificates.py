"""Problems, certificates, negativity hints and the REL answer record."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .budget import Budget
from .graph import EditSet, Instance


class Problem(str, enum.Enum):
    HAMILTONIAN_CYCLE = "ham"
    DOMINATING_SET = "ds"
    INDEPENDENT_SET = "is"
    CLIQUE = "clique"
    VERTEX_COVER = "vc"
    COLORING = "coloring"
    CLIQUE_COVER = "cliquecover"

    @property
    def needs_threshold(self) -> bool:
        return self is not Problem.HAMILTONIAN_CYCLE

    @property
    def certificate_type(self) -> type:
        if self is Problem.HAMILTONIAN_CYCLE:
            return CycleOrder
        if self in (Problem.COLORING, Problem.CLIQUE_COVER):
            return Partition
        return VertexSet


@dataclass(frozen=True)
class CycleOrder:
    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(int(v) for v in self.order))


@dataclass(frozen=True)
class VertexSet:
    vertices: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(int(v) for v in self.vertices))

    def __len__(self) -> int:
        return len(self.vertices)


def _parts(parts: Iterable[Iterable[int]]) -> tuple[frozenset[int], ...]:
    out = [frozenset(int(v) for v in p) for p in parts]
    return tuple(sorted(out, key=lambda p: (min(p) if p else -1, len(p))))


@dataclass(frozen=True)
class Partition:
    """Parts are stored sorted by their smallest vertex."""

    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", _parts(self.parts))

    def __len__(self) -> int:
        return len(self.parts)


# Negativity hints: machine-checkable reasons for a negative answer.

@dataclass(frozen=True)
class IsolatedVertex:
    v: int


@dataclass(frozen=True)
class SeparatorPair:
    """Two vertices in different connected components."""

    a: int
    b: int


@dataclass(frozen=True)
class CliquePartition:
    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", _parts(self.parts))


@dataclass(frozen=True)
class PlantedIndependentSet:
    vertices: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(int(v) for v in self.vertices))


@dataclass(frozen=True)
class CoverageShortfall:
    """Greedy k-coverage reached ``covered`` vertices, below the guarantee ``bound``."""

    covered: int
    bound: Fraction

    def __post_init__(self):
        object.__setattr__(self, "bound", Fraction(self.bound))


NegativityHint = Union[IsolatedVertex, SeparatorPair, CliquePartition,
                       PlantedIndependentSet, CoverageShortfall]


@dataclass(frozen=True)
class Nil:
    hint: NegativityHint | None = None


Certificate = Union[CycleOrder, VertexSet, Partition, Nil]


@dataclass(frozen=True)
class RelAnswer:
    """A solved REL instance: the edited instance plus its answer."""

    edited: Instance
    edits: EditSet
    positive: bool
    certificate: Certificate
    distance: int
    budget: Budget

    @property
    def answer(self) -> str:
        return "positive" if self.positive else "negative"

    @property
    def hint(self) -> NegativityHint | None:
        return self.certificate.hint if isinstance(self.certificate, Nil) else None


def normalize_cycle(order) -> tuple[int, ...]:
    """Rotate a cycle to start at its smallest vertex, oriented toward the smaller neighbor."""
    order = list(order)
    if len(order) < 3:
        return tuple(order)
    i = order.index(min(order))
    order = order[i:] + order[:i]
    if order[1] > order[-1]:
        order = [order[0]] + order[:0:-1]
    return tuple(order)


def pad_partition(parts, k: int) -> list[frozenset[int]]:
    """Split parts until there are exactly k nonempty parts (needs total size >= k).

    Subsets of independent sets (or cliques) keep the property, so padding
    preserves validity.
    """
    parts = [sorted(p) for p in parts if p]
    total = sum(len(p) for p in parts)
    if not len(parts) <= k <= total:
        raise ValueError(f"cannot pad {len(parts)} parts over {total} vertices to {k}")
    while len(parts) < k:
        parts.sort(key=lambda p: (-len(p), p[0]))
        big = parts.pop(0)
        parts.append(big[:-1])
        parts.append([big[-1]])
    return [frozenset(p) for p in parts]
