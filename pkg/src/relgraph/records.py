"""JSON-lines serialization of solved instances.

A record stores the edit set rather than the edited graph; the verifier
rebuilds the edited graph from the source file.  Keys are written in a
fixed order so identical runs give byte-identical lines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .budget import Metric
from .certificates import (CliquePartition, CoverageShortfall, CycleOrder,
                           IsolatedVertex, Nil, Partition, PlantedIndependentSet,
                           Problem, RelAnswer, SeparatorPair, VertexSet)
from .certify import Report, verify_rel_answer
from .errors import ContractError, ParseError
from .graph import EditSet, Graph, Instance
from .solvers import budget_for


def certificate_to_json(cert) -> dict[str, Any]:
    if isinstance(cert, CycleOrder):
        return {"type": "cycle", "order": list(cert.order)}
    if isinstance(cert, VertexSet):
        return {"type": "set", "vertices": sorted(cert.vertices)}
    if isinstance(cert, Partition):
        return {"type": "partition", "parts": [sorted(p) for p in cert.parts]}
    return {"type": "nil"}


def certificate_from_json(obj: dict[str, Any], hint=None):
    kind = obj.get("type")
    if kind == "cycle":
        return CycleOrder(obj["order"])
    if kind == "set":
        return VertexSet(obj["vertices"])
    if kind == "partition":
        return Partition(obj["parts"])
    if kind == "nil":
        return Nil(hint)
    raise ParseError(f"unknown certificate type {kind!r}")


def hint_to_json(hint) -> dict[str, Any] | None:
    if hint is None:
        return None
    if isinstance(hint, IsolatedVertex):
        return {"type": "isolated_vertex", "vertex": hint.v}
    if isinstance(hint, SeparatorPair):
        return {"type": "separator_pair", "vertices": [hint.a, hint.b]}
    if isinstance(hint, CliquePartition):
        return {"type": "clique_partition", "parts": [sorted(p) for p in hint.parts]}
    if isinstance(hint, PlantedIndependentSet):
        return {"type": "planted_independent_set", "vertices": sorted(hint.vertices)}
    if isinstance(hint, CoverageShortfall):
        return {"type": "coverage_shortfall", "covered": hint.covered, "bound": str(hint.bound)}
    raise ContractError(f"unknown hint {hint!r}")


def hint_from_json(obj: dict[str, Any] | None):
    if obj is None:
        return None
    kind = obj.get("type")
    if kind == "isolated_vertex":
        return IsolatedVertex(int(obj["vertex"]))
    if kind == "separator_pair":
        a, b = obj["vertices"]
        return SeparatorPair(int(a), int(b))
    if kind == "clique_partition":
        return CliquePartition(obj["parts"])
    if kind == "planted_independent_set":
        return PlantedIndependentSet(obj["vertices"])
    if kind == "coverage_shortfall":
        return CoverageShortfall(int(obj["covered"]), Fraction(obj["bound"]))
    raise ParseError(f"unknown hint type {kind!r}")


@dataclass(frozen=True)
class RelRecord:
    problem: Problem
    metric: Metric
    n: int
    k: int | None
    budget: str
    edits: tuple[tuple[str, int, int], ...]
    answer: str
    certificate: dict[str, Any]
    distance: int
    hint: dict[str, Any] | None
    source: str | None
    seed: int | None

    @classmethod
    def from_answer(cls, problem, kind, original: Instance, ans: RelAnswer,
                    source: str | None = None, seed: int | None = None) -> "RelRecord":
        return cls(
            problem=Problem(problem),
            metric=Metric(kind),
            n=original.n,
            k=original.k,
            budget=ans.budget.text,
            edits=tuple(ans.edits),
            answer=ans.answer,
            certificate=certificate_to_json(ans.certificate),
            distance=ans.distance,
            hint=hint_to_json(ans.hint),
            source=source,
            seed=seed,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "problem": self.problem.value,
            "metric": self.metric.value,
            "n": self.n,
            "k": self.k,
            "budget": self.budget,
            "edits": [list(e) for e in self.edits],
            "answer": self.answer,
            "certificate": self.certificate,
            "distance": self.distance,
            "hint": self.hint,
            "source": self.source,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(", ", ": "))

    @classmethod
    def from_dict(cls, obj: dict[str, Any]) -> "RelRecord":
        try:
            return cls(
                problem=Problem(obj["problem"]),
                metric=Metric(obj["metric"]),
                n=int(obj["n"]),
                k=None if obj.get("k") is None else int(obj["k"]),
                budget=str(obj["budget"]),
                edits=tuple((str(op), int(u), int(v)) for op, u, v in obj["edits"]),
                answer=str(obj["answer"]),
                certificate=dict(obj["certificate"]),
                distance=int(obj["distance"]),
                hint=obj.get("hint"),
                source=obj.get("source"),
                seed=obj.get("seed"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed record: {exc}") from exc

    @classmethod
    def from_json(cls, line: str) -> "RelRecord":
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}") from exc
        if not isinstance(obj, dict):
            raise ParseError("record is not a JSON object")
        return cls.from_dict(obj)

    def to_answer(self, graph: Graph) -> tuple[Instance, RelAnswer]:
        """Rebuild the original instance and the answer against the source graph."""
        if graph.n != self.n:
            raise ContractError(f"record is for n={self.n}, graph has n={graph.n}")
        original = Instance(graph, self.k)
        edits = EditSet.from_ops(self.n, self.edits)
        edited = Instance(edits.apply(graph), self.k)
        if self.answer not in ("positive", "negative"):
            raise ParseError(f"answer must be positive or negative, got {self.answer!r}")
        cert = certificate_from_json(self.certificate, hint_from_json(self.hint))
        ans = RelAnswer(
            edited=edited,
            edits=edits,
            positive=self.answer == "positive",
            certificate=cert,
            distance=self.distance,
            budget=budget_for(self.problem, self.metric, self.n),
        )
        return original, ans


def verify_record(rec: RelRecord, graph: Graph, cross_check: bool = True) -> Report:
    """Replay every check of a record against its source graph."""
    try:
        original, ans = rec.to_answer(graph)
    except (ContractError, ParseError) as exc:
        rep = Report()
        rep.add("edits", False, str(exc))
        return rep
    rep = verify_rel_answer(rec.problem, original, ans, rec.metric, cross_check=cross_check)
    expected = ans.budget.text
    rep.add("budget", rec.budget == expected,
            "" if rec.budget == expected else f"record says {rec.budget}, expected {expected}")
    return rep
