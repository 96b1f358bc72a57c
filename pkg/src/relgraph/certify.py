"""Independent checking of certificates, negativity hints and REL answers."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import oracles
from .certificates import (CliquePartition, CoverageShortfall, IsolatedVertex, Nil,
                           PlantedIndependentSet, Problem, RelAnswer, SeparatorPair,
                           VertexSet)
from .errors import ContractError, CutoffError, DistanceInfiniteError
from .budget import Metric
from .graph import INF, Graph, Instance, dist
from .solvers import HINT_FRAME, budget_for, coverage_threshold, greedy_max_coverage


def _is_independent(g: Graph, s) -> bool:
    return not g.induced_edges(s)


def _is_clique(g: Graph, s) -> bool:
    s = list(s)
    return all(g.has_edge(u, v) for i, u in enumerate(s) for v in s[i + 1:])


def _is_partition(parts, n: int) -> bool:
    seen: set[int] = set()
    for p in parts:
        if not p or seen & p or not all(0 <= v < n for v in p):
            return False
        seen |= p
    return len(seen) == n


def verify_certificate(problem: Problem | str, inst: Instance, cert) -> bool:
    """True iff ``cert`` proves that ``inst`` is a yes-instance.

    Sets must have exactly k vertices and partitions exactly k nonempty
    parts.  A certificate of the wrong type for the problem raises
    :class:`ContractError`.  Nil is accepted unconditionally: negative
    answers are checked through their hints instead.
    """
    problem = Problem(problem)
    g, k = inst.graph, inst.k
    if isinstance(cert, Nil):
        return True
    if not isinstance(cert, problem.certificate_type):
        raise ContractError(f"{type(cert).__name__} does not certify {problem.value}")
    if problem is Problem.HAMILTONIAN_CYCLE:
        order = cert.order
        n = g.n
        if n < 3 or sorted(order) != list(range(n)):
            return False
        return all(g.has_edge(order[i], order[(i + 1) % n]) for i in range(n))
    if k is None:
        raise ContractError(f"{problem.value} needs a threshold k")
    if isinstance(cert, VertexSet):
        s = cert.vertices
        if len(s) != k or not all(0 <= v < g.n for v in s):
            return False
        if problem is Problem.DOMINATING_SET:
            covered = set(s)
            for v in s:
                covered |= g.adj[v]
            return len(covered) == g.n
        if problem is Problem.INDEPENDENT_SET:
            return _is_independent(g, s)
        if problem is Problem.CLIQUE:
            return _is_clique(g, s)
        return all(u in s or v in s for u, v in g.edges())
    parts = cert.parts
    if len(parts) != k or not _is_partition(parts, g.n):
        return False
    test = _is_independent if problem is Problem.COLORING else _is_clique
    return all(test(g, p) for p in parts)


def _hint_frame(problem: Problem, inst: Instance) -> tuple[Problem, Instance]:
    base, iso = HINT_FRAME[problem]
    return base, (inst if iso is None else iso.apply(inst))


def verify_hint(problem: Problem | str, inst: Instance, hint) -> bool:
    """True iff ``hint`` proves that ``inst`` is a no-instance.

    Hints for clique, vertex cover and coloring are stated for the
    independent-set or clique-cover image of the instance (complement graph
    or flipped threshold) and are checked there.
    """
    problem = Problem(problem)
    base, image = _hint_frame(problem, inst)
    g, k = image.graph, image.k
    if isinstance(hint, SeparatorPair):
        if base is not Problem.HAMILTONIAN_CYCLE:
            raise ContractError("a separator pair only refutes hamiltonicity")
        a, b = hint.a, hint.b
        if not (0 <= a < g.n and 0 <= b < g.n) or a == b:
            return False
        return b not in g.reachable(a)
    if isinstance(hint, IsolatedVertex):
        if not 0 <= hint.v < g.n or g.degree(hint.v) != 0:
            return False
        if base is Problem.HAMILTONIAN_CYCLE:
            return g.n >= 2
        if base is Problem.DOMINATING_SET:
            return k == 0
        raise ContractError(f"an isolated vertex does not refute {problem.value}")
    if isinstance(hint, CliquePartition):
        if base is not Problem.INDEPENDENT_SET:
            raise ContractError(f"a clique partition does not refute {problem.value}")
        parts = hint.parts
        return (_is_partition(parts, g.n) and len(parts) < k
                and all(_is_clique(g, p) for p in parts))
    if isinstance(hint, PlantedIndependentSet):
        if base is not Problem.CLIQUE_COVER:
            raise ContractError(f"a planted independent set does not refute {problem.value}")
        s = hint.vertices
        return (all(0 <= v < g.n for v in s) and len(s) > k
                and _is_independent(g, s))
    if isinstance(hint, CoverageShortfall):
        if base is not Problem.DOMINATING_SET:
            raise ContractError("a coverage shortfall only refutes dominating set")
        if not k or k < 1:
            return False
        # Greedy reaches (1 - (1 - 1/k)^k) of the best k-coverage; falling
        # short of that fraction of n means no k vertices dominate.
        _, covered = greedy_max_coverage(g, k)
        bound = coverage_threshold(g.n, k)
        return (len(covered) == hint.covered and hint.bound == bound
                and hint.covered < bound)
    raise ContractError(f"unknown hint type {type(hint).__name__}")


@dataclass
class Check:
    name: str
    ok: bool | None  # None = skipped
    detail: str = ""

    def line(self) -> str:
        status = "skip" if self.ok is None else ("ok" if self.ok else "FAIL")
        return f"{status:4} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok is not False for c in self.checks)

    def add(self, name: str, ok: bool | None, detail: str = "") -> bool | None:
        self.checks.append(Check(name, ok, detail))
        return ok

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.ok is False]

    def __str__(self) -> str:
        return "\n".join(c.line() for c in self.checks)


def verify_rel_answer(problem: Problem | str, original: Instance, ans: RelAnswer,
                      kind: Metric | str, cross_check: bool = True,
                      oracle_cutoff: int | None = None) -> Report:
    """Check every claim in a REL answer.

    The checks are: the edit set turns the original into the edited graph;
    the recomputed distance matches and fits the budget for (problem, kind);
    the threshold is unchanged; a positive answer's certificate is valid;
    a negative answer's hint (when present) is valid; and, when the edited
    instance is within oracle range, the exact answer agrees.
    """
    problem = Problem(problem)
    kind = Metric(kind)
    rep = Report()
    g, h = original.graph, ans.edited.graph

    try:
        applied = ans.edits.apply(g)
        rep.add("edits", applied == h,
                "" if applied == h else "edit set does not produce the edited graph")
    except (ContractError, DistanceInfiniteError) as exc:
        rep.add("edits", False, str(exc))

    d = dist(g, h, kind)
    expected = budget_for(problem, kind, g.n)
    if d is INF:
        rep.add("distance", False, "infinite distance")
    else:
        problems = []
        if d != ans.distance:
            problems.append(f"stated {ans.distance}, recomputed {d}")
        if ans.budget.text != expected.text or ans.budget.kind != expected.kind:
            problems.append(f"budget {ans.budget.text} should be {expected.text}")
        if not expected.admits(d):
            problems.append(f"{d} exceeds {expected.text}")
        rep.add("distance", not problems, "; ".join(problems) or f"{d} <= {expected.text}")

    rep.add("threshold", ans.edited.k == original.k,
            "" if ans.edited.k == original.k else f"k changed from {original.k} to {ans.edited.k}")

    if ans.positive and isinstance(ans.certificate, Nil):
        rep.add("certificate", False, "positive answer without a certificate")
    elif ans.positive:
        try:
            ok = verify_certificate(problem, ans.edited, ans.certificate)
        except ContractError as exc:
            ok = False
            rep.add("certificate", False, str(exc))
        else:
            rep.add("certificate", ok)
    else:
        if not isinstance(ans.certificate, Nil):
            rep.add("certificate", False, "negative answer carries a certificate")
        elif ans.hint is None:
            rep.add("hint", None, "no hint")
        else:
            try:
                rep.add("hint", verify_hint(problem, ans.edited, ans.hint))
            except ContractError as exc:
                rep.add("hint", False, str(exc))

    if cross_check:
        try:
            truth = oracles.oracle_decide(problem, ans.edited, oracle_cutoff)
        except CutoffError as exc:
            rep.add("oracle", None, str(exc))
        else:
            rep.add("oracle", truth == ans.positive,
                    f"oracle says {'positive' if truth else 'negative'}")
    return rep
