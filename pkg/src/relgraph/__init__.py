"""Certified nearby-instance solvers for NP-hard graph problems.

Given a graph instance, each solver returns an edited instance within a
max-degree or edge-edit budget of the input, together with a verifiable
answer for the edited instance.
"""

from .budget import Budget, Metric
from .certificates import (CycleOrder, Nil, Partition, Problem, RelAnswer,
                           VertexSet)
from .certify import verify_certificate, verify_hint, verify_rel_answer
from .errors import (ContractError, CutoffError, DistanceInfiniteError,
                     ParseError, RelGraphError)
from .graph import INF, EditSet, Graph, Instance, complement, dist
from .graphio import parse_graph, write_graph
from .solvers import solve

__all__ = [
    "Budget", "ContractError", "CutoffError", "CycleOrder", "DistanceInfiniteError",
    "EditSet", "Graph", "INF", "Instance", "Metric", "Nil", "ParseError", "Partition",
    "Problem", "RelAnswer", "RelGraphError", "VertexSet", "complement", "dist",
    "parse_graph", "solve", "verify_certificate", "verify_hint", "verify_rel_answer",
    "write_graph",
]
