import itertools
import pickle
import random

import pytest
from hypothesis import given, settings

from relgraph.budget import Metric
from relgraph.errors import ContractError, DistanceInfiniteError, ParseError
from relgraph.graph import (INF, EditSet, Graph, Instance, complement, dist_edits,
                            dist_instance, dist_maxdeg, symmetric_difference)
from relgraph.graphio import parse_graph, write_graph

from conftest import graphs, random_graph


def test_graph_rejects_bad_adjacency():
    with pytest.raises(ValueError):
        Graph(2, (frozenset({1}), frozenset()))
    with pytest.raises(ValueError):
        Graph(1, (frozenset({0}),))
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])


def test_instance_threshold_range():
    g = Graph.path(3)
    assert Instance(g, 0).k == 0 and Instance(g, 3).k == 3
    with pytest.raises(ContractError):
        Instance(g, 4)
    with pytest.raises(ContractError):
        Instance(g, -1)


def test_symmetric_difference_examples():
    k3 = Graph.complete(3)
    assert len(symmetric_difference(k3, k3)) == 0
    minus = Graph.from_edges(3, [(0, 2), (1, 2)])
    diff = symmetric_difference(k3, minus)
    assert diff.dels == {(0, 1)} and not diff.adds
    with pytest.raises(DistanceInfiniteError):
        symmetric_difference(k3, Graph.complete(4))


def test_symmetric_difference_round_trip_random():
    rng = random.Random(7)
    for _ in range(1000):
        g, h = random_graph(rng, 8), random_graph(rng, 8)
        assert symmetric_difference(g, h).apply(g) == h


def test_edit_set_contract():
    with pytest.raises(ContractError):
        EditSet(3, frozenset({(0, 1)}), frozenset({(1, 0)}))
    g = Graph.path(3)
    with pytest.raises(ContractError):
        EditSet(3, adds=frozenset({(0, 1)})).apply(g)
    with pytest.raises(ContractError):
        EditSet(3, dels=frozenset({(0, 2)})).apply(g)
    with pytest.raises(DistanceInfiniteError):
        EditSet(4).apply(g)
    ops = list(EditSet(4, frozenset({(2, 3)}), frozenset({(0, 1)})))
    assert ops == [("add", 2, 3), ("del", 0, 1)]
    assert EditSet.from_ops(4, ops) == EditSet(4, frozenset({(2, 3)}), frozenset({(0, 1)}))


def test_distance_examples():
    k4, c4 = Graph.complete(4), Graph.cycle(4)
    assert dist_edits(k4, k4) == 0 and dist_maxdeg(k4, k4) == 0
    assert dist_edits(k4, Graph.complete(5)) is INF
    assert dist_maxdeg(k4, Graph.complete(5)) is INF
    assert dist_edits(k4, c4) == 2
    k4_minus_pm = Graph.from_edges(4, set(k4.edges()) - {(0, 1), (2, 3)})
    assert dist_maxdeg(k4, k4_minus_pm) == 1
    assert dist_maxdeg(Graph.star(5), Graph.empty(6)) == 5


def test_instance_distance():
    g = Graph.cycle(5)
    assert dist_instance(Instance(g, 3), Instance(g, 3), Metric.EDITS) == 0
    assert dist_instance(Instance(g, 3), Instance(g, 4), Metric.EDITS) is INF
    assert dist_instance(Instance(g, 3), Instance(g), Metric.MAXDEG) is INF
    assert dist_instance(Instance(Graph.complete(4), 2), Instance(Graph.cycle(4), 2), "edits") == 2


def test_infinity_behaves_like_an_extended_integer():
    assert INF > 10 ** 9 and not INF < 5 and INF >= INF
    assert pickle.loads(pickle.dumps(INF)) is INF


def test_complement_examples():
    assert complement(Graph.complete(4)) == Graph.empty(4)
    c5 = Graph.cycle(5)
    comp = complement(c5)
    assert any(c5.relabel(p) == comp for p in itertools.permutations(range(5)))


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=9), graphs(max_n=9))
def test_metric_relations(g, h):
    if g.n != h.n:
        h = Graph.from_edges(g.n, [e for e in h.edges() if e[1] < g.n])
    de, dd = dist_edits(g, h), dist_maxdeg(g, h)
    assert dd <= de
    assert 2 * de <= g.n * dd + 2 * g.n
    assert de == dist_edits(h, g) and dd == dist_maxdeg(h, g)
    assert (de == 0) == (g == h) == (dd == 0)
    assert de == dist_edits(complement(g), complement(h))
    assert dd == dist_maxdeg(complement(g), complement(h))
    assert complement(complement(g)) == g


def test_edit_distance_triangle_inequality():
    rng = random.Random(3)
    for _ in range(500):
        a, b, c = (random_graph(rng, 7) for _ in range(3))
        assert dist_edits(a, c) <= dist_edits(a, b) + dist_edits(b, c)


# ------------------------------------------------------------------ file I/O

def test_parse_examples():
    assert parse_graph("3 2\n0 1\n1 2") == Graph.path(3)
    assert parse_graph("3 2\n2 1\n1 0\n") == Graph.path(3)
    assert parse_graph("0 0\n") == Graph.empty(0)


@pytest.mark.parametrize("text, line, fragment", [
    ("2 1\n0 0", 2, "self-loop"),
    ("3 2\n0 1\n1 0", 3, "duplicate"),
    ("3 1\n0 3", 2, "out of range"),
    ("3\n", 1, "header"),
    ("3 2\n0 1", 2, "announces 2"),
    ("3 1\n0 x", 2, "integer"),
    ("", 1, "empty"),
])
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_dimacs():
    text = "c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n"
    assert parse_graph(text) == Graph.complete(3)
    with pytest.raises(ParseError):
        parse_graph("p edge 3 2\ne 1 2\ne 2 1\n")
    with pytest.raises(ParseError):
        parse_graph("p edge 3 2\ne 1 2\n")
    with pytest.raises(ParseError):
        parse_graph("p edge 3 1\ne 1 4\n")


def test_write_parse_round_trip():
    rng = random.Random(11)
    for _ in range(1000):
        g = random_graph(rng, rng.randint(0, 50))
        text = write_graph(g)
        assert text.endswith("\n") and "\r" not in text
        assert parse_graph(text) == g
