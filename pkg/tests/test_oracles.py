import random

import pytest

from relgraph import oracles
from relgraph.certificates import CycleOrder, Nil, Problem
from relgraph.certify import verify_certificate
from relgraph.errors import CutoffError
from relgraph.graph import Graph, Instance, complement

from conftest import (brute_alpha, brute_chi, brute_gamma, brute_hamiltonian,
                      random_graph)


def test_hamiltonian_examples():
    assert oracles.oracle_hamiltonian_cycle(Graph.cycle(5)) == CycleOrder((0, 1, 2, 3, 4))
    assert isinstance(oracles.oracle_hamiltonian_cycle(Graph.star(3)), Nil)
    assert isinstance(oracles.oracle_hamiltonian_cycle(Graph.petersen()), Nil)
    assert isinstance(oracles.oracle_hamiltonian_cycle(Graph.complete(2)), Nil)


def test_dominating_set_examples():
    assert oracles.oracle_min_dominating_set(Graph.star(4)).vertices == {0}
    assert len(oracles.oracle_min_dominating_set(Graph.empty(5))) == 5
    assert len(oracles.oracle_min_dominating_set(Graph.cycle(6))) == 2


def test_independent_set_examples():
    assert len(oracles.oracle_max_independent_set(Graph.complete(5))) == 1
    assert len(oracles.oracle_max_independent_set(Graph.cycle(5))) == 2
    assert len(oracles.oracle_max_independent_set(Graph.empty(7))) == 7


def test_chromatic_examples():
    assert len(oracles.oracle_chromatic_number(Graph.complete(4))) == 4
    assert len(oracles.oracle_chromatic_number(Graph.cycle(5))) == 3
    assert len(oracles.oracle_chromatic_number(Graph.path(4))) == 2
    assert len(oracles.oracle_chromatic_number(Graph.petersen())) == 3


def test_derived_examples():
    assert len(oracles.oracle_max_clique(Graph.cycle(5))) == 2
    assert len(oracles.oracle_min_vertex_cover(Graph.complete(4))) == 3
    assert oracles.oracle_clique_cover_number(Graph.empty(6)) == 6


def test_cutoffs_refuse():
    with pytest.raises(CutoffError):
        oracles.oracle_hamiltonian_cycle(Graph.cycle(19))
    with pytest.raises(CutoffError):
        oracles.oracle_chromatic_number(Graph.empty(17))
    with pytest.raises(CutoffError):
        oracles.oracle_max_independent_set(Graph.empty(10), cutoff=9)


def test_oracles_agree_with_brute_force():
    rng = random.Random(17)
    for _ in range(150):
        g = random_graph(rng, rng.randint(0, 8))
        ham = oracles.oracle_hamiltonian_cycle(g)
        assert (not isinstance(ham, Nil)) == brute_hamiltonian(g)
        mis = oracles.oracle_max_independent_set(g)
        mds = oracles.oracle_min_dominating_set(g)
        col = oracles.oracle_chromatic_number(g)
        assert len(mis) == brute_alpha(g)
        assert len(mds) == brute_gamma(g)
        assert len(col) == brute_chi(g)
        assert verify_certificate(Problem.HAMILTONIAN_CYCLE, Instance(g), ham)
        assert verify_certificate(Problem.INDEPENDENT_SET, Instance(g, len(mis)), mis)
        assert verify_certificate(Problem.DOMINATING_SET, Instance(g, len(mds)), mds)
        assert verify_certificate(Problem.COLORING, Instance(g, len(col)), col)


def test_identities_on_random_graphs():
    rng = random.Random(23)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 12))
        alpha = len(oracles.oracle_max_independent_set(g))
        assert alpha + len(oracles.oracle_min_vertex_cover(g)) == g.n
        assert len(oracles.oracle_chromatic_number(g)) >= len(oracles.oracle_max_clique(g))
        assert oracles.oracle_clique_cover_number(g) == len(oracles.oracle_chromatic_number(complement(g)))


def test_lexicographic_tie_breaking():
    # C6 has two maximum independent sets; the smaller tuple wins
    assert oracles.oracle_max_independent_set(Graph.cycle(6)).vertices == {0, 2, 4}
    assert oracles.oracle_min_dominating_set(Graph.cycle(6)).vertices == {0, 3}


def test_oracle_solve_pads_to_exact_k():
    rng = random.Random(29)
    for _ in range(120):
        g = random_graph(rng, rng.randint(1, 9))
        for problem in Problem:
            k = None if problem is Problem.HAMILTONIAN_CYCLE else rng.randint(0, g.n)
            inst = Instance(g, k)
            cert = oracles.oracle_solve(problem, inst)
            if not isinstance(cert, Nil):
                assert verify_certificate(problem, inst, cert)


def test_larger_instances_finish():
    rng = random.Random(31)
    g = random_graph(rng, 24, 0.3)
    assert oracles.oracle_max_independent_set(g)
    cyc = oracles.oracle_hamiltonian_cycle(Graph.cycle(18))
    assert verify_certificate(Problem.HAMILTONIAN_CYCLE, Instance(Graph.cycle(18)), cyc)
