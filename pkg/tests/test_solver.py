import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from derangement_lab import constructions as C
from derangement_lab.dgraph import build_graph, complete_multipartite_decomposition
from derangement_lab.errors import DerangementLabError
from derangement_lab.perm import generate_group, cycle_type, fixed_points, Permutation
from derangement_lab.solver import (all_maximum_cliques, analyze, clique_coclique_check,
                                    clique_number, ekr_check, intersection_density, max_clique,
                                    max_coclique, no_homomorphism_bound, two_p_clique)
from oracles import brute_clique_number, brute_coclique_number, is_clique


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    density = draw(st.floats(0.0, 1.0))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < density, 1)
    return upper | upper.T


def lex_least_max_clique(adj):
    n = len(adj)
    for size in range(n, 0, -1):
        for combo in itertools.combinations(range(n), size):
            if is_clique(adj, combo):
                return list(combo)
    return []


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_clique_number_matches_brute_force(adj):
    res = clique_number(adj)
    assert res.size == brute_clique_number(adj)
    assert len(res.witness) == res.size and is_clique(adj, res.witness)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9))
def test_witness_is_lexicographically_least(adj):
    assert clique_number(adj).witness == lex_least_max_clique(adj)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=9))
def test_enumeration_is_complete(adj):
    size = brute_clique_number(adj)
    found, complete = all_maximum_cliques(adj, size)
    expect = [list(c) for c in itertools.combinations(range(len(adj)), size) if is_clique(adj, c)]
    assert complete and sorted(map(sorted, found)) == expect


def test_small_examples():
    assert max_clique(build_graph(C.build_gq(2))).size == 3
    assert max_clique(build_graph(C.build_symmetric(3))).size == 3
    assert clique_number(np.zeros((5, 5), dtype=bool)).size == 1
    assert max_coclique(build_graph(C.build_example6())).size == 4
    assert max_coclique(build_graph(C.build_symmetric(3))).size == 2
    assert max_coclique(build_graph(C.build_gq(3))).size == 18


@pytest.mark.parametrize("builder", [C.build_example6, lambda: C.build_gq(3),
                                     lambda: C.build_fourell(3)[0]])
def test_shortcut_equals_search(builder):
    graph = build_graph(builder())
    d = complete_multipartite_decomposition(graph)
    assert max_clique(graph, d).size == max_clique(graph).size
    assert max_coclique(graph, d).size == max_coclique(graph).size


def test_solver_cap_gives_flagged_lower_bound():
    graph = build_graph(C.build_symmetric(4))
    res = max_coclique(graph, cap=10)
    assert not res.exact and res.size <= 6


def test_clique_coclique_bound():
    for builder, n in [(lambda: C.build_gq(2), 12), (lambda: C.build_symmetric(3), 6),
                       (lambda: C.build_cyclic_regular(6), 6)]:
        graph = build_graph(builder())
        rep = clique_coclique_check(graph, max_coclique(graph), max_clique(graph))
        assert rep.equality and rep.alpha * rep.omega == n
        assert rep.witnesses_meet_once


def test_density_examples():
    assert intersection_density(C.build_example6()) == 2
    assert intersection_density(C.build_gq(5)) == 5
    assert intersection_density(C.build_fourell(5)[0]) == 2
    assert intersection_density(C.build_cyclic_regular(6)) == 1
    assert isinstance(intersection_density(C.build_agl2(3)), Fraction)
    assert intersection_density(C.build_agl2(3)) == Fraction(5, 4)


def test_ekr_examples():
    assert ekr_check(C.build_symmetric(3)) == (True, True)
    assert ekr_check(C.build_example6()) == (False, None)
    assert ekr_check(C.build_cyclic_regular(5)) == (True, True)
    assert ekr_check(C.build_symmetric(4)) == (True, True)


def test_two_p_examples():
    e6 = C.build_example6()
    res = two_p_clique(e6, 3)
    sigma = Permutation.from_cycles(6, (1, 3, 5), (2, 4, 6))
    assert res.case == "double-cycle"
    assert set(res.clique) == {sigma ** k for k in range(3)}
    c6 = two_p_clique(C.build_cyclic_regular(6), 3)
    assert len(c6.clique) == 3 and all(cycle_type(x) in [(3, 3), (1,) * 6] for x in c6.clique)


@pytest.mark.parametrize("builder,p", [
    (C.build_example6, 3), (lambda: C.build_wreath_cyclic(3), 3), (lambda: C.build_wreath_cyclic(5), 5),
    (lambda: C.build_wreath_cyclic(7), 7), (lambda: C.build_dihedral(10), 5),
    (lambda: C.build_cyclic_regular(14), 7), (lambda: C.build_on_pairs(C.build_alternating(5)), 5)])
def test_two_p_gives_clique(builder, p):
    g = builder()
    res = two_p_clique(g, p)
    graph = build_graph(g)
    idx = [g.index[x] for x in res.clique]
    assert len(idx) == p and is_clique(graph.adjacency, idx)
    assert res.rho_bound == 2 and intersection_density(g) <= 2


def test_two_p_rejects_bad_input():
    with pytest.raises(ValueError):
        two_p_clique(C.build_example6(), 4)
    with pytest.raises(ValueError):
        two_p_clique(C.build_example6(), 5)
    with pytest.raises(DerangementLabError):
        two_p_clique(generate_group([Permutation.from_cycles(6, (1, 2, 3))]), 3)


def test_no_homomorphism():
    rep = no_homomorphism_bound(C.build_agl2(3), C.build_gq(3))
    assert rep.holds and rep.rho_holds and rep.rho_h == 3 and rep.rho_g <= 3
    g = C.build_example6()
    rep = no_homomorphism_bound(g, g)
    assert rep.alpha_g == rep.bound
    s3 = C.build_symmetric(3)
    c3 = generate_group([Permutation.from_cycles(3, (1, 2, 3))])
    rep = no_homomorphism_bound(s3, c3)
    assert rep.bound == 2 and rep.alpha_g == 2


def test_analyze_report():
    rep = analyze(C.build_example6())
    d = rep.to_dict()
    assert d["format"] == 1 and d["rho"] == {"num": 2, "den": 1}
    assert d["multipartite"] == {"parts": 3, "part_size": 4}
    assert rep.passed
    rep = analyze(C.build_cyclic_regular(5))
    assert rep.rho == 1 and rep.ekr


def test_analyze_intransitive_group():
    g = generate_group([Permutation.from_cycles(4, (1, 2))])
    rep = analyze(g)
    assert not rep.transitive and rep.alpha == 2 and rep.omega == 1


@pytest.mark.parametrize("builder", [lambda: C.build_symmetric(4), lambda: C.build_dihedral(6),
                                     lambda: C.build_alternating(4)])
def test_coclique_witness_is_intersecting_family(builder):
    g = builder()
    graph = build_graph(g)
    res = max_coclique(graph)
    fam = [g.elements[i] for i in res.witness]
    assert all(fixed_points(x * ~y) for x, y in itertools.combinations(fam, 2))
    assert res.size == brute_coclique_number(graph.adjacency)
