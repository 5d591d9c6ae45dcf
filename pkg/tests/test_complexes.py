import itertools

import pytest
from hypothesis import given, strategies as st

from localgen.complexes import (
    ComplexError, Graph, SimplicialComplex, all_complexes, all_graphs, boundary, canonical_form, complete_graph,
    cone, cone_at, empty_complex, enumerate_complexes, from_maximal, full_complex, is_connected, is_L_connected,
    join, k_a, orbit, path_graph, prufer_to_edges, restrict, singletons, skeleton1, spanning_trees,
    vertex_connectivity_at_least, downwards_criterion, MAX_ENUMERATION_N,
)
from localgen.language import Permutation, card_ge, card_le, graph_independent, make_language

from oracles import brute_complex_count

S3 = [Permutation(p) for p in itertools.permutations(range(3))]


def test_absorption():
    assert from_maximal(3, [[0, 1], [0, 1, 2]]).facets_lists() == [[0, 1, 2]]
    assert from_maximal(3, []).maximal == ()
    assert len(from_maximal(4, [[0, 1], [1, 2], [2, 3]]).maximal) == 3


def test_out_of_range():
    with pytest.raises(ComplexError):
        from_maximal(2, [[0, 2]])


def test_void_and_empty_simplex_differ():
    void, nothing = empty_complex(2), from_maximal(2, [[]])
    assert void != nothing
    assert not void.contains(()) and nothing.contains(())
    assert void.simplices() == [] and nothing.simplices() == [0]


def test_membership_and_restrict():
    K = from_maximal(3, [[0, 1], [1, 2]])
    assert K.contains((0, 1)) and not K.contains((0, 2))
    assert restrict(full_complex(4), [0, 1]) == full_complex(2)
    assert skeleton1(full_complex(3)) == complete_graph(3)


def test_join_cone_suspension():
    K = complete_graph(3).to_complex()
    C = join(from_maximal(1, [[0]]), K)
    assert C == cone(K)
    assert C == k_a(4, 0)
    assert cone_at(K, 2) == k_a(4, 2)
    assert len(k_a(4, 1).maximal) == 3
    susp = join(from_maximal(2, [[0], [1]]), from_maximal(1, [[0]]))
    assert susp.facets_lists() == [[0, 2], [1, 2]]


@given(st.integers(0, 19), st.integers(0, 5))
def test_restrict_join_recovers_factor(a, b):
    K0, K1 = all_complexes(3)[a], all_complexes(2)[b]
    if K0.maximal and K1.maximal:
        J = join(K0, K1)
        assert restrict(J, [0, 1, 2]) == K0
        # joins connect everything, as long as every vertex is in some simplex
        if K0.covered() == 0b111 and K1.covered() == 0b11:
            assert is_connected(J)


def test_connectivity():
    assert is_connected(path_graph([0, 1, 2, 3]).to_complex())
    assert not is_connected(from_maximal(4, [[0, 1], [2, 3]]))
    # one vertex admits no non-trivial partition
    assert is_connected(empty_complex(1))
    assert not is_connected(empty_complex(2))


def test_spanning_trees():
    assert len(list(spanning_trees(2))) == 1
    assert len(list(spanning_trees(3))) == 3
    assert len(list(spanning_trees(4))) == 16
    assert len(list(spanning_trees(5))) == 125
    assert len(prufer_to_edges([0, 0], 4)) == 3


def test_vertex_connectivity():
    assert vertex_connectivity_at_least(complete_graph(4), 3)
    assert not vertex_connectivity_at_least(path_graph([0, 1, 2, 3]), 2)
    assert vertex_connectivity_at_least(Graph.of(1, []), 1)


def test_L_connectivity():
    L = make_language(3, 2, [w for w in itertools.product((0, 1), repeat=3) if w[0] or w[1]])
    G = Graph.of(3, [(0, 1)])
    assert is_L_connected(G, L)
    assert not is_connected(G.to_complex())
    assert not is_L_connected(Graph.of(4, [(0, 1), (2, 3)]), card_ge(4, 2))


def test_downwards_criterion():
    graphs = list(all_graphs(4))
    assert [G for G in graphs if downwards_criterion(G, card_le(4, 1))] == [complete_graph(4)]
    G0 = Graph.of(3, [(0, 1)])
    for G in all_graphs(3):
        assert downwards_criterion(G, graph_independent(G0)) == G0.edges.issubset(G.edges)
    for G in graphs:
        want = all(G.induced_connected(S) for S in itertools.combinations(range(4), 3))
        assert downwards_criterion(G, card_le(4, 2)) == want


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumeration_counts(n):
    assert len(all_complexes(n)) == brute_complex_count(n)


def test_enumeration_limit():
    with pytest.raises(ComplexError):
        all_complexes(MAX_ENUMERATION_N + 1)


def test_orbit_reduction_reexpands():
    reps = list(enumerate_complexes(3, S3))
    assert len(reps) < 20
    union = {K for r in reps for K in orbit(r, S3)}
    assert union == set(all_complexes(3))


def test_canonical_forms():
    K = from_maximal(3, [[0, 1]])
    assert canonical_form(K, None) == K
    for g in S3:
        assert canonical_form(K.act(g), S3) == canonical_form(K, S3)
    assert len({canonical_form(T.to_complex(), S3) for T in spanning_trees(3)}) == 1


def test_boundary_and_singletons():
    assert len(boundary(3).maximal) == 3
    assert singletons(2).facets_lists() == [[0], [1]]
