import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from localgen.complexes import (
    Graph, complete_graph, empty_complex, from_maximal, full_complex, path_graph, restrict, spanning_trees,
)
from localgen.language import (
    Permutation, card_le, constants, ev, eq, full, make_language, nc, od, project,
)
from localgen.procedure import (
    Procedure, ProcedureError, comm_complex, comm_complex_by_intersections, compose, constant_procedure,
    descendant_condition, dual_window, encode_fig4_label, figure1_procedure, identity_procedure, image,
    input_window, permutation_procedure, proc_card_le1, proc_eq_binary_tree, proc_eq_descendant_tree,
    proc_eq_fig4, proc_join_extend, proc_nc_tree, proc_parity_tree, proc_realizer, proc_trivial,
    proc_upclosed_edges, product_procedure, projection_procedure, pushforward, up_set, verify_generates,
)
from localgen.complexes import cone_at
from localgen.language import card_ge, realizer

from oracles import brute_image


def test_figure1_evaluation_and_windows():
    P = figure1_procedure()
    assert P.eval((1, 1, 0, 1)) == (1, 0, 0)
    assert input_window(P, 0) == (0, 1)
    assert dual_window(P, 1) == (0, 1)
    assert up_set(P, (0, 1)) == (1,)
    assert up_set(P, ()) == (0, 1, 2, 3)
    assert comm_complex(P).facets_lists() == [[0, 1], [1, 2]]


def test_constant_and_identity():
    C = constant_procedure((0, 1, 1), 2)
    assert image(C).words == ((0, 1, 1),)
    assert comm_complex(C) == empty_complex(3)
    assert input_window(C, 0) == ()
    I = identity_procedure(3)
    assert image(I) == full(3)
    assert input_window(I, 2) == (2,)
    assert comm_complex(I).facets_lists() == [[0], [1], [2]]


def test_trivial_has_full_simplex():
    assert comm_complex(proc_trivial(ev(3))) == full_complex(3)


def test_ignored_window_cell_is_not_read():
    # the table ignores its second cell, so the window shrinks
    P = Procedure((2, 2), make_language(1, 2, [(0,)]).alphabet, ((0, 1),), (np.array([[0, 0], [1, 1]]),))
    assert input_window(P, 0) == (0,)


P_ALPHABET = ev(2).alphabet


def test_pushforward_examples():
    K = from_maximal(3, [[0, 1], [2]])
    g = Permutation((2, 0, 1))
    assert pushforward(permutation_procedure(g), K) == K.act(g)
    assert pushforward(projection_procedure(3, [0, 2]), K) == restrict(K, [0, 2])
    zero = np.array(0, dtype=np.int64)
    C = Procedure((2, 2, 2), P_ALPHABET, ((), ()), (zero, zero))
    assert all(m == 0 for m in pushforward(C, K).maximal)


def test_fig4_case():
    P = proc_eq_fig4(3)
    a, b, c = 0, 1, 2
    assert P.eval((a, encode_fig4_label(b, c, 1, 3), c)) == (a, b, c, c)


def test_tree_generators():
    for T in spanning_trees(4):
        K = T.to_complex()
        assert verify_generates(proc_parity_tree(T), ev(4), K)
        assert not verify_generates(proc_parity_tree(T), od(4), K)
        assert verify_generates(proc_nc_tree(T, 3), nc(4, 3), K)
        assert verify_generates(proc_eq_binary_tree(T), eq(4), K)
    T = path_graph([0, 1, 2])
    assert image(proc_parity_tree(T)) == ev(3)
    assert comm_complex(proc_parity_tree(T)).issubset(T.to_complex())


def test_descendant_tree():
    T = path_graph([0, 1, 2, 3])
    assert descendant_condition(T, 0)
    assert verify_generates(proc_eq_descendant_tree(T, 0, 3), eq(4, 3), T.to_complex())
    with pytest.raises(ProcedureError):
        proc_eq_descendant_tree(Graph.of(4, [(0, 2), (0, 3), (1, 3)]), 0, 3)


def test_card_le1_and_upclosed():
    for n in (3, 4):
        P = proc_card_le1(n)
        assert image(P) == card_le(n, 1)
        assert comm_complex(P).issubset(complete_graph(n).to_complex())
    with pytest.raises(ProcedureError):
        proc_card_le1(2)
    G = complete_graph(4)
    assert verify_generates(proc_upclosed_edges(G, card_ge(4, 2)), card_ge(4, 2), G.to_complex())


def test_realizer_procedure():
    K = from_maximal(3, [[0, 1], [1, 2]])
    assert verify_generates(proc_realizer(K), realizer(K), K)


def test_join_extend_cone():
    L = ev(4)
    J = [1, 2, 3]
    P = identity_procedure(3)  # generates the projection, which is all of {0,1}^3
    assert image(P) == project(L, J)
    Q = proc_join_extend(P, L, J)
    assert image(Q) == L
    assert comm_complex(Q).issubset(cone_at(comm_complex(P), 0))


def test_product_procedure():
    P0, P1 = proc_parity_tree(path_graph([0, 1])), constant_procedure((1,), 2)
    Q = product_procedure(3, [((0, 2), P0), ((1,), P1)], 2)
    assert image(Q).words == ((0, 1, 0), (1, 1, 1))


def random_procedure(rng, n_in, n_out, size=2):
    sizes = tuple(rng.randint(1, 3) for _ in range(n_in))
    windows, tables = [], []
    for _ in range(n_out):
        w = tuple(sorted(rng.sample(range(n_in), rng.randint(0, min(2, n_in)))))
        shape = tuple(sizes[j] for j in w)
        windows.append(w)
        tables.append(np.array(rng.choices(range(size), k=int(np.prod(shape, dtype=int))),
                               dtype=np.int64).reshape(shape))
    return Procedure(sizes, make_language(1, size, [(0,)]).alphabet, tuple(windows), tuple(tables))


@settings(max_examples=150)
@given(st.integers(0, 10 ** 6), st.integers(0, 4), st.integers(1, 4))
def test_comm_complex_two_ways(seed, n_in, n_out):
    P = random_procedure(random.Random(seed), n_in, n_out)
    assert comm_complex(P) == comm_complex_by_intersections(P)
    assert set(image(P).words) == brute_image(P)


@settings(max_examples=150)
@given(st.integers(0, 10 ** 6))
def test_composition_inclusion(seed):
    rng = random.Random(seed)
    Q = random_procedure(rng, rng.randint(1, 3), 3)
    P = random_procedure(rng, 3, rng.randint(1, 3))
    P = Procedure((2, 2, 2), P.output_alphabet, P.windows,
                  tuple(np.resize(t, tuple(2 for _ in w)) for w, t in zip(P.windows, P.tables)))
    PQ = compose(P, Q)
    assert comm_complex(PQ).issubset(pushforward(P, comm_complex(Q)))
    X = list(itertools.product(*[range(b) for b in Q.input_sizes]))
    assert {PQ.eval(x) for x in X} == {P.eval(Q.eval(x)) for x in X}


def test_bad_tables_rejected():
    with pytest.raises(ProcedureError):
        Procedure((2,), make_language(1, 2, [(0,)]).alphabet, ((0,),), (np.array([0, 2]),))
    with pytest.raises(ProcedureError):
        Procedure((2,), make_language(1, 2, [(0,)]).alphabet, ((1,),), (np.array([0, 1]),))
