import itertools
import random

import pytest

from localgen.complexes import (
    Graph, all_complexes, all_graphs, boundary, complete_graph, figure_tree, from_maximal, full_complex, k_a,
    path_graph, singletons, spanning_trees, vertex_connectivity_at_least,
)
from localgen.decide import (
    GENERATES, REFUTED, UNDECIDED, DecisionError, Options, check_certificate, check_generalized_witness,
    coarsen, decide_generalized, decide_generates, decide_many, is_v_good, minimal_complexes, refute_necessary,
    valid_sequences, v_good_instance,
)
from localgen.language import card_ge, card_le, ev, eq, full, make_language, one_or_all, unique
from localgen.procedure import verify_generates

from oracles import sat_generates

PLAIN = Options(fast_paths=False, refuters=False, factorize=False)


def facets(cs):
    return {K.maximal for K in cs}


def wheel(n):
    rim = [(i, i % (n - 1) + 1) for i in range(1, n)]
    return Graph.of(n, rim + [(0, i) for i in range(1, n)])


def test_basic_verdicts():
    assert decide_generates(ev(3), path_graph([0, 1, 2]).to_complex()).generates
    assert not decide_generates(unique(3), complete_graph(3).to_complex()).generates
    assert not decide_generates(eq(4, 3), Graph.of(4, [(0, 3), (1, 3), (0, 2)]).to_complex()).generates


def test_card_ge_on_wheel_and_friends():
    for G in (wheel(4), path_graph([0, 1, 2, 3]), complete_graph(4), Graph.of(4, [(0, 1), (1, 2), (2, 3), (3, 0)])):
        assert decide_generates(card_ge(4, 2), G.to_complex()).generates == vertex_connectivity_at_least(G, 2)


def test_certificates():
    cert = refute_necessary(ev(4), from_maximal(4, [[0, 1], [2, 3]]))
    assert cert == {"kind": "disconnected-irreducible", "partition": [[0, 1], [2, 3]]}
    cert = refute_necessary(unique(4), complete_graph(4).to_complex())
    assert cert["kind"] == "unique-triangle"
    assert check_certificate(unique(4), complete_graph(4).to_complex(), cert)
    assert refute_necessary(full(3), singletons(3)) is None
    assert decide_generates(full(3), singletons(3), PLAIN).generates


def test_bogus_certificate_rejected():
    K = full_complex(3)
    assert not check_certificate(ev(3), K, {"kind": "disconnected-irreducible", "partition": [[0], [1, 2]]})
    assert not check_certificate(ev(3), K, {"kind": "csp-exhausted"})
    assert not check_certificate(ev(3), K, {"kind": "no-such-kind"})


@pytest.mark.parametrize("seed", range(60))
def test_pipeline_matches_oracle(seed):
    rng = random.Random(seed)
    n = rng.choice((2, 3))
    size = rng.choice((2, 3))
    words = {tuple(rng.randrange(size) for _ in range(n)) for _ in range(rng.randint(1, 7))}
    L = make_language(n, size, words)
    K = rng.choice(all_complexes(n))
    res = decide_generates(L, K)
    assert res.generates == sat_generates(L, K)
    if res.verdict == GENERATES:
        assert verify_generates(res.witness, L, K)
    else:
        assert check_certificate(L, K, res.certificate)


def test_coarsening_is_letterwise():
    L = eq(3, 4)
    C = coarsen(L, 0)
    assert C.alphabet.size == 2
    assert all(tuple(a & 1 for a in w) in C for w in L.words)


def test_timeout_gives_undecided():
    res = decide_generates(eq(4, 3), figure_tree("fig4").to_complex(), PLAIN, timeout=0.0)
    assert res.verdict in (UNDECIDED, GENERATES)


def test_decide_many_matches_single_calls():
    L = one_or_all(3)
    batch = decide_many(L, all_complexes(3))
    for K in all_complexes(3):
        single = decide_generates(L, K)
        assert batch[K.maximal].verdict == single.verdict
        r = batch[K.maximal]
        if r.verdict == GENERATES:
            assert verify_generates(r.witness, L, K)
        else:
            assert check_certificate(L, K, r.certificate)


def test_minimal_complexes():
    assert facets(minimal_complexes(ev(3))) == facets(T.to_complex() for T in spanning_trees(3))
    assert facets(minimal_complexes(card_le(3, 1))) == {complete_graph(3).to_complex().maximal}
    assert facets(minimal_complexes(unique(4))) == {k_a(4, a).maximal for a in range(4)}
    top = 0b1111
    want = {from_maximal(4, []).__class__.from_masks(4, (top ^ 1 << a, top ^ 1 << b)).maximal
            for a, b in itertools.combinations(range(4), 2)}
    assert facets(minimal_complexes(one_or_all(4))) == want


def test_minimal_symmetry_flag_agrees():
    assert facets(minimal_complexes(ev(3), up_to_symmetry=False)) == facets(minimal_complexes(ev(3)))


def test_minimal_enumeration_limit():
    with pytest.raises(DecisionError):
        minimal_complexes(ev(5))


def test_generalized_reduces_to_plain():
    K = path_graph([0, 1, 2]).to_complex()
    res = decide_generalized(ev(3), ev(3).words, range(3), K)
    assert res.generates
    assert check_generalized_witness(res.witness, ev(3), ev(3).words, range(3), K)


def test_generalized_unextendable():
    res = decide_generalized(ev(2), [(0,), (1,)], [0], full_complex(2))
    assert res.generates
    res = decide_generalized(make_language(2, 2, [(0, 0)]), [(0,), (1,)], [0], full_complex(2))
    assert res.verdict == REFUTED and res.certificate["kind"] == "unextendable"


def test_valid_sequences():
    assert valid_sequences([0, 2], 2) is None
    V = valid_sequences([0, 1, 2], 2)
    assert all(w[0] == w[1] or w[1] == w[2] for w in V.words)
    assert len(V) == 6


def test_v_good_path():
    T = from_maximal(3, [[0, 1], [1, 2]])
    upper, base, positions = v_good_instance([0, 1, 2], 2, 2)
    assert positions == [0, 1] and len(base) == 4
    # a path that generates Eq is v-good for every v
    assert decide_generates(eq(3), T).generates
    for v in range(3):
        assert is_v_good(T, [0, 1, 2], v, 2)
    assert not is_v_good(from_maximal(2, [[0, 1]]), [0, 2], 0, 2)
