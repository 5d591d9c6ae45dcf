import itertools

import pytest
from hypothesis import given, strategies as st

from localgen.language import (
    Alphabet, LanguageError, Permutation, act, automorphisms, card_ge, card_le, constants, eq, ev, full,
    image_under_map, independent_pair, interleave, irreducible_factorization, is_downwards_closed,
    is_irreducible, is_upwards_closed, make_language, nc, nd, od, one_or_all, parse_words, project, unique,
)
from localgen.procedure import flip_procedure, identity_procedure, unique_reduction_map


def words(L):
    return {L.format_word(w) for w in L.words}


def test_dedup_and_order():
    L = parse_words(2, 2, ["01", "10", "01"])
    assert L.words == ((0, 1), (1, 0))


def test_singleton():
    assert words(parse_words(1, 2, ["1"])) == {"1"}


def test_length_mismatch():
    with pytest.raises(LanguageError, match="length"):
        parse_words(3, 2, ["0101"])


def test_bad_letter_and_empty():
    with pytest.raises(LanguageError):
        make_language(2, 2, [(0, 2)])
    with pytest.raises(LanguageError):
        make_language(2, 2, [])


def test_named_alphabet():
    L = parse_words(2, ["a", "b"], ["ab", "ba"])
    assert L.alphabet == Alphabet(2, ("a", "b"))
    assert words(L) == {"ab", "ba"}


def test_families():
    assert words(ev(3)) == {"000", "011", "101", "110"}
    assert words(od(3)) == {"001", "010", "100", "111"}
    assert words(unique(3)) == {"100", "010", "001"}
    assert words(card_le(3, 1)) == {"000", "100", "010", "001"}
    assert words(nd(3)) == {"000", "001", "011", "111"}
    assert len(eq(4, 3)) == 57
    assert len(nc(3, 3)) == 27 - 3
    assert len(full(3, 3)) == 27
    assert words(constants(2)) == {"00", "11"}
    assert words(one_or_all(3)) == {"100", "010", "001", "111"}


def test_eq_count_brute_force():
    brute = [w for w in itertools.product(range(3), repeat=4) if any(w[i] == w[i + 1] for i in range(3))]
    assert len(eq(4, 3)) == len(brute) == 57


def test_project():
    assert words(project(nd(3), [0, 2])) == {"00", "01", "11"}
    assert project(unique(4), [0, 1, 2]) == card_le(3, 1)
    L = ev(3)
    assert project(L, range(3)) == L


def test_letterwise_images():
    assert image_under_map(ev(3), flip_procedure(3, 0)) == od(3)
    assert image_under_map(ev(3), identity_procedure(3)) == ev(3)
    assert image_under_map(unique(5), unique_reduction_map(5, 0, 1)) == unique(3)


def test_act():
    assert act(Permutation.identity(3), ev(3)) == ev(3)
    for p in itertools.permutations(range(4)):
        assert act(Permutation(p), ev(4)) == ev(4)
    assert words(act(Permutation((1, 0)), nd(2))) == {"00", "10", "11"}


def test_automorphisms():
    assert len(automorphisms(card_le(3, 1))) == 6
    assert automorphisms(nd(3)) == [Permutation.identity(3)]
    assert len(automorphisms(eq(3, 2))) == 2


def test_closure():
    assert is_upwards_closed(card_ge(4, 2))
    assert is_downwards_closed(card_le(4, 2))
    assert not is_upwards_closed(unique(3)) and not is_downwards_closed(unique(3))


def test_factorization():
    assert [b for b, _ in irreducible_factorization(ev(3))] == [(0, 1, 2)]
    assert [b for b, _ in irreducible_factorization(full(3))] == [(0,), (1,), (2,)]
    prod = make_language(3, 2, [w + (1,) for w in ev(2).words])
    blocks = irreducible_factorization(prod)
    assert [b for b, _ in blocks] == [(0, 1), (2,)]
    assert interleave(3, blocks) == prod
    assert is_irreducible(ev(3)) and not is_irreducible(prod)


def test_independent_pairs():
    for i, j in itertools.combinations(range(4), 2):
        assert independent_pair(one_or_all(4), i, j)
    assert not independent_pair(unique(3), 0, 1)
    assert not independent_pair(one_or_all(2), 0, 1)


@st.composite
def languages(draw, max_n=4, max_size=3):
    n = draw(st.integers(1, max_n))
    size = draw(st.integers(1, max_size))
    universe = list(itertools.product(range(size), repeat=n))
    picked = draw(st.lists(st.sampled_from(universe), min_size=1, max_size=12))
    return make_language(n, size, picked)


@given(languages())
def test_factorization_recombines(L):
    assert interleave(L.n, irreducible_factorization(L)) == L


@given(languages(), st.data())
def test_act_inverse(L, data):
    p = Permutation(tuple(data.draw(st.permutations(range(L.n)))))
    assert act(p.inverse(), act(p, L)) == L


@given(languages(), st.data())
def test_projection_of_projection(L, data):
    J = sorted(data.draw(st.sets(st.integers(0, L.n - 1), min_size=1)))
    K = sorted(data.draw(st.sets(st.sampled_from(range(len(J))), min_size=1)))
    assert project(project(L, J), K).words == project(L, [J[k] for k in K]).words
