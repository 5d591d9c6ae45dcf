"""Finite languages over dense integer alphabets and the standard families."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

Word = tuple[int, ...]


class LanguageError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    size: int
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise LanguageError(f"alphabet size must be >= 1, got {self.size}")
        if self.names is not None:
            names = tuple(self.names)
            object.__setattr__(self, "names", names)
            if len(names) != self.size:
                raise LanguageError("alphabet names must match alphabet size")
            if len(set(names)) != len(names):
                raise LanguageError("alphabet names must be distinct")

    def name(self, letter: int) -> str:
        if self.names is None:
            return str(letter)
        return self.names[letter]

    def letter(self, name: str) -> int:
        if self.names is None:
            return int(name)
        return self.names.index(name)

    @classmethod
    def of(cls, alphabet: "Alphabet | int | Sequence[str]") -> "Alphabet":
        if isinstance(alphabet, Alphabet):
            return alphabet
        if isinstance(alphabet, int):
            return cls(alphabet)
        return cls(len(alphabet), tuple(alphabet))


BINARY = Alphabet(2)


@dataclass(frozen=True, eq=False)
class Language:
    """A non-empty set of length-``n`` words, kept in lexicographic order.

    ``positions`` records the original index of each position when the
    language was obtained by projection; it defaults to ``range(n)``.
    """

    n: int
    alphabet: Alphabet
    words: tuple[Word, ...]
    positions: tuple[int, ...] = ()
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not self.positions:
            object.__setattr__(self, "positions", tuple(range(self.n)))
        object.__setattr__(self, "_index", {w: k for k, w in enumerate(self.words)})

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __contains__(self, word) -> bool:
        return tuple(word) in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, Language):
            return NotImplemented
        return self.n == other.n and self.words == other.words

    def __hash__(self) -> int:
        return hash((self.n, self.words))

    def index(self, word: Sequence[int]) -> int:
        return self._index[tuple(word)]

    @property
    def array(self) -> np.ndarray:
        arr = self.__dict__.get("_array")
        if arr is None:
            arr = np.array(self.words, dtype=np.int64).reshape(len(self.words), self.n)
            object.__setattr__(self, "_array", arr)
        return arr

    def letters_at(self, i: int) -> tuple[int, ...]:
        return tuple(sorted({w[i] for w in self.words}))

    def format_word(self, word: Sequence[int]) -> str:
        names = [self.alphabet.name(a) for a in word]
        if all(len(s) == 1 for s in names):
            return "".join(names)
        return "(" + ",".join(names) + ")"

    def __repr__(self) -> str:
        shown = ", ".join(self.format_word(w) for w in self.words[:8])
        more = ", ..." if len(self.words) > 8 else ""
        return f"Language(n={self.n}, |A|={self.alphabet.size}, {{{shown}{more}}})"


def make_language(n: int, alphabet, words: Iterable[Sequence[int]],
                  positions: Sequence[int] = ()) -> Language:
    alphabet = Alphabet.of(alphabet)
    if n < 1:
        raise LanguageError("n must be >= 1")
    seen = set()
    for w in words:
        w = tuple(int(a) for a in w)
        if len(w) != n:
            raise LanguageError(f"length mismatch: word {w} has length {len(w)}, expected {n}")
        for a in w:
            if not 0 <= a < alphabet.size:
                raise LanguageError(f"letter {a} out of range for alphabet of size {alphabet.size}")
        seen.add(w)
    if not seen:
        raise LanguageError("empty word set")
    return Language(n, alphabet, tuple(sorted(seen)), tuple(positions))


def from_predicate(n: int, alphabet, pred) -> Language:
    alphabet = Alphabet.of(alphabet)
    words = [w for w in itertools.product(range(alphabet.size), repeat=n) if pred(w)]
    return make_language(n, alphabet, words)


def parse_words(n: int, alphabet, words: Iterable[str | Sequence]) -> Language:
    """Build a language from display strings such as ``"010"`` or name lists."""
    alphabet = Alphabet.of(alphabet)
    parsed = []
    for w in words:
        if isinstance(w, str):
            parsed.append([alphabet.letter(ch) for ch in w])
        else:
            parsed.append([alphabet.letter(str(ch)) for ch in w])
    return make_language(n, alphabet, parsed)


# ---------------------------------------------------------------- families

def _check_n(n):
    if n < 1:
        raise LanguageError("n must be >= 1")


def full(n: int, alphabet=BINARY) -> Language:
    _check_n(n)
    return from_predicate(n, alphabet, lambda w: True)


def ev(n: int) -> Language:
    _check_n(n)
    return from_predicate(n, BINARY, lambda w: sum(w) % 2 == 0)


def od(n: int) -> Language:
    _check_n(n)
    return from_predicate(n, BINARY, lambda w: sum(w) % 2 == 1)


def nd(n: int, alphabet=BINARY) -> Language:
    """Non-decreasing words over the ordered alphabet."""
    _check_n(n)
    return from_predicate(n, alphabet, lambda w: all(w[i] <= w[i + 1] for i in range(n - 1)))


def nc(n: int, alphabet=BINARY) -> Language:
    _check_n(n)
    if Alphabet.of(alphabet).size < 2:
        raise LanguageError("non-constant words need at least two letters")
    if n < 2:
        raise LanguageError("non-constant words need n >= 2")
    return from_predicate(n, alphabet, lambda w: len(set(w)) > 1)


def card_ge(n: int, k: int) -> Language:
    _check_n(n)
    if not 0 <= k <= n:
        raise LanguageError("need 0 <= k <= n")
    return from_predicate(n, BINARY, lambda w: sum(w) >= k)


def card_le(n: int, k: int) -> Language:
    _check_n(n)
    if k < 0:
        raise LanguageError("need k >= 0")
    return from_predicate(n, BINARY, lambda w: sum(w) <= k)


def unique(n: int) -> Language:
    _check_n(n)
    return from_predicate(n, BINARY, lambda w: sum(w) == 1)


def one_or_all(n: int) -> Language:
    _check_n(n)
    return from_predicate(n, BINARY, lambda w: sum(w) in (1, n))


def one_or_all_or_zero(n: int) -> Language:
    _check_n(n)
    return from_predicate(n, BINARY, lambda w: sum(w) in (0, 1, n))


def eq(n: int, alphabet=BINARY) -> Language:
    """Words with at least two identical consecutive letters."""
    _check_n(n)
    if n < 2:
        raise LanguageError("eq needs n >= 2")
    return from_predicate(n, alphabet, lambda w: any(w[i] == w[i + 1] for i in range(n - 1)))


def constants(n: int, alphabet=BINARY) -> Language:
    _check_n(n)
    return from_predicate(n, alphabet, lambda w: len(set(w)) == 1)


def graph_independent(graph) -> Language:
    """Binary colorings with no edge whose two ends are both 1."""
    edges = list(graph.edges)
    return from_predicate(graph.n, BINARY,
                          lambda w: not any(w[u] == 1 and w[v] == 1 for u, v in edges))


def realizer(K) -> Language:
    """The language whose generating complexes are exactly those containing ``K``.

    Letters are bitmasks over the non-empty simplices of ``K`` (in
    ``K.simplices()`` order); the letter at position ``i`` keeps only the
    bits of simplices that contain ``i``.
    """
    simplices = [s for s in K.simplices() if s]
    incident = []
    for i in range(K.n):
        mask = 0
        for k, s in enumerate(simplices):
            if s >> i & 1:
                mask |= 1 << k
        incident.append(mask)
    size = 1 << len(simplices)
    words = [tuple(h & incident[i] for i in range(K.n)) for h in range(size)]
    return make_language(K.n, Alphabet(size), words)


FAMILIES = {
    "full": full, "ev": ev, "od": od, "nd": nd, "nc": nc, "card_ge": card_ge,
    "card_le": card_le, "unique": unique, "one_or_all": one_or_all,
    "one_or_all_or_zero": one_or_all_or_zero, "eq": eq, "constants": constants,
}


# -------------------------------------------------------------- operations

def project(L: Language, J: Iterable[int]) -> Language:
    J = sorted(set(J))
    if not J:
        raise LanguageError("projection onto an empty set of positions")
    for j in J:
        if not 0 <= j < L.n:
            raise LanguageError(f"position {j} out of range")
    words = {tuple(w[j] for j in J) for w in L.words}
    return make_language(len(J), L.alphabet, words, tuple(L.positions[j] for j in J))


def image_under_map(L: Language, m) -> Language:
    """Image of ``L`` under a procedure whose input cells are the positions of ``L``."""
    if len(m.input_sizes) != L.n:
        raise LanguageError(f"map expects {len(m.input_sizes)} positions, language has {L.n}")
    if any(b != L.alphabet.size for b in m.input_sizes):
        raise LanguageError("map input alphabets do not match the language alphabet")
    out = m.eval_many(L.array)
    return make_language(m.output_n, m.output_alphabet, {tuple(int(a) for a in row) for row in out})


@dataclass(frozen=True)
class Permutation:
    mapping: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise LanguageError(f"not a bijection: {self.mapping}")

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(tuple(self.mapping[other.mapping[i]] for i in range(other.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return Permutation(tuple(inv))

    def act_word(self, w: Sequence[int]) -> Word:
        out = [0] * self.n
        for i, a in enumerate(w):
            out[self.mapping[i]] = a
        return tuple(out)

    def act_mask(self, mask: int) -> int:
        out = 0
        for i in range(self.n):
            if mask >> i & 1:
                out |= 1 << self.mapping[i]
        return out

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))


def act(g: Permutation, L: Language) -> Language:
    if g.n != L.n:
        raise LanguageError("permutation size does not match language length")
    return make_language(L.n, L.alphabet, (g.act_word(w) for w in L.words), L.positions)


def automorphisms(L: Language, bound: int = 8) -> list[Permutation]:
    if L.n > bound:
        raise LanguageError(f"automorphism search limited to n <= {bound}")
    words = L._index
    found = []
    for p in itertools.permutations(range(L.n)):
        g = Permutation(p)
        if all(g.act_word(w) in words for w in L.words):
            found.append(g)
    return found


def _require_binary(L: Language):
    if L.alphabet.size != 2:
        raise LanguageError("closure properties are defined for binary languages only")


def is_upwards_closed(L: Language) -> bool:
    _require_binary(L)
    for w in L.words:
        for i in range(L.n):
            if w[i] == 0 and w[:i] + (1,) + w[i + 1:] not in L._index:
                return False
    return True


def is_downwards_closed(L: Language) -> bool:
    _require_binary(L)
    for w in L.words:
        for i in range(L.n):
            if w[i] == 1 and w[:i] + (0,) + w[i + 1:] not in L._index:
                return False
    return True


def _projection_size(L: Language, J: Sequence[int]) -> int:
    return len({tuple(w[j] for j in J) for w in L.words})


def splits_as_product(L: Language, part0: Sequence[int], part1: Sequence[int]) -> bool:
    """``L`` equals the product of its projections on the two parts."""
    return len(L) == _projection_size(L, part0) * _projection_size(L, part1)


def _finest_blocks(L: Language, block: tuple[int, ...]) -> list[tuple[int, ...]]:
    if len(block) == 1:
        return [block]
    sub = project(L, block)
    rest = block[1:]
    # The first position always stays in part0, so each split is tried once.
    for r in range(0, len(rest)):
        for extra in itertools.combinations(range(1, len(block)), r):
            part0 = (0,) + extra
            part1 = tuple(k for k in range(len(block)) if k not in part0)
            if splits_as_product(sub, part0, part1):
                left = _finest_blocks(L, tuple(block[k] for k in part0))
                right = _finest_blocks(L, tuple(block[k] for k in part1))
                return left + right
    return [block]


def irreducible_factorization(L: Language) -> list[tuple[tuple[int, ...], Language]]:
    """Finest partition of the positions with ``L`` the product of its factors."""
    blocks = sorted(_finest_blocks(L, tuple(range(L.n))))
    return [(b, project(L, b)) for b in blocks]


def is_irreducible(L: Language) -> bool:
    return len(irreducible_factorization(L)) == 1


def interleave(n: int, factors: Sequence[tuple[Sequence[int], Language]]) -> Language:
    """Product of factor languages placed back on their original positions."""
    alphabet = max((f for _, f in factors), key=lambda f: f.alphabet.size).alphabet
    words = []
    for combo in itertools.product(*(f.words for _, f in factors)):
        w = [0] * n
        for (block, _), part in zip(factors, combo):
            for pos, a in zip(block, part):
                w[pos] = a
        words.append(w)
    return make_language(n, alphabet, words)


def independent_pair(L: Language, i: int, j: int) -> bool:
    if i == j:
        raise LanguageError("independence is defined for distinct positions")
    return splits_as_product(project(L, (i, j)), (0,), (1,))
