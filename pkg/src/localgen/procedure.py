"""Local generation procedures given as rule tables.

A procedure has input cells ``0..m-1`` with per-cell alphabet sizes and one
rule table per output cell. Table ``i`` is a numpy array whose axes follow
the declared window of cell ``i`` in increasing order, so evaluating a rule
is a single fancy-indexing lookup.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .complexes import (
    Graph, SimplicialComplex, empty_complex, is_spanning_tree, mask_of,
    vertices_of,
)
from .language import (
    Alphabet, BINARY, Language, LanguageError, Permutation, eq, is_upwards_closed,
    make_language, nc, realizer,
)

IMAGE_BOUND = 10 ** 7
_CHUNK = 1 << 18


class ProcedureError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Procedure:
    input_sizes: tuple[int, ...]
    output_alphabet: Alphabet
    windows: tuple[tuple[int, ...], ...]
    tables: tuple[np.ndarray, ...]
    input_names: tuple[str, ...] | None = None
    output_names: tuple[str, ...] | None = None

    def __post_init__(self):
        if len(self.windows) != len(self.tables):
            raise ProcedureError("need one rule table per output cell")
        for b in self.input_sizes:
            if b < 1:
                raise ProcedureError("input alphabets must be non-empty")
        for i, (w, t) in enumerate(zip(self.windows, self.tables)):
            if list(w) != sorted(set(w)):
                raise ProcedureError(f"window of cell {i} must be sorted and duplicate-free")
            for j in w:
                if not 0 <= j < len(self.input_sizes):
                    raise ProcedureError(f"window of cell {i} names unknown input cell {j}")
            shape = tuple(self.input_sizes[j] for j in w)
            if t.shape != shape:
                raise ProcedureError(f"table of cell {i} has shape {t.shape}, expected {shape}")
            if t.size and (t.min() < 0 or t.max() >= self.output_alphabet.size):
                raise ProcedureError(f"table of cell {i} produces letters outside the output alphabet")

    @property
    def output_n(self) -> int:
        return len(self.windows)

    @property
    def n_inputs(self) -> int:
        return len(self.input_sizes)

    def input_space(self) -> int:
        return int(np.prod(self.input_sizes, dtype=object)) if self.input_sizes else 1

    def eval(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.n_inputs:
            raise ProcedureError(f"expected {self.n_inputs} input values, got {len(x)}")
        for j, v in enumerate(x):
            if not 0 <= v < self.input_sizes[j]:
                raise ProcedureError(f"input value {v} out of range at cell {j}")
        return tuple(int(t[tuple(x[j] for j in w)]) for w, t in zip(self.windows, self.tables))

    def eval_many(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        out = np.empty((X.shape[0], self.output_n), dtype=np.int64)
        for i, (w, t) in enumerate(zip(self.windows, self.tables)):
            out[:, i] = t[tuple(X[:, j] for j in w)] if w else t[()]
        return out

    def rule(self, i: int) -> Callable[[Sequence[int]], int]:
        w, t = self.windows[i], self.tables[i]
        return lambda values: int(t[tuple(values)])


def _inputs_chunk(sizes: Sequence[int], start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    cols = []
    for b in sizes:
        cols.append(idx % b)
        idx = idx // b
    if not cols:
        return np.zeros((stop - start, 0), dtype=np.int64)
    return np.stack(cols, axis=1)


def all_inputs(sizes: Sequence[int], bound: int = IMAGE_BOUND) -> np.ndarray:
    total = int(np.prod(sizes, dtype=object)) if sizes else 1
    if total > bound:
        raise ProcedureError(f"input space of size {total} exceeds bound {bound}")
    return _inputs_chunk(sizes, 0, total)


def image(P: Procedure, bound: int = IMAGE_BOUND) -> Language:
    total = P.input_space()
    if total > bound:
        raise ProcedureError(f"input space of size {total} exceeds bound {bound}")
    size, n = P.output_alphabet.size, P.output_n
    if size ** n >= 2 ** 62:
        seen = []
        for start in range(0, total, _CHUNK):
            out = P.eval_many(_inputs_chunk(P.input_sizes, start, min(total, start + _CHUNK)))
            seen.append(np.unique(out, axis=0))
        rows = np.unique(np.concatenate(seen), axis=0)
        return make_language(n, P.output_alphabet, (tuple(int(a) for a in r) for r in rows))
    # rows are encoded as integers (first letter least significant) so that
    # deduplication is a plain 1-d unique
    radix = size ** np.arange(n, dtype=np.int64)
    codes = []
    for start in range(0, total, _CHUNK):
        out = P.eval_many(_inputs_chunk(P.input_sizes, start, min(total, start + _CHUNK)))
        codes.append(np.unique(out @ radix))
    codes = np.unique(np.concatenate(codes))
    words = []
    for c in codes.tolist():
        w = []
        for _ in range(n):
            c, a = divmod(c, size)
            w.append(a)
        words.append(tuple(w))
    return make_language(n, P.output_alphabet, words)


# -------------------------------------------------------------- windows

def input_window(P: Procedure, i: int) -> tuple[int, ...]:
    """Input cells on which rule ``i`` really depends."""
    w, t = P.windows[i], P.tables[i]
    essential = []
    for axis, j in enumerate(w):
        if t.shape[axis] > 1 and np.any(t != np.take(t, [0], axis=axis)):
            essential.append(j)
    return tuple(essential)


def input_windows(P: Procedure) -> list[tuple[int, ...]]:
    return [input_window(P, i) for i in range(P.output_n)]


def dual_window(P: Procedure, j: int) -> tuple[int, ...]:
    if not 0 <= j < P.n_inputs:
        raise ProcedureError(f"unknown input cell {j}")
    return tuple(i for i, w in enumerate(input_windows(P)) if j in w)


def dual_windows(P: Procedure) -> list[tuple[int, ...]]:
    windows = input_windows(P)
    return [tuple(i for i, w in enumerate(windows) if j in w) for j in range(P.n_inputs)]


def up_set(P: Procedure, S: Iterable[int]) -> tuple[int, ...]:
    cells = set(range(P.n_inputs))
    windows = input_windows(P)
    for i in S:
        cells &= set(windows[i])
    return tuple(sorted(cells))


def visibility(P: Procedure) -> np.ndarray:
    """Boolean matrix with rows = input cells and columns = output cells."""
    vis = np.zeros((P.n_inputs, P.output_n), dtype=bool)
    for i, w in enumerate(input_windows(P)):
        for j in w:
            vis[j, i] = True
    return vis


def comm_complex(P: Procedure) -> SimplicialComplex:
    """Contains ``∅`` exactly when there is at least one input cell."""
    masks = [mask_of(d) for d in dual_windows(P)]
    return SimplicialComplex.from_masks(P.output_n, masks)


def comm_complex_by_intersections(P: Procedure) -> SimplicialComplex:
    """Same complex computed from the definition: ``S`` is a simplex when its windows meet."""
    windows = [set(w) for w in input_windows(P)]
    masks = [0] if P.n_inputs else []
    for S in range(1, 1 << P.output_n):
        common = set(range(P.n_inputs))
        for i in vertices_of(S):
            common &= windows[i]
        if common:
            masks.append(S)
    return SimplicialComplex.from_masks(P.output_n, masks)


def pushforward(P: Procedure, K: SimplicialComplex) -> SimplicialComplex:
    if K.n != P.n_inputs:
        raise ProcedureError(f"complex has {K.n} vertices, procedure has {P.n_inputs} input cells")
    duals = [mask_of(d) for d in dual_windows(P)]
    masks = []
    for m in K.maximal:
        u = 0
        for j in vertices_of(m):
            u |= duals[j]
        masks.append(u)
    return SimplicialComplex.from_masks(P.output_n, masks)


def verify_generates(P: Procedure, L: Language, K: SimplicialComplex, bound: int = IMAGE_BOUND) -> bool:
    if P.output_n != L.n or K.n != L.n:
        return False
    return image(P, bound) == L and comm_complex(P).issubset(K)


# ------------------------------------------------------------ building blocks

def from_rules(input_sizes: Sequence[int], output_alphabet, windows: Sequence[Sequence[int]],
               rules: Sequence[Callable[..., int]], **names) -> Procedure:
    """Tabulate Python rules; rule ``i`` receives the values of its window in order."""
    input_sizes = tuple(int(b) for b in input_sizes)
    tables = []
    norm_windows = []
    for w, rule in zip(windows, rules):
        w = tuple(sorted(w))
        shape = tuple(input_sizes[j] for j in w)
        table = np.empty(shape, dtype=np.int64)
        for values in itertools.product(*(range(s) for s in shape)):
            table[values] = rule(*values)
        tables.append(table)
        norm_windows.append(w)
    return Procedure(input_sizes, Alphabet.of(output_alphabet), tuple(norm_windows), tuple(tables), **names)


def constant_procedure(word: Sequence[int], alphabet) -> Procedure:
    return Procedure((), Alphabet.of(alphabet), tuple(() for _ in word),
                     tuple(np.array(a, dtype=np.int64) for a in word))


def letterwise(maps: Sequence[Sequence[int]], input_size: int, output_alphabet) -> Procedure:
    """Cell ``i`` reads input cell ``i`` and applies ``maps[i]``."""
    n = len(maps)
    return Procedure((input_size,) * n, Alphabet.of(output_alphabet), tuple((i,) for i in range(n)),
                     tuple(np.array(m, dtype=np.int64) for m in maps))


def identity_procedure(n: int, alphabet=BINARY) -> Procedure:
    alphabet = Alphabet.of(alphabet)
    return letterwise([list(range(alphabet.size))] * n, alphabet.size, alphabet)


def flip_procedure(n: int, i0: int) -> Procedure:
    maps = [[0, 1] for _ in range(n)]
    maps[i0] = [1, 0]
    return letterwise(maps, 2, BINARY)


def complement_procedure(n: int) -> Procedure:
    return letterwise([[1, 0]] * n, 2, BINARY)


def projection_procedure(n: int, J: Iterable[int], alphabet=BINARY) -> Procedure:
    alphabet = Alphabet.of(alphabet)
    J = sorted(set(J))
    ident = np.arange(alphabet.size, dtype=np.int64)
    return Procedure((alphabet.size,) * n, alphabet, tuple((j,) for j in J), tuple(ident.copy() for _ in J))


def permutation_procedure(g: Permutation, alphabet=BINARY) -> Procedure:
    """x ↦ g·x, so output cell g(i) copies input cell i."""
    alphabet = Alphabet.of(alphabet)
    inv = g.inverse()
    ident = np.arange(alphabet.size, dtype=np.int64)
    return Procedure((alphabet.size,) * g.n, alphabet, tuple((inv(k),) for k in range(g.n)),
                     tuple(ident.copy() for _ in range(g.n)))


def relabel_outputs(P: Procedure, g: Permutation) -> Procedure:
    """The procedure computing g·P(x)."""
    inv = g.inverse()
    return Procedure(P.input_sizes, P.output_alphabet,
                     tuple(P.windows[inv(k)] for k in range(g.n)),
                     tuple(P.tables[inv(k)] for k in range(g.n)))


def unique_reduction_map(n: int, a: int, b: int) -> Procedure:
    """Three outputs: the letters at ``a`` and ``b``, and the maximum over the rest."""
    if n < 3 or a == b:
        raise ProcedureError("need n >= 3 and distinct a, b")
    rest = [i for i in range(n) if i not in (a, b)]
    return from_rules((2,) * n, BINARY, [(a,), (b,), rest],
                      [lambda x: x, lambda x: x, lambda *xs: max(xs)])


def figure1_procedure() -> Procedure:
    """(a, b, c, d) ↦ (ab, bc, cd)."""
    return from_rules((2, 2, 2, 2), BINARY, [(0, 1), (1, 2), (2, 3)],
                      [lambda a, b: a * b] * 3,
                      input_names=("a", "b", "c", "d"), output_names=("A", "B", "C"))


def compose(P: Procedure, Q: Procedure) -> Procedure:
    """P ∘ Q, where Q's outputs feed P's input cells."""
    if Q.output_n != P.n_inputs:
        raise ProcedureError("Q's outputs must match P's input cells")
    for b in P.input_sizes:
        if Q.output_alphabet.size > b:
            raise ProcedureError("Q produces letters outside P's input alphabets")
    windows, tables = [], []
    for w, t in zip(P.windows, P.tables):
        cw = tuple(sorted(set().union(*(Q.windows[j] for j in w)))) if w else ()
        shape = tuple(Q.input_sizes[h] for h in cw)
        X = all_inputs(shape)
        full = np.zeros((X.shape[0], Q.n_inputs), dtype=np.int64)
        full[:, list(cw)] = X
        mids = [Q.tables[j][tuple(full[:, h] for h in Q.windows[j])] if Q.windows[j]
                else np.full(X.shape[0], Q.tables[j][()]) for j in w]
        vals = t[tuple(mids)] if w else np.full(X.shape[0], t[()])
        tables.append(np.asarray(vals, dtype=np.int64).reshape(shape, order="F"))
        windows.append(cw)
    return Procedure(Q.input_sizes, P.output_alphabet, tuple(windows), tuple(tables))


def product_procedure(n: int, parts: Sequence[tuple[Sequence[int], Procedure]], alphabet) -> Procedure:
    """Run each part on its own input cells and place its outputs on ``positions``."""
    sizes: list[int] = []
    windows: list = [None] * n
    tables: list = [None] * n
    for positions, P in parts:
        if len(positions) != P.output_n:
            raise ProcedureError("positions must match the part's output cells")
        offset = len(sizes)
        sizes.extend(P.input_sizes)
        for k, pos in enumerate(positions):
            windows[pos] = tuple(j + offset for j in P.windows[k])
            tables[pos] = P.tables[k]
    if any(w is None for w in windows):
        raise ProcedureError("parts must cover every output position")
    return Procedure(tuple(sizes), Alphabet.of(alphabet), tuple(windows), tuple(tables))


# ------------------------------------------------------------ generators

def proc_trivial(L: Language) -> Procedure:
    """A single input cell holding a word of ``L``, read by every output cell."""
    arr = L.array
    return Procedure((len(L),), L.alphabet, tuple((0,) for _ in range(L.n)),
                     tuple(arr[:, i].copy() for i in range(L.n)))


def proc_realizer(K: SimplicialComplex) -> Procedure:
    """One bit per non-empty simplex; cell ``i`` keeps the bits of simplices through ``i``."""
    simplices = [s for s in K.simplices() if s]
    L = realizer(K)
    windows = [tuple(k for k, s in enumerate(simplices) if s >> i & 1) for i in range(K.n)]

    def rule_for(w):
        return lambda *bits: sum(b << k for b, k in zip(bits, w))

    return from_rules((2,) * len(simplices), L.alphabet, windows, [rule_for(w) for w in windows])


def _edge_cells(T: Graph) -> tuple[list[tuple[int, int]], list[list[int]]]:
    edges = T.sorted_edges()
    incident = [[k for k, e in enumerate(edges) if i in e] for i in range(T.n)]
    return edges, incident


def _rooted(T: Graph, root: int) -> tuple[dict[int, int | None], dict[int, list[int]]]:
    parent: dict[int, int | None] = {root: None}
    children: dict[int, list[int]] = {v: [] for v in range(T.n)}
    order = [root]
    for v in order:
        for u in T.neighbors(v):
            if u not in parent:
                parent[u] = v
                children[v].append(u)
                order.append(u)
    return parent, children


def _require_tree(T: Graph):
    if not is_spanning_tree(T):
        raise ProcedureError("expected a spanning tree")


def proc_parity_tree(T: Graph) -> Procedure:
    """Edges carry bits; each vertex outputs the parity of its incident edges."""
    _require_tree(T)
    edges, incident = _edge_cells(T)
    return from_rules((2,) * len(edges), BINARY, incident,
                      [lambda *bits: sum(bits) % 2] * T.n)


def _agreement_table(words: np.ndarray, i: int, k: int, fallback: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Table over ``k`` cells holding word indices: output letter ``i`` of the
    common word when all cells agree, ``fallback(grids)`` otherwise."""
    grids = np.indices((len(words),) * k)
    same = np.all(grids == grids[0], axis=0)
    return np.where(same, words[grids[0], i], fallback(grids)).astype(np.int64)


def _tree_procedure(T: Graph, L: Language, fallbacks) -> Procedure:
    """Edges carry words of ``L``; vertex ``i`` applies ``fallbacks[i]`` on disagreement."""
    edges, incident = _edge_cells(T)
    words = L.array
    tables = tuple(_agreement_table(words, i, len(incident[i]), fallbacks[i]) for i in range(T.n))
    return Procedure((len(L),) * len(edges), L.alphabet, tuple(tuple(w) for w in incident), tables)


def _zero(grids: np.ndarray) -> np.ndarray:
    return np.zeros(grids.shape[1:], dtype=np.int64)


def proc_nc_tree(T: Graph, alphabet=BINARY, root: int = 0) -> Procedure:
    """Edges carry non-constant words; a vertex that sees disagreement
    shifts the letter its first child reads on their shared edge."""
    _require_tree(T)
    alphabet = Alphabet.of(alphabet)
    L = nc(T.n, alphabet)
    edges, incident = _edge_cells(T)
    _, children = _rooted(T, root)
    words = L.array
    fallbacks = []
    for i in range(T.n):
        kids = sorted(children[i])
        if not kids:
            fallbacks.append(_zero)
            continue
        j = kids[0]
        pos = incident[i].index(edges.index((min(i, j), max(i, j))))
        fallbacks.append(lambda g, j=j, pos=pos: (words[g[pos], j] + 1) % alphabet.size)
    return _tree_procedure(T, L, fallbacks)


def proc_upclosed_edges(G: Graph, L: Language) -> Procedure:
    """Edges carry words of ``L``; a vertex copies its letter when its edges
    agree and outputs 1 otherwise. Isolated vertices read their own cell, or
    nothing when ``L`` is constant there."""
    if G.n != L.n:
        raise ProcedureError("graph and language sizes differ")
    if not is_upwards_closed(L):
        raise ProcedureError("language must be upwards-closed")
    edges, incident = _edge_cells(G)
    words = L.array
    cells = len(edges)
    windows, tables = [], []
    for i in range(G.n):
        w = list(incident[i])
        if not w:
            letters = L.letters_at(i)
            if len(letters) == 1:
                windows.append(())
                tables.append(np.array(letters[0], dtype=np.int64))
                continue
            w = [cells]
            cells += 1
        windows.append(tuple(w))
        tables.append(_agreement_table(words, i, len(w), lambda g: np.ones(g.shape[1:], dtype=np.int64)))
    return Procedure((len(L),) * cells, BINARY, tuple(windows), tuple(tables))


def proc_card_le1(n: int) -> Procedure:
    """Each edge of the complete graph picks one endpoint; a vertex picked by all its edges outputs 1."""
    if n < 3:
        raise ProcedureError("the edge-choice construction needs n >= 3")
    edges = list(itertools.combinations(range(n), 2))
    incident = [[k for k, e in enumerate(edges) if i in e] for i in range(n)]
    rules = []
    for i in range(n):
        # bit 0 selects the lower endpoint, bit 1 the higher one
        wanted = [0 if edges[k][0] == i else 1 for k in incident[i]]
        rules.append(lambda *bits, wanted=wanted: int(list(bits) == wanted))
    return from_rules((2,) * len(edges), BINARY, incident, rules)


def proc_eq_binary_tree(T: Graph, root: int = 0) -> Procedure:
    """Edges carry words of Eq; on disagreement a vertex matches or breaks
    its first child's letter so that the parity of ``i + j`` decides."""
    _require_tree(T)
    L = eq(T.n, BINARY)
    edges, incident = _edge_cells(T)
    _, children = _rooted(T, root)
    words = L.array
    fallbacks = []
    for i in range(T.n):
        kids = sorted(children[i])
        if not kids:
            fallbacks.append(_zero)
            continue
        j = kids[0]
        pos = incident[i].index(edges.index((min(i, j), max(i, j))))
        fallbacks.append(lambda g, i=i, j=j, pos=pos: (words[g[pos], j] + i + j + 1) % 2)
    return _tree_procedure(T, L, fallbacks)


def _descendants(children: dict[int, list[int]], v: int) -> set[int]:
    out, stack = set(), list(children[v])
    while stack:
        u = stack.pop()
        out.add(u)
        stack.extend(children[u])
    return out


def descendant_condition(T: Graph, root: int) -> bool:
    """Every internal vertex has ``i-1`` or ``i+1`` below it."""
    _, children = _rooted(T, root)
    for i in range(T.n):
        if children[i] and not ({i - 1, i + 1} & _descendants(children, i)):
            return False
    return True


def descendant_roots(T: Graph) -> list[int]:
    _require_tree(T)
    return [r for r in range(T.n) if descendant_condition(T, r)]


def proc_eq_descendant_tree(T: Graph, root: int, alphabet=BINARY) -> Procedure:
    """Edges carry words of Eq; a vertex seeing disagreement copies the letter of
    a consecutive descendant, read on the edge leading towards it."""
    _require_tree(T)
    if not descendant_condition(T, root):
        raise ProcedureError(f"root {root} does not satisfy the descendant condition")
    alphabet = Alphabet.of(alphabet)
    L = eq(T.n, alphabet)
    edges, incident = _edge_cells(T)
    _, children = _rooted(T, root)
    words = L.array
    fallbacks = []
    for i in range(T.n):
        if not children[i]:
            fallbacks.append(_zero)
            continue
        below = _descendants(children, i)
        j = min({i - 1, i + 1} & below)
        c = next(c for c in sorted(children[i]) if c == j or j in _descendants(children, c))
        pos = incident[i].index(edges.index((min(i, c), max(i, c))))
        fallbacks.append(lambda g, j=j, pos=pos: words[g[pos], j])
    return _tree_procedure(T, L, fallbacks)


def encode_fig4_label(u: int, v: int, w: int, size: int) -> int:
    return u + size * v + size * size * (w - 1)


def proc_eq_fig4(alphabet=BINARY) -> Procedure:
    """Tree {02, 12, 13}: inputs x on 02, y = (u, v, w) on 12, z on 13.

    ``w`` names which of the middle vertices repairs the output, using the
    outer letter it can see."""
    alphabet = Alphabet.of(alphabet)
    s = alphabet.size

    def decode(y):
        return y % s, (y // s) % s, y // (s * s) + 1

    def f1(y, z):
        u, v, w = decode(y)
        if w == 1:
            return u if v == z else v
        return u

    def f2(x, y):
        u, v, w = decode(y)
        if w == 2:
            return v if u == x else u
        return v

    return from_rules((s, 2 * s * s, s), alphabet, [(0,), (1, 2), (0, 1), (2,)],
                      [lambda x: x, f1, f2, lambda z: z])


def proc_join_extend(P: Procedure, L: Language, J: Sequence[int]) -> Procedure:
    """Keep ``P`` on the positions ``J``; the other cells read everything plus
    a selector cell and pick an extension of ``P``'s output inside ``L``."""
    J = sorted(set(J))
    if P.output_n != len(J):
        raise ProcedureError("P must have one output per position of J")
    rest = [i for i in range(L.n) if i not in J]
    extensions: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for w in L.words:
        extensions.setdefault(tuple(w[j] for j in J), []).append(w)
    X = all_inputs(P.input_sizes)
    produced = P.eval_many(X)
    keys = [tuple(int(a) for a in row) for row in produced]
    for k in set(keys):
        if k not in extensions:
            raise ProcedureError(f"P produces {k}, which does not extend to a word of L")
    selector = max(len(extensions[k]) for k in set(keys))
    m = P.n_inputs
    # a selector with a single value is dropped, so a constant ``P`` stays constant
    sizes = P.input_sizes + ((selector,) if selector > 1 else ())
    windows: list = [None] * L.n
    tables: list = [None] * L.n
    for k, j in enumerate(J):
        windows[j] = P.windows[k]
        tables[j] = P.tables[k]
    full_window = tuple(range(len(sizes)))
    for i in rest:
        t = np.empty(sizes, dtype=np.int64)
        for row, key in zip(X, keys):
            ext = extensions[key]
            if selector > 1:
                for c in range(selector):
                    t[tuple(row) + (c,)] = ext[c % len(ext)][i]
            else:
                t[tuple(row)] = ext[0][i]
        windows[i] = full_window
        tables[i] = t
    return Procedure(sizes, L.alphabet, tuple(windows), tuple(tables))
