"""Simplicial complexes over ``[0, n-1]`` stored by their maximal simplices.

Simplices are bitmasks. The void complex (no simplices at all) and ``{∅}``
are different objects; a communication complex contains ``∅`` exactly when
the procedure has an input cell, and both generate every singleton.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .language import Language, LanguageError, Permutation, is_upwards_closed, is_downwards_closed


class ComplexError(ValueError):
    pass


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _absorb(masks: Iterable[int]) -> tuple[int, ...]:
    masks = sorted(set(masks), key=lambda m: (-bin(m).count("1"), m))
    kept: list[int] = []
    for m in masks:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class SimplicialComplex:
    n: int
    maximal: tuple[int, ...]

    def __post_init__(self):
        top = 1 << self.n
        for m in self.maximal:
            if not 0 <= m < top:
                raise ComplexError(f"simplex {vertices_of(m)} has a vertex outside [0, {self.n - 1}]")

    # construction
    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "SimplicialComplex":
        return cls(n, _absorb(masks))

    def is_empty(self) -> bool:
        return not self.maximal

    def contains(self, simplex: Iterable[int] | int) -> bool:
        s = simplex if isinstance(simplex, int) else mask_of(simplex)
        if s >> self.n:
            raise ComplexError("simplex outside vertex range")
        return any(s & m == s for m in self.maximal)

    def __contains__(self, simplex) -> bool:
        return self.contains(simplex)

    def issubset(self, other: "SimplicialComplex") -> bool:
        return all(other.contains(m) for m in self.maximal)

    def __le__(self, other: "SimplicialComplex") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "SimplicialComplex") -> bool:
        return self.issubset(other) and self != other

    def simplices(self) -> list[int]:
        """All simplices (including the empty one when the complex is non-empty),
        ordered by size then bit pattern."""
        found = set()
        for m in self.maximal:
            sub = m
            while True:
                found.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & m
        return sorted(found, key=lambda s: (bin(s).count("1"), s))

    def nonempty_maximal(self) -> tuple[int, ...]:
        return tuple(m for m in self.maximal if m)

    def covered(self) -> int:
        out = 0
        for m in self.maximal:
            out |= m
        return out

    def facets_lists(self) -> list[list[int]]:
        return [list(vertices_of(m)) for m in self.maximal]

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, vertices_of(m))) + "}" for m in self.maximal)
        return f"K(n={self.n}, [{body}])"

    def key(self) -> tuple[int, ...]:
        return self.maximal

    def act(self, g: Permutation) -> "SimplicialComplex":
        if g.n != self.n:
            raise ComplexError("permutation size does not match vertex count")
        return SimplicialComplex.from_masks(self.n, (g.act_mask(m) for m in self.maximal))

    def embed(self, positions: Sequence[int], n: int) -> "SimplicialComplex":
        """Relabel vertex ``k`` as ``positions[k]`` inside ``[0, n-1]``."""
        if len(positions) != self.n:
            raise ComplexError("need one position per vertex")
        return SimplicialComplex.from_masks(
            n, (mask_of(positions[v] for v in vertices_of(m)) for m in self.maximal))


def from_maximal(n: int, sets: Iterable[Iterable[int]]) -> SimplicialComplex:
    if n < 1:
        raise ComplexError("n must be >= 1")
    masks = []
    for s in sets:
        s = list(s)
        for v in s:
            if not 0 <= v < n:
                raise ComplexError(f"vertex {v} out of range for n={n}")
        masks.append(mask_of(s))
    return SimplicialComplex.from_masks(n, masks)


def full_complex(n: int) -> SimplicialComplex:
    return SimplicialComplex(n, ((1 << n) - 1,))


def empty_complex(n: int) -> SimplicialComplex:
    return SimplicialComplex(n, ())


def singletons(n: int) -> SimplicialComplex:
    return SimplicialComplex.from_masks(n, (1 << i for i in range(n)))


def boundary(n: int) -> SimplicialComplex:
    """All proper subsets of ``[0, n-1]``."""
    top = (1 << n) - 1
    return SimplicialComplex.from_masks(n, (top & ~(1 << i) for i in range(n)))


def restrict(K: SimplicialComplex, J: Iterable[int]) -> SimplicialComplex:
    J = sorted(set(J))
    if not J:
        raise ComplexError("restriction to an empty vertex set")
    for j in J:
        if not 0 <= j < K.n:
            raise ComplexError(f"vertex {j} out of range")
    pos = {j: k for k, j in enumerate(J)}
    jm = mask_of(J)
    masks = []
    for m in K.maximal:
        masks.append(mask_of(pos[v] for v in vertices_of(m & jm)))
    return SimplicialComplex.from_masks(len(J), masks)


def join(K0: SimplicialComplex, K1: SimplicialComplex) -> SimplicialComplex:
    """Join with ``K1``'s vertices placed after ``K0``'s."""
    n = K0.n + K1.n
    a = K0.maximal or ()
    b = K1.maximal or ()
    if not a or not b:
        # the join with the empty complex (no simplices at all) is empty
        return empty_complex(n)
    return SimplicialComplex.from_masks(n, (x | (y << K0.n) for x in a for y in b))


def cone(K: SimplicialComplex) -> SimplicialComplex:
    """Cone with a fresh apex at vertex 0."""
    return join(SimplicialComplex(1, (1,)), K)


def cone_at(K: SimplicialComplex, apex: int) -> SimplicialComplex:
    """Cone over ``K`` (defined on the other ``K.n`` vertices) with the apex at ``apex``."""
    n = K.n + 1
    positions = [v for v in range(n) if v != apex]
    base = K.embed(positions, n)
    return SimplicialComplex.from_masks(n, (m | 1 << apex for m in base.maximal) or (1 << apex,))


def full_join(n: int, outside: Iterable[int], K: SimplicialComplex, inside: Sequence[int]) -> SimplicialComplex:
    """The complex Δ_outside ⋆ K over ``[0, n-1]``, ``K`` being placed on ``inside``."""
    out_mask = mask_of(outside)
    base = K.embed(inside, n)
    if not base.maximal:
        return empty_complex(n)
    return SimplicialComplex.from_masks(n, (m | out_mask for m in base.maximal))


def disjoint_union(n: int, parts: Sequence[tuple[SimplicialComplex, Sequence[int]]]) -> SimplicialComplex:
    masks = []
    for K, positions in parts:
        masks.extend(K.embed(positions, n).maximal)
    return SimplicialComplex.from_masks(n, masks)


# ------------------------------------------------------------------ graphs

@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ComplexError("graphs have no self-loops")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ComplexError(f"edge {(u, v)} out of range")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def of(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    def neighbors(self, v: int) -> list[int]:
        return sorted([b for a, b in self.edges if a == v] + [a for a, b in self.edges if b == v])

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_complex(self) -> SimplicialComplex:
        """The complex made of the edges and every vertex."""
        return SimplicialComplex.from_masks(
            self.n, [mask_of(e) for e in self.edges] + [1 << v for v in range(self.n)])

    def induced_connected(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        if not vs:
            return True
        return len(_components(vs, [e for e in self.edges if e[0] in vs and e[1] in vs])) == 1

    def is_connected(self) -> bool:
        return self.induced_connected(range(self.n))

    def components(self, vertices: Iterable[int] | None = None) -> list[tuple[int, ...]]:
        vs = set(range(self.n)) if vertices is None else set(vertices)
        return _components(vs, [e for e in self.edges if e[0] in vs and e[1] in vs])


def _components(vertices: set[int], edges) -> list[tuple[int, ...]]:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = {}
    for v in vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(sorted(g)) for g in groups.values())


def complete_graph(n: int) -> Graph:
    return Graph.of(n, itertools.combinations(range(n), 2))


def path_graph(order: Sequence[int], n: int | None = None) -> Graph:
    n = len(order) if n is None else n
    return Graph.of(n, zip(order, order[1:]))


def skeleton1(K: SimplicialComplex) -> Graph:
    edges = set()
    for m in K.maximal:
        edges.update(itertools.combinations(vertices_of(m), 2))
    return Graph.of(K.n, edges)


def is_graph_complex(K: SimplicialComplex) -> bool:
    return all(bin(m).count("1") <= 2 for m in K.maximal)


def components(K: SimplicialComplex) -> list[tuple[int, ...]]:
    """Connected components; a vertex in no simplex is its own component."""
    parent = list(range(K.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in K.maximal:
        vs = vertices_of(m)
        for v in vs[1:]:
            a, b = find(vs[0]), find(v)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(K.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(g) for g in groups.values())


def is_connected(K: SimplicialComplex) -> bool:
    return len(components(K)) == 1


# ------------------------------------------------------------ trees

def prufer_to_edges(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((min(leaf, v), max(leaf, v)))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(n) if degree[x] == 1]
    edges.append((u, w))
    return edges


def spanning_trees(n: int) -> Iterator[Graph]:
    if n < 1:
        raise ComplexError("n must be >= 1")
    if n == 1:
        yield Graph(1, frozenset())
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        yield Graph.of(n, prufer_to_edges(seq, n))


def is_spanning_tree(G: Graph) -> bool:
    return len(G.edges) == G.n - 1 and G.is_connected()


def all_graphs(n: int) -> Iterator[Graph]:
    pairs = list(itertools.combinations(range(n), 2))
    for r in range(len(pairs) + 1):
        for chosen in itertools.combinations(pairs, r):
            yield Graph.of(n, chosen)


def vertex_connectivity_at_least(G: Graph, k: int) -> bool:
    """Removing any set of fewer than ``k`` vertices leaves a connected graph."""
    if k <= 0:
        return True
    vs = range(G.n)
    for r in range(min(k - 1, G.n - 1) + 1):
        for removed in itertools.combinations(vs, r):
            if not G.induced_connected(set(vs) - set(removed)):
                return False
    return True


def _binary_sets(L: Language) -> set[int]:
    return {mask_of(i for i, a in enumerate(w) if a) for w in L.words}


def maximal_non_members(L: Language) -> list[int]:
    members = _binary_sets(L)
    outside = [s for s in range(1 << L.n) if s not in members]
    return [s for s in outside
            if not any(s != t and s & t == s for t in outside)]


def minimal_non_members(L: Language) -> list[int]:
    members = _binary_sets(L)
    outside = [s for s in range(1 << L.n) if s not in members]
    return [s for s in outside
            if not any(s != t and s & t == t for t in outside)]


def l_connectivity_witness(G: Graph, L: Language) -> int | None:
    """A maximal non-member whose removal disconnects ``G``, if any."""
    if G.n != L.n:
        raise ComplexError("graph and language sizes differ")
    if not is_upwards_closed(L):
        raise LanguageError("L-connectivity needs an upwards-closed language")
    full = set(range(G.n))
    for W in maximal_non_members(L):
        if not G.induced_connected(full - set(vertices_of(W))):
            return W
    return None


def is_L_connected(G: Graph, L: Language) -> bool:
    return l_connectivity_witness(G, L) is None


def downwards_witness(G: Graph, L: Language) -> int | None:
    """A minimal non-member whose induced subgraph is disconnected, if any."""
    if G.n != L.n:
        raise ComplexError("graph and language sizes differ")
    if not is_downwards_closed(L):
        raise LanguageError("downwards criterion needs a downwards-closed language")
    for W in minimal_non_members(L):
        if not G.induced_connected(vertices_of(W)):
            return W
    return None


def downwards_criterion(G: Graph, L: Language) -> bool:
    return downwards_witness(G, L) is None


# ------------------------------------------------------------ enumeration

def _downsets(n: int) -> list[frozenset[int]]:
    subsets = sorted(range(1 << n), key=lambda s: (bin(s).count("1"), s))
    results: list[frozenset[int]] = []
    # The empty family and {∅} are handled separately; the recursion builds
    # families that contain ∅ and at least it.
    chosen: set[int] = {0}
    rest = subsets[1:]

    def rec(k):
        if k == len(rest):
            results.append(frozenset(chosen))
            return
        s = rest[k]
        rec(k + 1)
        if all((s & ~(1 << v)) in chosen for v in vertices_of(s)):
            chosen.add(s)
            rec(k + 1)
            chosen.discard(s)

    rec(0)
    return results


def _maximal_of(family: Iterable[int]) -> tuple[int, ...]:
    return _absorb(family)


MAX_ENUMERATION_N = 5


def all_complexes(n: int) -> list[SimplicialComplex]:
    """Every simplicial complex over ``[0, n-1]``, including the empty one and ``{∅}``."""
    if n > MAX_ENUMERATION_N:
        raise ComplexError(f"exhaustive enumeration limited to n <= {MAX_ENUMERATION_N}")
    out = [empty_complex(n)]
    out.extend(SimplicialComplex(n, _maximal_of(f)) for f in _downsets(n))
    out.sort(key=lambda K: (len(K.maximal), K.maximal))
    return out


def canonical_form(K: SimplicialComplex, group: Sequence[Permutation] | None) -> SimplicialComplex:
    if not group:
        return K
    return min((K.act(g) for g in group), key=lambda c: c.maximal)


def enumerate_complexes(n: int, up_to: Sequence[Permutation] | None = None) -> Iterator[SimplicialComplex]:
    complexes = all_complexes(n)
    if not up_to:
        yield from complexes
        return
    seen = set()
    for K in complexes:
        c = canonical_form(K, up_to)
        if c.maximal not in seen:
            seen.add(c.maximal)
            yield c


def orbit(K: SimplicialComplex, group: Sequence[Permutation]) -> list[SimplicialComplex]:
    return sorted({K.act(g) for g in group}, key=lambda c: (len(c.maximal), c.maximal))


def size(K: SimplicialComplex) -> int:
    """Number of non-empty simplices."""
    return sum(1 for s in K.simplices() if s)


# ------------------------------------------------------------ named complexes

def k_a(n: int, a: int) -> SimplicialComplex:
    """All triangles through ``a``: the cone over the complete graph on the other vertices."""
    others = [v for v in range(n) if v != a]
    tris = [mask_of((a, b, c)) for b, c in itertools.combinations(others, 2)]
    return SimplicialComplex.from_masks(n, tris)


FIGURE_TREES = {
    # trees over I_4 from the consecutive-letters discussion
    "fig2": ((0, 2), (0, 3), (1, 3)),
    "fig3": ((0, 1), (0, 2), (1, 3)),
    "fig4": ((0, 2), (1, 2), (1, 3)),
}


def figure_tree(name: str) -> Graph:
    return Graph.of(4, FIGURE_TREES[name])
