"""Chromatic view of generation: labeled output and input complexes.

A generation procedure over ``K`` is the same thing as a chromatic
simplicial map from the input complex ``I_K(B)`` onto the output complex
``O_L``. This module builds both complexes and searches for such maps
directly, which gives an implementation independent of the CSP engine.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

from .complexes import SimplicialComplex, full_complex, restrict
from .language import Language, irreducible_factorization, splits_as_product
from .procedure import IMAGE_BOUND, Procedure, all_inputs

BLANK = "⊥"
_SHAPES = ("circle", "box", "diamond", "triangle", "hexagon", "octagon", "pentagon", "house")
_FILLS = ("white", "lightgray", "gray50", "black", "lightblue", "lightpink", "palegreen", "khaki")


class ChromaticError(ValueError):
    pass


@dataclass(frozen=True)
class ChromaticComplex:
    """``simplices[k][c]`` is the vertex of color ``c`` in simplex ``k``."""
    n: int
    vertices: tuple[tuple[int, Hashable], ...]
    simplices: tuple[tuple[int, ...], ...]
    display: tuple[str, ...] | None = None
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        used = set()
        for s in self.simplices:
            if len(s) != self.n:
                raise ChromaticError("every simplex needs one vertex per color")
            for c, v in enumerate(s):
                if self.vertices[v][0] != c:
                    raise ChromaticError(f"simplex {s} is not properly colored")
                used.add(v)
        if len(used) != len(self.vertices):
            raise ChromaticError("every vertex must lie in some simplex")
        object.__setattr__(self, "_index", {v: k for k, v in enumerate(self.vertices)})

    @classmethod
    def from_label_tuples(cls, n: int, rows, display=None) -> "ChromaticComplex":
        """Build from simplices given as one label per color."""
        rows = sorted(set(tuple(r) for r in rows))
        verts = sorted({(c, r[c]) for r in rows for c in range(n)}, key=lambda v: (v[0], repr(v[1])))
        index = {v: k for k, v in enumerate(verts)}
        simplices = tuple(tuple(index[(c, r[c])] for c in range(n)) for r in rows)
        shown = None if display is None else tuple(display(v) for v in verts)
        return cls(n, tuple(verts), simplices, shown)

    def vertex_id(self, color: int, label) -> int:
        return self._index[(color, label)]

    def label_rows(self) -> set[tuple]:
        return {tuple(self.vertices[v][1] for v in s) for s in self.simplices}

    def colors_of(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for k, (c, _) in enumerate(self.vertices):
            out[c].append(k)
        return out

    def membership(self) -> np.ndarray:
        counts = np.zeros(len(self.vertices), dtype=np.int64)
        for s in self.simplices:
            for v in s:
                counts[v] += 1
        return counts

    def components(self) -> list[tuple[int, ...]]:
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in self.simplices:
            for v in s[1:]:
                a, b = find(s[0]), find(v)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for v in range(len(self.vertices)):
            groups.setdefault(find(v), []).append(v)
        return sorted(tuple(g) for g in groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) == 1


def output_complex(L: Language) -> ChromaticComplex:
    return ChromaticComplex.from_label_tuples(L.n, L.words, display=lambda v: L.alphabet.name(v[1]))


def input_complex(K: SimplicialComplex, B: int, bound: int = IMAGE_BOUND) -> ChromaticComplex:
    """One simplex per input in ``B^J``, ``J`` the non-empty maximal simplices of ``K``.

    The label of cell ``i`` is its restriction class: the letters on the
    simplices through ``i`` read as a little-endian base-``B`` number.
    """
    if B < 1:
        raise ChromaticError("input alphabet must be non-empty")
    J = K.nonempty_maximal()
    X = all_inputs((B,) * len(J), bound=bound)
    incident = [[k for k, s in enumerate(J) if s >> i & 1] for i in range(K.n)]
    cols = []
    for i in range(K.n):
        radix = np.array([B ** e for e in range(len(incident[i]))], dtype=np.int64)
        cols.append(X[:, incident[i]] @ radix if incident[i] else np.zeros(X.shape[0], dtype=np.int64))
    rows = np.stack(cols, axis=1) if cols else np.zeros((X.shape[0], 0), dtype=np.int64)

    def show(v):
        c, label = v
        parts = []
        for k in range(len(J)):
            if k in incident[c]:
                parts.append(str(label % B))
                label //= B
            else:
                parts.append(BLANK)
        return "".join(parts)

    return ChromaticComplex.from_label_tuples(K.n, (tuple(int(a) for a in r) for r in rows), display=show)


# ---------------------------------------------------------------- map search

@dataclass
class ChromaticMap:
    images: tuple[int, ...]
    nodes: int = 0

    def __call__(self, v: int) -> int:
        return self.images[v]


def _propagate(dom: list[int], src: ChromaticComplex, dst_rows: list[tuple[int, ...]],
               dst_bits: list[tuple[int, ...]], surjective: bool) -> bool:
    while True:
        changed = False
        cover = [0] * len(dst_rows)
        for k, s in enumerate(src.simplices):
            compat = [w for w, bits in enumerate(dst_bits) if all(dom[v] & b for v, b in zip(s, bits))]
            if not compat:
                return False
            for w in compat:
                cover[w] += 1
            for c, v in enumerate(s):
                supp = 0
                for w in compat:
                    supp |= dst_bits[w][c]
                if dom[v] & ~supp:
                    dom[v] &= supp
                    changed = True
        if surjective:
            if not all(cover):
                return False
            for w, cnt in enumerate(cover):
                if cnt != 1:
                    continue
                # the only src simplex that can still reach w must be sent onto it
                for s in src.simplices:
                    if all(dom[v] & b for v, b in zip(s, dst_bits[w])):
                        for v, b in zip(s, dst_bits[w]):
                            if dom[v] != b:
                                dom[v] = b
                                changed = True
                        break
                else:
                    return False
        if not changed:
            return True


def find_chromatic_map(src: ChromaticComplex, dst: ChromaticComplex,
                       require_surjective: bool = True) -> ChromaticMap | None:
    """A color-preserving vertex map sending simplices to simplices, or ``None``."""
    if src.n != dst.n:
        raise ChromaticError("complexes have different color sets")
    if not src.simplices:
        return None if (require_surjective and dst.simplices) else ChromaticMap(())
    if not dst.simplices:
        return None
    dst_bits = [tuple(1 << v for v in s) for s in dst.simplices]
    by_color = dst.colors_of()
    dom = []
    for c, _ in src.vertices:
        m = 0
        for v in by_color[c]:
            m |= 1 << v
        dom.append(m)
    weight = src.membership()
    order_key = [(-int(weight[v]), v) for v in range(len(src.vertices))]
    nodes = 0

    def rec(dom) -> list[int] | None:
        nonlocal nodes
        if not _propagate(dom, src, list(dst.simplices), dst_bits, require_surjective):
            return None
        open_ = [v for v in range(len(dom)) if dom[v] & (dom[v] - 1)]
        if not open_:
            return dom
        v = min(open_, key=lambda u: (bin(dom[u]).count("1"), order_key[u]))
        m = dom[v]
        while m:
            bit = m & -m
            m ^= bit
            nodes += 1
            trial = list(dom)
            trial[v] = bit
            found = rec(trial)
            if found is not None:
                return found
        return None

    found = rec(dom)
    if found is None:
        return None
    return ChromaticMap(tuple(d.bit_length() - 1 for d in found), nodes)


def map_to_procedure(K: SimplicialComplex, B: int, src: ChromaticComplex, dst: ChromaticComplex,
                     F: ChromaticMap, L: Language) -> Procedure:
    """Read rule tables off a map ``I_K(B) → O_L``."""
    J = K.nonempty_maximal()
    windows, tables = [], []
    for i in range(K.n):
        w = tuple(k for k, s in enumerate(J) if s >> i & 1)
        flat = np.zeros(B ** len(w), dtype=np.int64)
        for cls in range(B ** len(w)):
            if (i, cls) in src._index:
                flat[cls] = dst.vertices[F(src.vertex_id(i, cls))][1]
        windows.append(w)
        tables.append(flat.reshape((B,) * len(w), order="F"))
    return Procedure((B,) * len(J), L.alphabet, tuple(windows), tuple(tables))


@dataclass
class ChromaticVerdict:
    generates: bool
    input_size: int | None = None
    mapping: ChromaticMap | None = None
    tried: tuple[int, ...] = ()


def chromatic_decides(L: Language, K: SimplicialComplex, B_sizes: Sequence[int] | None = None) -> ChromaticVerdict:
    """Search ``|B| = 1, 2, ..., |L|`` for a surjective map ``I_K(B) → O_L``."""
    if K.n != L.n:
        raise ChromaticError("complex and language sizes differ")
    sizes = tuple(B_sizes) if B_sizes is not None else tuple(range(1, len(L) + 1))
    O = output_complex(L)
    for b in sizes:
        if b ** len(K.nonempty_maximal()) < len(L):
            continue  # too few inputs to cover every word
        F = find_chromatic_map(input_complex(K, b), O, require_surjective=True)
        if F is not None:
            return ChromaticVerdict(True, b, F, sizes)
    return ChromaticVerdict(False, None, None, sizes)


# ---------------------------------------------------------------- joins

def project_colors(C: ChromaticComplex, colors: Sequence[int]) -> ChromaticComplex:
    colors = list(colors)
    return ChromaticComplex.from_label_tuples(len(colors), (tuple(r[c] for c in colors) for r in C.label_rows()))


def chromatic_join(C0: ChromaticComplex, C1: ChromaticComplex,
                   colors0: Sequence[int], colors1: Sequence[int]) -> ChromaticComplex:
    """Join of complexes on disjoint colors; ``C0``'s color ``k`` becomes ``colors0[k]``."""
    n = len(colors0) + len(colors1)
    if sorted(list(colors0) + list(colors1)) != list(range(n)):
        raise ChromaticError("colors must partition [0, n-1]")
    rows = []
    for r0 in C0.label_rows():
        for r1 in C1.label_rows():
            row = [None] * n
            for c, a in zip(colors0, r0):
                row[c] = a
            for c, a in zip(colors1, r1):
                row[c] = a
            rows.append(tuple(row))
    return ChromaticComplex.from_label_tuples(n, rows)


def is_join_over(C: ChromaticComplex, colors0: Sequence[int]) -> bool:
    """Is ``C`` the join of its projections on ``colors0`` and the complement?"""
    colors1 = [c for c in range(C.n) if c not in colors0]
    J = chromatic_join(project_colors(C, colors0), project_colors(C, colors1), colors0, colors1)
    return J.label_rows() == C.label_rows()


def _bipartitions(n: int):
    for r in range(1, n):
        for part in itertools.combinations(range(n), r):
            if 0 in part:
                yield list(part), [c for c in range(n) if c not in part]


def join_structure_checks(obj: Language | SimplicialComplex, B: int = 2) -> dict:
    """Compare join decompositions of the chromatic complex with the
    combinatorial notion they should mirror, over every bipartition."""
    if isinstance(obj, Language):
        C = output_complex(obj)
        joins, agree = [], True
        for p0, p1 in _bipartitions(obj.n):
            j = is_join_over(C, p0)
            agree &= j == splits_as_product(obj, p0, p1)
            if j:
                joins.append([p0, p1])
        factors = irreducible_factorization(obj)
        explicit = True
        if len(factors) > 1:
            (b0, L0), rest = factors[0], factors[1:]
            p1 = sorted(c for b, _ in rest for c in b)
            explicit = chromatic_join(output_complex(L0), project_colors(C, p1), list(b0), p1).label_rows() == C.label_rows()
        return {"kind": "language", "blocks": [list(b) for b, _ in factors], "join_partitions": joins,
                "agree": bool(agree and explicit)}
    K = obj
    C = input_complex(K, B)
    joins, agree = [], True
    for p0, p1 in _bipartitions(K.n):
        j = is_join_over(C, p0)
        m0 = sum(1 << c for c in p0)
        m1 = sum(1 << c for c in p1)
        split = all(s & m0 == s or s & m1 == s for s in K.maximal)
        agree &= j == split
        if split:
            explicit = chromatic_join(input_complex(restrict(K, p0), B), input_complex(restrict(K, p1), B),
                                      p0, p1).label_rows() == C.label_rows()
            agree &= explicit
        if j:
            joins.append([p0, p1])
    return {"kind": "complex", "join_partitions": joins, "agree": bool(agree),
            "connected": C.is_connected(), "full": K == full_complex(K.n)}


# ---------------------------------------------------------------- export

def to_dot(C: ChromaticComplex, name: str = "chromatic") -> str:
    """Colors become node shapes and fills; edges form the 1-skeleton."""
    lines = [f"graph {name} {{", "  node [style=filled];"]
    for k, (c, label) in enumerate(C.vertices):
        text = C.display[k] if C.display else str(label)
        fill = _FILLS[c % len(_FILLS)]
        font = "white" if fill in ("black", "gray50") else "black"
        lines.append(f'  v{k} [label="{text}", shape={_SHAPES[c % len(_SHAPES)]}, '
                     f'fillcolor="{fill}", fontcolor="{font}", color_index={c}];')
    edges = sorted({(min(a, b), max(a, b)) for s in C.simplices for a, b in itertools.combinations(s, 2)})
    for a, b in edges:
        lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
