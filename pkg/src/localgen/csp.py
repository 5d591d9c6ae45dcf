"""Finite constraint instance behind the generation question, and its solver.

Variables are indexed by (output cell, restriction class). A restriction
class of cell ``i`` is a tuple of base letters, one per maximal simplex
containing ``i``, encoded little-endian over those simplices. Each full tuple
of base letters gives one table constraint: the word assembled from the
cells' variables must belong to the upper language.

The solver keeps every domain as a 64-bit mask over the letters that occur
at the cell's position and enforces generalized arc consistency with numpy
over batches of constraints.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .complexes import SimplicialComplex, vertices_of
from .language import Language
from .procedure import Procedure, all_inputs

TUPLE_BOUND = 2 * 10 ** 6
CNF_ENCODING_VERSION = "onehot-selector/1"
_BATCH_CELLS = 1 << 23


class CSPError(ValueError):
    pass


class BoundExceeded(CSPError):
    pass


@dataclass(eq=False)
class CanonicalCSP:
    upper: Language
    base: tuple[tuple[int, ...], ...]
    pinned_positions: tuple[int, ...]
    simplices: tuple[int, ...]
    cell_simplices: tuple[tuple[int, ...], ...]
    offsets: tuple[int, ...]
    n_vars: int
    scope: np.ndarray
    local_letters: tuple[tuple[int, ...], ...]
    pins: dict[int, int]
    conflict: str | None = None

    @property
    def n(self) -> int:
        return self.upper.n

    @property
    def n_constraints(self) -> int:
        return self.scope.shape[0]

    def var_cell(self, v: int) -> int:
        return int(np.searchsorted(np.asarray(self.offsets), v, side="right") - 1)

    def class_of(self, v: int) -> tuple[int, ...]:
        """Base-letter indices of a variable's class, one per incident simplex."""
        i = self.var_cell(v)
        idx = v - self.offsets[i]
        out = []
        for _ in self.cell_simplices[i]:
            out.append(idx % len(self.base))
            idx //= len(self.base)
        return tuple(out)


def build_csp(upper: Language, base: Iterable[Sequence[int]], pinned_positions: Sequence[int],
              K: SimplicialComplex, tuple_bound: int = TUPLE_BOUND) -> CanonicalCSP:
    """General form: find f with K_f ⊆ K, im f ⊆ ``upper`` and every base word
    produced on ``pinned_positions`` by the all-equal input."""
    if K.n != upper.n:
        raise CSPError(f"complex has {K.n} vertices, language has {upper.n} positions")
    base = tuple(tuple(int(a) for a in d) for d in base)
    W = tuple(pinned_positions)
    if not base:
        raise CSPError("need at least one base word")
    for d in base:
        if len(d) != len(W):
            raise CSPError("base words must have one letter per pinned position")
    simplices = K.nonempty_maximal()
    m = len(base)
    count = m ** len(simplices)
    if count > tuple_bound:
        raise BoundExceeded(f"{count} full tuples exceed the bound {tuple_bound}")
    n = upper.n
    cell_simplices = tuple(tuple(k for k, s in enumerate(simplices) if s >> i & 1) for i in range(n))
    offsets, total = [], 0
    for i in range(n):
        offsets.append(total)
        total += m ** len(cell_simplices[i])
    T = all_inputs((m,) * len(simplices), bound=tuple_bound)
    scope = np.empty((T.shape[0], n), dtype=np.int64)
    for i in range(n):
        js = cell_simplices[i]
        radix = np.array([m ** k for k in range(len(js))], dtype=np.int64)
        scope[:, i] = offsets[i] + (T[:, list(js)] @ radix if js else 0)
    local = tuple(upper.letters_at(i) for i in range(n))
    pins: dict[int, int] = {}
    conflict = None
    for a, d in enumerate(base):
        for k, i in enumerate(W):
            size = len(cell_simplices[i])
            v = offsets[i] + a * sum(m ** e for e in range(size))
            if d[k] not in local[i]:
                conflict = conflict or f"letter {d[k]} never occurs at position {i}"
            if pins.get(v, d[k]) != d[k]:
                conflict = conflict or f"cell {i} would need two letters on one restriction class"
            pins[v] = d[k]
    return CanonicalCSP(upper, base, W, simplices, cell_simplices, tuple(offsets), total,
                        scope, local, pins, conflict)


def build_canonical_csp(L: Language, K: SimplicialComplex, tuple_bound: int = TUPLE_BOUND) -> CanonicalCSP:
    return build_csp(L, L.words, range(L.n), K, tuple_bound)


# ------------------------------------------------------------------ solver

@dataclass
class SolveResult:
    status: str  # "sat" | "unsat" | "timeout"
    assignment: np.ndarray | None = None
    stats: dict = field(default_factory=dict)


class _Engine:
    def __init__(self, csp: CanonicalCSP):
        self.csp = csp
        n = csp.n
        U = csp.upper
        self.var_cell = np.repeat(np.arange(n), np.diff(list(csp.offsets) + [csp.n_vars]))
        for i in range(n):
            if len(csp.local_letters[i]) > 64:
                raise CSPError(f"position {i} uses {len(csp.local_letters[i])} letters; at most 64 supported")
        pos = [{a: k for k, a in enumerate(csp.local_letters[i])} for i in range(n)]
        self.pos = pos
        arr = U.array
        self.wbit = [np.array([1 << pos[i][int(a)] for a in arr[:, i]], dtype=np.uint64) for i in range(n)]
        full = np.array([(1 << len(csp.local_letters[i])) - 1 for i in range(n)], dtype=np.uint64)
        self.dom = full[self.var_cell].copy()
        flat = csp.scope.ravel()
        order = np.argsort(flat, kind="stable")
        self.cons_sorted = (order // n).astype(np.int64)
        counts = np.bincount(flat, minlength=csp.n_vars)
        self.starts = np.concatenate(([0], np.cumsum(counts)))
        self.degree = counts
        self.trail: list[tuple[np.ndarray, np.ndarray]] = []
        self.revisions = 0

    def constraints_of(self, vars_: np.ndarray) -> np.ndarray:
        if len(vars_) == 1:
            v = int(vars_[0])
            return self.cons_sorted[self.starts[v]:self.starts[v + 1]]
        parts = [self.cons_sorted[self.starts[v]:self.starts[v + 1]] for v in vars_.tolist()]
        return np.unique(np.concatenate(parts)) if parts else np.empty(0, dtype=np.int64)

    def _revise(self, cons: np.ndarray) -> tuple[bool, np.ndarray]:
        scope = self.csp.scope
        n = self.csp.n
        nwords = len(self.csp.upper)
        step = max(1, _BATCH_CELLS // max(1, nwords * n))
        changed_all = []
        for s in range(0, len(cons), step):
            c = cons[s:s + step]
            S = scope[c]
            D = self.dom[S]
            compat = np.ones((len(c), nwords), dtype=bool)
            for i in range(n):
                compat &= (D[:, i:i + 1] & self.wbit[i][None, :]) != 0
            supp = np.empty_like(D)
            for i in range(n):
                supp[:, i] = np.bitwise_or.reduce(np.where(compat, self.wbit[i][None, :], np.uint64(0)), axis=1)
            vars_ = S.ravel()
            sup = supp.ravel()
            order = np.argsort(vars_, kind="stable")
            vs = vars_[order]
            sup = sup[order]
            heads = np.flatnonzero(np.concatenate(([True], vs[1:] != vs[:-1])))
            uniq = vs[heads]
            red = np.bitwise_and.reduceat(sup, heads)
            old = self.dom[uniq]
            new = old & red
            diff = new != old
            if diff.any():
                idx = uniq[diff]
                self.trail.append((idx, old[diff]))
                self.dom[idx] = new[diff]
                if not new[diff].all():
                    return False, idx
                changed_all.append(idx)
            self.revisions += len(c)
        if changed_all:
            return True, np.unique(np.concatenate(changed_all))
        return True, np.empty(0, dtype=np.int64)

    def propagate(self, seeds: np.ndarray | None) -> bool:
        cons = np.arange(self.csp.n_constraints) if seeds is None else self.constraints_of(seeds)
        while len(cons):
            ok, changed = self._revise(cons)
            if not ok:
                return False
            if not len(changed):
                return True
            cons = self.constraints_of(changed)
        return True

    def assign(self, v: int, bit: int):
        self.trail.append((np.array([v]), self.dom[[v]].copy()))
        self.dom[v] = np.uint64(bit)

    def undo_to(self, mark: int):
        while len(self.trail) > mark:
            idx, old = self.trail.pop()
            self.dom[idx] = old

    def choose(self) -> int | None:
        pc = np.bitwise_count(self.dom)
        open_ = np.flatnonzero(pc > 1)
        if not len(open_):
            return None
        keys = np.lexsort((open_, -self.degree[open_], pc[open_]))
        return int(open_[keys[0]])


def solve(csp: CanonicalCSP, timeout: float | None = None) -> SolveResult:
    """Complete backtracking search; deterministic for a given instance."""
    start = time.monotonic()
    stats = {"variables": csp.n_vars, "constraints": csp.n_constraints, "pinned": len(csp.pins),
             "nodes": 0, "backtracks": 0}

    def done(status, assignment=None):
        stats["seconds"] = round(time.monotonic() - start, 6)
        return SolveResult(status, assignment, stats)

    if csp.conflict:
        stats["reason"] = csp.conflict
        return done("unsat")
    eng = _Engine(csp)
    for v, letter in csp.pins.items():
        eng.dom[v] = np.uint64(1 << eng.pos[eng.var_cell[v]][letter])
    if not eng.propagate(None):
        stats["revisions"] = eng.revisions
        return done("unsat")
    stack: list[list] = []  # frames: [var, remaining mask, trail mark]
    while True:
        if timeout is not None and time.monotonic() - start > timeout:
            stats["revisions"] = eng.revisions
            return done("timeout")
        v = eng.choose()
        if v is None:
            stats["revisions"] = eng.revisions
            return done("sat", _letters(csp, eng))
        dom = int(eng.dom[v])
        frame = [v, dom, len(eng.trail)]
        stack.append(frame)
        while stack:
            frame = stack[-1]
            v, remaining, mark = frame
            eng.undo_to(mark)
            if not remaining:
                stack.pop()
                stats["backtracks"] += 1
                continue
            bit = remaining & -remaining
            frame[1] = remaining ^ bit
            stats["nodes"] += 1
            eng.assign(v, bit)
            if eng.propagate(np.array([v])):
                break
            if timeout is not None and time.monotonic() - start > timeout:
                stats["revisions"] = eng.revisions
                return done("timeout")
        else:
            stats["revisions"] = eng.revisions
            return done("unsat")


def _letters(csp: CanonicalCSP, eng: _Engine) -> np.ndarray:
    out = np.empty(csp.n_vars, dtype=np.int64)
    bits = eng.dom
    for v in range(csp.n_vars):
        i = eng.var_cell[v]
        out[v] = csp.local_letters[i][int(bits[v]).bit_length() - 1]
    return out


def extract_procedure(csp: CanonicalCSP, assignment: np.ndarray) -> Procedure:
    """Rule tables read off a solution; input cells are the maximal simplices."""
    m = len(csp.base)
    tables, windows = [], []
    bounds = list(csp.offsets) + [csp.n_vars]
    for i in range(csp.n):
        js = csp.cell_simplices[i]
        flat = np.asarray(assignment[bounds[i]:bounds[i + 1]], dtype=np.int64)
        tables.append(flat.reshape((m,) * len(js), order="F"))
        windows.append(js)
    return Procedure((m,) * len(csp.simplices), csp.upper.alphabet, tuple(windows), tuple(tables))


def check_solution(csp: CanonicalCSP, assignment: np.ndarray) -> bool:
    for v, a in csp.pins.items():
        if assignment[v] != a:
            return False
    words = csp.upper._index
    for row in assignment[csp.scope]:
        if tuple(int(a) for a in row) not in words:
            return False
    return True


# ------------------------------------------------------------- CNF export

def to_cnf(csp: CanonicalCSP) -> tuple[int, list[list[int]]]:
    """One-hot cell variables plus one selector per (full tuple, word)."""
    xvar: dict[tuple[int, int], int] = {}
    nxt = 1
    bounds = list(csp.offsets) + [csp.n_vars]
    for i in range(csp.n):
        for v in range(bounds[i], bounds[i + 1]):
            for a in csp.local_letters[i]:
                xvar[v, a] = nxt
                nxt += 1
    clauses: list[list[int]] = []
    for i in range(csp.n):
        letters = csp.local_letters[i]
        for v in range(bounds[i], bounds[i + 1]):
            clauses.append([xvar[v, a] for a in letters])
            for x in range(len(letters)):
                for y in range(x + 1, len(letters)):
                    clauses.append([-xvar[v, letters[x]], -xvar[v, letters[y]]])
    if csp.conflict:
        clauses.extend([[1], [-1]])
    for v, a in csp.pins.items():
        if (v, a) in xvar:
            clauses.append([xvar[v, a]])
    words = csp.upper.words
    for row in csp.scope.tolist():
        sel = list(range(nxt, nxt + len(words)))
        nxt += len(words)
        clauses.append(sel)
        for s, w in zip(sel, words):
            for i, v in enumerate(row):
                clauses.append([-s, xvar[v, w[i]]])
    return nxt - 1, clauses


def export_cnf(csp: CanonicalCSP, path, query: dict | None = None) -> None:
    nvars, clauses = to_cnf(csp)
    with open(path, "w") as fh:
        fh.write(f"c localgen canonical instance, encoding {CNF_ENCODING_VERSION}\n")
        if query is not None:
            for key in sorted(query):
                fh.write(f"c {key} {json.dumps(query[key], sort_keys=True)}\n")
        fh.write(f"c variables {csp.n_vars} constraints {csp.n_constraints} pins {len(csp.pins)}\n")
        fh.write(f"p cnf {nvars} {len(clauses)}\n")
        for cl in clauses:
            fh.write(" ".join(map(str, cl)) + " 0\n")


def read_cnf(path) -> tuple[int, list[list[int]]]:
    clauses, nvars = [], 0
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("c"):
                continue
            if line.startswith("p"):
                nvars = int(line.split()[2])
                continue
            lits = [int(t) for t in line.split()]
            clauses.append(lits[:-1])
    return nvars, clauses
