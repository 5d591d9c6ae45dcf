"""Independent oracles for the tests.

``sat_generates`` encodes the canonical-procedure question directly from
the definitions and hands it to PicoSAT; it shares no code with the
engine's constraint builder. ``brute_image`` evaluates a procedure cell by
cell with plain Python.
"""

import itertools

import pycosat


def sat_generates(L, K):
    """Is there a procedure with one input cell per non-empty maximal simplex,
    inputs ranging over ``L``, fixing the diagonal, whose image lies in ``L``?"""
    words = list(L.words)
    if len(words) == 1:
        return True
    facets = [m for m in K.maximal if m]
    if not facets:
        return False
    n, m = L.n, len(facets)
    seen = [[k for k, f in enumerate(facets) if f >> i & 1] for i in range(n)]
    letters = sorted({a for w in words for a in w})
    var = {}

    def v(key):
        if key not in var:
            var[key] = len(var) + 1
        return var[key]

    clauses = []
    rule_keys = set()
    for t in itertools.product(range(len(words)), repeat=m):
        for i in range(n):
            rule_keys.add((i, tuple(t[k] for k in seen[i])))
    for i, view in rule_keys:
        clauses.append([v(("f", i, view, a)) for a in letters])
        for a, b in itertools.combinations(letters, 2):
            clauses.append([-v(("f", i, view, a)), -v(("f", i, view, b))])
    for x, w in enumerate(words):
        # the all-x input must produce x, even at cells that see nothing
        for i in range(n):
            clauses.append([v(("f", i, (x,) * len(seen[i]), w[i]))])
    for t in itertools.product(range(len(words)), repeat=m):
        sel = [v(("s", t, w)) for w in range(len(words))]
        clauses.append(sel)
        for s, w in zip(sel, words):
            for i in range(n):
                clauses.append([-s, v(("f", i, tuple(t[k] for k in seen[i]), w[i]))])
    return pycosat.solve(clauses) != "UNSAT"


def brute_image(P):
    out = set()
    for x in itertools.product(*[range(b) for b in P.input_sizes]):
        out.add(tuple(int(t[tuple(x[j] for j in w)]) for w, t in zip(P.windows, P.tables)))
    return out


def brute_complex_count(n):
    """Downward-closed families of subsets of ``n`` points, including the empty family."""
    subsets = list(range(1 << n))
    count = 0
    for bits in range(1 << len(subsets)):
        fam = {s for s in subsets if bits >> s & 1}
        if all(t in fam for s in fam for t in subsets if t & s == t):
            count += 1
    return count
