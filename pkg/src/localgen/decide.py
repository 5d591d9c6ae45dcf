"""Does a complex generate a language?

The pipeline tries exact characterizations for binary monotone languages,
then cheap necessary conditions, then splits the language into irreducible
factors, and finally solves the canonical constraint instance. Positive
answers always carry a procedure; negative ones carry a certificate that
``check_certificate`` can re-validate.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .complexes import (
    Graph, SimplicialComplex, all_complexes, canonical_form, components,
    downwards_witness, from_maximal, is_downwards_closed, l_connectivity_witness,
    mask_of, maximal_non_members, minimal_non_members, restrict, skeleton1, vertices_of,
)
from .csp import (
    TUPLE_BOUND, BoundExceeded, build_canonical_csp, build_csp, extract_procedure, solve,
)
from .language import (
    Alphabet, Language, LanguageError, Permutation, act, automorphisms, independent_pair,
    irreducible_factorization, is_upwards_closed, make_language, project, splits_as_product,
    unique,
)
from .procedure import (
    IMAGE_BOUND, Procedure, comm_complex, complement_procedure, compose, constant_procedure,
    image, letterwise, product_procedure, proc_upclosed_edges, relabel_outputs, verify_generates,
)

GENERATES = "generates"
REFUTED = "does-not-generate"
UNDECIDED = "undecided"
ENGINE_VERSION = "1.0"


class DecisionError(RuntimeError):
    pass


@dataclass(frozen=True)
class Options:
    fast_paths: bool = True
    refuters: bool = True
    factorize: bool = True
    timeout: float | None = None
    tuple_bound: int = TUPLE_BOUND
    projection_size: int = 3
    subcall_bound: int = 2 * 10 ** 5
    verify_witness: bool = True


@dataclass
class DecisionResult:
    verdict: str
    witness: Procedure | None = None
    certificate: dict | None = None
    method: str = ""
    stats: dict = field(default_factory=dict)

    @property
    def generates(self) -> bool | None:
        if self.verdict == UNDECIDED:
            return None
        return self.verdict == GENERATES


def _facets(K: SimplicialComplex) -> list[list[int]]:
    return K.facets_lists()


def _complex_of(n: int, facets) -> SimplicialComplex:
    return from_maximal(n, facets)


# ---------------------------------------------------------------- refuters

def uncovered_position(L: Language, K: SimplicialComplex) -> int | None:
    covered = K.covered()
    for i in range(L.n):
        if not covered >> i & 1 and len(L.letters_at(i)) > 1:
            return i
    return None


def _disconnection_partitions(K: SimplicialComplex):
    comps = components(K)
    if len(comps) < 2:
        return
    first, rest = comps[0], comps[1:]
    for r in range(len(rest)):
        for extra in itertools.combinations(rest, r):
            p0 = sorted(itertools.chain(first, *extra))
            p1 = sorted(v for v in range(K.n) if v not in p0)
            yield p0, p1


def refute_necessary(L: Language, K: SimplicialComplex, options: Options | None = None) -> dict | None:
    """A certificate from a necessary condition that ``K`` violates, or ``None``."""
    options = options or Options()
    i = uncovered_position(L, K)
    if i is not None:
        return {"kind": "uncovered-position", "position": i}
    for p0, p1 in _disconnection_partitions(K):
        if not splits_as_product(L, p0, p1):
            return {"kind": "disconnected-irreducible", "partition": [p0, p1]}
    for a, b in itertools.combinations(range(L.n), 2):
        if not K.contains((a, b)) and not independent_pair(L, a, b):
            return {"kind": "independent-pair", "pair": [a, b]}
    if L.n >= 3 and L.alphabet.size == 2 and len(L) == L.n and L == unique(L.n):
        for a, b in itertools.combinations(range(L.n), 2):
            if not any(K.contains((a, b, c)) for c in range(L.n) if c not in (a, b)):
                return {"kind": "unique-triangle", "pair": [a, b]}
    sub = replace(options, tuple_bound=min(options.tuple_bound, options.subcall_bound), timeout=None)
    for size in range(2, min(options.projection_size, L.n - 1) + 1):
        for J in itertools.combinations(range(L.n), size):
            res = _try_decide(project(L, J), restrict(K, J), sub)
            if res is not None and res.verdict == REFUTED:
                return {"kind": "projection", "positions": list(J), "inner": res.certificate}
    if L.alphabet.size > 2:
        for bit in range((L.alphabet.size - 1).bit_length()):
            coarse = coarsen(L, bit)
            if len(coarse) == 1:
                continue
            res = _try_decide(coarse, K, replace(sub, projection_size=min(options.projection_size, 3)))
            if res is not None and res.verdict == REFUTED:
                return {"kind": "coarsening", "bit": bit, "inner": res.certificate}
    return None


def coarsen(L: Language, bit: int) -> Language:
    """Letterwise image keeping one bit of every letter index."""
    maps = [[(a >> bit) & 1 for a in range(L.alphabet.size)]] * L.n
    out = letterwise(maps, L.alphabet.size, 2).eval_many(L.array)
    return make_language(L.n, 2, {tuple(int(a) for a in row) for row in out})


def _try_decide(L: Language, K: SimplicialComplex, options: Options) -> DecisionResult | None:
    try:
        return decide_generates(L, K, options)
    except BoundExceeded:
        return None


# ------------------------------------------------------------- fast paths

def _prune_graph(G: Graph, still_ok) -> Graph:
    edges = set(G.edges)
    for e in sorted(G.edges, reverse=True):
        trial = Graph(G.n, frozenset(edges - {e}))
        if still_ok(trial):
            edges.discard(e)
    return Graph(G.n, frozenset(edges))


def _upclosed_witness(G: Graph, L: Language) -> Procedure:
    G = _prune_graph(G, lambda H: l_connectivity_witness(H, L) is None)
    return proc_upclosed_edges(G, L)


def complement_language(L: Language) -> Language:
    return make_language(L.n, L.alphabet, (tuple(1 - a for a in w) for w in L.words))


def _fast_path(L: Language, K: SimplicialComplex) -> DecisionResult | None:
    if L.alphabet.size != 2:
        return None
    G = skeleton1(K)
    if is_upwards_closed(L):
        W = l_connectivity_witness(G, L)
        if W is not None:
            return DecisionResult(REFUTED, certificate={"kind": "upwards-closed", "removed": list(vertices_of(W))},
                                  method="upwards-closed")
        return DecisionResult(GENERATES, witness=_upclosed_witness(G, L), method="upwards-closed")
    if is_downwards_closed(L):
        W = downwards_witness(G, L)
        if W is not None:
            return DecisionResult(REFUTED, certificate={"kind": "downwards-closed", "set": list(vertices_of(W))},
                                  method="downwards-closed")
        C = complement_language(L)
        P = compose(complement_procedure(L.n), _upclosed_witness(G, C))
        return DecisionResult(GENERATES, witness=P, method="downwards-closed")
    return None


# ---------------------------------------------------------------- engine

def decide_generates(L: Language, K: SimplicialComplex, options: Options | None = None,
                     hints: Sequence[Procedure] = (), **overrides) -> DecisionResult:
    options = replace(options or Options(), **overrides)
    if K.n != L.n:
        raise DecisionError(f"complex has {K.n} vertices, language has {L.n} positions")
    start = time.monotonic()
    res = _decide(L, K, options, hints, start)
    res.stats.setdefault("seconds", round(time.monotonic() - start, 6))
    if res.verdict == GENERATES and options.verify_witness and res.witness is not None:
        if res.witness.input_space() <= IMAGE_BOUND and not verify_generates(res.witness, L, K):
            raise DecisionError(f"internal error: {res.method} witness does not verify")
    return res


def _decide(L, K, options: Options, hints, start) -> DecisionResult:
    if len(L) == 1:
        return DecisionResult(GENERATES, witness=constant_procedure(L.words[0], L.alphabet), method="singleton")
    if options.fast_paths:
        i = uncovered_position(L, K)
        if i is not None:
            return DecisionResult(REFUTED, certificate={"kind": "uncovered-position", "position": i},
                                  method="coverage")
        res = _fast_path(L, K)
        if res is not None:
            return res
    for P in hints:
        if P.output_n == L.n and P.input_space() <= IMAGE_BOUND and verify_generates(P, L, K):
            return DecisionResult(GENERATES, witness=P, method="hint")
    if options.refuters:
        cert = refute_necessary(L, K, options)
        if cert is not None:
            return DecisionResult(REFUTED, certificate=cert, method="refuter:" + cert["kind"])
    if options.factorize:
        factors = irreducible_factorization(L)
        if len(factors) > 1:
            return _decide_factors(L, K, factors, options, start)
    return _decide_csp(L, K, options, start)


def _remaining(options: Options, start: float) -> float | None:
    if options.timeout is None:
        return None
    return max(0.0, options.timeout - (time.monotonic() - start))


def _decide_factors(L, K, factors, options, start) -> DecisionResult:
    parts = []
    for block, factor in factors:
        sub = replace(options, timeout=_remaining(options, start))
        res = decide_generates(factor, restrict(K, block), sub)
        if res.verdict == REFUTED:
            return DecisionResult(REFUTED, certificate={"kind": "projection", "positions": list(block),
                                                        "inner": res.certificate},
                                  method="factor", stats={"blocks": [list(b) for b, _ in factors]})
        if res.verdict == UNDECIDED:
            return DecisionResult(UNDECIDED, method="factor", stats=res.stats)
        parts.append((block, res.witness))
    P = product_procedure(L.n, parts, L.alphabet)
    return DecisionResult(GENERATES, witness=P, method="factor",
                          stats={"blocks": [list(b) for b, _ in factors]})


def _search_counts(stats: dict) -> dict:
    """Deterministic part of the solver statistics (no wall-clock time)."""
    return {k: v for k, v in stats.items() if k != "seconds"}


def _decide_csp(L, K, options, start) -> DecisionResult:
    csp = build_canonical_csp(L, K, options.tuple_bound)
    out = solve(csp, timeout=_remaining(options, start))
    if out.status == "sat":
        return DecisionResult(GENERATES, witness=extract_procedure(csp, out.assignment), method="csp",
                              stats=out.stats)
    if out.status == "unsat":
        return DecisionResult(REFUTED, certificate={"kind": "csp-exhausted", "stats": _search_counts(out.stats)},
                              method="csp", stats=out.stats)
    return DecisionResult(UNDECIDED, method="csp", stats=out.stats)


# ------------------------------------------------------------ certificates

def check_certificate(L: Language, K: SimplicialComplex, cert: dict, rerun_search: bool = True) -> bool:
    """Re-validate a negative certificate from scratch."""
    kind = cert.get("kind")
    n = L.n
    if kind == "uncovered-position":
        i = cert["position"]
        return not K.covered() >> i & 1 and len(L.letters_at(i)) > 1
    if kind == "disconnected-irreducible":
        p0, p1 = cert["partition"]
        if sorted(p0 + p1) != list(range(n)) or not p0 or not p1:
            return False
        m0, m1 = mask_of(p0), mask_of(p1)
        if not all(s & m0 == s or s & m1 == s for s in K.maximal):
            return False
        return not splits_as_product(L, p0, p1)
    if kind == "independent-pair":
        a, b = cert["pair"]
        return a != b and not K.contains((a, b)) and not independent_pair(L, a, b)
    if kind == "unique-triangle":
        a, b = cert["pair"]
        return (n >= 3 and L == unique(n) and a != b
                and not any(K.contains((a, b, c)) for c in range(n) if c not in (a, b)))
    if kind == "projection":
        J = cert["positions"]
        return check_certificate(project(L, J), restrict(K, J), cert["inner"], rerun_search)
    if kind == "coarsening":
        return check_certificate(coarsen(L, cert["bit"]), K, cert["inner"], rerun_search)
    if kind == "upwards-closed":
        W = mask_of(cert["removed"])
        if L.alphabet.size != 2 or not is_upwards_closed(L) or W not in maximal_non_members(L):
            return False
        return not skeleton1(K).induced_connected(set(range(n)) - set(cert["removed"]))
    if kind == "downwards-closed":
        W = mask_of(cert["set"])
        if L.alphabet.size != 2 or not is_downwards_closed(L) or W not in minimal_non_members(L):
            return False
        return not skeleton1(K).induced_connected(cert["set"])
    if kind == "monotone":
        bigger = _complex_of(n, cert["superset"])
        return K.issubset(bigger) and check_certificate(L, bigger, cert["inner"], rerun_search)
    if kind == "symmetry":
        g = Permutation(tuple(cert["permutation"]))
        if act(g, L) != L:
            return False
        return check_certificate(L, K.act(g.inverse()), cert["inner"], rerun_search)
    if kind == "csp-exhausted":
        if not rerun_search:
            return True
        return solve(build_canonical_csp(L, K, TUPLE_BOUND * 4)).status == "unsat"
    return False


# ------------------------------------------------------- batches and minimality

def _orbit_group(L: Language, symmetry: bool) -> list[Permutation]:
    if not symmetry:
        return [Permutation.identity(L.n)]
    return automorphisms(L)


def decide_many(L: Language, complexes: Iterable[SimplicialComplex], options: Options | None = None,
                symmetry: bool = True, hints: Sequence[Procedure] = ()) -> dict[tuple, DecisionResult]:
    """Verdicts for many complexes, reusing monotonicity and the symmetries of ``L``."""
    options = options or Options()
    group = _orbit_group(L, symmetry)
    todo = sorted(set(complexes), key=lambda K: (sum(1 for s in K.simplices() if s), K.maximal))
    positives: list[tuple[SimplicialComplex, DecisionResult]] = []
    negatives: list[tuple[SimplicialComplex, DecisionResult]] = []
    fresh: dict[tuple, tuple[SimplicialComplex, DecisionResult]] = {}
    out: dict[tuple, DecisionResult] = {}
    for K in todo:
        res = None
        for P, pres in positives:
            if P.issubset(K):
                res = DecisionResult(GENERATES, witness=pres.witness, method="monotone")
                break
        if res is None:
            for N, nres in negatives:
                if K.issubset(N):
                    res = DecisionResult(REFUTED, method="monotone",
                                         certificate={"kind": "monotone", "superset": _facets(N),
                                                      "inner": nres.certificate})
                    break
        if res is None:
            rep = canonical_form(K, group) if len(group) > 1 else K
            if rep.maximal not in fresh:
                fresh[rep.maximal] = (rep, decide_generates(L, rep, options, hints))
            res = _transport(L, K, *fresh[rep.maximal], group)
        out[K.maximal] = res
        if res.verdict == GENERATES:
            positives.append((K, res))
        elif res.verdict == REFUTED:
            negatives.append((K, res))
    return out


def _transport(L, K, rep, res, group) -> DecisionResult:
    if K == rep:
        return res
    g = next(g for g in group if rep.act(g) == K)
    if res.verdict == GENERATES:
        return DecisionResult(GENERATES, witness=relabel_outputs(res.witness, g), method="symmetry")
    if res.verdict == REFUTED:
        return DecisionResult(REFUTED, method="symmetry",
                              certificate={"kind": "symmetry", "permutation": list(g.mapping),
                                           "inner": res.certificate})
    return DecisionResult(UNDECIDED, method="symmetry", stats=res.stats)


def minimal_elements(cs: Iterable[SimplicialComplex]) -> list[SimplicialComplex]:
    cs = list(cs)
    return sorted((K for K in cs if not any(M != K and M.issubset(K) for M in cs)),
                  key=lambda K: (len(K.maximal), K.maximal))


def minimal_complexes(L: Language, up_to_symmetry: bool = True, options: Options | None = None,
                      long_running: bool = False) -> list[SimplicialComplex]:
    if L.n > 5 or (L.n == 5 and not long_running):
        raise DecisionError("minimal complex search is limited to n <= 4 (n = 5 with long_running)")
    verdicts = decide_many(L, all_complexes(L.n), options, symmetry=up_to_symmetry)
    undecided = [k for k, r in verdicts.items() if r.verdict == UNDECIDED]
    if undecided:
        raise DecisionError(f"{len(undecided)} complexes left undecided")
    return minimal_elements(SimplicialComplex(L.n, k) for k, r in verdicts.items() if r.verdict == GENERATES)


# ------------------------------------------------------ generalized decisions

def decide_generalized(upper: Language | None, base: Sequence[Sequence[int]], positions: Sequence[int],
                       K: SimplicialComplex, options: Options | None = None) -> DecisionResult:
    """Is there f with K_f ⊆ K, im f ⊆ ``upper`` whose image restricted to
    ``positions`` contains every word of ``base``?"""
    options = options or Options()
    base = [tuple(d) for d in base]
    if upper is None:
        return DecisionResult(REFUTED, certificate={"kind": "empty-upper"}, method="trivial")
    restricted = {tuple(u[p] for p in positions) for u in upper.words}
    for d in base:
        if d not in restricted:
            return DecisionResult(REFUTED, certificate={"kind": "unextendable", "word": list(d)},
                                  method="trivial")
    start = time.monotonic()
    csp = build_csp(upper, base, positions, K, options.tuple_bound)
    out = solve(csp, timeout=options.timeout)
    if out.status == "sat":
        P = extract_procedure(csp, out.assignment)
        return DecisionResult(GENERATES, witness=P, method="csp", stats=out.stats)
    if out.status == "unsat":
        return DecisionResult(REFUTED, certificate={"kind": "csp-exhausted", "stats": _search_counts(out.stats)},
                              method="csp", stats=out.stats)
    return DecisionResult(UNDECIDED, method="csp", stats=out.stats)


def check_generalized_witness(P: Procedure, upper: Language, base, positions, K: SimplicialComplex) -> bool:
    produced = image(P)
    if not all(w in upper for w in produced.words):
        return False
    restricted = {tuple(w[p] for p in positions) for w in produced.words}
    return all(tuple(d) in restricted for d in base) and comm_complex(P).issubset(K)


def valid_sequences(V: Sequence[int], alphabet) -> Language | None:
    """Words over ``V`` (listed in order) with two consecutive positions holding equal letters."""
    alphabet = Alphabet.of(alphabet)
    V = list(V)
    pairs = [(k, V.index(v + 1)) for k, v in enumerate(V) if v + 1 in V]
    words = [w for w in itertools.product(range(alphabet.size), repeat=len(V))
             if any(w[a] == w[b] for a, b in pairs)]
    if not words:
        return None
    return make_language(len(V), alphabet, words)


def v_good_instance(V: Sequence[int], v: int, alphabet):
    V = sorted(V)
    if v not in V:
        raise DecisionError(f"{v} is not in V")
    alphabet = Alphabet.of(alphabet)
    upper = valid_sequences(V, alphabet)
    positions = [k for k, u in enumerate(V) if u != v]
    base = list(itertools.product(range(alphabet.size), repeat=len(positions)))
    return upper, base, positions


def is_v_good(T: SimplicialComplex, V: Sequence[int], v: int, alphabet, options: Options | None = None) -> bool:
    """``T`` lives on local vertices ``0..|V|-1`` standing for the sorted labels of ``V``."""
    if T.n != len(V):
        raise DecisionError("complex must have one vertex per element of V")
    upper, base, positions = v_good_instance(V, v, alphabet)
    res = decide_generalized(upper, base, positions, T, options)
    if res.verdict == UNDECIDED:
        raise DecisionError("v-goodness left undecided")
    return res.verdict == GENERATES
