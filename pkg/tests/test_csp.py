import random

import pycosat
import pytest

from localgen.complexes import all_complexes, boundary, from_maximal, k_a, path_graph, singletons
from localgen.csp import (
    CNF_ENCODING_VERSION, BoundExceeded, build_canonical_csp, build_csp, check_solution, export_cnf,
    extract_procedure, read_cnf, solve, to_cnf,
)
from localgen.language import constants, ev, make_language, nd, unique
from localgen.procedure import verify_generates

from oracles import sat_generates


def random_case(rng):
    n = rng.choice((2, 3))
    size = rng.choice((2, 3))
    universe = [tuple(rng.randrange(size) for _ in range(n)) for _ in range(rng.randint(1, 6))]
    L = make_language(n, size, universe)
    K = rng.choice(all_complexes(n))
    return L, K


def test_variable_count():
    csp = build_canonical_csp(ev(3), path_graph([0, 1, 2]).to_complex())
    assert csp.n_vars == 4 + 16 + 4


def test_singleton_with_void_complex():
    L = make_language(2, 2, [(0, 1)])
    csp = build_canonical_csp(L, all_complexes(2)[0])
    assert solve(csp).status == "sat"


def test_constants_on_points_unsat():
    csp = build_canonical_csp(constants(2), singletons(2))
    assert solve(csp).status == "unsat"
    nvars, clauses = to_cnf(csp)
    assert pycosat.solve(clauses) == "UNSAT"


def test_known_verdicts():
    csp = build_canonical_csp(ev(3), path_graph([0, 1, 2]).to_complex())
    out = solve(csp)
    assert out.status == "sat" and check_solution(csp, out.assignment)
    assert verify_generates(extract_procedure(csp, out.assignment), ev(3), path_graph([0, 1, 2]).to_complex())
    assert solve(build_canonical_csp(nd(3), boundary(3))).status == "unsat"
    assert solve(build_canonical_csp(unique(4), k_a(4, 0))).status == "sat"


def test_all_pinned_instance():
    L = ev(2)
    csp = build_csp(L, [()], (), from_maximal(2, [[0, 1]]))
    assert not csp.pins
    out = solve(csp)
    assert out.status == "sat"


def test_bound():
    with pytest.raises(BoundExceeded):
        build_canonical_csp(ev(3), path_graph([0, 1, 2]).to_complex(), tuple_bound=10)


def test_deterministic():
    csp = build_canonical_csp(ev(4), path_graph([0, 1, 2, 3]).to_complex())
    a, b = solve(csp), solve(csp)
    assert (a.assignment == b.assignment).all()


@pytest.mark.parametrize("seed", range(40))
def test_agrees_with_external_oracles(seed):
    L, K = random_case(random.Random(seed))
    csp = build_canonical_csp(L, K)
    out = solve(csp)
    want = sat_generates(L, K)
    assert (out.status == "sat") == want
    _, clauses = to_cnf(csp)
    assert (pycosat.solve(clauses) != "UNSAT") == want
    if out.status == "sat":
        assert verify_generates(extract_procedure(csp, out.assignment), L, K)


def test_cnf_file_round_trip(tmp_path):
    csp = build_canonical_csp(ev(3), path_graph([0, 1, 2]).to_complex())
    path = tmp_path / "q.cnf"
    export_cnf(csp, path, {"language": "ev3"})
    text = path.read_text()
    assert CNF_ENCODING_VERSION in text and 'c language "ev3"' in text
    assert read_cnf(path) == to_cnf(csp)
