import json

import pytest
from hypothesis import given, strategies as st

from localgen.complexes import all_complexes, from_maximal
from localgen.io import (
    FormatError, canonical_json, complex_from_json, complex_to_json, digest, language_from_json,
    language_to_json, load_procedure, procedure_from_json, procedure_to_json, save_json, visibility_dot,
    visibility_text, windows_report,
)
from localgen.language import eq, ev, parse_words
from localgen.procedure import figure1_procedure, proc_eq_fig4


def test_language_round_trip():
    for L in (ev(3), eq(3, 3), parse_words(2, ["x", "y"], ["xy", "yy"])):
        assert language_from_json(language_to_json(L)) == L


def test_language_from_strings():
    L = language_from_json({"n": 2, "alphabet": 2, "words": ["01", "10"]})
    assert L.words == ((0, 1), (1, 0))
    with pytest.raises(FormatError):
        language_from_json({"n": 2})


@given(st.integers(0, 19))
def test_complex_round_trip(k):
    K = all_complexes(3)[k]
    assert complex_from_json(json.loads(json.dumps(complex_to_json(K)))) == K


def test_procedure_round_trip(tmp_path):
    for P in (figure1_procedure(), proc_eq_fig4(3)):
        path = tmp_path / "p.json"
        save_json(procedure_to_json(P), path)
        Q = load_procedure(path)
        assert Q.windows == P.windows and all((a == b).all() for a, b in zip(P.tables, Q.tables))
        assert Q.input_names == P.input_names


def test_procedure_shape_checked():
    data = procedure_to_json(figure1_procedure())
    data["tables"][0] = data["tables"][0][:-1]
    with pytest.raises(FormatError):
        procedure_from_json(data)


def test_digest_is_order_independent():
    assert digest({"a": 1, "b": [1, 2]}) == digest({"b": [1, 2], "a": 1})
    assert canonical_json({"b": 1, "a": 2}) == '{"a":2,"b":1}'


def test_views():
    P = figure1_procedure()
    rep = windows_report(P)
    assert rep["input_windows"]["A"] == ["a", "b"] and rep["dual_windows"]["d"] == ["C"]
    grid = visibility_text(P).splitlines()
    assert len(grid) == 5 and grid[1].split()[0] == "a"
    assert visibility_dot(P).count("->") == 6
