import json

import pytest

from localgen.cli import EXIT_OK, EXIT_UNDECIDED, EXIT_USAGE, main, parse_complex
from localgen.complexes import figure_tree, k_a
from localgen.io import load_procedure
from localgen.language import ev
from localgen.procedure import verify_generates


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def payload(text):
    return [line for line in text.splitlines() if not line.startswith("timing")]


def test_decide_writes_witness(capsys, tmp_path):
    w = tmp_path / "w.json"
    code, out, _ = run(capsys, "decide", "--family", "ev", "--n", "3", "--complex", "path:0-1-2",
                       "--witness-out", str(w))
    assert code == EXIT_OK
    assert "result.generates true" in out
    assert out.startswith("schema localgen-report/1\n")
    K = parse_complex("path:0-1-2", 3)
    assert verify_generates(load_procedure(w), ev(3), K)


def test_reports_are_deterministic(capsys):
    args = ("decide", "--family", "eq", "--n", "4", "--alphabet-size", "3", "--complex", "fig2")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert payload(a) == payload(b)
    assert "result.verdict \"does-not-generate\"" in a


def test_cache_hit_matches_fresh(capsys, tmp_path):
    args = ("decide", "--family", "unique", "--n", "4", "--complex", "k:2", "--cache-dir", str(tmp_path))
    _, fresh, _ = run(capsys, *args)
    _, cached, _ = run(capsys, *args)
    assert 'timing.cache "miss"' in fresh and 'timing.cache "hit"' in cached
    assert payload(fresh) == payload(cached)


def test_cache_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("LOCALGEN_CACHE_DIR", str(tmp_path))
    run(capsys, "decide", "--family", "ev", "--n", "3", "--complex", "full")
    assert list(tmp_path.glob("*.json"))


def test_json_format(capsys):
    code, out, _ = run(capsys, "minimal", "--family", "unique", "--n", "4", "--format", "json")
    report = json.loads(out)
    assert code == EXIT_OK and report["result"]["count"] == 4
    assert {tuple(map(tuple, c)) for c in report["result"]["complexes"]} == {
        tuple(map(tuple, k_a(4, a).facets_lists())) for a in range(4)}


def test_undecided_exit_code(capsys, tmp_path):
    code, out, _ = run(capsys, "decide", "--family", "eq", "--n", "4", "--alphabet-size", "3",
                       "--complex", "fig4", "--timeout-secs", "0", "--cache-dir", str(tmp_path))
    assert code == EXIT_UNDECIDED
    assert "undecided" in out
    assert not list(tmp_path.glob("*.json"))  # undecided verdicts are not cached


def test_usage_errors(capsys):
    assert run(capsys, "decide", "--family", "ev", "--complex", "full")[0] == EXIT_USAGE
    assert run(capsys, "decide", "--family", "ev", "--n", "3", "--complex", "nope")[0] == EXIT_USAGE
    assert run(capsys, "decide", "--family", "card-ge", "--n", "3", "--complex", "full")[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["decide", "--family", "bogus"])
    assert exc.value.code == EXIT_USAGE


def test_named_complexes():
    assert parse_complex("fig3", 4) == figure_tree("fig3").to_complex()
    assert parse_complex("edges:0-1,1-2", 3).facets_lists() == [[0, 1], [1, 2]]
    assert parse_complex("facets:0-1-2", 3).facets_lists() == [[0, 1, 2]]
    assert parse_complex("void", 2).maximal == ()
    assert parse_complex("k:0", 4) == k_a(4, 0)


def test_windows_and_exports(capsys, tmp_path):
    w = tmp_path / "w.json"
    run(capsys, "decide", "--family", "ev", "--n", "3", "--complex", "path:0-1-2", "--witness-out", str(w))
    code, out, _ = run(capsys, "windows", str(w))
    assert code == EXIT_OK and "result.dual_windows" in out
    code, out, _ = run(capsys, "windows", str(w), "--format", "dot")
    assert out.startswith("digraph")
    cnf = tmp_path / "q.cnf"
    assert run(capsys, "export", "cnf", "--family", "ev", "--n", "3", "--complex", "full", "--out", str(cnf))[0] == 0
    assert "p cnf" in cnf.read_text()
    code, out, _ = run(capsys, "export", "complex", "--complex", "fig4", "--n", "4", "--format", "dot")
    assert "0 -- 2" in out


def test_chromatic_command(capsys):
    code, out, _ = run(capsys, "chromatic", "--family", "card-le", "--k", "1", "--n", "3", "--complex", "complete-graph")
    assert code == EXIT_OK and "result.generates true" in out and "result.input_size 2" in out


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--criterion", "1", "--topic", "parity")
    assert code == EXIT_OK
    assert out.count("PASS") == 2
    assert run(capsys, "verify", "--topic", "nope")[0] == EXIT_USAGE
