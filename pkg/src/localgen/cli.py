"""Command-line entry point: ``localgen <command> ...``.

Every command prints a report. The payload (query echo plus result) is
deterministic for a given query and engine version; timing and search
statistics are kept in a separate section so reports can be diffed.

Exit codes: 0 completed, 1 usage or input error, 2 undecided (timeout or
bound), 3 a ``verify`` check failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import language as lang
from .chromatic import ChromaticError, chromatic_decides, input_complex, map_to_procedure, output_complex, to_dot
from .complexes import (
    FIGURE_TREES, ComplexError, Graph, SimplicialComplex, boundary, complete_graph, empty_complex, from_maximal,
    full_complex, k_a, path_graph, singletons,
)
from .csp import BoundExceeded, CSPError, build_canonical_csp, export_cnf
from .decide import (
    ENGINE_VERSION, GENERATES, UNDECIDED, DecisionError, Options, decide_generates, minimal_complexes,
)
from .io import (
    FormatError, complex_dot, complex_to_json, digest, language_to_json, load_complex,
    load_language, load_procedure, procedure_from_json, procedure_to_json, save_json, visibility_dot,
    visibility_text, windows_report,
)
from .language import Language, LanguageError
from .procedure import ProcedureError

SCHEMA = "localgen-report/1"
CACHE_ENV = "LOCALGEN_CACHE_DIR"

EXIT_OK, EXIT_USAGE, EXIT_UNDECIDED, EXIT_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Argument errors exit with 1; 2 is reserved for undecided queries."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- languages

FAMILIES = {
    "full": lambda n, k, a: lang.full(n, a),
    "ev": lambda n, k, a: lang.ev(n),
    "od": lambda n, k, a: lang.od(n),
    "nd": lambda n, k, a: lang.nd(n, a),
    "nc": lambda n, k, a: lang.nc(n, a),
    "eq": lambda n, k, a: lang.eq(n, a),
    "constants": lambda n, k, a: lang.constants(n, a),
    "card-ge": lambda n, k, a: lang.card_ge(n, _need_k(k)),
    "card-le": lambda n, k, a: lang.card_le(n, _need_k(k)),
    "unique": lambda n, k, a: lang.unique(n),
    "one-or-all": lambda n, k, a: lang.one_or_all(n),
    "one-or-all-or-zero": lambda n, k, a: lang.one_or_all_or_zero(n),
}


def _need_k(k):
    if k is None:
        raise UsageError("this family needs --k")
    return k


def language_from_args(args) -> tuple[Language, dict]:
    if (args.family is None) == (args.lang_file is None):
        raise UsageError("give exactly one of --family or --lang-file")
    if args.lang_file is not None:
        L = load_language(args.lang_file)
        return L, {"file": str(args.lang_file), "digest": digest(language_to_json(L))}
    if args.n is None:
        raise UsageError("--family needs --n")
    L = FAMILIES[args.family](args.n, args.k, args.alphabet_size)
    echo = {"family": args.family, "n": args.n, "alphabet_size": args.alphabet_size}
    if args.k is not None:
        echo["k"] = args.k
    return L, echo


# ---------------------------------------------------------------- complexes

COMPLEX_HELP = ("full | boundary | void | points | complete-graph | path:0-1-2 | "
                "edges:0-1,1-2 | facets:0-1-2,2-3 | k:A (triangles through A) | fig2 | fig3 | fig4")


def _int_list(text: str, sep: str) -> list[int]:
    try:
        return [int(t) for t in text.split(sep) if t != ""]
    except ValueError:
        raise UsageError(f"expected integers separated by {sep!r}, got {text!r}") from None


def parse_complex(spec: str, n: int) -> SimplicialComplex:
    name, _, arg = spec.partition(":")
    if name == "full":
        return full_complex(n)
    if name == "boundary":
        return boundary(n)
    if name == "void":
        return empty_complex(n)
    if name == "points":
        return singletons(n)
    if name == "complete-graph":
        return complete_graph(n).to_complex()
    if name == "path":
        return path_graph(_int_list(arg, "-"), n).to_complex()
    if name == "edges":
        return Graph.of(n, [_int_list(e, "-") for e in arg.split(",") if e]).to_complex()
    if name == "facets":
        return from_maximal(n, [_int_list(f, "-") for f in arg.split(",")])
    if name == "k":
        return k_a(n, int(arg))
    if name in FIGURE_TREES:
        if n != 4:
            raise UsageError(f"{name} is a tree on 4 vertices")
        return Graph.of(4, FIGURE_TREES[name]).to_complex()
    raise UsageError(f"unknown complex {spec!r}; expected {COMPLEX_HELP}")


def complex_from_args(args, n: int) -> tuple[SimplicialComplex, dict]:
    if (args.complex is None) == (args.complex_file is None):
        raise UsageError("give exactly one of --complex or --complex-file")
    if args.complex_file is not None:
        K = load_complex(args.complex_file)
        echo = {"file": str(args.complex_file)}
    else:
        K = parse_complex(args.complex, n)
        echo = {"spec": args.complex}
    if K.n != n:
        raise UsageError(f"complex has {K.n} vertices but the language has {n} positions")
    echo["maximal"] = K.facets_lists()
    return K, echo


# ---------------------------------------------------------------- reports

def _flatten(prefix: str, value, out: list[str]):
    if isinstance(value, dict) and value:
        for key in sorted(value):
            _flatten(f"{prefix}.{key}" if prefix else str(key), value[key], out)
    else:
        out.append(f"{prefix} {json.dumps(value, sort_keys=True, ensure_ascii=False)}")


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    lines = [f"schema {report['schema']}", f"command {report['command']}", f"engine {report['engine']}"]
    for section in ("query", "result", "timing"):
        if section in report:
            _flatten(section, report[section], lines)
    return "\n".join(lines) + "\n"


def make_report(command: str, query: dict, result: dict, timing: dict) -> dict:
    return {"schema": SCHEMA, "command": command, "engine": ENGINE_VERSION,
            "query": query, "result": result, "timing": timing}


def emit(args, text: str):
    sys.stdout.write(text)



# ---------------------------------------------------------------- cache

def cache_dir(args) -> Path | None:
    d = args.cache_dir or os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def cache_key(L: Language, K: SimplicialComplex) -> str:
    return digest({"language": language_to_json(L), "complex": complex_to_json(K), "engine": ENGINE_VERSION})


def cache_load(d: Path | None, key: str) -> dict | None:
    if d is None:
        return None
    path = d / f"{key}.json"
    if not path.exists():
        return None
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError:
        return None


def cache_store(d: Path | None, key: str, entry: dict):
    if d is None:
        return
    d.mkdir(parents=True, exist_ok=True)
    tmp = d / f"{key}.json.tmp"
    tmp.write_text(json.dumps(entry, sort_keys=True))
    tmp.replace(d / f"{key}.json")


# ---------------------------------------------------------------- commands

def _options(args) -> Options:
    return Options(timeout=args.timeout_secs)


def cmd_decide(args) -> int:
    L, lq = language_from_args(args)
    K, kq = complex_from_args(args, L.n)
    query = {"language": lq, "complex": kq}
    if args.export_cnf:
        export_cnf(build_canonical_csp(L, K), args.export_cnf, query)
    start = time.monotonic()
    d = cache_dir(args)
    key = cache_key(L, K)
    entry = cache_load(d, key)
    timing: dict = {"cache": "hit" if entry else ("miss" if d else "off")}
    if entry is None:
        try:
            res = decide_generates(L, K, _options(args))
        except BoundExceeded as exc:
            timing["seconds"] = round(time.monotonic() - start, 3)
            report = make_report("decide", query, {"verdict": UNDECIDED, "reason": str(exc)}, timing)
            emit(args, render(report, args.format))
            return EXIT_UNDECIDED
        entry = {"verdict": res.verdict, "method": res.method, "certificate": res.certificate,
                 "witness": procedure_to_json(res.witness) if res.witness is not None else None}
        timing["stats"] = {k: v for k, v in res.stats.items() if k != "seconds"}
        if res.verdict != UNDECIDED:
            cache_store(d, key, entry)
    timing["seconds"] = round(time.monotonic() - start, 3)
    result = {"verdict": entry["verdict"], "generates": entry["verdict"] == GENERATES if entry["verdict"] != UNDECIDED else None,
              "method": entry["method"]}
    if entry["certificate"] is not None:
        result["certificate"] = entry["certificate"]
    if entry["witness"] is not None:
        result["witness_digest"] = digest(entry["witness"])
        if args.witness_out:
            save_json(entry["witness"], args.witness_out)
            result["witness_file"] = str(args.witness_out)
    if args.format == "dot":
        if entry["witness"] is None:
            raise UsageError("--format dot needs a positive verdict with a witness")
        emit(args, visibility_dot(procedure_from_json(entry["witness"])))
    else:
        emit(args, render(make_report("decide", query, result, timing), args.format))
    return EXIT_UNDECIDED if entry["verdict"] == UNDECIDED else EXIT_OK


def cmd_minimal(args) -> int:
    L, lq = language_from_args(args)
    query = {"language": lq, "symmetry": not args.no_symmetry}
    start = time.monotonic()
    try:
        mins = minimal_complexes(L, up_to_symmetry=not args.no_symmetry, options=_options(args),
                                 long_running=args.long_running)
    except BoundExceeded as exc:
        report = make_report("minimal", query, {"verdict": UNDECIDED, "reason": str(exc)},
                             {"seconds": round(time.monotonic() - start, 3)})
        emit(args, render(report, args.format))
        return EXIT_UNDECIDED
    result = {"count": len(mins), "complexes": [K.facets_lists() for K in mins]}
    if args.format == "dot":
        emit(args, "".join(complex_dot(K, f"minimal{k}") for k, K in enumerate(mins)))
    else:
        emit(args, render(make_report("minimal", query, result, {"seconds": round(time.monotonic() - start, 3)}),
                          args.format))
    return EXIT_OK


def cmd_windows(args) -> int:
    P = load_procedure(args.procedure_file)
    if args.format == "dot":
        emit(args, visibility_dot(P))
    elif args.format == "text" and args.grid:
        emit(args, visibility_text(P))
    else:
        query = {"procedure": {"file": str(args.procedure_file), "digest": digest(procedure_to_json(P))}}
        emit(args, render(make_report("windows", query, windows_report(P), {}), args.format))
    return EXIT_OK


def cmd_chromatic(args) -> int:
    L, lq = language_from_args(args)
    K, kq = complex_from_args(args, L.n)
    query = {"language": lq, "complex": kq}
    start = time.monotonic()
    verdict = chromatic_decides(L, K)
    result = {"generates": verdict.generates, "tried_input_sizes": list(verdict.tried)}
    if verdict.generates:
        result["input_size"] = verdict.input_size
        src = input_complex(K, verdict.input_size)
        dst = output_complex(L)
        P = map_to_procedure(K, verdict.input_size, src, dst, verdict.mapping, L)
        result["witness_digest"] = digest(procedure_to_json(P))
        if args.witness_out:
            save_json(procedure_to_json(P), args.witness_out)
            result["witness_file"] = str(args.witness_out)
    if args.format == "dot":
        B = verdict.input_size or 2
        emit(args, to_dot(input_complex(K, B), "input_complex") + to_dot(output_complex(L), "output_complex"))
    else:
        emit(args, render(make_report("chromatic", query, result, {"seconds": round(time.monotonic() - start, 3)}),
                          args.format))
    return EXIT_OK


def cmd_export(args) -> int:
    if args.what == "language":
        L, _ = language_from_args(args)
        if args.format == "dot":
            text = to_dot(output_complex(L), "output_complex")
        else:
            text = json.dumps(language_to_json(L), indent=2, sort_keys=True) + "\n"
    elif args.what == "complex":
        n = args.n
        if n is None and args.complex_file is None:
            raise UsageError("exporting a named complex needs --n")
        K, _ = complex_from_args(args, n if n is not None else load_complex(args.complex_file).n)
        text = complex_dot(K) if args.format == "dot" else json.dumps(complex_to_json(K), indent=2) + "\n"
    elif args.what == "input-complex":
        if args.n is None and args.complex_file is None:
            raise UsageError("exporting a named complex needs --n")
        K, _ = complex_from_args(args, args.n if args.n is not None else load_complex(args.complex_file).n)
        C = input_complex(K, args.alphabet_size)
        text = to_dot(C, "input_complex") if args.format == "dot" else json.dumps(
            {"n": C.n, "vertices": [list(v) for v in C.vertices], "simplices": [list(s) for s in C.simplices]},
            indent=2) + "\n"
    elif args.what == "cnf":
        L, lq = language_from_args(args)
        K, kq = complex_from_args(args, L.n)
        if not args.out:
            raise UsageError("cnf export needs --out")
        export_cnf(build_canonical_csp(L, K), args.out, {"language": lq, "complex": kq})
        return EXIT_OK
    else:  # procedure
        P = load_procedure(args.procedure_file) if args.procedure_file else None
        if P is None:
            raise UsageError("procedure export needs --procedure-file")
        text = visibility_dot(P) if args.format == "dot" else (
            visibility_text(P) if args.format == "text" else json.dumps(procedure_to_json(P), indent=2) + "\n")
    if args.out:
        Path(args.out).write_text(text)
    else:
        emit(args, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import CHECKS, run_checks, topic_for

    topics = list(args.topic or [])
    for c in args.criterion or []:
        try:
            topics.append(topic_for(c))
        except KeyError:
            raise UsageError(f"no check for criterion {c}") from None
    for t in topics:
        if t not in CHECKS:
            raise UsageError(f"unknown topic {t!r}; choose from {', '.join(CHECKS)}")
    results = run_checks(topics or list(CHECKS))
    failed = False
    for r in results:
        print(r.line())
        for p in r.parts:
            print("   ", p.line())
        failed |= not r.passed
    return EXIT_FAILED if failed else EXIT_OK


# ---------------------------------------------------------------- parser

def _language_args(p):
    g = p.add_argument_group("language")
    g.add_argument("--family", choices=sorted(FAMILIES), help="named language family")
    g.add_argument("--lang-file", type=Path, help="language as JSON")
    g.add_argument("--n", type=int, help="number of positions")
    g.add_argument("--k", type=int, help="threshold for card-ge / card-le")
    g.add_argument("--alphabet-size", type=int, default=2, help="letters for nd, nc, eq, full, constants")


def _complex_args(p):
    g = p.add_argument_group("complex")
    g.add_argument("--complex", help=COMPLEX_HELP)
    g.add_argument("--complex-file", type=Path, help="complex as JSON")


def _common(p, formats=("text", "json", "dot")):
    p.add_argument("--format", choices=formats, default="text")
    p.add_argument("--timeout-secs", type=float, default=None)
    p.add_argument("--cache-dir", default=None, help=f"result cache (default: ${CACHE_ENV} if set)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="localgen", description="Decide which communication complexes generate a language.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="does a complex generate a language")
    _language_args(p)
    _complex_args(p)
    _common(p)
    p.add_argument("--witness-out", type=Path, help="write the witness procedure as JSON")
    p.add_argument("--export-cnf", type=Path, metavar="PATH", help="also write the canonical instance as DIMACS CNF")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("minimal", help="minimal generating complexes")
    _language_args(p)
    _common(p)
    p.add_argument("--no-symmetry", action="store_true", help="decide every complex instead of one per orbit")
    p.add_argument("--long-running", action="store_true", help="allow n = 5")
    p.set_defaults(func=cmd_minimal)

    p = sub.add_parser("windows", help="input and dual windows of a procedure")
    p.add_argument("procedure_file", type=Path)
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("--grid", action="store_true", help="print the visibility grid instead of a report")
    p.set_defaults(func=cmd_windows)

    p = sub.add_parser("chromatic", help="decide through chromatic complex maps")
    _language_args(p)
    _complex_args(p)
    _common(p)
    p.add_argument("--witness-out", type=Path)
    p.set_defaults(func=cmd_chromatic)

    p = sub.add_parser("export", help="write an object as JSON, DOT, text or CNF")
    p.add_argument("what", choices=("language", "complex", "input-complex", "procedure", "cnf"))
    _language_args(p)
    _complex_args(p)
    p.add_argument("--procedure-file", type=Path)
    p.add_argument("--format", choices=("json", "dot", "text"), default="json")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("verify", help="rerun the characterization checks")
    p.add_argument("--topic", action="append", help="check name; repeatable")
    p.add_argument("--criterion", action="append", type=int, help="check number; repeatable")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormatError, LanguageError, ComplexError, ProcedureError, CSPError,
            ChromaticError, DecisionError, OSError, KeyError, ValueError) as exc:
        print(f"localgen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
