"""JSON and text formats for languages, complexes, procedures and results."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

import numpy as np

from .complexes import SimplicialComplex, from_maximal, vertices_of
from .language import Alphabet, Language, make_language
from .procedure import Procedure, dual_windows, input_windows, visibility

FORMAT_VERSION = 1


class FormatError(ValueError):
    pass


def _plain(obj: Any) -> Any:
    """Convert numpy scalars and tuples so ``json`` can encode the value."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    return obj


def canonical_json(obj: Any) -> str:
    return json.dumps(_plain(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(obj: Any) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


# ---------------------------------------------------------------- languages

def _alphabet_json(A: Alphabet):
    return list(A.names) if A.names else A.size


def language_to_json(L: Language) -> dict:
    return {"n": L.n, "alphabet": _alphabet_json(L.alphabet), "words": [list(w) for w in L.words]}


def language_from_json(data: dict) -> Language:
    try:
        n = int(data["n"])
        alphabet = Alphabet.of(data["alphabet"])
        words = data["words"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"language needs n, alphabet and words: {exc}") from None
    rows = []
    for w in words:
        if isinstance(w, str):
            w = [alphabet.letter(ch) for ch in w] if alphabet.names else [int(ch) for ch in w]
        rows.append(tuple(int(a) for a in w))
    return make_language(n, alphabet, rows)


# ---------------------------------------------------------------- complexes

def complex_to_json(K: SimplicialComplex) -> dict:
    return {"n": K.n, "maximal": K.facets_lists()}


def complex_from_json(data: dict) -> SimplicialComplex:
    try:
        return from_maximal(int(data["n"]), data["maximal"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"complex needs n and maximal: {exc}") from None


# ---------------------------------------------------------------- procedures

def procedure_to_json(P: Procedure) -> dict:
    """Tables are flattened with the first window cell varying fastest."""
    out = {
        "input_sizes": list(P.input_sizes),
        "output_alphabet": _alphabet_json(P.output_alphabet),
        "windows": [list(w) for w in P.windows],
        "tables": [t.reshape(-1, order="F").tolist() for t in P.tables],
    }
    if P.input_names:
        out["input_names"] = list(P.input_names)
    if P.output_names:
        out["output_names"] = list(P.output_names)
    return out


def procedure_from_json(data: dict) -> Procedure:
    try:
        sizes = tuple(int(b) for b in data["input_sizes"])
        windows = tuple(tuple(int(j) for j in w) for w in data["windows"])
        alphabet = Alphabet.of(data["output_alphabet"])
        flat = data["tables"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"procedure needs input_sizes, output_alphabet, windows, tables: {exc}") from None
    if len(flat) != len(windows):
        raise FormatError("need one table per window")
    tables = []
    for w, t in zip(windows, flat):
        shape = tuple(sizes[j] for j in w)
        arr = np.asarray(t, dtype=np.int64)
        if arr.size != int(np.prod(shape, dtype=np.int64)):
            raise FormatError(f"table for window {list(w)} has {arr.size} entries, expected shape {shape}")
        tables.append(arr.reshape(shape, order="F"))
    names = {}
    if "input_names" in data:
        names["input_names"] = tuple(data["input_names"])
    if "output_names" in data:
        names["output_names"] = tuple(data["output_names"])
    return Procedure(sizes, alphabet, windows, tuple(tables), **names)


# ---------------------------------------------------------------- files

def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from None


def save_json(obj: Any, path) -> None:
    Path(path).write_text(json.dumps(_plain(obj), indent=2, sort_keys=True) + "\n")


def load_language(path) -> Language:
    return language_from_json(load_json(path))


def load_complex(path) -> SimplicialComplex:
    return complex_from_json(load_json(path))


def load_procedure(path) -> Procedure:
    return procedure_from_json(load_json(path))


# ---------------------------------------------------------------- text views

def _names(P: Procedure) -> tuple[list[str], list[str]]:
    ins = list(P.input_names) if P.input_names else [str(j) for j in range(P.n_inputs)]
    outs = list(P.output_names) if P.output_names else [str(i) for i in range(P.output_n)]
    return ins, outs


def windows_report(P: Procedure) -> dict:
    ins, outs = _names(P)
    return {
        "input_windows": {outs[i]: [ins[j] for j in w] for i, w in enumerate(input_windows(P))},
        "dual_windows": {ins[j]: [outs[i] for i in d] for j, d in enumerate(dual_windows(P))},
    }


def visibility_text(P: Procedure) -> str:
    """Rows are input cells, columns output cells; ``x`` marks a read."""
    ins, outs = _names(P)
    vis = visibility(P)
    width = max([len(s) for s in ins] + [1])
    lines = [" " * width + " " + " ".join(outs)]
    for j, name in enumerate(ins):
        cells = " ".join(("x" if vis[j, i] else ".").rjust(len(outs[i])) for i in range(len(outs)))
        lines.append(name.rjust(width) + " " + cells)
    return "\n".join(lines) + "\n"


def visibility_dot(P: Procedure, name: str = "visibility") -> str:
    ins, outs = _names(P)
    vis = visibility(P)
    lines = [f"digraph {name} {{", "  rankdir=TB;",
             "  { rank=same; " + " ".join(f'in{j} [label="{s}", shape=box];' for j, s in enumerate(ins)) + " }",
             "  { rank=same; " + " ".join(f'out{i} [label="{s}", shape=circle];' for i, s in enumerate(outs)) + " }"]
    for j in range(len(ins)):
        for i in range(len(outs)):
            if vis[j, i]:
                lines.append(f"  in{j} -> out{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def complex_dot(K: SimplicialComplex, name: str = "complex") -> str:
    """Edges of the 1-skeleton; larger simplices are listed as comments."""
    lines = [f"graph {name} {{"]
    for v in range(K.n):
        lines.append(f"  {v};")
    seen = set()
    for m in K.maximal:
        vs = vertices_of(m)
        if len(vs) > 2:
            lines.append("  // simplex " + ",".join(map(str, vs)))
        for a in range(len(vs)):
            for b in range(a + 1, len(vs)):
                if (vs[a], vs[b]) not in seen:
                    seen.add((vs[a], vs[b]))
                    lines.append(f"  {vs[a]} -- {vs[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
