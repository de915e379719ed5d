"""The `.cox` text format, DOT emission, and JSON forms of records and spectra.

A `.cox` file looks like:

    coxeter v1
    # C3 x D2(3)
    gen c1 c2 c3 d1 d2
    edge c1 c2 3
    edge c2 c3 4
    ...

The `gen` line fixes the generator order (and with it shortlex and every
tie-break).  Every finite pair must be listed, order-2 pairs included;
unlisted pairs mean infinity.  Labels match [A-Za-z][A-Za-z0-9_]*, so the
fresh labels minted by transforms (which contain "!") are sanitized when a
matrix is written back out.
"""

from __future__ import annotations

import json
import re
from typing import Iterable

from .classify import Base
from .errors import ParseError
from .matrix import (C_DIAGRAM, FRESH_SEPARATOR, INFINITY, CoxeterMatrix,
                     ODD_DIAGRAM, P_DIAGRAM)
from .spectrum import RankSpectrum
from .transforms import TransformRecord

HEADER = "coxeter v1"
LABEL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

SCHEMA_VERSION = 1

_VIEWS = {"c": C_DIAGRAM, "p": P_DIAGRAM, "odd": ODD_DIAGRAM}


def parse(text: str) -> CoxeterMatrix:
    """Parse `.cox` document text.  Errors carry 1-based line numbers."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise ParseError("BAD_HEADER", f"expected header {HEADER!r}", 1)
    gens: list[str] = []
    edges: dict[tuple[str, str], int] = {}
    seen_pairs: set[frozenset] = set()
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "gen":
            for label in fields[1:]:
                if not LABEL_RE.match(label):
                    raise ParseError("BAD_LABEL", f"bad generator label {label!r}", lineno)
                if label in gens:
                    raise ParseError("BAD_LABEL", f"duplicate generator {label!r}", lineno)
                gens.append(label)
        elif fields[0] == "edge":
            if len(fields) != 4:
                raise ParseError("BAD_M", "edge lines are `edge <s> <t> <m>`", lineno)
            s, t, m_text = fields[1:]
            for label in (s, t):
                if label not in gens:
                    raise ParseError("BAD_LABEL", f"unknown generator {label!r}", lineno)
            if s == t:
                raise ParseError("SELF_EDGE", f"edge {s}-{t} is a self edge", lineno)
            try:
                value = int(m_text)
            except ValueError:
                raise ParseError("BAD_M", f"order {m_text!r} is not an integer", lineno)
            if value < 2:
                raise ParseError("BAD_M", f"order {value} is below 2", lineno)
            pair = frozenset((s, t))
            if pair in seen_pairs:
                raise ParseError("DUPLICATE_EDGE", f"pair {s}-{t} listed twice", lineno)
            seen_pairs.add(pair)
            edges[(s, t)] = value
        else:
            raise ParseError("BAD_LABEL", f"unknown directive {fields[0]!r}", lineno)
    return CoxeterMatrix(gens, edges)


def parse_file(path) -> CoxeterMatrix:
    with open(path, encoding="utf-8") as handle:
        return parse(handle.read())


def _sanitized_labels(mat: CoxeterMatrix) -> dict[str, str]:
    used = set(g for g in mat.generators if FRESH_SEPARATOR not in g)
    out = {}
    for g in mat.generators:
        if FRESH_SEPARATOR not in g:
            out[g] = g
            continue
        candidate = g.replace(FRESH_SEPARATOR, "_")
        while candidate in used:
            candidate += "_"
        used.add(candidate)
        out[g] = candidate
    return out


def emit(mat: CoxeterMatrix, comment: str | None = None) -> str:
    """Render a matrix as `.cox` text.  Fresh labels are made file-legal."""
    names = _sanitized_labels(mat)
    lines = [HEADER]
    if comment:
        lines.append(f"# {comment}")
    lines.append("gen " + " ".join(names[g] for g in mat.generators))
    for s, t, value in mat.finite_edges():
        lines.append(f"edge {names[s]} {names[t]} {value}")
    return "\n".join(lines) + "\n"


def emit_dot(mat: CoxeterMatrix, view: str = "c") -> str:
    """Deterministic DOT text for the chosen diagram view (c, p, or odd)."""
    kind = _VIEWS.get(view, view)
    lines = ["graph coxeter {"]
    for g in mat.generators:
        lines.append(f'  "{g}";')
    for s, t in mat.view_edges(kind):
        value = mat.m(s, t)
        label = "inf" if value == INFINITY else str(value)
        lines.append(f'  "{s}" -- "{t}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- JSON forms ---------------------------------------------------------------

def matrix_to_json(mat: CoxeterMatrix) -> dict:
    return {
        "generators": list(mat.generators),
        "edges": [[s, t, value] for s, t, value in mat.finite_edges()],
    }


def matrix_from_json(data: dict) -> CoxeterMatrix:
    return CoxeterMatrix(data["generators"],
                         {(s, t): value for s, t, value in data["edges"]})


def _word_str(word: Iterable[str]) -> str:
    return " ".join(word)


def record_to_json(record: TransformRecord) -> dict:
    meta = {}
    for key, value in record.metadata.items():
        if key == "relabel":
            continue
        if key == "sigma":
            meta[key] = dict(value)
        elif key == "ell":
            meta[key] = _word_str(value)
        else:
            meta[key] = value
    return {
        "schema": SCHEMA_VERSION,
        "kind": record.kind,
        "input": matrix_to_json(record.input),
        "output": matrix_to_json(record.output),
        "forward": {g: _word_str(w) for g, w in record.forward_map.items()},
        "backward": {g: _word_str(w) for g, w in record.backward_map.items()},
        "metadata": meta,
    }


def record_maps_from_json(data: dict):
    """(input matrix, output matrix, forward, backward) of a serialized record."""
    mat_in = matrix_from_json(data["input"])
    mat_out = matrix_from_json(data["output"])
    forward = {g: tuple(w.split()) for g, w in data["forward"].items()}
    backward = {g: tuple(w.split()) for g, w in data["backward"].items()}
    return mat_in, mat_out, forward, backward


def base_to_json(base: Base) -> dict:
    out = {"members": sorted(base.members), "type": str(base.stype)}
    if base.split_ends:
        out["split_ends"] = list(base.split_ends)
    if base.four_end:
        out["four_end"] = base.four_end
    return out


def spectrum_to_json(result: RankSpectrum) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "rank": result.base_rank,
        "k": result.k,
        "l": result.l,
        "spectrum": [result.min_rank, result.max_rank],
        "matching": [{"base": base_to_json(base), "sink": sink}
                     for base, sink in result.matching],
        "blow_up_bases": [base_to_json(base) for base in result.blow_up_bases],
        "scripts": {
            "min": [record_to_json(r) for r in result.min_script],
            "max": [record_to_json(r) for r in result.max_script],
        },
    }


def dump_records(records: list[TransformRecord]) -> str:
    return json.dumps([record_to_json(r) for r in records], indent=2, sort_keys=True) + "\n"
