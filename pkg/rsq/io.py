"""
JSON files read and written by the command line.

    - quiver: {"vertices": [...], "arrows": [{"id", "src", "tgt"}]}
    - window representation: {"dims": {"a@0": 1}, "maps": {"alpha@0": [[1]]}},
      maps indexed by the covering arrow whose opposite they represent
    - complex: {"field", "terms", "diff", "truncated_below"}, optionally with
      the quiver embedded under "quiver"

Output is written with sorted keys so identical inputs give identical bytes.
"""

from __future__ import annotations

import json
import logging
from fractions import Fraction
from typing import Any, Dict, Hashable, Optional

import numpy as np

from rsq.algebra import ProjMorphism, ProjSum, RSZAlgebra
from rsq.complexes import ProjComplex, RadicalComplex
from rsq.cover import CoverWindow, label, parse_label
from rsq.errors import InputFormatError, ShapeMismatchError, WindowError
from rsq.linalg import FieldSpec
from rsq.quiver import Arrow, Quiver
from rsq.reps import QuiverRep

logger = logging.getLogger(__name__)


# --------------------- Files ---------------------
def load_json(path: str) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise InputFormatError(f"Cannot read {path}: {exc.strerror}.") from None
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno}).") from None
    if not isinstance(data, dict):
        raise InputFormatError(f"{path}: expected a JSON object at top level.")
    return data


def dumps(data: Dict[str, Any]) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
    logger.info("Wrote %s", path)


def write_json(path: str, data: Dict[str, Any]) -> None:
    write_text(path, dumps(data))


def _require(data: Dict[str, Any], key: str, kind, what: str):
    if key not in data:
        raise InputFormatError(f"{what}: missing key {key!r}.")
    value = data[key]
    if not isinstance(value, kind):
        raise InputFormatError(f"{what}: {key!r} has the wrong type.")
    return value


def _ident(value, what: str) -> str:
    if not isinstance(value, str) or not value or not value.isascii():
        raise InputFormatError(f"{what} must be a nonempty ASCII string, got {value!r}.")
    return value


# --------------------- Quivers ---------------------
def quiver_from_dict(data: Dict[str, Any]) -> Quiver:
    vertices = [_ident(v, "Vertex id") for v in _require(data, "vertices", list, "quiver")]
    arrows = []
    for entry in _require(data, "arrows", list, "quiver"):
        if not isinstance(entry, dict):
            raise InputFormatError("quiver: every arrow must be an object.")
        arrows.append(Arrow(_ident(entry.get("id"), "Arrow id"), _ident(entry.get("src"), "Arrow source"),
                            _ident(entry.get("tgt"), "Arrow target")))
    return Quiver(tuple(vertices), tuple(arrows))


def quiver_to_dict(q: Quiver) -> Dict[str, Any]:
    return {
        "vertices": [label(v) for v in q.vertices],
        "arrows": [{"id": label(a.id), "src": label(a.src), "tgt": label(a.tgt)} for a in q.arrows],
    }


def load_quiver(path: str) -> Quiver:
    return quiver_from_dict(load_json(path))


# --------------------- Matrices ---------------------
def _parse_entry(value):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InputFormatError(f"Matrix entries are integers or 'p/q' strings, got {value!r}.")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise InputFormatError(f"Bad matrix entry {value!r}.") from None


def matrix_from_json(F: FieldSpec, data, shape) -> np.ndarray:
    if not isinstance(data, list) or any(not isinstance(row, list) for row in data):
        raise InputFormatError("Matrices are lists of rows.")
    if shape[0] == 0 or shape[1] == 0:
        return F.zeros(*shape)
    rows = [[F.scalar(_parse_entry(v)) for v in row] for row in data]
    if len(rows) != shape[0] or any(len(row) != shape[1] for row in rows):
        raise InputFormatError(f"Matrix has the wrong shape; expected {shape}.")
    return F.matrix(rows, shape)


def _entry(F: FieldSpec, value):
    if F.is_rational:
        value = Fraction(value)
        return int(value) if value.denominator == 1 else str(value)
    return int(value)


def matrix_to_json(F: FieldSpec, mat: np.ndarray):
    return [[_entry(F, v) for v in row] for row in mat]


# --------------------- Window representations ---------------------
def _window_key(text: str, what: str):
    try:
        return parse_label(text)
    except WindowError:
        raise InputFormatError(f"{what} {text!r} is not of the form 'name@level'.") from None


def rep_from_dict(cw: CoverWindow, data: Dict[str, Any], field: FieldSpec) -> QuiverRep:
    """
    Representation of the opposite window quiver.

    Raises:
        InputFormatError: malformed keys or matrices
        WindowError: a vertex or arrow outside the window
    """
    opp = cw.quiver().opposite()
    dims = {}
    for text, d in _require(data, "dims", dict, "representation").items():
        v = _window_key(text, "Vertex")
        if v not in cw:
            raise WindowError(f"{text} is not a vertex of the window [{cw.lo}, {cw.hi}].")
        if isinstance(d, bool) or not isinstance(d, int) or d < 0:
            raise InputFormatError(f"Dimension of {text} must be a nonnegative integer.")
        dims[v] = d
    full = {v: dims.get(v, 0) for v in opp.vertices}
    maps = {}
    for text, mat in data.get("maps", {}).items():
        arrow_id = _window_key(text, "Arrow")
        if not opp.has_arrow(arrow_id):
            raise WindowError(f"{text} is not an arrow of the window [{cw.lo}, {cw.hi}].")
        arrow = opp.arrow(arrow_id)
        maps[arrow_id] = matrix_from_json(field, mat, (full[arrow.tgt], full[arrow.src]))
    return QuiverRep(opp, field, dims, maps)


def rep_to_dict(m: QuiverRep) -> Dict[str, Any]:
    F = m.field
    return {
        "dims": {label(v): d for v, d in m.dims.items() if d},
        "maps": {label(a): matrix_to_json(F, mat) for a, mat in m.maps.items() if mat.size},
    }


# --------------------- Complexes ---------------------
def _resolve(items, text: str, what: str) -> Hashable:
    """Match a label against vertex / arrow ids that may be plain strings or (name, level) pairs."""
    for item in items:
        if label(item) == text:
            return item
    raise InputFormatError(f"Unknown {what} {text!r}.")


def _int_key(text: str, what: str) -> int:
    try:
        return int(text)
    except (TypeError, ValueError):
        raise InputFormatError(f"{what}: degree {text!r} is not an integer.") from None


def complex_from_dict(data: Dict[str, Any], quiver: Optional[Quiver] = None,
                      field: Optional[FieldSpec] = None) -> ProjComplex:
    """
    Raises:
        InputFormatError: malformed or inconsistent description, or no quiver available
    """
    try:
        return _complex_from_dict(data, quiver, field)
    except ShapeMismatchError as exc:
        raise InputFormatError(f"Inconsistent complex: {exc}") from None


def _complex_from_dict(data, quiver, field) -> ProjComplex:
    if quiver is None:
        if "quiver" not in data:
            raise InputFormatError("Complex file has no embedded quiver; pass --quiver.")
        quiver = quiver_from_dict(data["quiver"])
    if field is None:
        field = FieldSpec.parse(data.get("field", "q"))
    alg = RSZAlgebra(quiver, field)
    arrow_ids = [a.id for a in quiver.arrows]

    terms: Dict[int, ProjSum] = {}
    for key, entries in _require(data, "terms", dict, "complex").items():
        n = _int_key(key, "terms")
        pairs = []
        for entry in entries:
            mult = entry.get("mult")
            if isinstance(mult, bool) or not isinstance(mult, int) or mult < 0:
                raise InputFormatError(f"terms[{key}]: multiplicities are nonnegative integers.")
            pairs.append((_resolve(quiver.vertices, entry.get("vertex"), "vertex"), mult))
        terms[n] = ProjSum(pairs)

    diffs = {}
    for key, entries in data.get("diff", {}).items():
        n = _int_key(key, "diff")
        source, target = terms.get(n, ProjSum()), terms.get(n + 1, ProjSum())
        blocks: Dict = {}
        for entry in entries:
            y = _resolve(quiver.vertices, entry.get("tgt"), "vertex")
            x = _resolve(quiver.vertices, entry.get("src"), "vertex")
            gamma = entry.get("arrow")
            gamma = None if gamma is None else _resolve(arrow_ids, gamma, "arrow")
            mat = matrix_from_json(field, entry.get("matrix"), (target.mult(y), source.mult(x)))
            blocks[(y, x, gamma)] = field.add(blocks[(y, x, gamma)], mat) if (y, x, gamma) in blocks else mat
        diffs[n] = ProjMorphism(alg, source, target, blocks)
    truncated = bool(data.get("truncated_below", False))
    lo, hi = data.get("lo"), data.get("hi")
    c = ProjComplex(alg, terms, diffs, lo, hi, truncated)
    if not c.check_d_squared():
        raise InputFormatError("Complex does not satisfy d o d = 0.")
    return RadicalComplex(alg, c.terms, c.diffs, c.lo, c.hi, truncated) if c.is_radical() else c


def complex_to_dict(c: ProjComplex, embed_quiver: bool = True) -> Dict[str, Any]:
    F = c.field
    out: Dict[str, Any] = {
        "field": str(F),
        "lo": c.lo,
        "hi": c.hi,
        "terms": {str(n): [{"vertex": label(v), "mult": m} for v, m in s.items()] for n, s in c.terms.items()},
        "diff": {},
        "truncated_below": c.truncated_below,
    }
    for n, d in sorted(c.diffs.items()):
        out["diff"][str(n)] = [
            {"tgt": label(y), "src": label(x), "arrow": None if g is None else label(g),
             "matrix": matrix_to_json(F, mat)}
            for (y, x, g), mat in sorted(d.blocks.items(), key=lambda kv: (label(kv[0][0]), label(kv[0][1]),
                                                                           "" if kv[0][2] is None else label(kv[0][2])))
        ]
    if embed_quiver:
        out["quiver"] = quiver_to_dict(c.algebra.quiver)
    return out


def load_complex(path: str, quiver: Optional[Quiver] = None, field: Optional[FieldSpec] = None) -> ProjComplex:
    return complex_from_dict(load_json(path), quiver, field)
