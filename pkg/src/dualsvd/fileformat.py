"""Text format for dual matrices and decomposition result documents.

Documents are JSON.  Floats are printed with 17 significant digits, which
round-trips binary64 exactly, and keys are emitted in sorted order so equal
documents serialize to identical bytes.
"""

from __future__ import annotations

import json

from .linalg import DualMatrix
from .errors import DualLinAlgError


class ParseError(DualLinAlgError):
    """Input text is not a well-formed matrix or result document."""


def _fmt_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise ParseError(f"non-finite number {x!r} cannot be serialized")
    return format(float(x), ".17g")


def _emit(obj, out: list, indent: int):
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        items = sorted(obj.items())
        for i, (k, v) in enumerate(items):
            out.append(f'{pad}  "{k}": ')
            _emit(v, out, indent + 1)
            out.append(",\n" if i + 1 < len(items) else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        flat = all(isinstance(x, (int, float, str)) for x in obj)
        if flat:
            out.append("[" + ", ".join(_scalar(x) for x in obj) + "]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad + "  ")
            _emit(v, out, indent + 1)
            out.append(",\n" if i + 1 < len(obj) else "\n")
        out.append(pad + "]")
    else:
        out.append(_scalar(obj))


def _scalar(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return _fmt_float(x)
    if isinstance(x, str):
        return json.dumps(x)
    raise ParseError(f"cannot serialize {type(x).__name__}")


def dumps(doc) -> str:
    out: list = []
    _emit(doc, out, 0)
    return "".join(out) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid document: {exc}") from exc


# -- matrix files ------------------------------------------------------------


def matrix_to_obj(m: DualMatrix) -> dict:
    rows, cols = m.shape
    entries = []
    for i in range(rows):
        for j in range(cols):
            entries.append([float(m.std[i, j]), float(m.inf[i, j])])
    return {"rows": rows, "cols": cols, "entries": entries}


def obj_to_matrix(obj) -> DualMatrix:
    import numpy as np

    if not isinstance(obj, dict):
        raise ParseError("matrix document must be an object")
    try:
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        entries = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad matrix document: {exc}") from exc
    if rows < 0 or cols < 0:
        raise ParseError("negative dimensions")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise ParseError(
            f"expected {rows * cols} entries, got "
            f"{len(entries) if isinstance(entries, list) else 'non-list'}"
        )
    std = np.zeros((rows, cols))
    inf = np.zeros((rows, cols))
    for k, pair in enumerate(entries):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"entry {k} is not a [std, inf] pair")
        try:
            a, b = float(pair[0]), float(pair[1])
        except (TypeError, ValueError) as exc:
            raise ParseError(f"entry {k} is not numeric: {exc}") from exc
        std[k // cols, k % cols] = a
        inf[k // cols, k % cols] = b
    return DualMatrix(std, inf)


def serialize_matrix(m: DualMatrix) -> str:
    return dumps(matrix_to_obj(m))


def parse_matrix(text: str) -> DualMatrix:
    return obj_to_matrix(loads(text))
