"""The shared JSON algebra format.

    {"name": "...", "elements": [...], "leq": [[a, b], ...],
     "operators": {"f": {"x": "y", ...}}}

``leq`` may list any generating pairs; emitted files list covering pairs in
canonical order.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .blo import OperatorAlgebra, as_blo, make_blo
from .errors import BadInput, LatsheafError
from .lattice import build_lattice


def algebra_from_json(obj: Any, where: str = "input") -> OperatorAlgebra:
    if not isinstance(obj, dict):
        raise BadInput(f"{where}: algebra must be a JSON object")
    for key in ("elements", "leq"):
        if key not in obj:
            raise BadInput(f"{where}: missing field {key!r}")
    if not isinstance(obj["elements"], list):
        raise BadInput(f"{where}: field 'elements' must be an array")
    if not isinstance(obj["leq"], list):
        raise BadInput(f"{where}: field 'leq' must be an array")
    ops = obj.get("operators") or {}
    if not isinstance(ops, dict):
        raise BadInput(f"{where}: field 'operators' must be an object")
    name = str(obj.get("name", ""))
    try:
        L = build_lattice(obj["elements"], obj["leq"], name=name)
        return make_blo(L, {k: {str(a): str(b) for a, b in v.items()} for k, v in ops.items()},
                        name=name)
    except (LatsheafError, ValueError, AttributeError) as exc:
        if isinstance(exc, BadInput):
            raise
        raise BadInput(f"{where}: {type(exc).__name__}: {exc}") from exc


def algebra_to_json(A) -> dict:
    A = as_blo(A)
    L = A.lattice
    out: dict[str, Any] = {
        "name": A.name,
        "elements": list(L.names),
        "leq": [list(p) for p in L.cover_pairs()],
    }
    if A.ops:
        out["operators"] = {k: {L.names[x]: L.names[f[x]] for x in range(L.n)} for k, f in A.ops}
    return out


def load_algebras(path: str | Path) -> list[OperatorAlgebra]:
    """Read one algebra object or an array of them."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError:
        raise BadInput(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise BadInput(f"{path}: line {exc.lineno}: {exc.msg}") from None
    if isinstance(data, list):
        return [algebra_from_json(o, f"{path}[{i}]") for i, o in enumerate(data)]
    return [algebra_from_json(data, str(path))]


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
