"""Algebra file JSON: parsing with field diagnostics, canonical serialization."""

from __future__ import annotations

import json
from typing import Any, Optional

import numpy as np

from .core import RestrictedLieAlgebra
from .errors import InvalidAlgebra, PlalgError

TOP_FIELDS = {"p", "name", "dim", "basis", "brackets", "pmap", "module"}
MODULE_FIELDS = {"dim_v", "rho"}


class FormatError(PlalgError):
    """Malformed algebra file; the message names the offending field."""


def _sparse(v) -> dict[str, int]:
    return {str(k): int(c) for k, c in enumerate(v) if int(c)}


def to_dict(alg: RestrictedLieAlgebra, module=None) -> dict:
    d = alg.dim
    brackets = []
    for i in range(d):
        for j in range(i + 1, d):
            c = _sparse(alg.structure[i, j])
            if c:
                brackets.append({"i": i, "j": j, "c": c})
    pmap = [{"i": i, "c": _sparse(alg.pmap_basis[i])} for i in range(d) if alg.pmap_basis[i].any()]
    out: dict[str, Any] = {"p": alg.p, "name": alg.name, "dim": d,
                           "basis": list(alg.basis_names), "brackets": brackets, "pmap": pmap}
    if module is not None:
        out["module"] = {"dim_v": int(module.dim_v),
                         "rho": [[[int(a) for a in row] for row in m] for m in module.rho]}
    return out


def dumps(alg: RestrictedLieAlgebra, module=None) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(to_dict(alg, module), sort_keys=True, indent=2) + "\n"


def _int(v, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"{where}: expected an integer, got {v!r}")
    return v


def _coeffs(c, dim: int, p: int, where: str) -> np.ndarray:
    if not isinstance(c, dict):
        raise FormatError(f"{where}: expected an object mapping index to coefficient")
    v = np.zeros(dim, dtype=np.int64)
    for k, a in c.items():
        try:
            kk = int(k)
        except ValueError:
            raise FormatError(f"{where}: key {k!r} is not an integer") from None
        if not 0 <= kk < dim:
            raise FormatError(f"{where}: index {kk} out of range 0..{dim - 1}")
        v[kk] = _int(a, f"{where}[{k!r}]") % p
    return v


def from_dict(data: Any, validate: bool = True) -> tuple[RestrictedLieAlgebra, Optional[dict]]:
    """Parse a decoded JSON object; returns the algebra and the raw module block.

    With ``validate=False`` the restricted axioms are not checked, so a
    broken table can still be loaded and handed to the verifier.
    """
    if not isinstance(data, dict):
        raise FormatError("top level: expected a JSON object")
    unknown = set(data) - TOP_FIELDS
    if unknown:
        raise FormatError(f"top level: unknown field(s) {sorted(unknown)}")
    for f in ("p", "dim"):
        if f not in data:
            raise FormatError(f"top level: missing field {f!r}")
    p = _int(data["p"], "p")
    dim = _int(data["dim"], "dim")
    if dim < 0:
        raise FormatError("dim: must be non-negative")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise FormatError("name: expected a string")
    basis = data.get("basis") or [f"e{i}" for i in range(dim)]
    if not isinstance(basis, list) or len(basis) != dim or not all(isinstance(b, str) for b in basis):
        raise FormatError(f"basis: expected {dim} strings")
    c = np.zeros((dim, dim, dim), dtype=np.int64)
    for n, entry in enumerate(data.get("brackets", [])):
        where = f"brackets[{n}]"
        if not isinstance(entry, dict) or set(entry) - {"i", "j", "c"}:
            raise FormatError(f"{where}: expected fields i, j, c")
        i, j = _int(entry.get("i"), f"{where}.i"), _int(entry.get("j"), f"{where}.j")
        if not (0 <= i < j < dim):
            raise FormatError(f"{where}: need 0 <= i < j < dim, got i={i}, j={j}")
        c[i, j] = _coeffs(entry.get("c", {}), dim, p, f"{where}.c")
    pm = np.zeros((dim, dim), dtype=np.int64)
    for n, entry in enumerate(data.get("pmap", [])):
        where = f"pmap[{n}]"
        if not isinstance(entry, dict) or set(entry) - {"i", "c"}:
            raise FormatError(f"{where}: expected fields i, c")
        i = _int(entry.get("i"), f"{where}.i")
        if not 0 <= i < dim:
            raise FormatError(f"{where}: index {i} out of range")
        pm[i] = _coeffs(entry.get("c", {}), dim, p, f"{where}.c")
    module = data.get("module")
    if module is not None:
        if not isinstance(module, dict) or set(module) != MODULE_FIELDS:
            raise FormatError("module: expected exactly the fields dim_v, rho")
    try:
        alg = RestrictedLieAlgebra(p, c, pm, basis, name, validate=validate)
    except InvalidAlgebra as exc:
        raise FormatError(f"invalid algebra: {exc}") from exc
    return alg, module


def loads(text: str, validate: bool = True) -> tuple[RestrictedLieAlgebra, Optional[dict]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(data, validate)


def load(path: str, validate: bool = True) -> tuple[RestrictedLieAlgebra, Optional[dict]]:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), validate)


def save(path: str, alg: RestrictedLieAlgebra, module=None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(alg, module))
