"""Named algebra families, the cyclic-generator search, and random generators."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Sequence

import numpy as np

from .core import RestrictedLieAlgebra
from .errors import BudgetExceeded, InvalidAlgebra, NoGenerator
from .ffarith import ExtField, is_prime
from .linalg import Subspace, kernel, mat_pow, rank

DEFAULT_ELEMENT_BUDGET = 10**6

FAMILIES = ("witt", "sl2", "gln", "heisenberg", "borel2", "abelian", "field_torus", "direct_sum")


@dataclass
class FamilyDescriptor:
    family: str
    params: dict = field(default_factory=dict)


def _need_prime(p: int, least: int = 2):
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)) or p < least:
        raise InvalidAlgebra(f"need a prime p >= {least}, got {p!r}")


def witt(p: int) -> RestrictedLieAlgebra:
    """W(1,1): basis e_{-1}, ..., e_{p-2} with [e_i, e_j] = (j - i) e_{i+j}."""
    _need_prime(p, 3)
    c = np.zeros((p, p, p), dtype=np.int64)
    for a, b in itertools.combinations(range(p), 2):
        i, j = a - 1, b - 1
        if -1 <= i + j <= p - 2:
            c[a, b, i + j + 1] = (j - i) % p
    pm = np.zeros((p, p), dtype=np.int64)
    pm[1, 1] = 1
    names = [f"e{i}" for i in range(-1, p - 1)]
    return RestrictedLieAlgebra(p, c, pm, names, f"witt({p})")


def sl2(p: int) -> RestrictedLieAlgebra:
    _need_prime(p, 3)
    e, h, f = 0, 1, 2
    return RestrictedLieAlgebra.from_tables(
        p, 3,
        {(e, h): [-2, 0, 0], (h, f): [0, 0, -2], (e, f): [0, 1, 0]},
        {h: [0, 1, 0]},
        basis_names=["e", "h", "f"], name=f"sl2({p})")


def gln(p: int, n: int) -> RestrictedLieAlgebra:
    """gl_n on matrix units E_ij (index i*n + j); p-map is the matrix power."""
    _need_prime(p)
    if n < 1:
        raise InvalidAlgebra("gln needs n >= 1")
    d = n * n
    c = np.zeros((d, d, d), dtype=np.int64)
    for (i, j), (k, l) in itertools.combinations(itertools.product(range(n), repeat=2), 2):
        a, b = i * n + j, k * n + l
        if j == k:
            c[a, b, i * n + l] += 1
        if l == i:
            c[a, b, k * n + j] -= 1
    pm = np.zeros((d, d), dtype=np.int64)
    for i in range(n):
        pm[i * n + i, i * n + i] = 1
    names = [f"E{i}{j}" for i in range(n) for j in range(n)]
    return RestrictedLieAlgebra(p, c, pm, names, f"gl{n}({p})")


def heisenberg(p: int) -> RestrictedLieAlgebra:
    _need_prime(p)
    return RestrictedLieAlgebra.from_tables(p, 3, {(0, 1): [0, 0, 1]}, {},
                                            basis_names=["x", "y", "z"],
                                            name=f"heisenberg({p})")


def borel2(p: int) -> RestrictedLieAlgebra:
    _need_prime(p)
    return RestrictedLieAlgebra.from_tables(p, 2, {(0, 1): [0, 1]}, {0: [1, 0]},
                                            basis_names=["t", "u"], name=f"borel2({p})")


def abelian(p: int, pmap, name: str = "") -> RestrictedLieAlgebra:
    """Abelian algebra; row i of ``pmap`` is e_i^[p] (any matrix is valid)."""
    _need_prime(p)
    pm = np.asarray(pmap, dtype=np.int64) % p
    if pm.ndim != 2 or pm.shape[0] != pm.shape[1]:
        raise InvalidAlgebra("abelian p-map must be a square matrix")
    d = pm.shape[0]
    return RestrictedLieAlgebra(p, np.zeros((d, d, d), np.int64), pm,
                                name=name or f"abelian({p},{d})")


def field_torus(p: int, k: int, modulus: Sequence[int] = ()) -> RestrictedLieAlgebra:
    """F_{p^k} over F_p on the basis 1, X, ..., X^{k-1}; the p-map is Frobenius."""
    fld = ExtField(p, k, tuple(modulus))
    names = ["1"] + [f"X^{i}" if i > 1 else "X" for i in range(1, k)]
    return RestrictedLieAlgebra(p, np.zeros((k, k, k), np.int64), fld.frobenius_matrix(),
                                names, f"field_torus({p},{k})")


def direct_sum(*parts: RestrictedLieAlgebra, name: str = "") -> RestrictedLieAlgebra:
    if not parts:
        raise InvalidAlgebra("direct_sum needs at least one summand")
    p = parts[0].p
    if any(a.p != p for a in parts):
        raise InvalidAlgebra("summands have different characteristic")
    d = sum(a.dim for a in parts)
    c = np.zeros((d, d, d), dtype=np.int64)
    pm = np.zeros((d, d), dtype=np.int64)
    names: list[str] = []
    off = 0
    for n, a in enumerate(parts):
        s = slice(off, off + a.dim)
        c[s, s, s] = a.structure
        pm[s, s] = a.pmap_basis
        names += [f"{b}.{n}" for b in a.basis_names]
        off += a.dim
    return RestrictedLieAlgebra(p, c, pm, names,
                                name or " + ".join(a.name or "?" for a in parts))


def construct(desc: FamilyDescriptor | Mapping[str, Any]) -> RestrictedLieAlgebra:
    """Build a family member from a descriptor.

    Parameters by family: ``p`` always; ``n`` for gln; ``pmap`` for abelian;
    ``k`` and optional ``modulus`` for field_torus; ``summands`` (a list of
    descriptors) for direct_sum.
    """
    if isinstance(desc, Mapping):
        desc = FamilyDescriptor(desc["family"], {k: v for k, v in desc.items() if k != "family"})
    fam, prm = desc.family, dict(desc.params)
    try:
        if fam == "witt":
            return witt(prm["p"])
        if fam == "sl2":
            return sl2(prm["p"])
        if fam == "gln":
            return gln(prm["p"], prm["n"])
        if fam == "heisenberg":
            return heisenberg(prm["p"])
        if fam == "borel2":
            return borel2(prm["p"])
        if fam == "abelian":
            if "pmap" in prm:
                return abelian(prm["p"], prm["pmap"])
            return abelian(prm["p"], np.zeros((prm["n"], prm["n"]), np.int64))
        if fam == "field_torus":
            return field_torus(prm["p"], prm["k"], prm.get("modulus", ()))
        if fam == "direct_sum":
            return direct_sum(*(construct(s) for s in prm["summands"]))
    except KeyError as exc:
        raise InvalidAlgebra(f"family {fam!r} is missing parameter {exc.args[0]!r}") from None
    raise InvalidAlgebra(f"unknown family {fam!r}; known: {', '.join(FAMILIES)}")


# ---------------------------------------------------------------------------
# cyclic generators in F_{p^k} under Frobenius
# ---------------------------------------------------------------------------

def frobenius_module(fld: ExtField, elements) -> Subspace:
    """F_p[X]-submodule of F_{p^k} generated by ``elements`` (X = Frobenius)."""
    vecs = []
    for x in elements:
        y = fld.element(x)
        for _ in range(fld.k):
            vecs.append(y)
            y = fld.frobenius(y)
    return Subspace.span(np.array(vecs, dtype=np.int64).reshape(-1, fld.k), fld.p, fld.k)


def cyclic_generator(p: int, k: int, elements, modulus: Sequence[int] = (),
                     budget: int = DEFAULT_ELEMENT_BUDGET) -> tuple[int, ...]:
    """An element t0 whose Frobenius orbit spans the module generated by ``elements``.

    The input elements are tried first, in the order given; then the
    elements of the module are scanned in coefficient order.
    """
    fld = ExtField(p, k, tuple(modulus))
    m = frobenius_module(fld, elements)
    if m.size() > budget:
        raise BudgetExceeded("cyclic generator scan", m.size(), budget)

    def generates(x) -> bool:
        return frobenius_module(fld, [x]) == m

    for x in elements:
        if generates(x):
            return fld.element(x)
    for v in m.element_array():
        x = tuple(int(a) for a in v)
        if generates(x):
            return x
    raise NoGenerator("no cyclic generator found", {"module": m.basis.tolist()})


# ---------------------------------------------------------------------------
# random generators
# ---------------------------------------------------------------------------

def random_abelian(rng: np.random.Generator, p: Optional[int] = None,
                   dim: Optional[int] = None) -> RestrictedLieAlgebra:
    p = int(rng.choice([3, 5, 7])) if p is None else p
    dim = int(rng.integers(1, 7)) if dim is None else dim
    return abelian(p, rng.integers(0, p, (dim, dim)), name=f"rand-abelian({p},{dim})")


def _pclosed_commuting(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (as flattened matrices) of the span of a, a^p, a^{p^2}, ..."""
    n = a.shape[0]
    mats = []
    cur = a % p
    for _ in range(n * n + 1):
        mats.append(cur.ravel())
        cur = mat_pow(cur, p, p)
    s = Subspace.span(np.array(mats), p, n * n)
    return s.basis


def semidirect(p: int, action: np.ndarray, rng: np.random.Generator,
               central_pmap: bool = True, name: str = "") -> RestrictedLieAlgebra:
    """W + V with W the p-closure of span(action) acting on V = F_p^m.

    W and V are abelian, [w, v] = w v.  The p-map sends a basis element of W
    to its matrix p-th power (read back in W) plus a random W-fixed vector,
    and a basis vector of V to a random W-fixed vector.
    """
    m = action.shape[0]
    wb = _pclosed_commuting(action, p)
    r = wb.shape[0]
    d = r + m
    ws = Subspace.span(wb, p, m * m)
    fixed = kernel(np.vstack([w.reshape(m, m) for w in wb]) if r else np.zeros((0, m), np.int64), p)
    c = np.zeros((d, d, d), dtype=np.int64)
    for i in range(r):
        act = wb[i].reshape(m, m)
        for j in range(m):
            c[i, r + j, r:] = act[:, j]
    pm = np.zeros((d, d), dtype=np.int64)

    def central():
        if fixed.dim == 0 or not central_pmap:
            return np.zeros(m, np.int64)
        return (rng.integers(0, p, fixed.dim) @ fixed.basis) % p

    for i in range(r):
        pw = mat_pow(wb[i].reshape(m, m), p, p).ravel()
        pm[i, :r] = ws.coords(pw)
        pm[i, r:] = central()
    for j in range(m):
        pm[r + j, r:] = central()
    names = [f"w{i}" for i in range(r)] + [f"v{j}" for j in range(m)]
    return RestrictedLieAlgebra(p, c, pm, names, name or f"semidirect({p},{r}+{m})")


def random_soluble(rng: np.random.Generator, p: Optional[int] = None, max_dim: int = 4,
                   nilpotent_action: bool = False) -> RestrictedLieAlgebra:
    """A random soluble restricted algebra of dimension <= max_dim.

    Draws either a semidirect product W + V (W commuting matrices acting on
    V) or a direct sum of borel2 with an abelian algebra.
    """
    p = int(rng.choice([5, 7])) if p is None else p
    while True:
        kind = int(rng.integers(0, 4))
        if kind == 0 and max_dim >= 3:
            rest = int(rng.integers(1, max_dim - 1))
            ab = abelian(p, rng.integers(0, p, (rest, rest)))
            return direct_sum(borel2(p), ab, name=f"borel2+abelian({p},{rest})")
        m = int(rng.integers(1, max_dim))
        a = rng.integers(0, p, (m, m))
        if nilpotent_action:
            a = np.triu(a, 1)
        alg = semidirect(p, a, rng, central_pmap=bool(rng.integers(0, 4)))
        if 0 < alg.dim <= max_dim:
            return alg
