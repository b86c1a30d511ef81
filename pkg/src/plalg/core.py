"""Restricted Lie algebras over F_p given by structure constants.

An algebra stores the full antisymmetric structure tensor ``C`` with
``C[i, j] = [e_i, e_j]`` and the matrix ``P`` whose row i is ``e_i^[p]``.
The p-map on arbitrary elements is not linear; it is extended from the
basis values by folding Jacobson's sum formula over the basis expansion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import (DimensionError, InvalidAlgebra, InvalidMorphism, NotAnIdeal,
                     NotClosed, NotPStable)
from .ffarith import is_prime
from .linalg import Subspace, all_vectors, mat_pow, projective_points, rank, solve

DEFAULT_ELEMENT_BUDGET = 10**6
MORPHISM_SAMPLES = 100
MORPHISM_SEED = 20240601

__all__ = [
    "RestrictedLieAlgebra",
    "PMorphism",
    "Report",
    "verify_restricted",
    "quotient",
    "restrict",
]


@dataclass
class Report:
    """Outcome of a verification or analysis run.

    ``findings`` lists failures (each a dict with at least ``check`` and
    ``message``); ``data`` carries whatever the run measured.
    """

    kind: str
    passed: bool = True
    findings: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def fail(self, check: str, message: str, witness: Any = None):
        self.passed = False
        self.findings.append({"check": check, "message": message, "witness": witness})

    def to_dict(self) -> dict:
        return {"kind": self.kind, "passed": self.passed,
                "findings": self.findings, "data": self.data}


def _vec_list(v) -> list[int]:
    return [int(a) for a in np.asarray(v).ravel()]


class RestrictedLieAlgebra:
    """A finite-dimensional restricted Lie algebra over F_p.

    Parameters
    ----------
    p : prime characteristic.
    structure : array (d, d, d); ``structure[i, j]`` is the coefficient
        vector of ``[e_i, e_j]``.  Only entries with i < j are read; the
        tensor is rebuilt antisymmetric.
    pmap : array (d, d); row i is ``e_i^[p]``.
    validate : check Jacobi and ``[e_i^[p], e_j] = ad_{e_i}^p(e_j)`` on the
        basis, raising :class:`InvalidAlgebra` on the first violation.
    """

    def __init__(self, p: int, structure, pmap, basis_names: Optional[Sequence[str]] = None,
                 name: str = "", validate: bool = True):
        if not is_prime(p):
            raise InvalidAlgebra(f"p={p} is not prime")
        c = np.array(structure, dtype=np.int64) % p
        d = c.shape[0] if c.size else np.asarray(pmap).shape[0] if np.asarray(pmap).size else 0
        c = c.reshape(d, d, d)
        full = np.zeros_like(c)
        for i, j in itertools.combinations(range(d), 2):
            full[i, j] = c[i, j]
            full[j, i] = (-c[i, j]) % p
        self.p = p
        self.dim = d
        self.name = name
        self.basis_names = tuple(basis_names) if basis_names else tuple(f"e{i}" for i in range(d))
        if len(self.basis_names) != d:
            raise InvalidAlgebra("basis_names length differs from dim")
        self.structure = full
        self.structure.setflags(write=False)
        self.pmap_basis = np.array(pmap, dtype=np.int64).reshape(d, d) % p
        self.pmap_basis.setflags(write=False)
        # ad matrices of basis vectors: _ad[i][:, j] = [e_i, e_j]
        self._ad = np.transpose(full, (0, 2, 1)).copy()
        self._pcache: dict[bytes, np.ndarray] = {}
        self._abelian = not full.any()
        self._key = (p, d, full.tobytes(), self.pmap_basis.tobytes())
        if validate:
            rep = verify_restricted(self, exhaustive_budget=0)
            if not rep.passed:
                f = rep.findings[0]
                raise InvalidAlgebra(f["message"], f["witness"])

    # -- identity ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, RestrictedLieAlgebra) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"RestrictedLieAlgebra({self.name or 'unnamed'}, p={self.p}, dim={self.dim})"

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_tables(cls, p: int, dim: int, brackets: Mapping[tuple[int, int], Sequence[int]],
                    pmap: Mapping[int, Sequence[int]], **kw) -> "RestrictedLieAlgebra":
        """Build from sparse tables ``{(i, j): vector}`` (i < j) and ``{i: vector}``."""
        c = np.zeros((dim, dim, dim), dtype=np.int64)
        for (i, j), v in brackets.items():
            if i == j:
                continue
            if i > j:
                i, j, v = j, i, [-a for a in v]
            c[i, j] = np.asarray(v, dtype=np.int64) % p
        pm = np.zeros((dim, dim), dtype=np.int64)
        for i, v in pmap.items():
            pm[i] = np.asarray(v, dtype=np.int64) % p
        return cls(p, c, pm, **kw)

    def with_pmap(self, pmap, validate: bool = True, name: Optional[str] = None):
        return RestrictedLieAlgebra(self.p, self.structure, pmap, self.basis_names,
                                    self.name if name is None else name, validate)

    # -- elements ---------------------------------------------------------
    def vec(self, coeffs) -> np.ndarray:
        v = np.asarray(coeffs, dtype=np.int64) % self.p
        if v.shape != (self.dim,):
            raise DimensionError(f"expected a vector of length {self.dim}, got shape {v.shape}")
        return v

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.zero()
        v[i] = 1
        return v

    def full_space(self) -> Subspace:
        return Subspace.full(self.dim, self.p)

    def zero_space(self) -> Subspace:
        return Subspace.zero(self.dim, self.p)

    def span(self, vectors) -> Subspace:
        return Subspace.span(vectors, self.p, self.dim)

    def format(self, v) -> str:
        terms = []
        for c, n in zip(_vec_list(v), self.basis_names):
            if c:
                terms.append(n if c == 1 else f"{c}*{n}")
        return " + ".join(terms) if terms else "0"

    # -- Lie structure ----------------------------------------------------
    def bracket(self, x, y) -> np.ndarray:
        x, y = self.vec(x), self.vec(y)
        return np.einsum("i,j,ijk->k", x, y, self.structure) % self.p

    def bracket_many(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Pairwise brackets: result[a, b] = [xs[a], ys[b]]."""
        return np.einsum("ai,bj,ijk->abk", xs, ys, self.structure) % self.p

    def ad_matrix(self, x) -> np.ndarray:
        """Matrix of y -> [x, y] acting on column coordinate vectors."""
        x = self.vec(x)
        return np.tensordot(x, self._ad, axes=1) % self.p

    def ad_matrices(self, xs: np.ndarray) -> np.ndarray:
        return np.tensordot(xs, self._ad, axes=1) % self.p

    # -- p-map ------------------------------------------------------------
    def jacobson_si(self, x, y) -> list[np.ndarray]:
        """The terms s_1(x, y), ..., s_{p-1}(x, y) of Jacobson's formula.

        Elements of g (x) F_p[X] are held as arrays of shape (p, dim), row r
        the coefficient of X^r.  Starting from x (x) 1 we apply
        ad_{x (x) X + y (x) 1} p-1 times; the coefficient of X^{i-1} is then
        i * s_i(x, y).  p-1 applications raise the degree by at most p-1,
        so p rows hold the result exactly.
        """
        x, y = self.vec(x), self.vec(y)
        p = self.p
        adx, ady = self.ad_matrix(x), self.ad_matrix(y)
        coeffs = np.zeros((p, self.dim), dtype=np.int64)
        coeffs[0] = x
        for _ in range(p - 1):
            new = coeffs @ ady.T
            new[1:] += coeffs[:-1] @ adx.T
            coeffs = new % p
        return [(coeffs[i - 1] * pow(i, -1, p)) % p for i in range(1, p)]

    def p_power(self, x, order: str = "ascending") -> np.ndarray:
        """x^[p], folding Jacobson's formula over the basis expansion of x.

        ``order`` selects the fold direction over basis indices; both must
        agree on a valid algebra.  Scalars pass through unchanged since
        lambda^p = lambda in F_p.
        """
        x = self.vec(x)
        key = x.tobytes()
        if order == "ascending":
            hit = self._pcache.get(key)
            if hit is not None:
                return hit.copy()
        idx = np.flatnonzero(x)
        if order == "descending":
            idx = idx[::-1]
        elif order != "ascending":
            raise ValueError(f"unknown fold order {order!r}")
        p = self.p
        acc = self.zero()
        accp = self.zero()
        for n, i in enumerate(idx):
            term = self.zero()
            term[i] = x[i]
            termp = (int(x[i]) * self.pmap_basis[i]) % p
            if n == 0:
                acc, accp = term, termp
                continue
            s = self.jacobson_si(acc, term)
            accp = (accp + termp + np.sum(s, axis=0)) % p
            acc = (acc + term) % p
        if order == "ascending":
            if len(self._pcache) < 200_000:
                self._pcache[key] = accp.copy()
        return accp

    def p_power_iter(self, x, n: int) -> np.ndarray:
        """x^[p^n]."""
        x = self.vec(x)
        for _ in range(n):
            x = self.p_power(x)
        return x

    def p_power_many(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`p_power` (ascending fold) over the rows of ``xs``."""
        xs = np.asarray(xs, dtype=np.int64) % self.p
        if self._abelian:
            # every s_i vanishes, so the p-map is linear
            return (xs @ self.pmap_basis) % self.p
        nrows, d = xs.shape
        p = self.p
        acc = np.zeros_like(xs)
        accp = np.zeros_like(xs)
        started = np.zeros(nrows, dtype=bool)
        for i in range(d):
            lam = xs[:, i]
            live = lam != 0
            if not live.any():
                continue
            termp = (lam[:, None] * self.pmap_basis[i][None, :]) % p
            # rows where this is the first nonzero coordinate start the fold
            first = live & ~started
            rest = live & started
            if rest.any():
                a = acc[rest]
                lr = lam[rest]
                # float64 matmul is exact here (entries stay far below 2**53)
                # and much faster than batched int64 matmul
                adxt = np.transpose(self.ad_matrices(a), (0, 2, 1)).astype(np.float64)
                adyt = self._ad[i].T.astype(np.float64)
                lf = lr[:, None, None].astype(np.float64)
                coeffs = np.zeros((a.shape[0], p, d), dtype=np.float64)
                coeffs[:, 0] = a
                for _ in range(p - 1):
                    new = (coeffs @ adyt) * lf
                    new[:, 1:] += coeffs[:, :-1] @ adxt
                    coeffs = np.mod(new, p)
                coeffs = coeffs.astype(np.int64)
                inv = np.array([pow(k, -1, p) for k in range(1, p)], dtype=np.int64)
                s_sum = (coeffs[:, :p - 1] * inv[None, :, None]).sum(axis=1)
                accp[rest] = (accp[rest] + termp[rest] + s_sum) % p
            accp[first] = termp[first]
            acc[live, i] = lam[live]
            started |= live
        return accp % p


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def verify_restricted(alg: RestrictedLieAlgebra, exhaustive_budget: int = DEFAULT_ELEMENT_BUDGET
                      ) -> Report:
    """Check Jacobi on basis triples and ``[x^[p], y] = ad_x^p(y)``.

    Axiom 1 is always checked on basis pairs.  If ``p**dim`` is within
    ``exhaustive_budget`` it is also checked for every x, using the folded
    p-map: both sides are linear in y, so y ranges over the basis, and they
    are homogeneous of degree p in x with lambda^p = lambda, so one x per
    line of g suffices.
    """
    rep = Report("verify")
    p, d, c = alg.p, alg.dim, alg.structure
    rep.data.update({"name": alg.name, "p": p, "dim": d})
    # Jacobi: [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0
    jac = (np.einsum("jkm,iml->ijkl", c, c) + np.einsum("kim,jml->ijkl", c, c)
           + np.einsum("ijm,kml->ijkl", c, c)) % p
    bad = np.argwhere(jac.any(axis=3))
    if bad.size:
        i, j, k = (int(a) for a in bad[0])
        rep.fail("jacobi", f"Jacobi fails on ({alg.basis_names[i]}, {alg.basis_names[j]}, "
                 f"{alg.basis_names[k]})", {"triple": [i, j, k], "sum": _vec_list(jac[i, j, k])})
        rep.data["exhaustive"] = False
        return rep
    for i in range(d):
        lhs = alg.ad_matrix(alg.pmap_basis[i])
        rhs = mat_pow(alg._ad[i], p, p)
        if not np.array_equal(lhs, rhs):
            j = int(np.flatnonzero((lhs != rhs).any(axis=0))[0])
            rep.fail("axiom1-basis",
                     f"[{alg.basis_names[i]}^[p], {alg.basis_names[j]}] = {alg.format(lhs[:, j])}"
                     f" but ad^p gives {alg.format(rhs[:, j])}",
                     {"x": _vec_list(alg.basis_vector(i)), "y": _vec_list(alg.basis_vector(j)),
                      "lhs": _vec_list(lhs[:, j]), "rhs": _vec_list(rhs[:, j])})
            rep.data["exhaustive"] = False
            return rep
    exhaustive = p ** d <= exhaustive_budget and exhaustive_budget > 0
    rep.data["exhaustive"] = exhaustive
    if exhaustive and d:
        xs = projective_points(d, p)
        for start in range(0, xs.shape[0], 20000):
            chunk = xs[start:start + 20000]
            xp = alg.p_power_many(chunk)
            lhs = alg.ad_matrices(xp)
            rhs = np.repeat(np.eye(d, dtype=np.int64)[None], chunk.shape[0], axis=0)
            adx = alg.ad_matrices(chunk)
            e = p
            base = adx
            while e:
                if e & 1:
                    rhs = (rhs @ base) % p
                base = (base @ base) % p
                e >>= 1
            diff = (lhs != rhs).any(axis=(1, 2))
            if diff.any():
                k = int(np.flatnonzero(diff)[0])
                x = chunk[k]
                j = int(np.flatnonzero((lhs[k] != rhs[k]).any(axis=0))[0])
                rep.fail("axiom1-exhaustive",
                         f"[x^[p], y] != ad_x^p(y) for x = {alg.format(x)}, "
                         f"y = {alg.basis_names[j]}",
                         {"x": _vec_list(x), "y": _vec_list(alg.basis_vector(j)),
                          "lhs": _vec_list(lhs[k][:, j]), "rhs": _vec_list(rhs[k][:, j])})
                return rep
        rep.data["elements_checked"] = int(xs.shape[0])
    return rep


# ---------------------------------------------------------------------------
# morphisms, quotients, restrictions
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class PMorphism:
    """A linear map ``source -> target`` preserving bracket and p-map.

    ``matrix`` has shape (target.dim, source.dim) and acts on columns.
    Construction checks brackets on basis pairs, the p-map on basis
    elements, and the p-map on ``samples`` pseudorandom elements drawn from
    ``seed`` (the p-map is not linear, so the basis alone proves nothing).
    """

    source: RestrictedLieAlgebra
    target: RestrictedLieAlgebra
    matrix: np.ndarray
    seed: int = MORPHISM_SEED
    samples: int = MORPHISM_SAMPLES
    validate: bool = True

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.int64) % self.source.p
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise DimensionError("morphism matrix has the wrong shape")
        if self.validate:
            problem = self.check(self.seed, self.samples)
            if problem:
                raise InvalidMorphism(problem["message"], problem)

    def __call__(self, x) -> np.ndarray:
        return (self.matrix @ np.asarray(x, dtype=np.int64)) % self.source.p

    def check(self, seed: int, samples: int) -> Optional[dict]:
        """First violation found, or None."""
        s, t, f = self.source, self.target, self.matrix
        p = s.p
        for i, j in itertools.combinations(range(s.dim), 2):
            lhs = self(s.structure[i, j])
            rhs = t.bracket(f[:, i], f[:, j])
            if not np.array_equal(lhs, rhs):
                return {"message": f"bracket not preserved on ({i}, {j})", "pair": [i, j]}
        for i in range(s.dim):
            if not np.array_equal(self(s.pmap_basis[i]), t.p_power(f[:, i])):
                return {"message": f"p-map not preserved on basis element {i}", "x": i}
        rng = np.random.default_rng(seed)
        for _ in range(samples if s.dim else 0):
            x = rng.integers(0, p, s.dim)
            if not np.array_equal(self(s.p_power(x)), t.p_power(self(x))):
                return {"message": "p-map not preserved on a sampled element",
                        "x": _vec_list(x), "seed": seed}
        return None

    def kernel(self) -> Subspace:
        from .linalg import kernel
        return kernel(self.matrix, self.source.p)

    def image(self) -> Subspace:
        return Subspace.span(self.matrix.T, self.source.p, self.target.dim)


def check_subalgebra(alg: RestrictedLieAlgebra, h: Subspace) -> Optional[np.ndarray]:
    """A bracket of basis vectors of h that leaves h, or None."""
    if h.dim < 2:
        return None
    br = alg.bracket_many(h.basis, h.basis).reshape(-1, alg.dim)
    res = h.reduce(br)
    bad = np.flatnonzero(res.any(axis=1))
    return br[bad[0]] if bad.size else None


def check_p_stable(alg: RestrictedLieAlgebra, h: Subspace) -> Optional[np.ndarray]:
    """A basis vector of h whose p-th power leaves h, or None.

    For a bracket-closed h this decides p-stability: the Jacobson terms of
    elements of h are Lie words in h.
    """
    for b in h.basis:
        xp = alg.p_power(b)
        if not h.contains(xp):
            return b
    return None


def check_ideal(alg: RestrictedLieAlgebra, h: Subspace) -> Optional[np.ndarray]:
    if h.dim == 0:
        return None
    br = alg.bracket_many(np.eye(alg.dim, dtype=np.int64), h.basis).reshape(-1, alg.dim)
    res = h.reduce(br)
    bad = np.flatnonzero(res.any(axis=1))
    return br[bad[0]] if bad.size else None


def _complement_basis(alg: RestrictedLieAlgebra, i: Subspace) -> np.ndarray:
    # standard basis vectors at non-pivot columns: a complement to i
    free = [c for c in range(alg.dim) if c not in i.pivots]
    return np.eye(alg.dim, dtype=np.int64)[free]


def quotient(alg: RestrictedLieAlgebra, i: Subspace) -> tuple[RestrictedLieAlgebra, PMorphism]:
    """g / i for a p-ideal i, on the complement basis of non-pivot coordinates.

    The coset of a vector v is represented by ``i.reduce(v)``, whose
    pivot coordinates vanish; its remaining coordinates are the quotient
    coordinates.
    """
    w = check_ideal(alg, i)
    if w is not None:
        raise NotAnIdeal("subspace is not an ideal", _vec_list(w))
    w = check_p_stable(alg, i)
    if w is not None:
        raise NotPStable("ideal is not p-stable", _vec_list(w))
    p = alg.p
    free = [c for c in range(alg.dim) if c not in i.pivots]
    comp = _complement_basis(alg, i)
    k = len(free)

    def proj(v):
        return i.reduce(v)[free]

    c = np.zeros((k, k, k), dtype=np.int64)
    for a, b in itertools.combinations(range(k), 2):
        c[a, b] = proj(alg.bracket(comp[a], comp[b]))
    pm = np.array([proj(alg.p_power(comp[a])) for a in range(k)], dtype=np.int64).reshape(k, k)
    names = [alg.basis_names[f] for f in free]
    q = RestrictedLieAlgebra(p, c, pm, names, f"{alg.name}/ideal" if alg.name else "", validate=True)
    mat = np.array([proj(alg.basis_vector(j)) for j in range(alg.dim)],
                   dtype=np.int64).reshape(alg.dim, k).T
    return q, PMorphism(alg, q, mat)


def restrict(alg: RestrictedLieAlgebra, h: Subspace
             ) -> tuple[RestrictedLieAlgebra, PMorphism]:
    """The p-subalgebra h as an algebra on its canonical basis, with embedding."""
    w = check_subalgebra(alg, h)
    if w is not None:
        raise NotClosed("subspace is not closed under the bracket", _vec_list(w))
    w = check_p_stable(alg, h)
    if w is not None:
        raise NotClosed("subspace is not closed under the p-map", _vec_list(w))
    k = h.dim
    c = np.zeros((k, k, k), dtype=np.int64)
    for a, b in itertools.combinations(range(k), 2):
        c[a, b] = h.coords(alg.bracket(h.basis[a], h.basis[b]))
    pm = np.array([h.coords(alg.p_power(h.basis[a])) for a in range(k)],
                  dtype=np.int64).reshape(k, k)
    names = [alg.format(b) for b in h.basis]
    sub = RestrictedLieAlgebra(alg.p, c, pm, names, f"{alg.name}|sub" if alg.name else "")
    emb = PMorphism(sub, alg, h.basis.T.copy())
    return sub, emb
