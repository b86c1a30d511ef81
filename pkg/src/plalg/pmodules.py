"""Restricted representations, fixed points, and weight decompositions.

A module is given by one matrix per basis element of the algebra, acting
on column vectors of V = F_p^dim_v.  Decompositions are computed with
F_p[T]-module theory (primary components of a single operator), so
weights living in extension fields need no special treatment.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import analysis as an
from .core import MORPHISM_SEED, MORPHISM_SAMPLES, Report, RestrictedLieAlgebra
from .errors import BudgetExceeded, HypothesisViolated, InvalidModule, NotATorus
from .ffarith import poly_factor, poly_is_irreducible, poly_of_matrix, poly_trim
from .linalg import Subspace, kernel, mat_pow, projective_points, rank, solve
from .tori import is_torus

DEFAULT_ELEMENT_BUDGET = 10**6


class PModule:
    """A p-module: rho([x, y]) = [rho x, rho y] and rho(x^[p]) = rho(x)^p."""

    def __init__(self, algebra: RestrictedLieAlgebra, rho, validate: bool = True,
                 seed: int = MORPHISM_SEED, samples: int = MORPHISM_SAMPLES, name: str = ""):
        p = algebra.p
        r = np.asarray(rho, dtype=np.int64) % p
        if r.ndim != 3 or r.shape[0] != algebra.dim or r.shape[1] != r.shape[2]:
            raise InvalidModule(f"rho must be {algebra.dim} square matrices, got shape {r.shape}")
        r.setflags(write=False)
        self.algebra = algebra
        self.rho = r
        self.dim_v = r.shape[1]
        self.seed = seed
        self.name = name
        if validate:
            problem = self.check(seed, samples)
            if problem:
                raise InvalidModule(problem["message"], problem)

    def __repr__(self) -> str:
        return f"PModule({self.name or self.algebra.name}, dim_v={self.dim_v})"

    def act(self, x) -> np.ndarray:
        """rho(x) for an algebra element x."""
        x = self.algebra.vec(x)
        return np.tensordot(x, self.rho, axes=1) % self.algebra.p

    def check(self, seed: int, samples: int) -> Optional[dict]:
        alg, p = self.algebra, self.algebra.p
        for i, j in itertools.combinations(range(alg.dim), 2):
            lhs = self.act(alg.structure[i, j])
            rhs = (self.rho[i] @ self.rho[j] - self.rho[j] @ self.rho[i]) % p
            if not np.array_equal(lhs, rhs):
                return {"message": f"bracket not preserved on basis pair ({i}, {j})", "pair": [i, j]}
        for i in range(alg.dim):
            if not np.array_equal(self.act(alg.pmap_basis[i]), mat_pow(self.rho[i], p, p)):
                return {"message": f"p-map not preserved on basis element {i}", "x": i}
        rng = np.random.default_rng(seed)
        for _ in range(samples if alg.dim else 0):
            x = rng.integers(0, p, alg.dim)
            if not np.array_equal(self.act(alg.p_power(x)), mat_pow(self.act(x), p, p)):
                return {"message": "p-map not preserved on a sampled element",
                        "x": [int(a) for a in x], "seed": seed}
        return None

    def full_space(self) -> Subspace:
        return Subspace.full(self.dim_v, self.algebra.p)

    @classmethod
    def from_block(cls, algebra: RestrictedLieAlgebra, block: dict) -> "PModule":
        """Build from the file-format block ``{"dim_v": n, "rho": [...]}``."""
        n = block.get("dim_v")
        rho = block.get("rho")
        if not isinstance(n, int) or not isinstance(rho, list) or len(rho) != algebra.dim:
            raise InvalidModule(f"module: need dim_v and {algebra.dim} matrices")
        try:
            arr = np.array(rho, dtype=np.int64).reshape(algebra.dim, n, n)
        except (ValueError, TypeError):
            raise InvalidModule(f"module.rho: expected {algebra.dim} matrices of size {n}x{n}") from None
        return cls(algebra, arr)


def adjoint_module(alg: RestrictedLieAlgebra) -> PModule:
    return PModule(alg, alg._ad, name=f"ad {alg.name}")


def trivial_module(alg: RestrictedLieAlgebra, n: int) -> PModule:
    return PModule(alg, np.zeros((alg.dim, n, n), np.int64), name=f"trivial^{n}")


def natural_module(alg: RestrictedLieAlgebra) -> PModule:
    """The defining representation of sl2 (basis e, h, f) or gl_n (matrix units)."""
    p = alg.p
    if alg.name.startswith("sl2"):
        rho = [[[0, 1], [0, 0]], [[1, 0], [0, p - 1]], [[0, 0], [1, 0]]]
        return PModule(alg, rho, name=f"natural {alg.name}")
    if alg.name.startswith("gl"):
        n = int(round(alg.dim ** 0.5))
        rho = np.zeros((alg.dim, n, n), np.int64)
        for i in range(n):
            for j in range(n):
                rho[i * n + j, i, j] = 1
        return PModule(alg, rho, name=f"natural {alg.name}")
    raise InvalidModule(f"no natural module known for {alg.name!r}")


# ---------------------------------------------------------------------------
# fixed points and [s, V]
# ---------------------------------------------------------------------------

def fixed_points(m: PModule, s: Subspace) -> Subspace:
    if s.dim == 0:
        return m.full_space()
    mats = np.concatenate([m.act(b) for b in s.basis])
    return kernel(mats, m.algebra.p)


def action_submodule(m: PModule, s: Subspace) -> Subspace:
    p = m.algebra.p
    if s.dim == 0:
        return Subspace.zero(m.dim_v, p)
    cols = np.concatenate([m.act(b).T for b in s.basis])
    return Subspace.span(cols, p, m.dim_v)


# ---------------------------------------------------------------------------
# single-operator F_p[T]-module structure
# ---------------------------------------------------------------------------

def minimal_polynomial(a: np.ndarray, p: int, space: Optional[Subspace] = None) -> tuple:
    """Monic minimal polynomial of ``a`` (restricted to an invariant ``space``)."""
    n = a.shape[0]
    basis = np.eye(n, dtype=np.int64) if space is None else space.basis
    if basis.shape[0] == 0:
        return (1,)
    powers = [basis.T % p]
    for k in range(1, basis.shape[0] + 1):
        powers.append((a @ powers[-1]) % p)
        mat = np.stack([pw.ravel() for pw in powers[:-1]], axis=1)
        c = solve(mat, powers[-1].ravel(), p)
        if c is not None:
            return poly_trim([-int(v) for v in c] + [1], p)
    raise AssertionError("minimal polynomial degree exceeds dimension")


def primary_components(a: np.ndarray, p: int) -> list[tuple[tuple, Subspace]]:
    """[(irreducible factor f, ker f(a)^mult)] over the factors of the minimal polynomial."""
    mp = minimal_polynomial(a, p)
    out = []
    for f, mult in poly_factor(mp, p):
        fm = poly_of_matrix(f, a, p)
        out.append((f, kernel(mat_pow(fm, mult, p), p)))
    return out


def _cyclic_span(mats: list, v: np.ndarray, p: int, n: int) -> Subspace:
    """Smallest subspace containing v and stable under every matrix in ``mats``."""
    s = Subspace.span([v], p, n)
    while True:
        new = [(m @ b) % p for m in mats for b in s.basis]
        t = s + Subspace.span(np.array(new).reshape(-1, n), p, n) if new else s
        if t == s:
            return s
        s = t


def _split_irreducible(mats: list, w: Subspace, p: int, n: int) -> list[Subspace]:
    """Greedy split of a semisimple component into cyclic (irreducible) summands."""
    out, cur = [], Subspace.zero(n, p)
    for b in w.basis:
        if cur.contains(b):
            continue
        c = _cyclic_span(mats, b, p, n)
        # cur is invariant, so c & cur is invariant in the irreducible-isotypic
        # w and hence 0 or c; b not in cur rules out c
        out.append(c)
        cur = cur + c
    return out


def is_irreducible_under(a: np.ndarray, w: Subspace, p: int) -> bool:
    """w has no proper nonzero a-invariant subspace: minpoly irreducible of degree dim w."""
    mp = minimal_polynomial(a, p, w)
    return len(mp) - 1 == w.dim and poly_is_irreducible(mp, p)


# ---------------------------------------------------------------------------
# weight decomposition
# ---------------------------------------------------------------------------

@dataclass
class WeightDecomposition:
    fixed: Subspace
    components: list
    generator: Optional[np.ndarray]
    factors: list = field(default_factory=list)
    irreducible: list = field(default_factory=list)


def torus_cyclic_generator(alg: RestrictedLieAlgebra, t: Subspace) -> Optional[np.ndarray]:
    """First t0 in t (canonical order) whose p-power orbit spans t, if any."""
    from .tori import p_envelope
    if t.dim == 0:
        return alg.zero()
    for x in t.projective_array():
        if p_envelope(alg, x) == t:
            return x
    return None


def _associative_span(mats: list, p: int, n: int) -> list[np.ndarray]:
    """Basis of the unital associative algebra generated by ``mats``."""
    eye = np.eye(n, dtype=np.int64)
    basis = Subspace.span([eye.ravel()], p, n * n)
    frontier = [eye]
    while frontier:
        nxt = []
        for x in frontier:
            for m in mats:
                y = (m @ x) % p
                if not basis.contains(y.ravel()):
                    basis = basis + Subspace.span([y.ravel()], p, n * n)
                    nxt.append(y)
        frontier = nxt
    return [b.reshape(n, n) for b in basis.basis]


def weight_decomposition(m: PModule, t: Subspace,
                         budget: int = DEFAULT_ELEMENT_BUDGET) -> WeightDecomposition:
    """V = V^t + V_1 + ... + V_r with each V_i an irreducible t-module.

    When t is cyclic under the p-map, a generator t0 is used: rho(t) then
    lies in F_p[rho(t0)], V^t = V^{t0}, and the V_i come from the primary
    decomposition of rho(t0).  Otherwise the basis of t refines the
    decomposition one element at a time.
    """
    alg, p, n = m.algebra, m.algebra.p, m.dim_v
    if not is_torus(alg, t):
        raise NotATorus("weight decomposition needs a torus")
    fixed = fixed_points(m, t)
    t0 = torus_cyclic_generator(alg, t)
    if t0 is not None:
        a = m.act(t0)
        mats = [a]
        if kernel(a, p) != fixed:
            raise HypothesisViolated("fixed points of t and of t0 differ")
        parts = [(f, w) for f, w in primary_components(a, p) if f != (0, 1)]
    else:
        # refine by every element of the associative algebra A generated by
        # rho(t): afterwards each part is A-isotypic
        mats = [m.act(b) for b in t.basis]
        alg_basis = _associative_span(mats, p, n)
        if p ** len(alg_basis) > budget:
            raise BudgetExceeded("associative algebra scan", p ** len(alg_basis), budget)
        parts = [((), m.full_space())]
        for c in projective_points(len(alg_basis), p):
            a = sum(int(ci) * b for ci, b in zip(c, alg_basis)) % p
            refined = []
            for f0, w in parts:
                for f, k in primary_components(a, p):
                    piece = k & w
                    if piece.dim:
                        refined.append((f0 + (f,), piece))
            parts = refined
        parts = [(f, w) for f, w in parts if (w & fixed).is_zero()]
    comps: list[Subspace] = []
    factors = []
    for f, w in parts:
        for c in _split_irreducible(mats, w, p, n):
            comps.append(c)
            factors.append(f)
    total = fixed
    for c in comps:
        if not (total & c).is_zero():
            raise HypothesisViolated("components are not independent")
        total = total + c
    if total != m.full_space():
        raise HypothesisViolated("fixed points and components do not span V")
    irr = [component_is_irreducible(m, t, c, t0, budget) for c in comps]
    return WeightDecomposition(fixed, comps, t0, factors, irr)


def component_is_irreducible(m: PModule, t: Subspace, w: Subspace,
                             t0: Optional[np.ndarray] = None,
                             budget: int = DEFAULT_ELEMENT_BUDGET) -> bool:
    """Irreducibility of a t-stable w via an operator whose minimal polynomial on w
    is irreducible of degree dim w (invariant-factor criterion).

    rho(t0) is tried first; otherwise elements of the associative algebra
    generated by rho(t) are scanned.
    """
    p = m.algebra.p
    if t0 is not None and is_irreducible_under(m.act(t0), w, p):
        return True
    mats = [m.act(b) for b in t.basis]
    alg_basis = _associative_span(mats, p, m.dim_v)
    if p ** len(alg_basis) > budget:
        raise BudgetExceeded("associative algebra scan", p ** len(alg_basis), budget)
    for c in projective_points(len(alg_basis), p):
        a = sum(int(ci) * b for ci, b in zip(c, alg_basis)) % p
        if is_irreducible_under(a, w, p):
            return True
    return False


def verify_vnv(m: PModule, n: Subspace, budget: int = DEFAULT_ELEMENT_BUDGET) -> Report:
    """Check V = V^n + [n, V] for a nilpotent p-subalgebra n with n^[p] = n."""
    alg = m.algebra
    rep = Report("vnv")
    if not an.is_subalgebra(alg, n) or not an.is_nilpotent(alg, n) or not an.is_p_stable(alg, n):
        raise HypothesisViolated("n must be a nilpotent p-subalgebra")
    if n.size() > budget:
        raise BudgetExceeded("p-divisibility check", n.size(), budget)
    xs = n.element_array()
    imgs = {alg.p_power(x).tobytes() for x in xs} if xs.shape[0] <= 1 else \
        {r.tobytes() for r in alg.p_power_many(xs)}
    if len(imgs) != n.size():
        raise HypothesisViolated("p-map is not bijective on n")
    fx, act = fixed_points(m, n), action_submodule(m, n)
    total = fx + act
    rep.data.update({"dim_v": m.dim_v, "fixed": fx.dim, "action": act.dim, "sum": total.dim,
                     "intersection": (fx & act).dim})
    if not total.is_full():
        missing = next(b for b in np.eye(m.dim_v, dtype=np.int64) if not total.contains(b))
        rep.fail("vnv", "V^n + [n, V] is a proper subspace", [int(a) for a in missing])
    return rep
