"""Subalgebra structure: closures, transporters, series, Fitting, socle, Frattini.

Subspaces are :class:`~plalg.linalg.Subspace` values in the algebra's
coordinates.  Everything here is exact and exhaustive; operations that
enumerate elements or subspaces take a budget and raise
:class:`~plalg.errors.BudgetExceeded` rather than truncate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Union

import numpy as np

from .core import RestrictedLieAlgebra, check_ideal, check_p_stable, check_subalgebra
from .errors import BudgetExceeded, NotAbelianIdeal, NotASubalgebra, NotClosed
from .linalg import (DEFAULT_ENUM_BUDGET, Subspace, count_subspaces, enumerate_subspaces,
                     kernel, mat_pow, projective_points)

DEFAULT_ELEMENT_BUDGET = 10**6

SeriesKind = Literal["derived", "lower_central", "upper_central"]


# ---------------------------------------------------------------------------
# predicates and small helpers
# ---------------------------------------------------------------------------

def bracket_space(alg: RestrictedLieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """[a, b]: span of brackets of basis vectors."""
    if a.dim == 0 or b.dim == 0:
        return alg.zero_space()
    return alg.span(alg.bracket_many(a.basis, b.basis).reshape(-1, alg.dim))


def is_subalgebra(alg: RestrictedLieAlgebra, s: Subspace) -> bool:
    return check_subalgebra(alg, s) is None


def is_ideal(alg: RestrictedLieAlgebra, s: Subspace) -> bool:
    return check_ideal(alg, s) is None


def is_p_stable(alg: RestrictedLieAlgebra, s: Subspace) -> bool:
    """p-stability of a subalgebra (checked on its basis)."""
    return check_p_stable(alg, s) is None


def is_p_subalgebra(alg: RestrictedLieAlgebra, s: Subspace) -> bool:
    return is_subalgebra(alg, s) and is_p_stable(alg, s)


def is_abelian(alg: RestrictedLieAlgebra, s: Optional[Subspace] = None) -> bool:
    s = alg.full_space() if s is None else s
    return bracket_space(alg, s, s).is_zero()


def _as_space(alg: RestrictedLieAlgebra, s) -> Subspace:
    if isinstance(s, Subspace):
        return s
    return alg.span(np.asarray(s, dtype=np.int64).reshape(-1, alg.dim))


# ---------------------------------------------------------------------------
# closures
# ---------------------------------------------------------------------------

def closure(alg: RestrictedLieAlgebra, s, mode: Literal["subalgebra", "ideal", "p_closure"]
            ) -> Subspace:
    """Smallest subalgebra, ideal, or p-subalgebra containing ``s``.

    ``p_closure`` expects a subalgebra and only adjoins p-th powers of basis
    vectors; bracket closure is re-checked every round and a failure raises
    :class:`NotClosed` with the offending bracket.
    """
    s = _as_space(alg, s)
    if mode == "subalgebra":
        while True:
            t = s + bracket_space(alg, s, s)
            if t == s:
                return s
            s = t
    if mode == "ideal":
        full = alg.full_space()
        while True:
            t = s + bracket_space(alg, full, s)
            if t == s:
                return s
            s = t
    if mode == "p_closure":
        w = check_subalgebra(alg, s)
        if w is not None:
            raise NotASubalgebra("p-closure needs a subalgebra", [int(a) for a in w])
        while True:
            powers = np.array([alg.p_power(b) for b in s.basis]).reshape(-1, alg.dim)
            t = s + alg.span(powers)
            if t == s:
                return s
            w = check_subalgebra(alg, t)
            if w is not None:
                raise NotClosed("adjoining p-th powers broke bracket closure",
                                [int(a) for a in w])
            s = t
    raise ValueError(f"unknown closure mode {mode!r}")


def generated_p_subalgebra(alg: RestrictedLieAlgebra, s) -> Subspace:
    """Smallest p-subalgebra containing an arbitrary set of vectors."""
    return closure(alg, closure(alg, s, "subalgebra"), "p_closure")


# ---------------------------------------------------------------------------
# centralizers and normalizers
# ---------------------------------------------------------------------------

def _residue_matrix(s: Subspace) -> np.ndarray:
    """Matrix R with R @ v = s.reduce(v)."""
    n, p = s.ambient_dim, s.p
    r = np.eye(n, dtype=np.int64)
    if s.dim:
        sel = np.zeros((s.dim, n), dtype=np.int64)
        sel[np.arange(s.dim), list(s.pivots)] = 1
        r = (r - s.basis.T @ sel) % p
    return r


def transporter(alg: RestrictedLieAlgebra, s, mode: Literal["centralizer", "normalizer"]
                ) -> Subspace:
    """C_g(s) or N_g(s) as the solution space of linear conditions on x."""
    s = _as_space(alg, s)
    if s.dim == 0:
        return alg.full_space()
    # [x, b] = -ad_b(x), so the conditions are linear in x through ad_b
    ads = alg.ad_matrices(s.basis)
    if mode == "centralizer":
        return kernel(ads.reshape(-1, alg.dim), alg.p)
    if mode == "normalizer":
        r = _residue_matrix(s)
        return kernel(np.concatenate([(r @ a) % alg.p for a in ads]), alg.p)
    raise ValueError(f"unknown transporter mode {mode!r}")


def centralizer(alg: RestrictedLieAlgebra, s) -> Subspace:
    return transporter(alg, s, "centralizer")


def normalizer(alg: RestrictedLieAlgebra, s) -> Subspace:
    return transporter(alg, s, "normalizer")


def center(alg: RestrictedLieAlgebra) -> Subspace:
    return centralizer(alg, alg.full_space())


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------

@dataclass
class SeriesResult:
    """Terms of a series of the subalgebra ``space``, until they stabilize."""

    kind: str
    space: Subspace
    terms: list
    stabilized: bool = True

    @property
    def last(self) -> Subspace:
        return self.terms[-1]

    @property
    def is_soluble(self) -> Optional[bool]:
        return self.last.is_zero() if self.kind == "derived" else None

    @property
    def is_nilpotent(self) -> Optional[bool]:
        if self.kind == "lower_central":
            return self.last.is_zero()
        if self.kind == "upper_central":
            return self.last == self.space
        return None

    @property
    def length(self) -> Optional[int]:
        """Derived length or nilpotency class, None if never reached."""
        if self.kind == "upper_central":
            return len(self.terms) - 1 if self.last == self.space else None
        return len(self.terms) - 1 if self.last.is_zero() else None

    @property
    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]


def series(alg: RestrictedLieAlgebra, h: Optional[Subspace] = None,
           kind: SeriesKind = "derived") -> SeriesResult:
    """Derived, lower central, or upper central series of a subalgebra h.

    Terms are listed until they stop changing; the repeated term is not
    listed twice.  The upper central series of h is 0 = Z_0 < Z_1 < ...
    with Z_{i+1} = {x in h : [x, h] in Z_i}.
    """
    h = alg.full_space() if h is None else h
    w = check_subalgebra(alg, h)
    if w is not None:
        raise NotASubalgebra("series needs a subalgebra", [int(a) for a in w])
    if kind == "derived":
        terms = [h]
        while True:
            t = bracket_space(alg, terms[-1], terms[-1])
            if t == terms[-1]:
                break
            terms.append(t)
            if t.is_zero():
                break
    elif kind == "lower_central":
        terms = [h]
        while True:
            t = bracket_space(alg, h, terms[-1])
            if t == terms[-1]:
                break
            terms.append(t)
            if t.is_zero():
                break
    elif kind == "upper_central":
        terms = [alg.zero_space()]
        while True:
            # x in h with R_Z([x, b]) = 0 for each basis vector b of h
            r = _residue_matrix(terms[-1])
            ads = alg.ad_matrices(h.basis) if h.dim else np.zeros((0, alg.dim, alg.dim), np.int64)
            cond = [(r @ a) % alg.p for a in ads]
            k = kernel(np.concatenate(cond), alg.p) if cond else alg.full_space()
            t = k & h
            if t == terms[-1]:
                break
            terms.append(t)
    else:
        raise ValueError(f"unknown series kind {kind!r}")
    return SeriesResult(kind, h, terms)


def is_soluble(alg: RestrictedLieAlgebra, h: Optional[Subspace] = None) -> bool:
    return series(alg, h, "derived").last.is_zero()


def is_nilpotent(alg: RestrictedLieAlgebra, h: Optional[Subspace] = None) -> bool:
    return series(alg, h, "lower_central").last.is_zero()


def nilpotency_class(alg: RestrictedLieAlgebra, h: Optional[Subspace] = None) -> Optional[int]:
    return series(alg, h, "lower_central").length


def derived_algebra(alg: RestrictedLieAlgebra) -> Subspace:
    full = alg.full_space()
    return bracket_space(alg, full, full)


# ---------------------------------------------------------------------------
# element-wise constructions: Fitting, minimal ideals, socle
# ---------------------------------------------------------------------------

def _points(alg: RestrictedLieAlgebra, budget: int) -> np.ndarray:
    n = alg.p ** alg.dim
    if n > budget:
        raise BudgetExceeded(f"elements of {alg.name or 'algebra'}", n, budget)
    return projective_points(alg.dim, alg.p)


def ad_nilpotent_mask(alg: RestrictedLieAlgebra, xs: np.ndarray) -> np.ndarray:
    """Rows x of ``xs`` with ad_x nilpotent."""
    if xs.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    m = alg.ad_matrices(xs).astype(np.float64)
    acc = m
    for _ in range(max(alg.dim - 1, 0)):
        acc = np.mod(acc @ m, alg.p)
    return ~acc.any(axis=(1, 2))


def fitting(alg: RestrictedLieAlgebra, budget: int = DEFAULT_ELEMENT_BUDGET) -> Subspace:
    """F(g), the sum of the ideal closures of x that are nilpotent ideals.

    Elements of a nilpotent ideal are ad-nilpotent on g, so only those are
    tried; elements already in the running sum add nothing and are skipped.
    """
    xs = _points(alg, budget)
    f = alg.zero_space()
    for x in xs[ad_nilpotent_mask(alg, xs)]:
        if f.contains(x):
            continue
        i = closure(alg, [x], "ideal")
        if is_nilpotent(alg, i):
            f = f + i
    return f


_AD_ALGEBRA: dict = {}


def ad_algebra_basis(alg: RestrictedLieAlgebra) -> np.ndarray:
    """Basis (m, d, d) of the unital associative algebra generated by ad(g)."""
    hit = _AD_ALGEBRA.get(alg)
    if hit is not None:
        return hit
    d, p = alg.dim, alg.p
    eye = np.eye(d, dtype=np.int64)
    span = Subspace.span([eye.ravel()], p, d * d)
    frontier = [eye]
    while frontier:
        nxt = []
        for x in frontier:
            for a in alg._ad:
                y = (a @ x) % p
                if not span.contains(y.ravel()):
                    span = span + Subspace.span([y.ravel()], p, d * d)
                    nxt.append(y)
        frontier = nxt
    out = span.basis.reshape(-1, d, d)
    _AD_ALGEBRA[alg] = out
    return out


def ideal_closures(alg: RestrictedLieAlgebra, budget: int = DEFAULT_ELEMENT_BUDGET
                   ) -> list[Subspace]:
    """Distinct ideals generated by single nonzero elements, canonical order.

    The ideal generated by x is A x, with A the associative algebra
    generated by ad(g).
    """
    xs = _points(alg, budget)
    basis = ad_algebra_basis(alg)
    seen: dict[tuple, Subspace] = {}
    for start in range(0, xs.shape[0], 4096):
        ys = np.einsum("mij,nj->nmi", basis, xs[start:start + 4096]) % alg.p
        for y in ys:
            i = alg.span(y)
            seen.setdefault(i.key(), i)
    return sorted(seen.values(), key=Subspace.sort_key)


def minimal_ideals(alg: RestrictedLieAlgebra, budget: int = DEFAULT_ELEMENT_BUDGET
                   ) -> list[Subspace]:
    """Minimal nonzero ideals.

    Each is generated by any of its nonzero elements, and any ideal
    generated by one element and minimal among such ideals is minimal
    among all ideals, so the minimal single-element closures are exactly
    the minimal ideals.
    """
    cl = ideal_closures(alg, budget)
    return [i for i in cl if not any(j < i for j in cl)]


def all_ideals(alg: RestrictedLieAlgebra, budget: int = DEFAULT_ENUM_BUDGET) -> list[Subspace]:
    return [s for s in enumerate_subspaces(alg.dim, alg.p, budget=budget) if is_ideal(alg, s)]


@dataclass
class SocleResult:
    socle: Subspace
    components: list
    minimal_abelian: list


def socle(alg: RestrictedLieAlgebra, budget: int = DEFAULT_ELEMENT_BUDGET) -> SocleResult:
    """Sum of the minimal abelian ideals, with a direct decomposition.

    Components are chosen greedily in canonical order, keeping an ideal
    when it meets the running sum trivially.  The socle is a semisimple
    g-module, so every such decomposition has the same length.
    """
    mins = [i for i in minimal_ideals(alg, budget) if is_abelian(alg, i)]
    s = alg.zero_space()
    comps = []
    for i in mins:
        t = s + i
        if t.dim == s.dim + i.dim:
            comps.append(i)
            s = t
    return SocleResult(s, comps, mins)


# ---------------------------------------------------------------------------
# subspace-enumeration constructions
# ---------------------------------------------------------------------------

def subalgebras(alg: RestrictedLieAlgebra, restricted: bool = False,
                budget: int = DEFAULT_ENUM_BUDGET, dim_filter: Optional[int] = None
                ) -> list[Subspace]:
    """All subalgebras (p-subalgebras if ``restricted``), canonical order."""
    out = []
    for s in enumerate_subspaces(alg.dim, alg.p, dim_filter, budget):
        if check_subalgebra(alg, s) is None and (not restricted or check_p_stable(alg, s) is None):
            out.append(s)
    return out


def maximal_subalgebras(alg: RestrictedLieAlgebra, restricted: bool = False,
                        budget: int = DEFAULT_ENUM_BUDGET,
                        subs: Optional[list] = None) -> list[Subspace]:
    """Proper subalgebras maximal under inclusion, canonical order.

    Candidates are visited by decreasing dimension; one is maximal exactly
    when no maximal subalgebra found so far contains it.
    """
    if alg.dim == 0:
        return []
    if subs is None:
        subs = subalgebras(alg, restricted, budget)
    proper = [s for s in subs if s.dim < alg.dim]
    found: list[Subspace] = []
    for s in sorted(proper, key=lambda s: -s.dim):
        if not any(s.issubset(m) for m in found if m.dim > s.dim):
            found.append(s)
    return sorted(found, key=Subspace.sort_key)


def frattini(alg: RestrictedLieAlgebra, mode: Literal["plain", "p"] = "plain",
             budget: int = DEFAULT_ENUM_BUDGET, subs: Optional[list] = None) -> Subspace:
    """Intersection of the maximal subalgebras (``plain``) or p-subalgebras (``p``)."""
    ms = maximal_subalgebras(alg, mode == "p", budget, subs)
    out = alg.full_space()
    for m in ms:
        out = out & m
    return out


def split_over(alg: RestrictedLieAlgebra, i: Subspace, restricted: bool = False,
               budget: int = DEFAULT_ENUM_BUDGET) -> Optional[Subspace]:
    """A subalgebra complement h with g = i + h and i & h = 0, or None.

    ``i`` must be an abelian ideal; p-stability of ``i`` is not needed.
    The coordinate complement (unit vectors off the pivots of i) is tried
    first; otherwise the search runs over subspaces of dimension
    dim g - dim i in canonical order.  A candidate must be a subalgebra,
    and p-stable when ``restricted``.
    """
    w = check_ideal(alg, i)
    if w is not None or not is_abelian(alg, i):
        raise NotAbelianIdeal("split_over needs an abelian ideal",
                              None if w is None else [int(a) for a in w])
    def ok(c: Subspace) -> bool:
        return check_subalgebra(alg, c) is None and (
            not restricted or check_p_stable(alg, c) is None)

    free = [j for j in range(alg.dim) if j not in i.pivots]
    coord = alg.span(np.eye(alg.dim, dtype=np.int64)[free]) if free else alg.zero_space()
    if ok(coord):
        return coord
    k = alg.dim - i.dim
    for c in enumerate_subspaces(alg.dim, alg.p, k, budget):
        if (c + i).dim != alg.dim:
            continue
        if ok(c):
            return c
    return None
