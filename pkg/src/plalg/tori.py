"""Semisimple and p-nilpotent structure: toral splittings, purity, roots, tori, Cartans.

On an abelian p-subalgebra the p-map is F_p-linear (scalars are fixed by
lambda -> lambda^p and the Jacobson terms vanish), so most of this module
works with the matrix of the p-map in the canonical basis of a subspace.
That matrix acts on column coordinate vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import analysis as an
from .core import PMorphism, RestrictedLieAlgebra
from .errors import (BudgetExceeded, ClassTooLarge, HypothesisViolated, KernelNotSubspace,
                     NoRoot, NotAbelian, NotATorus, NotPNilpotentImage, NotPStable, NotPure,
                     PNilpotentsExist, QuotientNotBoundedExponent)
from .linalg import (DEFAULT_ENUM_BUDGET, Subspace, enumerate_subspaces, kernel, mat_inv,
                     mat_pow, rank, solve)

DEFAULT_ELEMENT_BUDGET = 10**6


def _ints(v) -> list[int]:
    return [int(a) for a in np.asarray(v).ravel()]


# ---------------------------------------------------------------------------
# the p-map on abelian p-subalgebras
# ---------------------------------------------------------------------------

def _require_abelian_p(alg: RestrictedLieAlgebra, a: Subspace):
    if not an.is_abelian(alg, a):
        raise NotAbelian("expected an abelian subalgebra")
    w = an.check_p_stable(alg, a)
    if w is not None:
        raise NotPStable("subspace is not p-stable", _ints(w))


def pmap_matrix(alg: RestrictedLieAlgebra, a: Subspace) -> np.ndarray:
    """Matrix of the p-map on an abelian p-subalgebra, in a's coordinates."""
    cols = [a.coords(alg.p_power(b)) for b in a.basis]
    return np.array(cols, dtype=np.int64).reshape(a.dim, a.dim).T


def _lift(a: Subspace, coords: np.ndarray) -> np.ndarray:
    """Ambient vectors from rows of a-coordinates."""
    if a.dim == 0:
        return np.zeros((0, a.ambient_dim), dtype=np.int64)
    return (np.asarray(coords, dtype=np.int64).reshape(-1, a.dim) @ a.basis) % a.p


def _sub_from_coords(a: Subspace, coord_space: Subspace) -> Subspace:
    return Subspace.span(_lift(a, coord_space.basis), a.p, a.ambient_dim)


@dataclass
class ToralSplit:
    torus: Subspace
    unipotent: Subspace
    stabilization_exponent: int


def toral_decomposition(alg: RestrictedLieAlgebra, a: Optional[Subspace] = None) -> ToralSplit:
    """a = t + u with t = im(phi^N), u = ker(phi^N).

    N is the least i >= 0 with im(phi^i) = im(phi^{i+1}); Fitting's lemma
    makes the sum direct, phi bijective on t and nilpotent on u.
    """
    a = alg.full_space() if a is None else a
    _require_abelian_p(alg, a)
    p, k = alg.p, a.dim
    m = pmap_matrix(alg, a)
    n, cur = 0, np.eye(k, dtype=np.int64)
    while rank(cur, p) != rank((m @ cur) % p, p):
        cur = (m @ cur) % p
        n += 1
    t = _sub_from_coords(a, Subspace.span(cur.T, p, k))
    u = _sub_from_coords(a, kernel(cur, p))
    if (t + u) != a or not (t & u).is_zero():
        raise HypothesisViolated("toral splitting is not direct", {"t": t.basis.tolist()})
    return ToralSplit(t, u, n)


# ---------------------------------------------------------------------------
# single elements
# ---------------------------------------------------------------------------

def p_envelope(alg: RestrictedLieAlgebra, x) -> Subspace:
    """d(x): the span of x, x^[p], x^[p^2], ...  (an abelian p-subalgebra)."""
    x = alg.vec(x)
    vecs = [x]
    s = alg.span([x])
    while True:
        y = alg.p_power(vecs[-1])
        t = s + alg.span([y])
        if t == s:
            return s
        vecs.append(y)
        s = t


def is_semisimple(alg: RestrictedLieAlgebra, x) -> bool:
    """x^{p^n} = x for some n >= 1 (0 counts as semisimple).

    The p-map is linear on d(x), so x is periodic exactly when it lies in
    the toral part of d(x).
    """
    x = alg.vec(x)
    if not x.any():
        return True
    return toral_decomposition(alg, p_envelope(alg, x)).torus.contains(x)


def is_p_nilpotent(alg: RestrictedLieAlgebra, x) -> bool:
    return not alg.p_power_iter(x, alg.dim).any()


@dataclass
class JordanPair:
    semisimple_part: np.ndarray
    nilpotent_part: np.ndarray


def jordan_decomposition(alg: RestrictedLieAlgebra, x) -> JordanPair:
    x = alg.vec(x)
    d = p_envelope(alg, x)
    sp = toral_decomposition(alg, d)
    both = np.vstack([sp.torus.basis, sp.unipotent.basis]).reshape(-1, alg.dim)
    c = solve(both.T, x, alg.p)
    s = (c[:sp.torus.dim] @ sp.torus.basis) % alg.p if sp.torus.dim else alg.zero()
    return JordanPair(s, (x - s) % alg.p)


def classify_element(alg: RestrictedLieAlgebra, x) -> tuple[str, JordanPair]:
    """``semisimple``, ``p_nilpotent`` (including 0) or ``mixed``."""
    jp = jordan_decomposition(alg, x)
    if not jp.semisimple_part.any():
        return "p_nilpotent", jp
    if not jp.nilpotent_part.any():
        return "semisimple", jp
    return "mixed", jp


# ---------------------------------------------------------------------------
# purity
# ---------------------------------------------------------------------------

def _image(m: np.ndarray, n: int, p: int) -> Subspace:
    return Subspace.span(mat_pow(m, n, p).T, p, m.shape[0])


def purity(alg: RestrictedLieAlgebra, a: Subspace, b: Subspace, mode: str = "check"):
    """Test a^{p^n} & b = b^{p^n} for all n, or build a p-complement of b in a.

    ``complement`` needs phi nilpotent on a/b.  Each round picks the first
    basis vector x of a whose height n over the current m (least n with
    x^{p^n} in m) is largest, corrects it by b0 in m with
    b0^{p^n} = x^{p^n}, and adjoins y = x - b0 with its first n p-powers.
    """
    _require_abelian_p(alg, a)
    if not b.issubset(a) or not an.is_p_stable(alg, b):
        raise HypothesisViolated("b must be a p-subalgebra of a")
    p, k = alg.p, a.dim
    m = pmap_matrix(alg, a)
    bc = Subspace.span(a.coords(b.basis).reshape(-1, k), p, k)
    pure = True
    for n in range(k + 1):
        lhs = _image(m, n, p) & bc
        rhs = Subspace.span((mat_pow(m, n, p) @ bc.basis.T).T.reshape(-1, k), p, k)
        if lhs != rhs:
            pure = False
            break
    if mode == "check":
        return pure
    if mode != "complement":
        raise ValueError(f"unknown purity mode {mode!r}")
    top = Subspace.span((mat_pow(m, k, p)).T, p, k)
    if not top.issubset(bc):
        raise QuotientNotBoundedExponent("p-map is not nilpotent on a/b")
    if not pure:
        raise NotPure("b is not pure in a")
    cur = bc
    comp = Subspace.zero(k, p)
    eye = np.eye(k, dtype=np.int64)
    while cur.dim < k:
        best, best_n = None, -1
        for x in eye:
            h = 0
            y = x
            while not cur.contains(y):
                y = (m @ y) % p
                h += 1
            if h > best_n:
                best, best_n = x, h
        n = best_n
        target = (mat_pow(m, n, p) @ best) % p
        mn = mat_pow(m, n, p)
        # solve mn @ (cur.basis.T @ c) = target for c
        sol = solve((mn @ cur.basis.T) % p, target, p) if cur.dim else (None if target.any() else np.zeros(0, np.int64))
        if sol is None:
            raise NotPure("no b0 with b0^{p^n} = x^{p^n}", {"x": _ints(_lift(a, best))})
        b0 = (sol @ cur.basis) % p if cur.dim else np.zeros(k, np.int64)
        y = (best - b0) % p
        chain = [y]
        for _ in range(n - 1):
            chain.append((m @ chain[-1]) % p)
        c_new = Subspace.span(np.array(chain), p, k)
        cur = cur + c_new
        comp = comp + c_new
    out = _sub_from_coords(a, comp)
    if (out + b) != a or not (out & b).is_zero():
        raise NotPure("constructed complement is not direct")
    return out


# ---------------------------------------------------------------------------
# p-th roots and lifting
# ---------------------------------------------------------------------------

def p_nilpotent_elements(alg: RestrictedLieAlgebra, budget: int = DEFAULT_ELEMENT_BUDGET
                         ) -> np.ndarray:
    """Projective representatives of the nonzero p-nilpotent elements."""
    if alg.p ** alg.dim > budget:
        raise BudgetExceeded("element scan", alg.p ** alg.dim, budget)
    from .linalg import projective_points
    xs = projective_points(alg.dim, alg.p)
    ys = xs
    for _ in range(alg.dim):
        ys = alg.p_power_many(ys) if ys.shape[0] else ys
    return xs[~ys.any(axis=1)] if xs.shape[0] else xs


def p_th_roots(alg: RestrictedLieAlgebra, x, space: Subspace) -> list[np.ndarray]:
    """Every y in ``space`` with y^[p] = x."""
    ys = space.element_array()
    xs = alg.p_power_many(ys)
    x = alg.vec(x)
    return [ys[i] for i in np.flatnonzero((xs == x).all(axis=1))]


def p_th_root(alg: RestrictedLieAlgebra, x, budget: int = DEFAULT_ELEMENT_BUDGET,
              check_hypothesis: bool = True) -> np.ndarray:
    """The unique y with y^[p] = x in an algebra without p-nilpotents.

    On d(x) the p-map permutes a finite set, so with k the orbit period of
    x the root is phi^{k-1}(x).  Uniqueness is confirmed by scanning d(x)
    for a second solution.
    """
    x = alg.vec(x)
    if check_hypothesis:
        bad = p_nilpotent_elements(alg, budget)
        if bad.shape[0]:
            raise PNilpotentsExist("algebra has nonzero p-nilpotent elements", _ints(bad[0]))
    if not x.any():
        return x
    d = p_envelope(alg, x)
    m = pmap_matrix(alg, d)
    c = solve(m, d.coords(x), alg.p)
    if c is None:
        raise NoRoot("x has no p-th root in d(x)", _ints(x))
    root = _lift(d, c)[0]
    if d.size() <= budget:
        sols = p_th_roots(alg, x, d)
        if len(sols) != 1:
            raise NoRoot("p-th root is not unique in d(x)", [_ints(s) for s in sols])
    return root


def lift_p_nilpotent(f: PMorphism, x) -> np.ndarray:
    """x' p-nilpotent with f(x') = f(x), when f(x) is p-nilpotent.

    With z = x^{p^n} in ker f, write d(z) = c + t (toral splitting) and
    take t' in t with t'^{p^n} equal to the t-part of z; then x' = x - t'.
    """
    src, tgt = f.source, f.target
    x = src.vec(x)
    fx = f(x)
    n = 0
    while fx.any():
        if n > tgt.dim:
            raise NotPNilpotentImage("f(x) is not p-nilpotent", _ints(f(x)))
        fx = tgt.p_power(fx)
        n += 1
    z = src.p_power_iter(x, n)
    d = p_envelope(src, z)
    sp = toral_decomposition(src, d)
    t = sp.torus
    if t.dim == 0:
        out = x
    else:
        both = np.vstack([t.basis, sp.unipotent.basis]).reshape(-1, src.dim)
        c = solve(both.T, z, src.p)
        zt_coords = c[:t.dim]
        mt = pmap_matrix(src, t)
        pre = (mat_inv(mat_pow(mt, n, src.p), src.p) @ zt_coords) % src.p
        tp = (pre @ t.basis) % src.p
        out = (x - tp) % src.p
    if not is_p_nilpotent(src, out) or not np.array_equal(f(out), f(x)):
        raise NotPNilpotentImage("lifting failed", {"x": _ints(x), "lift": _ints(out)})
    return out


# ---------------------------------------------------------------------------
# Engel subalgebras
# ---------------------------------------------------------------------------

def engel(alg: RestrictedLieAlgebra, x, budget: int = DEFAULT_ELEMENT_BUDGET) -> Subspace:
    """E_g(x) = ker(ad_x^dim); for a subspace, the intersection over its elements."""
    if isinstance(x, Subspace):
        if x.size() > budget:
            raise BudgetExceeded("Engel intersection", x.size(), budget)
        out = alg.full_space()
        for y in x.projective_array():
            out = out & engel(alg, y)
        return out
    return kernel(mat_pow(alg.ad_matrix(x), alg.dim, alg.p), alg.p)


# ---------------------------------------------------------------------------
# tori
# ---------------------------------------------------------------------------

def is_torus(alg: RestrictedLieAlgebra, t: Subspace) -> bool:
    if not an.is_abelian(alg, t) or not an.is_p_stable(alg, t):
        return False
    return t.dim == 0 or rank(pmap_matrix(alg, t), alg.p) == t.dim


def tori(alg: RestrictedLieAlgebra, budget: int = DEFAULT_ENUM_BUDGET) -> list[Subspace]:
    """Every torus, by filtering the subspace enumeration."""
    return [s for s in enumerate_subspaces(alg.dim, alg.p, budget=budget) if is_torus(alg, s)]


def _maximal(spaces: list[Subspace]) -> list[Subspace]:
    return sorted((s for s in spaces if not any(s < t for t in spaces)), key=Subspace.sort_key)


def maximal_tori(alg: RestrictedLieAlgebra, exhaustive: bool = True,
                 budget: int = DEFAULT_ENUM_BUDGET, seed: int = 0) -> list[Subspace]:
    """Tori maximal under inclusion.

    Exhaustive mode filters every subspace.  Otherwise see
    :func:`grow_tori`, which makes no completeness claim.
    """
    if exhaustive:
        return _maximal(tori(alg, budget))
    return grow_tori(alg, seed=seed)[0]


def grow_tori(alg: RestrictedLieAlgebra, seed: int = 0, budget: int = DEFAULT_ELEMENT_BUDGET
              ) -> tuple[list[Subspace], bool]:
    """Tori grown from semisimple elements in a seeded order; (tori, complete=False)."""
    if alg.p ** alg.dim > budget:
        raise BudgetExceeded("semisimple harvest", alg.p ** alg.dim, budget)
    from .linalg import projective_points
    xs = projective_points(alg.dim, alg.p)
    xs = xs[np.random.default_rng(seed).permutation(xs.shape[0])]
    ss = [x for x in xs if is_semisimple(alg, x)]
    found: list[Subspace] = []
    for x in ss:
        t = p_envelope(alg, x)
        if any(t.issubset(f) for f in found):
            continue
        for y in ss:
            if t.contains(y) or an.bracket_space(alg, t, alg.span([y])).dim:
                continue
            cand = an.generated_p_subalgebra(alg, t + alg.span([y]))
            if is_torus(alg, cand):
                t = cand
        found.append(t)
    return _maximal(found or [alg.zero_space()]), False


def nilpotent_decomposition(alg: RestrictedLieAlgebra, n: Optional[Subspace] = None,
                            budget: int = DEFAULT_ELEMENT_BUDGET) -> ToralSplit:
    """n = t + u for a nilpotent p-subalgebra n of class <= p.

    t is the stabilized span of the p^i-th powers of elements of n, and u
    the set of p-nilpotent elements, which is checked to be a subspace.
    """
    n = alg.full_space() if n is None else n
    if not (an.is_subalgebra(alg, n) and an.is_p_stable(alg, n)):
        raise NotPStable("need a p-subalgebra", {"subspace": n.basis.tolist()})
    cls = an.nilpotency_class(alg, n)
    if cls is None or cls > alg.p:
        raise ClassTooLarge(f"need a nilpotent subalgebra of class <= {alg.p}", {"class": cls})
    if n.size() > budget:
        raise BudgetExceeded("nilpotent decomposition", n.size(), budget)
    xs = n.element_array()
    imgs = [n]
    powers = xs
    k = 0
    # images of a p-subalgebra are nested, so this stops within dim steps
    for _ in range(n.dim + 1):
        powers = alg.p_power_many(powers)
        k += 1
        s = alg.span(powers) if powers.size else alg.zero_space()
        if s == imgs[-1]:
            break
        imgs.append(s)
    t = imgs[-1]
    nexp = len(imgs) - 1
    ys = xs
    for _ in range(max(n.dim, 1)):
        ys = alg.p_power_many(ys)
    kern = xs[~ys.any(axis=1)]
    u = alg.span(kern) if kern.size else alg.zero_space()
    if u.size() != kern.shape[0]:
        extra = next(v for v in u.element_array() if not is_p_nilpotent(alg, v))
        raise KernelNotSubspace("p-nilpotent elements do not form a subspace", _ints(extra))
    if not is_torus(alg, t) or not an.bracket_space(alg, t, n).is_zero():
        raise NotATorus("stabilized image is not a central torus", {"t": t.basis.tolist()})
    if (t + u) != n or not (t & u).is_zero():
        raise HypothesisViolated("t + u is not a direct decomposition of n")
    return ToralSplit(t, u, nexp)


# ---------------------------------------------------------------------------
# Cartan subalgebras
# ---------------------------------------------------------------------------

@dataclass
class CartanSubalgebra:
    space: Subspace
    routes: tuple


@dataclass
class CartanResult:
    cartans: list
    engel_route: list
    torus_route: list
    agree: bool
    abnormal_failures: list = field(default_factory=list)


def is_cartan(alg: RestrictedLieAlgebra, c: Subspace) -> bool:
    return (an.is_subalgebra(alg, c) and an.is_nilpotent(alg, c)
            and an.normalizer(alg, c) == c)


def cartan_subalgebras(alg: RestrictedLieAlgebra, override: bool = False,
                       element_budget: int = DEFAULT_ELEMENT_BUDGET,
                       enum_budget: int = DEFAULT_ENUM_BUDGET,
                       check_abnormal: bool = True) -> CartanResult:
    """Cartan subalgebras by two routes, compared.

    Engel route: minimal members of {E_g(x)} that are nilpotent and
    self-normalizing.  Torus route: C_g(t) for each maximal torus t.
    Each Cartan found is also checked to be self-normalizing inside every
    subalgebra containing it.
    """
    if alg.p <= alg.dim and not override:
        raise HypothesisViolated(f"needs p > dim (p={alg.p}, dim={alg.dim})")
    if alg.p ** alg.dim > element_budget:
        raise BudgetExceeded("Engel route", alg.p ** alg.dim, element_budget)
    from .linalg import projective_points
    xs = projective_points(alg.dim, alg.p)
    eng: dict[tuple, Subspace] = {}
    for x in xs:
        e = engel(alg, x)
        eng.setdefault(e.key(), e)
    if alg.dim == 0:
        eng[alg.full_space().key()] = alg.full_space()
    mins = _maximal_inverse(list(eng.values()))
    engel_route = sorted((e for e in mins if is_cartan(alg, e)), key=Subspace.sort_key)
    torus_route = sorted({c.key(): c for c in (an.centralizer(alg, t)
                                               for t in maximal_tori(alg, True, enum_budget))
                          }.values(), key=Subspace.sort_key)
    agree = engel_route == torus_route
    union = {s.key(): s for s in engel_route + torus_route}
    cartans = []
    for key in sorted(union, key=lambda k: union[k].sort_key()):
        s = union[key]
        routes = tuple(r for r, lst in (("engel", engel_route), ("torus", torus_route)) if s in lst)
        cartans.append(CartanSubalgebra(s, routes))
    failures = []
    if check_abnormal and cartans:
        subs = an.subalgebras(alg, False, enum_budget)
        for c in cartans:
            for u in subs:
                if c.space.issubset(u) and an.normalizer(alg, u) != u:
                    failures.append({"cartan": c.space.basis.tolist(), "subalgebra": u.basis.tolist()})
                    break
    return CartanResult(cartans, engel_route, torus_route, agree, failures)


def _maximal_inverse(spaces: list[Subspace]) -> list[Subspace]:
    """Members minimal under inclusion."""
    return [s for s in spaces if not any(t < s for t in spaces)]
