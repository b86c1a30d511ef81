"""Simplicity, the minimal-simple predicate, isomorphism tests, random search."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import analysis as an
from .constructions import sl2, witt
from .core import Report, RestrictedLieAlgebra, verify_restricted
from .errors import BudgetExceeded, InvalidAlgebra
from .linalg import (DEFAULT_ENUM_BUDGET, Subspace, count_subspaces, enumerate_subspaces,
                     kernel, projective_points, rank, solve)
from .tori import tori

DEFAULT_ELEMENT_BUDGET = 10**6
JACOBI_ATTEMPTS = 200


def is_simple(alg: RestrictedLieAlgebra, method: str = "closures",
              budget: int = DEFAULT_ELEMENT_BUDGET) -> bool:
    """Nonabelian with no ideals but 0 and g.

    ``closures`` checks that every nonzero element generates g as an ideal;
    ``subspaces`` filters the full subspace enumeration for ideals.
    """
    if alg.dim == 0 or an.is_abelian(alg):
        return False
    if method == "closures":
        if an.ad_algebra_basis(alg).shape[0] == alg.dim ** 2:
            # ad(g) generates every endomorphism, so no proper invariant subspace
            return True
        return all(i.is_full() for i in an.ideal_closures(alg, budget))
    if method == "subspaces":
        return all(s.is_zero() or s.is_full() for s in an.all_ideals(alg, budget))
    raise ValueError(f"unknown method {method!r}")


@dataclass
class MinimalSimpleVerdict:
    simple: bool
    dim_leq_p: bool
    normalizer_condition: dict
    verdict: Union[bool, str]
    checked: int = 0

    def to_dict(self) -> dict:
        return {"simple": self.simple, "dim_leq_p": self.dim_leq_p,
                "normalizer_condition": self.normalizer_condition,
                "verdict": self.verdict, "checked": self.checked}


def _soluble_p_subalgebras(alg: RestrictedLieAlgebra, budget: int):
    for s in enumerate_subspaces(alg.dim, alg.p, budget=budget):
        if s.dim and an.is_p_subalgebra(alg, s) and an.is_soluble(alg, s):
            yield s


def is_minimal_simple(alg: RestrictedLieAlgebra, mode: str = "exhaustive", trials: int = 200,
                      seed: int = 0, budget: int = DEFAULT_ENUM_BUDGET,
                      allow_downgrade: bool = False) -> MinimalSimpleVerdict:
    """Simple, dim <= p, and N_g(b) soluble for every nonzero soluble p-subalgebra b.

    ``exhaustive`` visits every subspace; ``sampled`` draws p-subalgebras
    generated by one or two seeded random elements and can at best return
    ``"inconclusive-positive"``.
    """
    simple = is_simple(alg)
    small = alg.dim <= alg.p
    if mode == "exhaustive":
        total = count_subspaces(alg.dim, alg.p)
        if total > budget:
            if not allow_downgrade:
                raise BudgetExceeded("minimal-simple scan", total, budget)
            mode = "sampled"
    checked = 0
    cond: dict = {}
    if mode == "exhaustive":
        cond = {"status": "verified_exhaustive"}
        for b in _soluble_p_subalgebras(alg, budget):
            checked += 1
            n = an.normalizer(alg, b)
            if not an.is_soluble(alg, n):
                cond = {"status": "refuted", "witness": b.basis.tolist()}
                break
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        cond = {"status": "verified_sampled", "seed": seed, "trials": trials}
        for _ in range(trials):
            gens = rng.integers(0, alg.p, (int(rng.integers(1, 3)), alg.dim))
            b = an.generated_p_subalgebra(alg, gens)
            if b.is_zero() or not an.is_soluble(alg, b):
                continue
            checked += 1
            if not an.is_soluble(alg, an.normalizer(alg, b)):
                cond = {"status": "refuted", "witness": b.basis.tolist()}
                break
    else:
        raise ValueError(f"unknown mode {mode!r}")
    ok = cond["status"] != "refuted"
    if not (simple and small and ok):
        verdict: Union[bool, str] = False
    elif cond["status"] == "verified_exhaustive":
        verdict = True
    else:
        verdict = "inconclusive-positive"
    return MinimalSimpleVerdict(simple, small, cond, verdict, checked)


# ---------------------------------------------------------------------------
# invariants and isomorphism
# ---------------------------------------------------------------------------

def fingerprint(alg: RestrictedLieAlgebra, budget: int = DEFAULT_ENUM_BUDGET) -> tuple:
    """(dim, derived series dims, maximal torus dim, number of maximal subalgebras)."""
    subs = an.subalgebras(alg, False, budget)
    ts = [s for s in subs if an.is_abelian(alg, s) and an.is_p_stable(alg, s)]
    from .tori import is_torus
    rank_t = max((s.dim for s in ts if is_torus(alg, s)), default=0)
    return (alg.dim, tuple(an.series(alg).dims), rank_t,
            len(an.maximal_subalgebras(alg, False, budget, subs)))


def _signature(alg: RestrictedLieAlgebra, xs: np.ndarray) -> list[tuple]:
    """Per-element invariants: ad rank, whether x^[p] is 0, x, or in span(x)."""
    out = []
    pw = alg.p_power_many(xs) if xs.shape[0] else xs
    for x, y in zip(xs, pw):
        out.append((rank(alg.ad_matrix(x), alg.p), bool(y.any()),
                    bool(np.array_equal(x, y)), rank(np.vstack([x, y]), alg.p)))
    return out


def find_isomorphism(a: RestrictedLieAlgebra, b: RestrictedLieAlgebra,
                     budget: int = DEFAULT_ELEMENT_BUDGET) -> Optional[np.ndarray]:
    """A matrix f (b.dim x a.dim) with f an isomorphism of restricted algebras, or None.

    Backtracking over images of a's basis vectors among b's elements with
    matching element signatures; brackets and p-powers are checked as
    soon as every basis vector they involve has an image.
    """
    if a.p != b.p or a.dim != b.dim:
        return None
    p, d = a.p, a.dim
    if p ** d > budget:
        raise BudgetExceeded("isomorphism search", p ** d, budget)
    from .linalg import all_vectors
    ys = all_vectors(d, p)[1:]
    ysig = _signature(b, ys)
    xsig = _signature(a, np.eye(d, dtype=np.int64))
    cands = [[y for y, s in zip(ys, ysig) if s == xsig[i]] for i in range(d)]
    supp_br = {(i, j): set(np.flatnonzero(a.structure[i, j]).tolist())
               for i in range(d) for j in range(i + 1, d)}
    supp_p = [set(np.flatnonzero(a.pmap_basis[i]).tolist()) for i in range(d)]
    img = np.zeros((d, d), dtype=np.int64)   # columns are images

    def ok_upto(k: int) -> bool:
        done = set(range(k + 1))
        if rank(img[:, :k + 1].T, p) != k + 1:
            return False
        for i in range(k + 1):
            if (i == k or k in supp_p[i]) and supp_p[i] <= done:
                if not np.array_equal((img @ a.pmap_basis[i]) % p, b.p_power(img[:, i])):
                    return False
        for (i, j), sup in supp_br.items():
            if j <= k and sup <= done and (j == k or k in sup):
                if not np.array_equal((img @ a.structure[i, j]) % p,
                                      b.bracket(img[:, i], img[:, j])):
                    return False
        return True

    def rec(k: int) -> bool:
        if k == d:
            return True
        for y in cands[k]:
            img[:, k] = y
            if ok_upto(k) and rec(k + 1):
                return True
        img[:, k] = 0
        return False

    if d == 0:
        return img
    return img.copy() if rec(0) else None


def compare(a: RestrictedLieAlgebra, b: RestrictedLieAlgebra, max_search_dim: int = 3,
            budget: int = DEFAULT_ENUM_BUDGET) -> str:
    """``isomorphic``, ``matches-invariants`` (dim > max_search_dim), or ``different``."""
    if a.p != b.p or fingerprint(a, budget) != fingerprint(b, budget):
        return "different"
    if a.dim > max_search_dim:
        return "matches-invariants"
    return "isomorphic" if find_isomorphism(a, b) is not None else "different"


# ---------------------------------------------------------------------------
# random search
# ---------------------------------------------------------------------------

def _jacobi_ok(c: np.ndarray, p: int) -> bool:
    jac = (np.einsum("jkm,iml->ijkl", c, c) + np.einsum("kim,jml->ijkl", c, c)
           + np.einsum("ijm,kml->ijkl", c, c)) % p
    return not jac.any()


def random_lie(rng: np.random.Generator, p: int, dim: int, density: float = 0.4,
               attempts: int = JACOBI_ATTEMPTS) -> tuple[Optional[np.ndarray], int]:
    """Sparse random antisymmetric structure constants satisfying Jacobi.

    Returns (tensor or None, rejected attempts).
    """
    for n in range(attempts):
        c = np.zeros((dim, dim, dim), dtype=np.int64)
        for i, j in itertools.combinations(range(dim), 2):
            mask = rng.random(dim) < density
            c[i, j] = rng.integers(0, p, dim) * mask
            c[j, i] = (-c[i, j]) % p
        if _jacobi_ok(c, p):
            return c, n
    return None, attempts


def repair_pmap(rng: np.random.Generator, c: np.ndarray, p: int) -> Optional[np.ndarray]:
    """e_i^[p] = z_i with ad_{z_i} = ad_{e_i}^p, plus a random central element."""
    from .linalg import mat_pow
    d = c.shape[0]
    ad = np.transpose(c, (0, 2, 1)) % p
    lin = ad.reshape(d, d * d).T          # ad_z flattened = lin @ z
    cent = kernel(lin, p)
    pm = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        z = solve(lin, mat_pow(ad[i], p, p).ravel(), p)
        if z is None:
            return None
        if cent.dim:
            z = (z + rng.integers(0, p, cent.dim) @ cent.basis) % p
        pm[i] = z
    return pm


def search_evidence(p: int, dim_max: int, count: int, seed: int,
                    budget: int = DEFAULT_ENUM_BUDGET) -> Report:
    """Draw random restricted algebras and tabulate minimal-simple finds."""
    rng = np.random.default_rng(seed)
    rep = Report("search")
    stats = Counter()
    finds = []
    refs = {3: sl2(p)} if p >= 3 else {}
    if p >= 3:
        refs[p] = witt(p)
    for trial in range(count):
        dim = int(rng.integers(1, dim_max + 1))
        c, rejected = random_lie(rng, p, dim)
        stats["jacobi_rejections"] += rejected
        if c is None:
            stats["discarded_jacobi"] += 1
            continue
        pm = repair_pmap(rng, c, p)
        if pm is None:
            stats["discarded_pmap"] += 1
            continue
        alg = RestrictedLieAlgebra(p, c, pm, name=f"random-{trial}")
        stats["generated"] += 1
        if not is_simple(alg):
            continue
        stats["simple"] += 1
        try:
            v = is_minimal_simple(alg, budget=budget)
        except BudgetExceeded:
            stats["budget"] += 1
            continue
        if v.verdict is not True:
            continue
        stats["minimal_simple"] += 1
        ref = refs.get(alg.dim)
        match = compare(alg, ref, budget=budget) if ref is not None else "different"
        name = ref.name if ref is not None and match != "different" else None
        stats[f"match:{match}"] += 1
        finds.append({"trial": trial, "dim": alg.dim, "match": match, "reference": name})
    rep.data.update({"p": p, "dim_max": dim_max, "count": count, "seed": seed,
                     "stats": dict(sorted(stats.items())), "finds": finds})
    unmatched = [f for f in finds if f["match"] == "different"]
    if unmatched:
        rep.fail("conjecture-evidence", "minimal-simple find matches neither sl2 nor witt",
                 unmatched[0])
    return rep
