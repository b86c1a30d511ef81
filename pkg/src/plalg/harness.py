"""Theorem suite: named, seeded checks of structural results over algebras.

Each :class:`TheoremCheck` belongs to one suite and lists the hypotheses
it needs.  A target that misses a hypothesis gets ``skipped``; a check
that would enumerate past its budget gets ``budget``.  Every ``fail``
carries the algebra file and the offending data.

Randomness comes only from ``numpy.random.default_rng([seed, target
index, crc32(check id)])``, so reports are reproducible check by check
and independent of execution order.
"""

from __future__ import annotations

import json
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Iterable, Optional, Sequence

import numpy as np

from . import analysis as an
from . import tori as tr
from .constructions import (borel2, heisenberg, random_abelian, random_soluble, sl2, witt)
from .core import RestrictedLieAlgebra, quotient, restrict, verify_restricted
from .errors import BudgetExceeded, InvalidModule, NotClosed, PlalgError
from .fileformat import to_dict
from .linalg import DEFAULT_ENUM_BUDGET, Subspace, kernel, mat_pow, rank, solve
from .pmodules import (PModule, action_submodule, adjoint_module, fixed_points, natural_module,
                       trivial_module, verify_vnv, weight_decomposition)

DEFAULT_ELEMENT_BUDGET = 10**6
SAMPLES = 20
SUITES = ("abelian", "nilpotent", "soluble", "module", "frattini", "simple")
STATUSES = ("pass", "fail", "skipped", "budget")


class Fail(Exception):
    """Raised inside a check body; ``detail`` becomes the witness."""

    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.detail = {"message": message, **detail}


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Subspace):
        return obj.basis.tolist()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


# ---------------------------------------------------------------------------
# per-target context with cached structure
# ---------------------------------------------------------------------------

class Target:
    """An algebra, its modules, and lazily computed structure shared by checks."""

    def __init__(self, alg: RestrictedLieAlgebra, index: int = 0, modules: Sequence[PModule] = (),
                 enum_budget: int = DEFAULT_ENUM_BUDGET,
                 element_budget: int = DEFAULT_ELEMENT_BUDGET):
        self.alg = alg
        self.index = index
        self.extra_modules = list(modules)
        self.enum_budget = enum_budget
        self.element_budget = element_budget
        self.label = f"{index}:{alg.name or 'unnamed'}"

    @cached_property
    def abelian(self) -> bool:
        return an.is_abelian(self.alg)

    @cached_property
    def soluble(self) -> bool:
        return an.is_soluble(self.alg)

    @cached_property
    def nilpotent(self) -> bool:
        return an.is_nilpotent(self.alg)

    @cached_property
    def tori(self) -> list:
        return tr.tori(self.alg, self.enum_budget)

    @cached_property
    def maximal_tori(self) -> list:
        return tr._maximal(self.tori)

    @cached_property
    def subalgebras(self) -> list:
        return an.subalgebras(self.alg, False, self.enum_budget)

    @cached_property
    def p_subalgebras(self) -> list:
        return [s for s in self.subalgebras if an.is_p_stable(self.alg, s)]

    @cached_property
    def ideals(self) -> list:
        return [s for s in self.subalgebras if an.is_ideal(self.alg, s)]

    @cached_property
    def p_ideals(self) -> list:
        return [s for s in self.ideals if an.is_p_stable(self.alg, s)]

    @cached_property
    def frattini(self) -> Subspace:
        return an.frattini(self.alg, "plain", self.enum_budget, self.subalgebras)

    @cached_property
    def p_frattini(self) -> Subspace:
        return an.frattini(self.alg, "p", self.enum_budget, self.p_subalgebras)

    @cached_property
    def cartans(self) -> list:
        return [s for s in self.subalgebras if tr.is_cartan(self.alg, s)]

    @cached_property
    def socle(self) -> an.SocleResult:
        return an.socle(self.alg, self.element_budget)

    @cached_property
    def modules(self) -> list:
        mods = [adjoint_module(self.alg), trivial_module(self.alg, 2)]
        try:
            mods.append(natural_module(self.alg))
        except InvalidModule:
            pass
        return mods + self.extra_modules

    def samples(self, rng: np.random.Generator, n: int = SAMPLES) -> np.ndarray:
        return rng.integers(0, self.alg.p, (n, self.alg.dim))

    def fail_witness(self, detail: dict) -> dict:
        return {"algebra": to_dict(self.alg), **_jsonable(detail)}


# ---------------------------------------------------------------------------
# hypotheses
# ---------------------------------------------------------------------------

def _is_field_torus(t: Target) -> bool:
    alg = t.alg
    if not t.abelian or alg.dim == 0:
        return False
    m = tr.pmap_matrix(alg, alg.full_space())
    if not np.array_equal(mat_pow(m, alg.dim, alg.p), np.eye(alg.dim, dtype=np.int64)):
        return False
    from .pmodules import torus_cyclic_generator
    return torus_cyclic_generator(alg, alg.full_space()) is not None


def _same_table(a: RestrictedLieAlgebra, b: RestrictedLieAlgebra) -> bool:
    return a == b


HYPOTHESES: dict[str, Callable[[Target], bool]] = {
    "abelian": lambda t: t.abelian,
    "nilpotent": lambda t: t.nilpotent,
    "soluble": lambda t: t.soluble,
    "non-nilpotent": lambda t: not t.nilpotent,
    "p>dim": lambda t: t.alg.p > t.alg.dim,
    "p>=dim": lambda t: t.alg.p >= t.alg.dim,
    "class<=p": lambda t: (an.nilpotency_class(t.alg) or 0) <= t.alg.p,
    "no-torus": lambda t: all(s.dim == 0 for s in t.tori),
    "has-torus": lambda t: any(s.dim for s in t.tori),
    "no-p-nilpotents": lambda t: tr.p_nilpotent_elements(t.alg, t.element_budget).shape[0] == 0,
    "field-torus": _is_field_torus,
    "p-frattini-zero": lambda t: t.p_frattini.is_zero(),
    "witt": lambda t: t.alg.p >= 3 and _same_table(t.alg, witt(t.alg.p)),
    "witt-or-sl2": lambda t: t.alg.p >= 3 and (_same_table(t.alg, witt(t.alg.p))
                                               or _same_table(t.alg, sl2(t.alg.p))),
}


@dataclass(frozen=True)
class TheoremCheck:
    id: str
    suite: str
    hypotheses: tuple
    statement: str
    body: Callable[[Target, np.random.Generator], None] = field(compare=False, repr=False)


REGISTRY: dict[str, TheoremCheck] = {}


def check(cid: str, suite: str, statement: str, needs: Iterable[str] = ()):
    def deco(fn):
        if cid in REGISTRY:
            raise ValueError(f"duplicate check id {cid}")
        for h in needs:
            if h not in HYPOTHESES:
                raise ValueError(f"unknown hypothesis {h}")
        REGISTRY[cid] = TheoremCheck(cid, suite, tuple(needs), statement, fn)
        return fn
    return deco


def _vl(v) -> list[int]:
    return [int(a) for a in np.asarray(v).ravel()]


def _rows(arr: np.ndarray) -> set:
    return set(map(tuple, np.asarray(arr).tolist()))


def _need_elements(t: Target, s: Subspace, what: str):
    if s.size() > t.element_budget:
        raise BudgetExceeded(what, s.size(), t.element_budget)


def _random_subalgebra(t: Target, rng: np.random.Generator) -> Subspace:
    k = int(rng.integers(1, 3))
    return an.closure(t.alg, t.samples(rng, k), "subalgebra")


# ---------------------------------------------------------------------------
# abelian suite: elementwise p-map facts and the abelian structure theory
# ---------------------------------------------------------------------------

@check("restricted-axioms", "abelian", "Jacobi and [x^[p], y] = ad_x^p(y)")
def _restricted_axioms(t: Target, rng):
    rep = verify_restricted(t.alg, t.element_budget)
    if not rep.passed:
        raise Fail("restricted axioms violated", finding=rep.findings[0])


@check("fold-order-independence", "abelian",
       "the Jacobson fold of x^[p] does not depend on the order of basis terms")
def _fold_order(t: Target, rng):
    alg = t.alg
    for x in t.samples(rng):
        a, b = alg.p_power(x), alg.p_power(x, order="descending")
        if not np.array_equal(a, b):
            raise Fail("fold orders disagree", x=x, ascending=a, descending=b)


@check("torus-surjective-iff-injective", "abelian",
       "on an abelian p-subalgebra, phi is onto iff it has zero kernel iff it is a torus",
       ["abelian"])
def _torus_iff(t: Target, rng):
    alg = t.alg
    spaces = [alg.full_space()] + [tr.p_envelope(alg, x) for x in t.samples(rng, 10)]
    for s in spaces:
        if s.dim == 0:
            continue
        m = tr.pmap_matrix(alg, s)
        onto = rank(m, alg.p) == s.dim
        injective = kernel(m, alg.p).is_zero()
        if onto != injective or onto != tr.is_torus(alg, s):
            raise Fail("surjectivity, injectivity and torus test disagree", subspace=s)


@check("abelian-toral-decomposition", "abelian",
       "a = t + u with phi bijective on t, nilpotent on u, and t pure", ["abelian"])
def _toral(t: Target, rng):
    alg = t.alg
    sp = tr.toral_decomposition(alg)
    a, tt, u = alg.full_space(), sp.torus, sp.unipotent
    if (tt + u) != a or not (tt & u).is_zero():
        raise Fail("t + u is not a direct decomposition", t=tt, u=u)
    if tt.dim and rank(tr.pmap_matrix(alg, tt), alg.p) != tt.dim:
        raise Fail("phi is not bijective on t", t=tt)
    if u.dim and mat_pow(tr.pmap_matrix(alg, u), alg.dim, alg.p).any():
        raise Fail("phi^dim does not vanish on u", u=u)
    if not tr.purity(alg, a, tt, "check"):
        raise Fail("toral part is not pure", t=tt)


@check("purity-lemma-step", "abelian",
       "for pure b and x of height n over b, <b, x>_p = b + d(y) with y = x - b0, y^{p^n} = 0",
       ["abelian"])
def _purity_step(t: Target, rng):
    alg, p = t.alg, t.alg.p
    a = alg.full_space()
    for b in (alg.zero_space(), tr.toral_decomposition(alg).torus):
        if not tr.purity(alg, a, b, "check"):
            raise Fail("expected a pure subalgebra", b=b)
        mb = tr.pmap_matrix(alg, b) if b.dim else np.zeros((0, 0), np.int64)
        for x in t.samples(rng, 5):
            if b.contains(x):
                continue
            n, z = 0, x
            while not b.contains(z):
                z = alg.p_power(z)
                n += 1
                if n > alg.dim:
                    break
            if not b.contains(z):
                continue        # x has no finite height over b
            if b.dim:
                sol = solve(mat_pow(mb, n, p), b.coords(z), p)
                if sol is None:
                    raise Fail("no b0 with b0^{p^n} = x^{p^n}", x=x, b=b, n=n)
                b0 = (sol @ b.basis) % p
            else:
                b0 = alg.zero()
            y = (x - b0) % p
            chain = [y]
            for _ in range(n - 1):
                chain.append(alg.p_power(chain[-1]))
            c = alg.span(np.array(chain))
            if alg.p_power_iter(y, n).any():
                raise Fail("y^{p^n} != 0", x=x, y=y, n=n)
            if c.dim != n or not (c & b).is_zero():
                raise Fail("d(y) is not a free complement of length n", x=x, y=y, n=n)
            if b + c != b + tr.p_envelope(alg, x):
                raise Fail("b + d(y) differs from b + d(x)", x=x, y=y)


@check("pure-complement", "abelian",
       "a pure b with a/b of bounded exponent has a p-nilpotent p-complement", ["abelian"])
def _pure_complement(t: Target, rng):
    alg = t.alg
    a = alg.full_space()
    b = tr.toral_decomposition(alg).torus
    c = tr.purity(alg, a, b, "complement")
    if (b + c) != a or not (b & c).is_zero():
        raise Fail("complement is not direct", b=b, c=c)
    if not an.is_p_stable(alg, c):
        raise Fail("complement is not p-stable", c=c)
    if c.dim and mat_pow(tr.pmap_matrix(alg, c), c.dim, alg.p).any():
        raise Fail("complement is not p-nilpotent", c=c)


@check("unique-p-th-roots", "abelian",
       "without nonzero p-nilpotents every element has exactly one p-th root",
       ["no-p-nilpotents"])
def _roots(t: Target, rng):
    alg = t.alg
    full = alg.full_space()
    _need_elements(t, full, "p-th root scan")
    xs = full.element_array()
    ys = alg.p_power_many(xs)
    if len(_rows(ys)) != xs.shape[0]:
        seen: dict = {}
        for x, y in zip(xs.tolist(), ys.tolist()):
            if tuple(y) in seen:
                raise Fail("two p-th roots", target=y, roots=[seen[tuple(y)], x])
            seen[tuple(y)] = x
    for x in t.samples(rng, 5):
        r = tr.p_th_root(alg, x, t.element_budget, check_hypothesis=False)
        if not np.array_equal(alg.p_power(r), x):
            raise Fail("returned root is wrong", x=x, root=r)


@check("p-nilpotent-lifting", "abelian",
       "if f(x) is p-nilpotent then f(x) = f(x') for some p-nilpotent x'")
def _lifting(t: Target, rng):
    alg = t.alg
    for seed_x in t.samples(rng, 4):
        i = an.closure(alg, an.closure(alg, [seed_x], "ideal"), "p_closure")
        if i.is_full():
            continue
        q, f = quotient(alg, i)
        cands = [x for x in t.samples(rng, 10) if tr.is_p_nilpotent(q, f(x))]
        if i.dim:
            cands.append((rng.integers(0, alg.p, i.dim) @ i.basis) % alg.p)
        for x in cands:
            try:
                xl = tr.lift_p_nilpotent(f, x)
            except PlalgError as exc:
                raise Fail(str(exc), x=x, ideal=i) from None
            if not tr.is_p_nilpotent(alg, xl) or not np.array_equal(f(xl), f(x)):
                raise Fail("lift is wrong", x=x, lift=xl, ideal=i)


@check("jordan-decomposition", "abelian",
       "x = s + n with s semisimple, n p-nilpotent, [s, n] = 0, both in d(x)")
def _jordan(t: Target, rng):
    alg = t.alg
    for x in t.samples(rng, 10):
        kind, jp = tr.classify_element(alg, x)
        s, n = jp.semisimple_part, jp.nilpotent_part
        d = tr.p_envelope(alg, x)
        if not np.array_equal((s + n) % alg.p, alg.vec(x)):
            raise Fail("parts do not sum to x", x=x, s=s, n=n)
        if not tr.is_semisimple(alg, s) or not tr.is_p_nilpotent(alg, n):
            raise Fail("parts have the wrong type", x=x, s=s, n=n)
        if alg.bracket(s, n).any() or not d.contains_all([s, n]):
            raise Fail("parts do not commute or leave d(x)", x=x, s=s, n=n)


@check("cyclic-generator", "abelian",
       "finitely many semisimple elements of a field torus generate a cyclic F_p[phi]-module",
       ["field-torus"])
def _cyclic(t: Target, rng):
    from .pmodules import torus_cyclic_generator
    alg = t.alg
    for _ in range(10):
        gens = t.samples(rng, int(rng.integers(1, 4)))
        s = an.generated_p_subalgebra(alg, gens)
        g = torus_cyclic_generator(alg, s)
        if g is None or tr.p_envelope(alg, g) != s:
            raise Fail("no cyclic generator", generators=gens, module=s)


@check("field-torus-excellent", "abelian",
       "every p-subalgebra of a field torus is spanned by its semisimple elements",
       ["field-torus"])
def _excellent(t: Target, rng):
    alg = t.alg
    for s in t.p_subalgebras:
        ss = [x for x in s.projective_array() if tr.is_semisimple(alg, x)]
        if (alg.span(np.array(ss)) if ss else alg.zero_space()) != s:
            raise Fail("semisimple elements do not span", subalgebra=s)


# ---------------------------------------------------------------------------
# nilpotent suite: basic p-closure facts and nilpotent structure
# ---------------------------------------------------------------------------

@check("jacobson-terms-lower-central", "nilpotent",
       "each s_i(x, y) lies in the p-th lower central term of the subalgebra generated by x, y")
def _si_words(t: Target, rng):
    alg = t.alg
    for x, y in t.samples(rng, 10).reshape(5, 2, alg.dim):
        h = an.closure(alg, [x, y], "subalgebra")
        cp = _series_terms(alg, h, "lower_central", alg.p - 1)[-1]
        for i, s in enumerate(alg.jacobson_si(x, y), start=1):
            if not cp.contains(s):
                raise Fail("s_i leaves the p-th lower central term", x=x, y=y, i=i, s_i=s,
                           term=cp)


@check("commuting-ppower-additive", "nilpotent", "[x, y] = 0 implies (x+y)^[p] = x^[p] + y^[p]")
def _commuting(t: Target, rng):
    alg, p = t.alg, t.alg.p
    for x in t.samples(rng, 10):
        c = an.centralizer(alg, alg.span([x]))
        y = (rng.integers(0, p, c.dim) @ c.basis) % p if c.dim else alg.zero()
        lhs = alg.p_power((x + y) % p)
        rhs = (alg.p_power(x) + alg.p_power(y)) % p
        if not np.array_equal(lhs, rhs):
            raise Fail("p-map not additive on a commuting pair", x=x, y=y)


@check("ppower-bracket-identity", "nilpotent",
       "[x^{p^i}, y^{p^j}] = ad_x^{p^i - 1} ad_y^{p^j - 1} [x, y]")
def _bracket_identity(t: Target, rng):
    alg, p = t.alg, t.alg.p
    for x, y in t.samples(rng, 20).reshape(10, 2, alg.dim):
        i, j = (int(v) for v in rng.integers(0, 3, 2))
        lhs = alg.bracket(alg.p_power_iter(x, i), alg.p_power_iter(y, j))
        rhs = (mat_pow(alg.ad_matrix(x), p ** i - 1, p)
               @ mat_pow(alg.ad_matrix(y), p ** j - 1, p) @ alg.bracket(x, y)) % p
        if not np.array_equal(lhs, rhs):
            raise Fail("identity fails", x=x, y=y, i=i, j=j)


def _ppower_span(t: Target, h: Subspace) -> Subspace:
    """Span of all iterated p-th powers of all elements of h."""
    alg = t.alg
    _need_elements(t, h, "p-power span")
    cur = h.element_array()
    acc = h
    for _ in range(alg.dim):
        cur = alg.p_power_many(cur)
        acc = acc + alg.span(cur)
    return acc


@check("p-closure-bracket-closed", "nilpotent",
       "for a subalgebra h, the span of all h^{[p]^i} is the least p-subalgebra over h")
def _pclosure(t: Target, rng):
    alg = t.alg
    for _ in range(5):
        h = _random_subalgebra(t, rng)
        try:
            hp = an.closure(alg, h, "p_closure")
        except NotClosed as exc:
            raise Fail(str(exc), subalgebra=h, bracket=exc.witness) from None
        if _ppower_span(t, h) != hp or not an.is_p_subalgebra(alg, hp):
            raise Fail("p-closure differs from the p-power span", subalgebra=h, closure=hp)


def _series_terms(alg: RestrictedLieAlgebra, s: Subspace, kind: str, n: int) -> list:
    out = [s]
    for _ in range(n):
        other = out[-1] if kind == "derived" else s
        out.append(an.bracket_space(alg, other, out[-1]))
    return out


@check("p-closure-preserves-class", "nilpotent",
       "h_p and h have the same derived and lower central terms from the first on")
def _pclosure_class(t: Target, rng):
    alg = t.alg
    for _ in range(5):
        h = _random_subalgebra(t, rng)
        hp = an.closure(alg, h, "p_closure")
        for kind in ("derived", "lower_central"):
            a = _series_terms(alg, h, kind, alg.dim + 1)
            b = _series_terms(alg, hp, kind, alg.dim + 1)
            if a[1:] != b[1:]:
                raise Fail(f"{kind} terms differ", subalgebra=h, closure=hp,
                           dims_h=[s.dim for s in a], dims_hp=[s.dim for s in b])


@check("p-closure-of-ideal", "nilpotent", "the p-closure of an ideal is an ideal")
def _pclosure_ideal(t: Target, rng):
    alg = t.alg
    for x in t.samples(rng, 5):
        i = an.closure(alg, [x], "ideal")
        ip = an.closure(alg, i, "p_closure")
        if not an.is_ideal(alg, ip):
            raise Fail("p-closure of an ideal is not an ideal", ideal=i, closure=ip)


@check("abelian-ideal-ppower-central", "nilpotent",
       "p-th powers of elements of an abelian ideal are central")
def _abelian_ideal(t: Target, rng):
    alg = t.alg
    z = an.center(alg)
    for i in t.ideals:
        if i.dim == 0 or not an.is_abelian(alg, i):
            continue
        # the p-map is additive on the abelian ideal i, so a basis suffices
        for b, bp in zip(i.basis, alg.p_power_many(i.basis)):
            if not z.contains(bp):
                raise Fail("p-th power not central", ideal=i, x=b, x_p=bp)


@check("transporters-p-stable", "nilpotent",
       "centralizers, normalizers, upper central terms and the Fitting ideal are p-subalgebras")
def _transporters(t: Target, rng):
    alg = t.alg
    for _ in range(5):
        xs = t.samples(rng, int(rng.integers(1, 3)))
        s = alg.span(xs)
        for name, sp in (("centralizer", an.centralizer(alg, s)),
                         ("normalizer", an.normalizer(alg, s))):
            if not an.is_p_subalgebra(alg, sp):
                raise Fail(f"{name} is not a p-subalgebra", subset=xs, space=sp)
    for k, z in enumerate(an.series(alg, kind="upper_central").terms):
        if not an.is_p_stable(alg, z):
            raise Fail("upper central term is not p-stable", index=k, space=z)
    f = an.fitting(alg, t.element_budget)
    if not an.is_p_subalgebra(alg, f):
        raise Fail("Fitting ideal is not a p-subalgebra", fitting=f)


@check("nilpotent-tori-central", "nilpotent", "every torus of a nilpotent algebra is central",
       ["nilpotent"])
def _nil_tori(t: Target, rng):
    full = t.alg.full_space()
    for s in t.tori:
        if not an.bracket_space(t.alg, s, full).is_zero():
            raise Fail("non-central torus", torus=s)


@check("fitting-torus-central", "nilpotent",
       "a torus inside a nilpotent ideal of class at most p-1 is central")
def _fitting_torus(t: Target, rng):
    alg = t.alg
    full = alg.full_space()
    small = [i for i in t.ideals
             if i.dim and (an.nilpotency_class(alg, i) or alg.p) <= alg.p - 1]
    for s in t.tori:
        if s.dim and any(s.issubset(i) for i in small):
            if not an.bracket_space(alg, s, full).is_zero():
                raise Fail("torus in a small-class nilpotent ideal is not central", torus=s)


@check("nilpotent-structure", "nilpotent",
       "nilpotent of class <= p: n = t + u, t the central maximal torus, u p-nilpotent",
       ["nilpotent", "class<=p"])
def _nil_structure(t: Target, rng):
    alg = t.alg
    try:
        sp = tr.nilpotent_decomposition(alg, budget=t.element_budget)
    except BudgetExceeded:
        raise
    except PlalgError as exc:
        raise Fail(str(exc), witness=exc.witness) from None
    if not an.is_p_stable(alg, sp.unipotent):
        raise Fail("u is not p-stable", u=sp.unipotent)
    if t.maximal_tori != [sp.torus]:
        raise Fail("t is not the unique maximal torus", t=sp.torus, maximal=t.maximal_tori)


# ---------------------------------------------------------------------------
# soluble suite
# ---------------------------------------------------------------------------

@check("nilpotency-criterion", "soluble",
       "soluble, p > dim, and no nonzero torus imply nilpotent",
       ["soluble", "p>dim", "no-torus"])
def _nil_criterion(t: Target, rng):
    if not t.nilpotent:
        raise Fail("torus-free soluble algebra is not nilpotent",
                   lower_central=an.series(t.alg, kind="lower_central").dims)


def _quotient_is_torus(alg: RestrictedLieAlgebra, h: Subspace, i: Subspace) -> bool:
    """h/i is a torus, for a p-ideal i of the p-subalgebra h."""
    if not an.bracket_space(alg, h, h).issubset(i):
        return False
    # on the abelian quotient the p-map is additive, so its image is spanned
    # by the images of a basis
    return (alg.span(alg.p_power_many(h.basis)) + i) == h if h.dim else True


@check("torus-extension-maximality", "soluble",
       "if i is a torus p-ideal of h and h/i is a torus then h is a torus", ["soluble"])
def _extension(t: Target, rng):
    alg = t.alg
    for h in t.p_subalgebras:
        for s in t.tori:
            if s.dim == 0 or not s.issubset(h) or not an.bracket_space(alg, h, s).issubset(s):
                continue
            if _quotient_is_torus(alg, h, s) and not tr.is_torus(alg, h):
                raise Fail("extension of tori is not a torus", h=h, i=s)


@check("torus-centralizer-nilpotent", "soluble",
       "for a maximal torus t with C(t) proper soluble, C(t) is a nilpotent p-subalgebra and N(C(t)) = C(t)",
       ["soluble", "p>=dim"])
def _cent_nil(t: Target, rng):
    alg = t.alg
    for s in t.maximal_tori:
        c = an.centralizer(alg, s)
        if c.is_full():
            continue
        if not an.is_nilpotent(alg, c) or not an.is_p_stable(alg, c):
            raise Fail("C(t) is not a nilpotent p-subalgebra", torus=s, centralizer=c)
        if an.normalizer(alg, c) != c:
            raise Fail("C(t) is not self-normalizing", torus=s, centralizer=c)


@check("engel-equals-centralizer", "soluble", "E(t) = C(t) for every torus t",
       ["soluble", "p>dim"])
def _engel_c(t: Target, rng):
    alg = t.alg
    for s in t.tori:
        e, c = tr.engel(alg, s, t.element_budget), an.centralizer(alg, s)
        if e != c:
            raise Fail("Engel subalgebra differs from centralizer", torus=s, engel=e, centralizer=c)


@check("generalized-centralizer", "soluble",
       "E(h) = E(t) for a nilpotent p-subalgebra h and a nonzero torus t maximal in h",
       ["soluble", "p>dim"])
def _gen_cent(t: Target, rng):
    alg = t.alg
    for h in t.p_subalgebras:
        if h.dim == 0 or not an.is_nilpotent(alg, h):
            continue
        inner = tr._maximal([s for s in t.tori if s.issubset(h)])
        eh = None
        for s in inner:
            if s.dim == 0:
                continue
            eh = tr.engel(alg, h, t.element_budget) if eh is None else eh
            es = tr.engel(alg, s, t.element_budget)
            if eh != es:
                raise Fail("E(h) != E(t)", h=h, torus=s, engel_h=eh, engel_t=es)


@check("cartan-centralizer-correspondence", "soluble",
       "the Cartan subalgebras are exactly the centralizers of the nonzero maximal tori",
       ["soluble", "non-nilpotent", "p>dim"])
def _cartan(t: Target, rng):
    alg = t.alg
    res = tr.cartan_subalgebras(alg, element_budget=t.element_budget, enum_budget=t.enum_budget)
    if not res.agree:
        raise Fail("Engel and torus routes differ", engel=res.engel_route, torus=res.torus_route)
    if res.abnormal_failures:
        raise Fail("Cartan subalgebra not abnormal", failure=res.abnormal_failures[0])
    if any(s.dim == 0 for s in t.maximal_tori):
        raise Fail("zero maximal torus in a non-nilpotent algebra")
    if t.cartans != res.torus_route:
        raise Fail("exhaustive Cartan list differs", exhaustive=t.cartans, torus=res.torus_route)


@check("derived-plus-cartan", "soluble", "g = g' + c for every Cartan subalgebra c",
       ["soluble", "non-nilpotent", "p>dim"])
def _derived_cartan(t: Target, rng):
    alg = t.alg
    d = an.derived_algebra(alg)
    for c in t.cartans:
        if not (d + c).is_full():
            raise Fail("g' + c is proper", cartan=c, derived=d)


@check("quotient-maximal-tori", "soluble",
       "for a p-ideal i the maximal tori of g/i are exactly the images of those of g",
       ["soluble", "p>dim"])
def _quotient_tori(t: Target, rng):
    alg = t.alg
    for i in t.p_ideals:
        if i.dim == 0 or i.is_full():
            continue
        q, f = quotient(alg, i)
        images = {Subspace.span((f.matrix @ s.basis.T).T, alg.p, q.dim) for s in t.maximal_tori}
        qm = set(tr.maximal_tori(q, True, t.enum_budget))
        if images != qm:
            raise Fail("images of maximal tori are not the maximal tori of the quotient",
                       ideal=i, images=sorted(images, key=Subspace.sort_key),
                       quotient_tori=sorted(qm, key=Subspace.sort_key))


@check("torus-rank-constant", "soluble", "all maximal tori have the same dimension",
       ["soluble", "p>dim"])
def _rank_const(t: Target, rng):
    dims = sorted({s.dim for s in t.maximal_tori})
    if len(dims) > 1:
        raise Fail("maximal tori of different dimensions", dims=dims, tori=t.maximal_tori)


@check("minimal-ideal-abelian-p-ideal", "soluble",
       "in a soluble algebra every minimal ideal is an abelian p-ideal", ["soluble"])
def _minimal_ideal(t: Target, rng):
    alg = t.alg
    for i in an.minimal_ideals(alg, t.element_budget):
        if not an.is_abelian(alg, i):
            raise Fail("minimal ideal is not abelian", ideal=i)
        w = next((b for b in i.basis if not i.contains(alg.p_power(b))), None)
        if w is not None:
            raise Fail("minimal ideal is not p-stable", ideal=i, x=w, x_p=alg.p_power(w))


# ---------------------------------------------------------------------------
# module suite
# ---------------------------------------------------------------------------

def _nonzero_tori(t: Target) -> list:
    return [s for s in t.tori if s.dim]


@check("p-module-axioms", "module", "rho preserves brackets and p-th powers")
def _module_axioms(t: Target, rng):
    for m in t.modules:
        problem = m.check(int(rng.integers(0, 2**31)), SAMPLES)
        if problem:
            raise Fail("module axioms fail", module=m.name, problem=problem)


@check("vnv-identity", "module", "V = V^t + [t, V] for a torus t", ["has-torus"])
def _vnv(t: Target, rng):
    for m in t.modules:
        for s in _nonzero_tori(t):
            rep = verify_vnv(m, s, t.element_budget)
            if not rep.passed:
                raise Fail("V^t + [t, V] is proper", module=m.name, torus=s, data=rep.data)


@check("weight-space-criterion", "module", "V^t and [t, V] meet trivially for a torus t",
       ["has-torus"])
def _vt_cap(t: Target, rng):
    for m in t.modules:
        for s in _nonzero_tori(t):
            cap = fixed_points(m, s) & action_submodule(m, s)
            if not cap.is_zero():
                raise Fail("V^t meets [t, V]", module=m.name, torus=s, intersection=cap)


@check("normalizer-equals-centralizer", "module", "N(t) = C(t) for a torus t", ["has-torus"])
def _n_eq_c(t: Target, rng):
    alg = t.alg
    for s in _nonzero_tori(t):
        n, c = an.normalizer(alg, s), an.centralizer(alg, s)
        if n != c:
            raise Fail("normalizer exceeds centralizer", torus=s, normalizer=n, centralizer=c)


@check("torus-weight-decomposition", "module",
       "V = V^t + V_1 + ... + V_r directly, with each V_i t-stable", ["has-torus"])
def _weights(t: Target, rng):
    for m in t.modules:
        for s in _nonzero_tori(t):
            try:
                wd = weight_decomposition(m, s, t.element_budget)
            except BudgetExceeded:
                raise
            except PlalgError as exc:
                raise Fail(str(exc), module=m.name, torus=s) from None
            for w in wd.components:
                for b in s.basis:
                    img = (m.act(b) @ w.basis.T).T % t.alg.p
                    if not w.contains_all(img):
                        raise Fail("component is not t-stable", module=m.name, torus=s,
                                   component=w)


@check("maschke-decomposition", "module",
       "the part of V without fixed vectors is a direct sum of irreducible t-modules",
       ["has-torus"])
def _maschke(t: Target, rng):
    for m in t.modules:
        for s in _nonzero_tori(t):
            wd = weight_decomposition(m, s, t.element_budget)
            bad = [w for w, ok in zip(wd.components, wd.irreducible) if not ok]
            if bad:
                raise Fail("component is reducible", module=m.name, torus=s, component=bad[0])
            for w in wd.components:
                if not (w & wd.fixed).is_zero():
                    raise Fail("component has fixed vectors", module=m.name, torus=s,
                               component=w)


# ---------------------------------------------------------------------------
# Frattini suite
# ---------------------------------------------------------------------------

def _frattini_within(h: Subspace, subs: list, ambient: Subspace) -> Subspace:
    """Intersection of the maximal members of ``subs`` properly inside h."""
    inner = sorted((s for s in subs if s < h), key=lambda s: -s.dim)
    found: list = []
    for s in inner:
        if not any(s.issubset(m) for m in found if m.dim > s.dim):
            found.append(s)
    out = h
    for m in found:
        out = out & m
    return out


@check("p-frattini-ideal", "frattini", "Phi_p(g) is a p-ideal", ["soluble", "p>dim"])
def _pf_ideal(t: Target, rng):
    f = t.p_frattini
    if not an.is_ideal(t.alg, f) or not an.is_p_stable(t.alg, f):
        raise Fail("Phi_p is not a p-ideal", p_frattini=f)


@check("p-frattini-nilpotent", "frattini", "Phi_p(g) is nilpotent", ["soluble", "p>dim"])
def _pf_nil(t: Target, rng):
    if not an.is_nilpotent(t.alg, t.p_frattini):
        raise Fail("Phi_p is not nilpotent", p_frattini=t.p_frattini)


@check("frattini-in-p-frattini", "frattini", "Phi(g) is contained in Phi_p(g)",
       ["soluble", "p>dim"])
def _f_in_pf(t: Target, rng):
    if not t.frattini.issubset(t.p_frattini):
        raise Fail("Phi not inside Phi_p", frattini=t.frattini, p_frattini=t.p_frattini)


@check("frattini-inheritance", "frattini",
       "an ideal of g inside Phi(h) for a subalgebra h lies in Phi(g); likewise for p-versions")
def _inherit(t: Target, rng):
    alg = t.alg
    for restricted in (False, True):
        subs = t.p_subalgebras if restricted else t.subalgebras
        ideals = t.p_ideals if restricted else t.ideals
        top = t.p_frattini if restricted else t.frattini
        pool = [s for s in subs if s.dim and not s.is_full()]
        if not pool:
            continue
        pick = rng.choice(len(pool), size=min(8, len(pool)), replace=False)
        for k in sorted(int(v) for v in pick):
            h = pool[k]
            ph = _frattini_within(h, subs, alg.full_space())
            for i in ideals:
                if i.dim and i.issubset(ph) and not i.issubset(top):
                    raise Fail("ideal in Phi(h) not in Phi(g)", restricted=restricted,
                               h=h, phi_h=ph, ideal=i)


@check("frattini-splitting-lemma", "frattini",
       "an abelian (p-)ideal meeting Phi (Phi_p) trivially has a (p-)subalgebra complement")
def _f_split(t: Target, rng):
    alg = t.alg
    for restricted in (False, True):
        ideals = t.p_ideals if restricted else t.ideals
        top = t.p_frattini if restricted else t.frattini
        for i in ideals:
            if i.dim == 0 or not an.is_abelian(alg, i) or not (i & top).is_zero():
                continue
            if an.split_over(alg, i, restricted, t.enum_budget) is None:
                raise Fail("no complement", restricted=restricted, ideal=i)


@check("socle-direct-abelian-ideal", "frattini",
       "the socle is an abelian ideal and a direct sum of minimal abelian ideals")
def _socle(t: Target, rng):
    alg = t.alg
    s = t.socle
    if not an.is_ideal(alg, s.socle) or not an.is_abelian(alg, s.socle):
        raise Fail("socle is not an abelian ideal", socle=s.socle)
    if sum(c.dim for c in s.components) != s.socle.dim:
        raise Fail("components are not independent", components=s.components)


@check("socle-p-stable", "frattini", "the socle of a restricted algebra is p-stable")
def _socle_p(t: Target, rng):
    alg = t.alg
    s = t.socle.socle
    w = next((b for b in s.basis if not s.contains(alg.p_power(b))), None)
    if w is not None:
        raise Fail("socle is not p-stable", socle=s, x=w, x_p=alg.p_power(w),
                   minimal_abelian=t.socle.minimal_abelian)


@check("p-frattini-splitting", "frattini",
       "Phi_p(g) = 0 implies g = S(g) + h for a p-subalgebra h",
       ["soluble", "p>dim", "p-frattini-zero"])
def _pf_split(t: Target, rng):
    s = t.socle.socle
    if an.split_over(t.alg, s, True, t.enum_budget) is None:
        raise Fail("no p-subalgebra complement to the socle", socle=s)


@check("socle-frattini-criterion", "frattini",
       "Phi(g) = 0 iff g = S(g) + h for a subalgebra h", ["soluble", "p>dim"])
def _socle_frattini(t: Target, rng):
    s = t.socle.socle
    comp = an.split_over(t.alg, s, False, t.enum_budget)
    zero = t.frattini.is_zero()
    if zero != (comp is not None):
        raise Fail("biconditional fails", frattini=t.frattini, socle=s,
                   direction="forward" if zero else "backward", complement=comp)


@check("abelian-maximal-p-closed", "frattini",
       "an abelian maximal subalgebra that is not an ideal is a p-subalgebra")
def _abelian_max(t: Target, rng):
    alg = t.alg
    for m in an.maximal_subalgebras(alg, False, t.enum_budget, t.subalgebras):
        if an.is_abelian(alg, m) and not an.is_ideal(alg, m) and not an.is_p_stable(alg, m):
            raise Fail("abelian maximal subalgebra is not p-stable", maximal=m)


# ---------------------------------------------------------------------------
# simple suite: the Witt algebra and the minimal-simple predicate
# ---------------------------------------------------------------------------

@check("witt-simple", "simple", "W(1,1) is simple", ["witt"])
def _witt_simple(t: Target, rng):
    from .simplicity import is_simple
    if not is_simple(t.alg, budget=t.element_budget):
        raise Fail("Witt algebra has a proper ideal")


@check("witt-semisimple-basis", "simple", "e_0 is the only semisimple basis vector of W(1,1)",
       ["witt"])
def _witt_ss(t: Target, rng):
    alg = t.alg
    ss = [i for i in range(alg.dim) if tr.is_semisimple(alg, alg.basis_vector(i))]
    if ss != [1]:
        raise Fail("unexpected semisimple basis vectors",
                   semisimple=[alg.basis_names[i] for i in ss])


@check("witt-sl2-embedding", "simple", "span(e_-1, e_0, e_1) is a p-subalgebra isomorphic to sl2",
       ["witt"])
def _witt_sl2(t: Target, rng):
    from .simplicity import find_isomorphism
    alg = t.alg
    s = alg.span(np.eye(alg.dim, dtype=np.int64)[:3])
    if not an.is_p_subalgebra(alg, s):
        raise Fail("span(e_-1, e_0, e_1) is not a p-subalgebra", subspace=s)
    sub, _ = restrict(alg, s)
    if find_isomorphism(sl2(alg.p), sub) is None:
        raise Fail("restriction is not isomorphic to sl2", subspace=s)


@check("minimal-simple-predicate", "simple",
       "sl2 and W(1,1) are minimal simple: simple, dim <= p, soluble normalizers",
       ["witt-or-sl2"])
def _minimal(t: Target, rng):
    from .simplicity import is_minimal_simple
    v = is_minimal_simple(t.alg, "exhaustive", budget=t.enum_budget)
    if v.verdict is not True:
        raise Fail("verdict is not true", verdict=v.to_dict())


# ---------------------------------------------------------------------------
# completeness ledger: every embodied result maps to registered checks
# ---------------------------------------------------------------------------

LEDGER: dict[str, tuple] = {
    "restricted axioms and Jacobson's formula": ("restricted-axioms", "fold-order-independence"),
    "s_i are Lie words of degree p; commuting p-map additive": ("jacobson-terms-lower-central",
                                                       "commuting-ppower-additive"),
    "p-closure is the span of iterated p-powers": ("p-closure-bracket-closed",
                                                   "ppower-bracket-identity"),
    "p-closure keeps derived and nilpotency class": ("p-closure-preserves-class",),
    "p-closure of an ideal is an ideal": ("p-closure-of-ideal",),
    "abelian ideal p-powers central; minimal ideals": ("abelian-ideal-ppower-central",
                                                       "minimal-ideal-abelian-p-ideal"),
    "transporters are p-subalgebras": ("transporters-p-stable",),
    "torus iff phi onto iff phi injective": ("torus-surjective-iff-injective",),
    "purity passes to one p-power step": ("purity-lemma-step",),
    "pure p-subalgebras have p-complements": ("pure-complement",),
    "abelian toral decomposition": ("abelian-toral-decomposition",),
    "unique p-th roots": ("unique-p-th-roots",),
    "p-nilpotent lifting": ("p-nilpotent-lifting",),
    "p-modules": ("p-module-axioms",),
    "Maschke decomposition for tori": ("maschke-decomposition",),
    "V = V^n + [n, V]": ("vnv-identity",),
    "normalizer equals centralizer": ("normalizer-equals-centralizer",),
    "weight-space criterion": ("weight-space-criterion",),
    "semisimple elements": ("jordan-decomposition",),
    "cyclic generator in a field": ("cyclic-generator",),
    "field torus is excellent": ("field-torus-excellent",),
    "final weight decomposition": ("torus-weight-decomposition",),
    "tori of nilpotent algebras are central": ("nilpotent-tori-central",),
    "torus in small-class nilpotent ideal is central": ("fitting-torus-central",),
    "nilpotent structure t + u": ("nilpotent-structure",),
    "nilpotency criterion": ("nilpotency-criterion",),
    "torus extension maximality": ("torus-extension-maximality",),
    "centralizer of maximal torus nilpotent": ("torus-centralizer-nilpotent",),
    "E(t) = C(t)": ("engel-equals-centralizer",),
    "generalized centralizer E(h) = E(t)": ("generalized-centralizer",),
    "Cartan subalgebras are torus centralizers": ("cartan-centralizer-correspondence",),
    "g = g' + c": ("derived-plus-cartan",),
    "quotient maximal tori": ("quotient-maximal-tori",),
    "constant torus rank": ("torus-rank-constant",),
    "Phi_p is a p-ideal": ("p-frattini-ideal",),
    "Phi_p is nilpotent": ("p-frattini-nilpotent",),
    "abelian maximal subalgebra is p-closed": ("abelian-maximal-p-closed",),
    "Frattini inheritance": ("frattini-inheritance",),
    "Frattini splitting": ("frattini-splitting-lemma",),
    "socle of a soluble algebra": ("socle-direct-abelian-ideal", "socle-p-stable"),
    "p-Frattini splitting over the socle": ("p-frattini-splitting",),
    "socle and Frattini criterion": ("socle-frattini-criterion",),
    "Phi inside Phi_p": ("frattini-in-p-frattini",),
    "Witt algebra": ("witt-simple", "witt-semisimple-basis"),
    "sl2 inside Witt": ("witt-sl2-embedding",),
    "minimal simple predicate": ("minimal-simple-predicate",),
}


def _check_ledger() -> None:
    mapped = {c for ids in LEDGER.values() for c in ids}
    unknown = mapped - set(REGISTRY)
    orphan = set(REGISTRY) - mapped
    if unknown or orphan:
        raise RuntimeError(f"completeness ledger diverges: unknown={sorted(unknown)}, "
                           f"unmapped={sorted(orphan)}")


_check_ledger()


# ---------------------------------------------------------------------------
# running suites
# ---------------------------------------------------------------------------

def checks_for(suite: str) -> list[TheoremCheck]:
    if suite == "all":
        return sorted(REGISTRY.values(), key=lambda c: c.id)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; known: {', '.join(SUITES + ('all',))}")
    return sorted((c for c in REGISTRY.values() if c.suite == suite), key=lambda c: c.id)


def _rng(seed: int, index: int, cid: str) -> np.random.Generator:
    return np.random.default_rng([seed, index, zlib.crc32(cid.encode())])


def run_check(c: TheoremCheck, target: Target, seed: int) -> dict:
    start = time.perf_counter()
    status, witness = "pass", None
    try:
        unmet = next((h for h in c.hypotheses if not HYPOTHESES[h](target)), None)
        if unmet is not None:
            status, witness = "skipped", {"unmet": unmet}
        else:
            c.body(target, _rng(seed, target.index, c.id))
    except BudgetExceeded as exc:
        status, witness = "budget", {"what": exc.what, "count": exc.count, "budget": exc.budget}
    except Fail as exc:
        status, witness = "fail", target.fail_witness(exc.detail)
    millis = int(round((time.perf_counter() - start) * 1000))
    return {"id": c.id, "target": target.label, "status": status,
            "witness": _jsonable(witness), "millis": millis}


def _run_target(args) -> list[dict]:
    alg, modules, index, suite, seed, enum_budget, element_budget, only = args
    t = Target(alg, index, modules, enum_budget, element_budget)
    return [run_check(c, t, seed) for c in checks_for(suite) if only is None or c.id in only]


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: list

    def counts(self) -> dict:
        out = {s: 0 for s in STATUSES}
        for c in self.checks:
            out[c["status"]] += 1
        return out

    @property
    def failed(self) -> bool:
        return any(c["status"] == "fail" for c in self.checks)

    @property
    def over_budget(self) -> bool:
        return any(c["status"] == "budget" for c in self.checks)

    def select(self, cid: str) -> list[dict]:
        return [c for c in self.checks if c["id"] == cid]

    def to_dict(self, stable: bool = False) -> dict:
        checks = [{k: v for k, v in c.items() if not (stable and k == "millis")}
                  for c in self.checks]
        return {"suite": self.suite, "seed": self.seed, "checks": checks}

    def to_json(self, stable: bool = False) -> str:
        return json.dumps(self.to_dict(stable), sort_keys=True, indent=2) + "\n"


def run_suite(targets: Sequence, suite: str = "all", seed: int = 0,
              enum_budget: int = DEFAULT_ENUM_BUDGET,
              element_budget: int = DEFAULT_ELEMENT_BUDGET, jobs: int = 1,
              only: Optional[Sequence[str]] = None) -> SuiteReport:
    """Evaluate every check of ``suite`` on every target.

    A target is an algebra or a pair (algebra, modules).  ``only`` narrows
    the suite to the listed check ids.  Rows are ordered by (target index,
    check id) whatever ``jobs`` is.
    """
    ids = {c.id for c in checks_for(suite)}   # also validates the name
    if only is not None:
        only = frozenset(only)
        if not only <= ids:
            raise ValueError(f"not in suite {suite!r}: {sorted(only - ids)}")
    work = []
    for k, item in enumerate(targets):
        alg, mods = (item, ()) if isinstance(item, RestrictedLieAlgebra) else item
        work.append((alg, tuple(mods), k, suite, seed, enum_budget, element_budget, only))
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_run_target, work))
    else:
        parts = [_run_target(w) for w in work]
    return SuiteReport(suite, seed, [row for part in parts for row in part])


# ---------------------------------------------------------------------------
# generated target families
# ---------------------------------------------------------------------------

def abelian_targets(n: int = 200, seed: int = 0) -> list[RestrictedLieAlgebra]:
    """Abelian algebras with uniform p-map matrices, p in {3, 5, 7}, dim <= 6."""
    rng = np.random.default_rng([seed, 1])
    return [_renamed(random_abelian(rng), f"abelian-{k}") for k in range(n)]


def soluble_targets(n: int = 24, seed: int = 0) -> list[RestrictedLieAlgebra]:
    """Soluble, non-nilpotent, p > dim; built as semidirect products or sums with borel2."""
    rng = np.random.default_rng([seed, 2])
    out = []
    while len(out) < n:
        alg = random_soluble(rng, max_dim=4)
        if alg.p > alg.dim and not an.is_nilpotent(alg):
            out.append(_renamed(alg, f"soluble-{len(out)}"))
    return out


def torus_free_targets(n: int = 50, seed: int = 0) -> list[RestrictedLieAlgebra]:
    """Soluble algebras with p > dim >= 2 and no nonzero torus.

    Candidates alternate between nilpotent and arbitrary actions; the
    filter keeps those where every element is p-nilpotent, which is the
    same as having no nonzero semisimple element and hence no nonzero torus.  The nilpotency criterion
    is then a claim about every survivor.
    """
    rng = np.random.default_rng([seed, 3])
    out = []
    k = 0
    while len(out) < n:
        alg = random_soluble(rng, max_dim=4, nilpotent_action=bool(k % 2 == 0))
        k += 1
        if alg.p > alg.dim >= 2 and _all_p_nilpotent(alg):
            out.append(_renamed(alg, f"torus-free-{len(out)}"))
    return out


def _all_p_nilpotent(alg: RestrictedLieAlgebra) -> bool:
    xs = alg.full_space().element_array()
    for _ in range(alg.dim):
        xs = alg.p_power_many(xs)
    return not xs.any()


def frattini_targets(seed: int = 0) -> list[RestrictedLieAlgebra]:
    return ([heisenberg(5), borel2(5)] + soluble_targets(20, seed)
            + torus_free_targets(10, seed))


def _renamed(alg: RestrictedLieAlgebra, name: str) -> RestrictedLieAlgebra:
    return RestrictedLieAlgebra(alg.p, alg.structure, alg.pmap_basis, alg.basis_names,
                                name, validate=False)
