from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plalg.constructions import abelian, borel2, gln, heisenberg, sl2, witt
from plalg.core import PMorphism, RestrictedLieAlgebra, quotient, restrict, verify_restricted
from plalg.errors import InvalidAlgebra, InvalidMorphism, NotAnIdeal, NotClosed, NotPStable
from plalg.linalg import mat_pow
from plalg.simplicity import compare


def _matrix_pow_oracle(p, n, seed, count):
    alg = gln(p, n)
    rng = np.random.default_rng(seed)
    for _ in range(count):
        m = rng.integers(0, p, (n, n))
        assert np.array_equal(alg.p_power(m.ravel()), mat_pow(m, p, p).ravel())


@pytest.mark.parametrize("p,n", [(3, 2), (3, 3), (5, 2), (5, 3)])
def test_p_power_is_matrix_power_in_gl(p, n):
    _matrix_pow_oracle(p, n, seed=p * 10 + n, count=40)


def test_bracket_and_ad_examples():
    w = witt(5)
    e = np.eye(5, dtype=np.int64)
    assert w.bracket(e[0], e[2]).tolist() == [0, 2, 0, 0, 0]   # [e_-1, e_1] = 2 e_0
    assert not w.ad_matrix(w.zero()).any()
    h = heisenberg(5)
    assert not h.ad_matrix([0, 0, 1]).any()
    # ad_x acts on columns: ad_x(y) = [x, y]
    assert np.array_equal(w.ad_matrix(e[1]) @ e[2] % 5, w.bracket(e[1], e[2]))


@pytest.mark.parametrize("make", [lambda: witt(5), lambda: witt(7), lambda: sl2(5),
                                  lambda: gln(3, 2), lambda: borel2(5), lambda: heisenberg(5)])
def test_fixtures_verify(make):
    rep = verify_restricted(make())
    assert rep.passed, rep.findings


def test_broken_witt_pmap_fails_axiom_one():
    w = witt(5)
    pm = w.pmap_basis.copy()
    pm[1] = 0
    bad = w.with_pmap(pm, validate=False)
    rep = verify_restricted(bad)
    assert not rep.passed and rep.findings[0]["check"] == "axiom1-basis"
    # the witness pair from the hand computation: [e_0^[p], e_1] = 0 but ad_{e_0}^5 e_1 = e_1
    e0, e1 = bad.basis_vector(1), bad.basis_vector(2)
    assert not bad.bracket(bad.p_power(e0), e1).any()
    assert np.array_equal(mat_pow(bad.ad_matrix(e0), 5, 5) @ e1 % 5, e1)
    with pytest.raises(InvalidAlgebra):
        w.with_pmap(pm)


def test_jacobi_failure_reported():
    c = np.zeros((3, 3, 3), dtype=np.int64)
    c[0, 1, 2] = 1
    c[1, 2, 1] = 1
    alg = RestrictedLieAlgebra(5, c, np.zeros((3, 3)), validate=False)
    rep = verify_restricted(alg)
    assert not rep.passed and rep.findings[0]["check"] == "jacobi"


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 6).flatmap(lambda d: st.lists(st.integers(0, 4), min_size=d * d,
                                                    max_size=d * d).map(lambda v: (d, v))))
def test_any_abelian_pmap_is_valid(dv):
    d, v = dv
    alg = abelian(5, np.array(v, dtype=np.int64).reshape(d, d))
    assert verify_restricted(alg).passed


@pytest.mark.parametrize("make", [lambda: witt(5), lambda: sl2(7), lambda: gln(3, 2),
                                  lambda: borel2(5)])
def test_fold_orders_and_batch_agree(make):
    alg = make()
    xs = alg.full_space().element_array()[:: max(1, alg.p ** alg.dim // 500)]
    batch = alg.p_power_many(xs)
    for x, y in zip(xs, batch):
        assert np.array_equal(alg.p_power(x), y)
        assert np.array_equal(alg.p_power(x, "descending"), y)


def test_borel_t_plus_u_is_fixed_by_pmap():
    b = borel2(5)
    assert b.p_power([1, 1]).tolist() == [1, 1]
    assert b.p_power([0, 1]).tolist() == [0, 0]


def test_quotient_examples():
    b = borel2(5)
    q, f = quotient(b, b.span([[0, 1]]))
    assert q.dim == 1 and q.pmap_basis.tolist() == [[1]]
    assert f([1, 3]).tolist() == [1]
    h = heisenberg(5)
    q, _ = quotient(h, h.span([[0, 0, 1]]))
    assert q.dim == 2 and not q.structure.any() and not q.pmap_basis.any()
    with pytest.raises(NotAnIdeal):
        quotient(b, b.span([[1, 0]]))


def test_quotient_needs_p_stable_ideal():
    from plalg.constructions import field_torus
    ft = field_torus(5, 2)
    with pytest.raises(NotPStable):
        quotient(ft, ft.span([[1, 1]]))   # (1 + X)^5 = 1 - X


def test_restrict_examples():
    w = witt(5)
    e = np.eye(5, dtype=np.int64)
    s, emb = restrict(w, w.span(e[:3]))
    assert s.dim == 3 and compare(s, sl2(5)) == "isomorphic"
    n, _ = restrict(w, w.span(e[2:]))
    assert not n.pmap_basis.any()
    full, _ = restrict(w, w.full_space())
    assert full == w
    with pytest.raises(NotClosed):
        restrict(w, w.span([e[0], e[4]]))


def test_morphism_rejects_non_homomorphism():
    b = borel2(5)
    with pytest.raises(InvalidMorphism):
        PMorphism(b, b, np.array([[0, 1], [1, 0]]))
    ident = PMorphism(b, b, np.eye(2, dtype=np.int64))
    assert ident.kernel().is_zero() and ident.image().is_full()


def test_equality_ignores_names():
    a = witt(5)
    b = RestrictedLieAlgebra(5, a.structure, a.pmap_basis, name="other")
    assert a == b and hash(a) == hash(b)
