from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plalg import analysis as an
from plalg import tori as tr
from plalg.constructions import abelian, borel2, field_torus, heisenberg, random_abelian, sl2, witt
from plalg.core import quotient
from plalg.errors import ClassTooLarge, NotAbelian, NotPure, PNilpotentsExist
from plalg.linalg import mat_pow


def sp(alg, *rows):
    return alg.span(np.array(rows, dtype=np.int64).reshape(-1, alg.dim))


def test_only_e0_is_semisimple_in_witt_basis():
    for p in (5, 7):
        w = witt(p)
        flags = [tr.is_semisimple(w, w.basis_vector(i)) for i in range(p)]
        assert flags == [i == 1 for i in range(p)]


def test_classify_examples():
    w = witt(5)
    kind, jp = tr.classify_element(w, w.basis_vector(1))
    assert kind == "semisimple" and not jp.nilpotent_part.any()
    b = borel2(5)
    kind, jp = tr.classify_element(b, [0, 1])
    assert kind == "p_nilpotent" and jp.nilpotent_part.tolist() == [0, 1]
    kind, jp = tr.classify_element(b, [1, 1])
    assert kind == "semisimple" and jp.semisimple_part.tolist() == [1, 1]
    a = abelian(5, [[1, 0], [0, 0]])
    kind, jp = tr.classify_element(a, [2, 3])
    assert kind == "mixed" and jp.semisimple_part.tolist() == [2, 0]


def test_toral_decomposition_examples():
    a = abelian(5, [[1, 0, 0], [0, 0, 1], [0, 0, 0]])
    s = tr.toral_decomposition(a)
    assert s.torus == sp(a, [1, 0, 0])
    assert s.unipotent == sp(a, [0, 1, 0], [0, 0, 1])
    assert s.stabilization_exponent == 2
    ident = tr.toral_decomposition(abelian(5, np.eye(3)))
    assert ident.torus.is_full() and ident.stabilization_exponent == 0
    zero = tr.toral_decomposition(abelian(5, np.zeros((3, 3))))
    assert zero.torus.is_zero() and zero.unipotent.is_full()
    with pytest.raises(NotAbelian):
        tr.toral_decomposition(sl2(5))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_toral_decomposition_properties(seed):
    alg = random_abelian(np.random.default_rng(seed))
    s = tr.toral_decomposition(alg)
    m_t = tr.pmap_matrix(alg, s.torus)
    assert (s.torus + s.unipotent).is_full() and (s.torus & s.unipotent).is_zero()
    assert tr.is_torus(alg, s.torus)
    if s.unipotent.dim:
        m_u = tr.pmap_matrix(alg, s.unipotent)
        assert not mat_pow(m_u, alg.dim, alg.p).any()
    assert m_t.shape == (s.torus.dim, s.torus.dim)
    assert tr.purity(alg, alg.full_space(), s.torus)


def test_purity_examples():
    a = abelian(5, [[0, 1], [0, 0]])
    assert not tr.purity(a, a.full_space(), sp(a, [0, 1]))
    with pytest.raises(NotPure):
        tr.purity(a, a.full_space(), sp(a, [0, 1]), "complement")
    b = abelian(5, [[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    c = tr.purity(b, b.full_space(), sp(b, [0, 0, 1]), "complement")
    assert (c + sp(b, [0, 0, 1])).is_full() and an.is_p_stable(b, c)


def test_p_th_roots_in_field_torus():
    ft = field_torus(5, 3)
    for x in ft.full_space().element_array()[::7]:
        r = tr.p_th_root(ft, x)
        assert np.array_equal(ft.p_power(r), x)
        assert np.array_equal(r, ft.p_power_iter(x, 2))
    assert not tr.p_th_root(ft, ft.zero()).any()
    with pytest.raises(PNilpotentsExist):
        tr.p_th_root(borel2(5), [1, 0])


def test_lift_examples():
    a = abelian(5, [[1, 0], [0, 0]])   # s = e1 toral, u = e2 p-nilpotent
    _, f = quotient(a, sp(a, [1, 0]))
    assert tr.lift_p_nilpotent(f, [1, 1]).tolist() == [0, 1]
    assert tr.lift_p_nilpotent(f, [0, 3]).tolist() == [0, 3]
    b = borel2(5)
    ident = quotient(b, b.zero_space())[1]
    assert tr.lift_p_nilpotent(ident, [0, 2]).tolist() == [0, 2]


def test_nilpotent_decomposition_examples():
    h = heisenberg(5)
    s = tr.nilpotent_decomposition(h)
    assert s.torus.is_zero() and s.unipotent.is_full()
    a = abelian(5, [[1, 0], [0, 0]])
    s = tr.nilpotent_decomposition(a)
    assert s.torus == sp(a, [1, 0]) and s.unipotent == sp(a, [0, 1])
    with pytest.raises(ClassTooLarge):
        tr.nilpotent_decomposition(borel2(5))


def test_tori_of_borel_and_sl2():
    b = borel2(5)
    mt = tr.maximal_tori(b)
    assert len(mt) == 5 and all(t.dim == 1 for t in mt)
    assert all(not t.contains([0, 1]) for t in mt)
    s = sl2(5)
    assert all(t.dim == 1 for t in tr.maximal_tori(s))
    assert tr.tori(heisenberg(5)) == [heisenberg(5).zero_space()]


def test_cartans_of_borel_agree():
    b = borel2(5)
    r = tr.cartan_subalgebras(b)
    assert r.agree and not r.abnormal_failures
    assert [c.space for c in r.cartans] == tr.maximal_tori(b)


def test_engel_subalgebra():
    s = sl2(5)
    assert tr.engel(s, [0, 1, 0]) == sp(s, [0, 1, 0])
    assert tr.engel(s, [1, 0, 0]).is_full()
