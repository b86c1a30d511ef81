from __future__ import annotations

import numpy as np
import pytest

from plalg.constructions import abelian, borel2, gln, heisenberg, sl2, witt
from plalg.errors import HypothesisViolated, InvalidModule, NotATorus
from plalg.ffarith import poly_is_irreducible
from plalg.pmodules import (PModule, action_submodule, adjoint_module, fixed_points,
                            minimal_polynomial, natural_module, primary_components,
                            trivial_module, verify_vnv, weight_decomposition)


def sp(alg, *rows):
    return alg.span(np.array(rows, dtype=np.int64).reshape(-1, alg.dim))


S = sl2(5)
H = sp(S, [0, 1, 0])


def test_fixed_points_examples():
    assert fixed_points(natural_module(S), H).is_zero()
    assert fixed_points(adjoint_module(S), H) == H
    assert fixed_points(natural_module(S), S.zero_space()).is_full()


def test_action_submodule_examples():
    assert action_submodule(natural_module(S), H).is_full()
    assert action_submodule(natural_module(S), S.zero_space()).is_zero()
    assert action_submodule(trivial_module(S, 3), H).is_zero()


def test_vnv_examples():
    for m in (natural_module(S), adjoint_module(S), trivial_module(S, 2)):
        rep = verify_vnv(m, H)
        assert rep.passed, rep.findings
    with pytest.raises(HypothesisViolated):
        verify_vnv(adjoint_module(S), sp(S, [1, 0, 0]))


def test_adjoint_of_witt():
    w = witt(5)
    m = adjoint_module(w)
    assert m.dim_v == 5
    assert np.array_equal(m.act(w.basis_vector(1)), np.diag([4, 0, 1, 2, 3]))
    assert not adjoint_module(abelian(5, np.eye(2))).rho.any()
    h = heisenberg(5)
    assert not adjoint_module(h).act([0, 0, 1]).any()


def test_invalid_modules_rejected():
    with pytest.raises(InvalidModule):
        PModule(S, np.zeros((2, 2, 2)))
    rho = natural_module(S).rho.copy()
    rho[1] = np.eye(2, dtype=np.int64)   # rho(h) = 1 breaks [e, h]
    with pytest.raises(InvalidModule):
        PModule(S, rho)


def test_natural_sl2_weights():
    wd = weight_decomposition(natural_module(S), H)
    assert wd.fixed.is_zero()
    assert sorted(c.basis.tolist() for c in wd.components) == [[[0, 1]], [[1, 0]]]
    assert all(wd.irreducible)


def test_adjoint_sl2_weights():
    wd = weight_decomposition(adjoint_module(S), H)
    assert wd.fixed == H
    comps = {tuple(map(tuple, c.basis.tolist())) for c in wd.components}
    assert comps == {((1, 0, 0),), ((0, 0, 1),)}


def test_weight_decomposition_needs_torus():
    with pytest.raises(NotATorus):
        weight_decomposition(adjoint_module(S), sp(S, [1, 0, 0]))


def test_scalar_torus_in_gl2():
    g = gln(5, 2)
    wd = weight_decomposition(natural_module(g), sp(g, [1, 0, 0, 1]))
    assert wd.fixed.is_zero() and [c.dim for c in wd.components] == [1, 1]


def test_anisotropic_torus_in_gl2_acts_irreducibly():
    # C = companion of X^2 - 2, irreducible mod 5; C^5 = 4C so d(C) = span(C),
    # yet C has no eigenvector in F_5^2
    from plalg.tori import is_torus, p_envelope
    g = gln(5, 2)
    t = p_envelope(g, [0, 1, 2, 0])
    assert t.dim == 1 and is_torus(g, t)
    wd = weight_decomposition(natural_module(g), t)
    assert wd.fixed.is_zero() and [c.dim for c in wd.components] == [2]
    assert wd.irreducible == [True]


def test_multi_generator_torus_in_gl3():
    g = gln(3, 3)
    diag = sp(g, [1, 0, 0, 0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0, 0, 0, 0],
              [0, 0, 0, 0, 0, 0, 0, 0, 1])
    wd = weight_decomposition(natural_module(g), diag)
    assert wd.fixed.is_zero()
    assert sorted(c.dim for c in wd.components) == [1, 1, 1]
    assert all(wd.irreducible)


def test_primary_components_and_minimal_polynomial():
    a = np.array([[0, 1, 0], [3, 0, 0], [0, 0, 2]])   # X^2 - 3 irreducible mod 5, then X - 2
    mp = minimal_polynomial(a, 5)
    comps = primary_components(a, 5)
    assert sum(w.dim for _, w in comps) == 3
    dims = sorted(w.dim for _, w in comps)
    assert dims == [1, 2]
    for f, w in comps:
        assert poly_is_irreducible(f, 5)
    assert len(mp) == 4


def test_borel_adjoint_module():
    b = borel2(5)
    wd = weight_decomposition(adjoint_module(b), sp(b, [1, 0]))
    assert wd.fixed == sp(b, [1, 0]) and [c.basis.tolist() for c in wd.components] == [[[0, 1]]]


def test_from_block_round_trip():
    m = natural_module(S)
    block = {"dim_v": 2, "rho": m.rho.tolist()}
    assert np.array_equal(PModule.from_block(S, block).rho, m.rho)
    with pytest.raises(InvalidModule):
        PModule.from_block(S, {"dim_v": 2, "rho": [[1]]})
