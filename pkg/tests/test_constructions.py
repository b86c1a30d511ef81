from __future__ import annotations

import itertools

import numpy as np
import pytest

from plalg.constructions import (FAMILIES, abelian, construct, cyclic_generator, direct_sum,
                                 field_torus, frobenius_module, gln, random_abelian,
                                 random_soluble, sl2, witt)
from plalg.core import verify_restricted
from plalg.errors import InvalidAlgebra
from plalg.ffarith import ExtField
from plalg.linalg import Subspace
from plalg import analysis as an


def test_witt_structure():
    w = construct({"family": "witt", "p": 5})
    assert w.dim == 5 and w.basis_names[0] == "e-1"
    # [e_i, e_j] = (j - i) e_{i+j}
    for a, b in itertools.product(range(5), repeat=2):
        i, j = a - 1, b - 1
        want = np.zeros(5, dtype=np.int64)
        if -1 <= i + j <= 3:
            want[i + j + 1] = (j - i) % 5
        assert np.array_equal(w.bracket(w.basis_vector(a), w.basis_vector(b)), want)


def test_every_family_constructs_a_valid_algebra():
    descs = [{"family": "witt", "p": 7}, {"family": "sl2", "p": 3}, {"family": "gln", "p": 3, "n": 2},
             {"family": "heisenberg", "p": 5}, {"family": "borel2", "p": 7},
             {"family": "abelian", "p": 3, "n": 2},
             {"family": "abelian", "p": 5, "pmap": [[0, 1], [0, 0]]},
             {"family": "field_torus", "p": 5, "k": 2, "modulus": [2, 0, 1]},
             {"family": "direct_sum", "p": 5,
              "summands": [{"family": "sl2", "p": 5}, {"family": "borel2", "p": 5}]}]
    assert {d["family"] for d in descs} == set(FAMILIES)
    for d in descs:
        assert verify_restricted(construct(d)).passed


def test_construct_errors():
    with pytest.raises(InvalidAlgebra):
        construct({"family": "nope", "p": 5})
    with pytest.raises(InvalidAlgebra):
        construct({"family": "gln", "p": 5})
    with pytest.raises(InvalidAlgebra):
        witt(4)


def test_zero_pmap_abelian_is_all_p_nilpotent():
    a = construct({"family": "abelian", "p": 3, "n": 2})
    assert not a.p_power_many(a.full_space().element_array()).any()


def test_direct_sum_blocks():
    s = direct_sum(sl2(5), abelian(5, [[1]]))
    assert s.dim == 4 and an.center(s) == s.span([[0, 0, 0, 1]])


def test_field_torus_pmap_is_frobenius():
    ft = field_torus(5, 3)
    fld = ExtField(5, 3)
    for x in fld.elements():
        assert tuple(ft.p_power(list(x))) == fld.frobenius(x)


def _naive_generator(fld, elements):
    """Least element in encoding order whose Frobenius orbit spans the target."""
    target = frobenius_module(fld, elements)
    for x in fld.elements():
        if frobenius_module(fld, [x]) == target:
            return x
    return None


def test_cyclic_generator_examples():
    assert cyclic_generator(5, 2, [(1, 0)]) == (1, 0)
    fld = ExtField(5, 2)
    everything = [(1, 0), (0, 1)]
    g = cyclic_generator(5, 2, everything)
    assert frobenius_module(fld, [g]) == Subspace.full(2, 5)
    assert not frobenius_module(fld, [(1, 0)]).is_full()


def test_normal_basis_element_returned_as_is():
    fld = ExtField(5, 3)
    alpha = next(x for x in fld.elements() if frobenius_module(fld, [x]).is_full())
    assert cyclic_generator(5, 3, [alpha]) == alpha


@pytest.mark.parametrize("k", [2, 3])
def test_cyclic_generator_against_naive_scan(k):
    fld = ExtField(5, k)
    rng = np.random.default_rng(k)
    for _ in range(10):
        els = [tuple(int(a) for a in rng.integers(0, 5, k)) for _ in range(int(rng.integers(1, 4)))]
        g = cyclic_generator(5, k, els)
        assert frobenius_module(fld, [g]) == frobenius_module(fld, els)
        assert _naive_generator(fld, els) is not None


def test_random_generators_are_valid_and_soluble():
    rng = np.random.default_rng(0)
    for _ in range(10):
        assert verify_restricted(random_abelian(rng)).passed
        alg = random_soluble(rng, max_dim=4)
        assert verify_restricted(alg).passed and an.is_soluble(alg)


def test_gln_p_map_is_matrix_power():
    g = gln(5, 2)
    x = [1, 2, 3, 4]
    m = np.array(x).reshape(2, 2)
    assert np.array_equal(g.p_power(x), np.linalg.matrix_power(m, 5).ravel() % 5)
