from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plalg.ffarith import (ExtField, PrimeField, frobenius, is_prime, least_irreducible,
                           poly_divmod, poly_factor, poly_gcd, poly_is_irreducible, poly_mul,
                           poly_trim)

F25 = ExtField(5, 2, (2, 0, 1))


def _naive_pow(fld, x, n):
    out = fld.one
    for _ in range(n):
        out = fld.mul(out, x)
    return out


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_prime_field_inverse():
    f = PrimeField(7)
    assert all(f.mul(a, f.inv(a)) == 1 for a in range(1, 7))
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_frobenius_examples():
    assert frobenius(F25, (0, 1), 2) == (0, 1)
    assert frobenius(F25, (3, 0), 1) == (3, 0)
    assert frobenius(F25, (0, 0), 7) == (0, 0)
    # X^5 = X * (X^2)^2 = X * 4 = 4X when X^2 = -2 = 3
    assert frobenius(F25, (0, 1), 1) == (0, 4)


def test_frobenius_matches_repeated_multiplication():
    for x in F25.elements():
        assert F25.frobenius(x) == _naive_pow(F25, x, 5)


def test_bad_modulus_rejected():
    with pytest.raises(ValueError):
        ExtField(5, 2, (1, 0, 1))   # X^2 + 1 = (X - 2)(X + 2) mod 5
    with pytest.raises(ValueError):
        ExtField(4, 2)


def test_default_modulus_is_least_irreducible():
    f = ExtField(5, 3)
    assert f.modulus == least_irreducible(5, 3)
    assert poly_is_irreducible(f.modulus, 5)


def test_multiplicative_group_is_cyclic_of_right_order():
    f = ExtField(3, 3)
    orders = set()
    for x in f.elements():
        if x == f.zero:
            continue
        assert f.pow(x, f.order - 1) == f.one
        y, k = x, 1
        while y != f.one:
            y, k = f.mul(y, x), k + 1
        orders.add(k)
    assert max(orders) == 26


polys = st.lists(st.integers(0, 6), max_size=6).map(lambda c: poly_trim(c, 7))


@settings(max_examples=80, deadline=None)
@given(polys, polys.filter(bool))
def test_divmod_identity(f, g):
    q, r = poly_divmod(f, g, 7)
    assert len(r) < len(g)
    lhs = poly_mul(q, g, 7)
    back = [((lhs[i] if i < len(lhs) else 0) + (r[i] if i < len(r) else 0)) % 7
            for i in range(max(len(lhs), len(r)))]
    assert poly_trim(back, 7) == f


@settings(max_examples=60, deadline=None)
@given(polys.filter(bool))
def test_factor_multiplies_back(f):
    prod = (1,)
    for g, m in poly_factor(f, 7):
        assert poly_is_irreducible(g, 7)
        for _ in range(m):
            prod = poly_mul(prod, g, 7)
    monic = poly_trim([a * pow(f[-1], -1, 7) for a in f], 7)
    assert prod == monic


def test_gcd_is_monic_common_divisor():
    f = poly_mul((1, 1), (2, 0, 1), 5)
    g = poly_mul((1, 1), (3, 1), 5)
    assert poly_gcd(f, g, 5) == (1, 1)
