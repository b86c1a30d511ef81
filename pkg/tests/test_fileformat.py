from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plalg.constructions import (abelian, borel2, field_torus, gln, heisenberg, random_soluble,
                                 sl2, witt)
from plalg.fileformat import FormatError, dumps, from_dict, load, loads, save
from plalg.pmodules import natural_module

FIXTURES = [witt(5), witt(7), sl2(5), gln(3, 2), heisenberg(5), borel2(5), field_torus(5, 3)]


@pytest.mark.parametrize("alg", FIXTURES, ids=lambda a: a.name)
def test_round_trip_byte_identical(alg):
    text = dumps(alg)
    back, module = loads(text)
    assert module is None and back == alg and back.name == alg.name
    assert dumps(back) == text


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_round_trip_random(seed):
    import numpy as np
    alg = random_soluble(np.random.default_rng(seed), max_dim=4)
    assert dumps(loads(dumps(alg))[0]) == dumps(alg)


def test_canonical_layout():
    d = json.loads(dumps(borel2(5)))
    assert d == {"basis": ["t", "u"], "brackets": [{"c": {"1": 1}, "i": 0, "j": 1}],
                 "dim": 2, "name": "borel2(5)", "p": 5, "pmap": [{"c": {"0": 1}, "i": 0}]}
    assert dumps(borel2(5)).endswith("}\n")


def test_module_block_round_trip(tmp_path):
    s = sl2(5)
    m = natural_module(s)
    path = tmp_path / "s.json"
    save(str(path), s, m)
    alg, block = load(str(path))
    assert alg == s and block["dim_v"] == 2 and block["rho"] == m.rho.tolist()


@pytest.mark.parametrize("text,needle", [
    ('{"p": 5, "dim": 2, "extra": 1}', "unknown field"),
    ('{"dim": 2}', "missing field 'p'"),
    ('{"p": 5, "dim": "2"}', "dim: expected an integer"),
    ('{"p": 5, "dim": 2, "brackets": [{"i": 1, "j": 0, "c": {}}]}', "brackets[0]"),
    ('{"p": 5, "dim": 2, "brackets": [{"i": 0, "j": 1, "c": {"7": 1}}]}', "out of range"),
    ('{"p": 5, "dim": 2, "pmap": [{"i": 0, "c": {"0": 1.5}}]}', "pmap[0].c"),
    ('{"p": 5, "dim": 2, "basis": ["a"]}', "basis"),
    ('{"p": 5, "dim": 2,\n "brackets": [}', "line 2"),
    ('{"p": 5, "dim": 2, "module": {"rho": []}}', "module"),
    ('{"p": 5, "dim": 2, "brackets": [{"i": 0, "j": 1, "c": {"1": 1}}], '
     '"pmap": [{"i": 0, "c": {}}]}', "invalid algebra"),
])
def test_diagnostics(text, needle):
    with pytest.raises(FormatError) as info:
        loads(text)
    assert needle in str(info.value)


def test_unvalidated_load_keeps_broken_table():
    text = dumps(borel2(5)).replace('"0": 1', '"0": 0')
    alg, _ = loads(text, validate=False)
    assert not alg.pmap_basis.any()
    with pytest.raises(FormatError):
        loads(text)


def test_top_level_must_be_object():
    with pytest.raises(FormatError):
        from_dict([1, 2])
    assert loads(dumps(abelian(3, [[0]])))[0].dim == 1
