from __future__ import annotations

import json

import numpy as np
import pytest

from plalg import harness as hz
from plalg.constructions import borel2, field_torus, heisenberg, sl2, witt
from plalg.fileformat import from_dict
from plalg.pmodules import natural_module


def test_registry_and_completeness_ledger_agree():
    hz._check_ledger()
    ids = set(hz.REGISTRY)
    assert {c for cs in hz.LEDGER.values() for c in cs} == ids
    for c in hz.REGISTRY.values():
        assert c.suite in hz.SUITES
        assert set(c.hypotheses) <= set(hz.HYPOTHESES)
    assert len(hz.checks_for("all")) == len(ids)
    assert sum(len(hz.checks_for(s)) for s in hz.SUITES) == len(ids)


def test_unknown_suite_and_filter():
    with pytest.raises(ValueError):
        hz.checks_for("everything")
    with pytest.raises(ValueError):
        hz.run_suite([borel2(5)], "soluble", only=["witt-simple"])


def test_witt_soluble_suite_all_skipped():
    rep = hz.run_suite([witt(5)], "soluble", seed=1)
    assert rep.checks and all(c["status"] == "skipped" for c in rep.checks)
    assert all(c["witness"] == {"unmet": "soluble"} for c in rep.checks)


def test_borel_soluble_suite_has_no_failures():
    rep = hz.run_suite([borel2(5)], "soluble", seed=1)
    by = {c["id"]: c for c in rep.checks}
    assert not rep.failed and not rep.over_budget
    for cid in ("cartan-centralizer-correspondence", "torus-rank-constant",
                "derived-plus-cartan", "quotient-maximal-tori", "engel-equals-centralizer"):
        assert by[cid]["status"] == "pass"
    # borel2 has a torus, so this hypothesis is unmet rather than checked
    assert by["nilpotency-criterion"]["witness"] == {"unmet": "no-torus"}


def test_minimal_ideal_claim_fails_with_witness_on_field_torus():
    rep = hz.run_suite([field_torus(5, 3)], "soluble", seed=0,
                       only=["minimal-ideal-abelian-p-ideal"])
    (row,) = rep.checks
    assert row["status"] == "fail"
    w = row["witness"]
    alg, _ = from_dict(w["algebra"])
    assert alg == field_torus(5, 3)
    assert "message" in w


def test_budget_status():
    rep = hz.run_suite([witt(5)], "simple", seed=0, enum_budget=50,
                       only=["minimal-simple-predicate"])
    (row,) = rep.checks
    assert row["status"] == "budget" and row["witness"]["budget"] == 50
    assert rep.over_budget and not rep.failed


def test_modules_are_forwarded():
    s = sl2(5)
    rep = hz.run_suite([(s, [natural_module(s)])], "module", seed=0)
    assert not rep.failed and rep.counts()["pass"] >= 5


def test_report_ordering_and_shape():
    rep = hz.run_suite([heisenberg(5), borel2(5)], "frattini", seed=3)
    keys = [(int(c["target"].split(":")[0]), c["id"]) for c in rep.checks]
    assert keys == sorted(keys)
    d = json.loads(rep.to_json())
    assert set(d) == {"suite", "seed", "checks"}
    assert all(set(c) == {"id", "target", "status", "witness", "millis"} for c in d["checks"])
    assert all("millis" not in c for c in rep.to_dict(stable=True)["checks"])


def test_determinism_across_runs_and_workers():
    targets = hz.soluble_targets(4, seed=5)
    a = hz.run_suite(targets, "soluble", seed=9).to_json(stable=True)
    b = hz.run_suite(targets, "soluble", seed=9).to_json(stable=True)
    c = hz.run_suite(targets, "soluble", seed=9, jobs=2).to_json(stable=True)
    assert a == b == c


def test_generators_respect_their_contracts():
    from plalg import analysis as an
    from plalg import tori as tr
    for alg in hz.soluble_targets(6, seed=1):
        assert an.is_soluble(alg) and not an.is_nilpotent(alg) and alg.p > alg.dim
    for alg in hz.torus_free_targets(4, seed=1):
        assert alg.p > alg.dim and all(t.dim == 0 for t in tr.tori(alg))
    assert len(hz.abelian_targets(10, seed=1)) == 10
    names = [a.name for a in hz.abelian_targets(3, seed=1)]
    assert names == ["abelian-0", "abelian-1", "abelian-2"]
    x = hz.abelian_targets(3, seed=1)
    y = hz.abelian_targets(3, seed=1)
    assert all(np.array_equal(a.pmap_basis, b.pmap_basis) for a, b in zip(x, y))
