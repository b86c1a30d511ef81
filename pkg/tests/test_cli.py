from __future__ import annotations

import argparse
import json

import jsonschema
import pytest

from plalg.cli import SCHEMAS, CliConfig, InputError, main
from plalg.constructions import sl2
from plalg.fileformat import dumps, save
from plalg.pmodules import natural_module


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for fam, extra in [("witt", []), ("borel2", []), ("heisenberg", []), ("sl2", []),
                       ("field_torus", ["--k", "2"])]:
        path = str(tmp_path / f"{fam}.json")
        assert main(["construct", fam, "--p", "5", *extra, "-o", path]) == 0
        paths[fam] = path
    capsys.readouterr()
    return paths


def test_construct_then_verify(files, capsys):
    code, out, _ = run(capsys, "verify", files["witt"])
    assert code == 0 and "axioms hold" in out


def test_construct_to_stdout_is_canonical(capsys):
    code, out, _ = run(capsys, "construct", "sl2", "--p", "5")
    assert code == 0 and out == dumps(sl2(5))


def test_verify_broken_file_exits_one_with_witness(files, tmp_path, capsys):
    d = json.load(open(files["borel2"]))
    d["pmap"] = [{"i": 0, "c": {"1": 1}}]
    bad = tmp_path / "broken.json"
    bad.write_text(json.dumps(d))
    code, out, _ = run(capsys, "verify", str(bad), "--output", "json")
    assert code == 1
    res = json.loads(out)["result"]
    assert not res["passed"] and res["findings"][0]["witness"]["x"] == [1, 0]


def test_malformed_file_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"p": 5, "dim": 2, "bogus": 1}')
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2 and "unknown field" in err
    bad.write_text('{"p": 5,\n "dim": }')
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "verify", str(tmp_path / "missing.json"))
    assert code == 2


def test_bad_arguments_exit_two(files, capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "construct", "witt", "--p", "4")[0] == 2
    assert run(capsys, "decompose", files["sl2"], "--subspace", "1,2")[0] == 2
    assert run(capsys, "module", files["sl2"], "--torus", "e")[0] == 2


def test_theorems_borel_soluble(files, capsys):
    code, out, _ = run(capsys, "theorems", files["borel2"], "--suite", "soluble", "--seed", "1",
                       "--output", "json")
    assert code == 0
    rep = json.loads(out)
    statuses = {c["status"] for c in rep["checks"]}
    assert statuses <= {"pass", "skipped"} and "pass" in statuses
    jsonschema.validate(rep, SCHEMAS["theorems"])


def test_theorems_failure_and_budget_codes(files, capsys):
    code, _, _ = run(capsys, "theorems", files["field_torus"], "--suite", "soluble")
    assert code == 1
    code, _, _ = run(capsys, "theorems", files["witt"], "--suite", "simple",
                     "--enum-budget", "10")
    assert code == 3


def test_theorems_stable_output_is_reproducible(files, capsys):
    args = ["theorems", files["borel2"], files["heisenberg"], "--suite", "frattini",
            "--seed", "4", "--output", "json", "--stable"]
    a = run(capsys, *args)[1]
    b = run(capsys, *args, "--jobs", "2")[1]
    assert a == b and "millis" not in a


def test_theorems_reads_module_block(tmp_path, capsys):
    s = sl2(5)
    path = tmp_path / "mod.json"
    save(str(path), s, natural_module(s))
    code, out, _ = run(capsys, "theorems", str(path), "--suite", "module", "--output", "json")
    assert code == 0
    assert any(c["id"] == "maschke-decomposition" and c["status"] == "pass"
               for c in json.loads(out)["checks"])


@pytest.mark.parametrize("argv", [
    ["verify", "{witt}"],
    ["analyze", "{borel2}"],
    ["analyze", "{witt}", "--enum-budget", "100"],
    ["decompose", "{field_torus}"],
    ["decompose", "{heisenberg}"],
    ["decompose", "{borel2}", "--subspace", "t"],
    ["module", "{sl2}", "--torus", "h"],
    ["search", "--p", "3", "--dim-max", "3", "--count", "10"],
    ["construct", "borel2", "--p", "7"],
])
def test_json_output_validates(files, capsys, argv):
    argv = [a.format(**files) for a in argv]
    code, out, _ = run(capsys, *argv, "--output", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS[argv[0]])
    assert doc["exit_code"] == code and code in (0, 3)


def test_analyze_reports_budget(files, capsys):
    code, out, _ = run(capsys, "analyze", files["witt"], "--enum-budget", "100", "--output", "json")
    res = json.loads(out)["result"]
    assert code == 3 and "budget" in res["maximal_tori"]
    assert res["classification"]["simple"] is True


def test_module_weights(files, capsys):
    code, out, _ = run(capsys, "module", files["sl2"], "--torus", "h", "--output", "json")
    res = json.loads(out)["result"]
    assert code == 0 and res["fixed"] == [[0, 1, 0]]
    assert sorted(res["components"]) == [[[0, 0, 1]], [[1, 0, 0]]]


def test_options_before_or_after_subcommand(files, capsys):
    a = run(capsys, "--output", "json", "verify", files["sl2"])[1]
    b = run(capsys, "verify", files["sl2"], "--output", "json")[1]
    assert a == b and json.loads(a)["command"] == "verify"


def _ns(**kw):
    base = {"enum_budget": None, "element_budget": None, "seed": None, "output": None,
            "stable": False, "jobs": None}
    base.update(kw)
    return argparse.Namespace(**base)


def test_config_precedence():
    env = {"PLALG_ENUM_BUDGET": "500", "PLALG_SEED": "3"}
    cfg = CliConfig.resolve(_ns(), env)
    assert (cfg.enum_budget, cfg.element_budget, cfg.seed) == (500, 10**6, 3)
    cfg = CliConfig.resolve(_ns(enum_budget="7", seed="0"), env)
    assert (cfg.enum_budget, cfg.seed) == (7, 0)
    assert CliConfig.resolve(_ns(), {}) == CliConfig()


@pytest.mark.parametrize("kw,env", [({"enum_budget": "0"}, {}), ({"element_budget": "-4"}, {}),
                                    ({}, {"PLALG_ELEMENT_BUDGET": "lots"}),
                                    ({"seed": "-1"}, {})])
def test_config_rejects_bad_budgets(kw, env):
    with pytest.raises(InputError):
        CliConfig.resolve(_ns(**kw), env)


def test_env_budget_reaches_command(files, capsys, monkeypatch):
    monkeypatch.setenv("PLALG_ENUM_BUDGET", "100")
    assert run(capsys, "analyze", files["witt"])[0] == 3
    monkeypatch.setenv("PLALG_ENUM_BUDGET", "0")
    assert run(capsys, "analyze", files["witt"])[0] == 2
