"""Command-line entry point.

Exit codes: 0 success, 1 a check or axiom failed, 2 bad input,
3 an enumeration budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np

from . import analysis as an
from . import tori as tr
from .constructions import FAMILIES, construct
from .core import RestrictedLieAlgebra, verify_restricted
from .errors import BudgetExceeded, InvalidModule, PlalgError
from .fileformat import FormatError, dumps, load, save
from .harness import SUITES, run_suite
from .linalg import Subspace
from .pmodules import PModule, adjoint_module, weight_decomposition
from .simplicity import is_simple, search_evidence

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
DEFAULTS = {"enum_budget": 10**6, "element_budget": 10**6, "seed": 0}
ENV = {"enum_budget": "PLALG_ENUM_BUDGET", "element_budget": "PLALG_ELEMENT_BUDGET",
       "seed": "PLALG_SEED"}


class InputError(Exception):
    pass


@dataclass
class CliConfig:
    enum_budget: int = 10**6
    element_budget: int = 10**6
    seed: int = 0
    output: str = "text"
    stable: bool = False
    jobs: int = 1

    @classmethod
    def resolve(cls, ns: argparse.Namespace, environ=None) -> "CliConfig":
        """Flags win over environment variables, which win over defaults."""
        environ = os.environ if environ is None else environ
        vals = {}
        for key, default in DEFAULTS.items():
            flag = getattr(ns, key, None)
            if flag is not None:
                raw, src = flag, "--" + key.replace("_", "-")
            elif ENV[key] in environ:
                raw, src = environ[ENV[key]], ENV[key]
            else:
                raw, src = default, "default"
            try:
                v = int(raw)
            except (TypeError, ValueError):
                raise InputError(f"{src}: expected an integer, got {raw!r}") from None
            if v < 0 or (v == 0 and key != "seed"):
                raise InputError(f"{src}: must be {'non-negative' if key == 'seed' else 'positive'}")
            vals[key] = v
        jobs = getattr(ns, "jobs", None) or 1
        if jobs < 1:
            raise InputError("--jobs: must be positive")
        return cls(output=getattr(ns, "output", None) or "text",
                   stable=bool(getattr(ns, "stable", False)), jobs=jobs, **vals)


# ---------------------------------------------------------------------------
# JSON schemas for --output json
# ---------------------------------------------------------------------------

_BASIS = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}
_REPORT = {"type": "object", "required": ["kind", "passed", "findings", "data"],
           "properties": {"kind": {"type": "string"}, "passed": {"type": "boolean"},
                          "findings": {"type": "array"}, "data": {"type": "object"}}}


def _envelope(result: dict) -> dict:
    return {"type": "object", "required": ["command", "exit_code", "result"],
            "additionalProperties": False,
            "properties": {"command": {"type": "string"}, "exit_code": {"type": "integer"},
                           "result": result}}


SUITE_REPORT_SCHEMA = {
    "type": "object", "required": ["suite", "seed", "checks"],
    "properties": {
        "suite": {"type": "string"}, "seed": {"type": "integer"},
        "checks": {"type": "array", "items": {
            "type": "object", "required": ["id", "target", "status", "witness"],
            "properties": {"id": {"type": "string"}, "target": {"type": "string"},
                           "status": {"enum": ["pass", "fail", "skipped", "budget"]},
                           "witness": {"type": ["object", "null"]},
                           "millis": {"type": "integer"}}}}},
}

SCHEMAS: dict[str, dict] = {
    "verify": _envelope(_REPORT),
    "search": _envelope(_REPORT),
    "analyze": _envelope({
        "type": "object",
        "required": ["algebra", "series", "center", "fitting", "socle", "maximal_tori",
                     "cartans", "frattini", "p_frattini", "classification"],
        "properties": {"algebra": {"type": "object"}, "classification": {"type": "object"}}}),
    "decompose": _envelope({
        "type": "object", "required": ["mode", "subspace", "torus", "unipotent", "exponent"],
        "properties": {"mode": {"enum": ["toral", "nilpotent"]}, "subspace": _BASIS,
                       "torus": _BASIS, "unipotent": _BASIS, "exponent": {"type": "integer"}}}),
    "construct": _envelope({
        "type": "object", "required": ["family", "p", "dim", "path"],
        "properties": {"family": {"type": "string"}, "p": {"type": "integer"},
                       "dim": {"type": "integer"}, "path": {"type": ["string", "null"]}}}),
    "module": _envelope({
        "type": "object", "required": ["torus", "generator", "fixed", "components", "irreducible"],
        "properties": {"torus": _BASIS, "fixed": _BASIS,
                       "generator": {"type": ["array", "null"]},
                       "components": {"type": "array", "items": _BASIS},
                       "irreducible": {"type": "array", "items": {"type": "boolean"}}}}),
    "theorems": SUITE_REPORT_SCHEMA,
}


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _basis(s: Subspace) -> list[list[int]]:
    return [[int(a) for a in row] for row in s.basis]


def _load(path: str, validate: bool = True):
    try:
        return load(path, validate)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def parse_vectors(alg: RestrictedLieAlgebra, text: str) -> list[np.ndarray]:
    """``"1,0,0;0,1,0"`` or basis names such as ``"h"`` or ``"e0;e1"``."""
    out = []
    for tok in (t.strip() for t in text.split(";")):
        if not tok:
            continue
        if tok in alg.basis_names:
            out.append(alg.basis_vector(alg.basis_names.index(tok)))
            continue
        try:
            row = [int(a) for a in tok.split(",")]
        except ValueError:
            raise InputError(f"{tok!r} is neither a basis name nor a coefficient row") from None
        if len(row) != alg.dim:
            raise InputError(f"row {tok!r} has {len(row)} entries, expected {alg.dim}")
        out.append(alg.vec(row))
    if not out:
        raise InputError("empty vector list")
    return out


def _budgeted(fn, *args, **kw) -> Any:
    """Run ``fn``; a budget overrun becomes a marker dict instead of an exception."""
    try:
        return fn(*args, **kw)
    except BudgetExceeded as exc:
        return {"budget": {"what": exc.what, "count": exc.count, "limit": exc.budget}}


def _over(v) -> bool:
    return isinstance(v, dict) and "budget" in v


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, result dict, text lines)
# ---------------------------------------------------------------------------

def cmd_verify(ns, cfg: CliConfig):
    alg, _ = _load(ns.file, validate=False)
    rep = verify_restricted(alg, cfg.element_budget)
    lines = [f"{alg.name or ns.file}: p={alg.p} dim={alg.dim} "
             + ("restricted axioms hold" if rep.passed else "AXIOM FAILURE")]
    for f in rep.findings:
        lines.append(f"  {f['check']}: {f['message']} witness={json.dumps(f['witness'])}")
    return (EXIT_OK if rep.passed else EXIT_FAIL), rep.to_dict(), lines


def _analysis(alg: RestrictedLieAlgebra, cfg: CliConfig) -> dict:
    eb, nb = cfg.element_budget, cfg.enum_budget
    soluble, nilpotent = an.is_soluble(alg), an.is_nilpotent(alg)
    ser = {k: an.series(alg, kind=k).dims for k in ("derived", "lower_central", "upper_central")}
    fit = _budgeted(lambda: _basis(an.fitting(alg, eb)))

    def soc():
        r = an.socle(alg, eb)
        return {"socle": _basis(r.socle), "components": [_basis(c) for c in r.components]}

    mt = _budgeted(lambda: [_basis(t) for t in tr.maximal_tori(alg, True, nb)])
    if soluble and not nilpotent and alg.p > alg.dim:
        def carts():
            r = tr.cartan_subalgebras(alg, element_budget=eb, enum_budget=nb)
            return {"cartans": [_basis(c.space) for c in r.cartans], "routes_agree": r.agree}
        cartans = _budgeted(carts)
    else:
        cartans = None
    subs = _budgeted(an.subalgebras, alg, False, nb)
    if _over(subs):
        phi = phi_p = subs
    else:
        phi = _basis(an.frattini(alg, "plain", nb, subs))
        psubs = [s for s in subs if an.is_p_stable(alg, s)]
        phi_p = _basis(an.frattini(alg, "p", nb, psubs))
    simple = _budgeted(is_simple, alg, "closures", eb)
    return {
        "algebra": {"name": alg.name, "p": alg.p, "dim": alg.dim},
        "series": ser,
        "center": _basis(an.center(alg)),
        "fitting": fit,
        "socle": _budgeted(soc),
        "maximal_tori": mt,
        "cartans": cartans,
        "frattini": phi,
        "p_frattini": phi_p,
        "classification": {"abelian": an.is_abelian(alg), "nilpotent": nilpotent,
                           "soluble": soluble, "simple": simple,
                           "nilpotency_class": an.nilpotency_class(alg),
                           "torus_rank": None if _over(mt) else max((len(t) for t in mt), default=0)},
    }


def cmd_analyze(ns, cfg: CliConfig):
    alg, _ = _load(ns.file)
    res = _analysis(alg, cfg)
    over = [k for k, v in res.items() if _over(v)]
    lines = [f"{alg.name or ns.file}: p={alg.p} dim={alg.dim}"]
    for k, v in res.items():
        if k != "algebra":
            lines.append(f"  {k}: {json.dumps(v)}")
    return (EXIT_BUDGET if over else EXIT_OK), res, lines


def cmd_decompose(ns, cfg: CliConfig):
    alg, _ = _load(ns.file)
    s = alg.span(parse_vectors(alg, ns.subspace)) if ns.subspace else alg.full_space()
    if an.is_abelian(alg, s) and an.is_p_stable(alg, s):
        mode, split = "toral", tr.toral_decomposition(alg, s)
    else:
        mode, split = "nilpotent", tr.nilpotent_decomposition(alg, s, cfg.element_budget)
    res = {"mode": mode, "subspace": _basis(s), "torus": _basis(split.torus),
           "unipotent": _basis(split.unipotent), "exponent": int(split.stabilization_exponent)}
    lines = [f"{mode} decomposition of a {s.dim}-dimensional subspace",
             f"  torus     (dim {split.torus.dim}): {res['torus']}",
             f"  p-nilpotent (dim {split.unipotent.dim}): {res['unipotent']}",
             f"  stabilizes after {res['exponent']} step(s)"]
    return EXIT_OK, res, lines


def cmd_construct(ns, cfg: CliConfig):
    prm: dict[str, Any] = {"p": ns.p}
    if ns.n is not None:
        prm["n"] = ns.n
    if ns.k is not None:
        prm["k"] = ns.k
    if ns.modulus:
        prm["modulus"] = [int(a) for a in ns.modulus.split(",")]
    if ns.pmap:
        prm["pmap"] = [[int(a) for a in row.split(",")] for row in ns.pmap.split(";")]
    alg = construct({"family": ns.family, **prm})
    res = {"family": ns.family, "p": alg.p, "dim": alg.dim, "path": ns.out}
    if ns.out:
        save(ns.out, alg)
        return EXIT_OK, res, [f"wrote {alg.name} (dim {alg.dim}) to {ns.out}"]
    return EXIT_OK, res, [dumps(alg).rstrip("\n")]


def cmd_theorems(ns, cfg: CliConfig):
    targets = []
    for path in ns.files:
        alg, block = _load(path)
        targets.append((alg, [PModule.from_block(alg, block)]) if block else alg)
    rep = run_suite(targets, ns.suite, cfg.seed, cfg.enum_budget, cfg.element_budget, cfg.jobs)
    counts = rep.counts()
    code = EXIT_FAIL if counts["fail"] else EXIT_BUDGET if counts["budget"] else EXIT_OK
    lines = [f"suite {rep.suite}, seed {rep.seed}: "
             + ", ".join(f"{k} {v}" for k, v in counts.items())]
    for c in rep.checks:
        if c["status"] in ("fail", "budget"):
            w = c["witness"] or {}
            msg = w.get("message") or w.get("what") or ""
            lines.append(f"  {c['status'].upper()} {c['id']} on {c['target']}: {msg}")
    return code, rep.to_dict(cfg.stable), lines


def cmd_search(ns, cfg: CliConfig):
    rep = search_evidence(ns.p, ns.dim_max, ns.count, cfg.seed, cfg.enum_budget)
    st = rep.data["stats"]
    lines = [f"search p={ns.p} dim<={ns.dim_max} count={ns.count} seed={cfg.seed}"]
    lines += [f"  {k}: {v}" for k, v in st.items()]
    lines += [f"  find: {json.dumps(f)}" for f in rep.data["finds"]]
    code = EXIT_OK if rep.passed else EXIT_FAIL
    if rep.passed and st.get("budget"):
        code = EXIT_BUDGET
    return code, rep.to_dict(), lines


def cmd_module(ns, cfg: CliConfig):
    alg, block = _load(ns.file)
    m = PModule.from_block(alg, block) if block else adjoint_module(alg)
    t = alg.span(parse_vectors(alg, ns.torus))
    wd = weight_decomposition(m, t, cfg.element_budget)
    res = {"torus": _basis(t), "fixed": _basis(wd.fixed),
           "generator": None if wd.generator is None else [int(a) for a in wd.generator],
           "components": [_basis(c) for c in wd.components],
           "irreducible": [bool(b) for b in wd.irreducible]}
    lines = [f"{'given' if block else 'adjoint'} module of dim {m.dim_v} under a "
             f"{t.dim}-dimensional torus",
             f"  fixed points (dim {wd.fixed.dim}): {res['fixed']}"]
    for c, irr in zip(res["components"], res["irreducible"]):
        lines.append(f"  component (dim {len(c)}, {'irreducible' if irr else 'REDUCIBLE'}): {c}")
    code = EXIT_OK if all(res["irreducible"]) else EXIT_FAIL
    return code, res, lines


COMMANDS = {"verify": cmd_verify, "analyze": cmd_analyze, "decompose": cmd_decompose,
            "construct": cmd_construct, "theorems": cmd_theorems, "search": cmd_search,
            "module": cmd_module}


def _common(default) -> argparse.ArgumentParser:
    # the subcommand copy uses SUPPRESS so it cannot clobber a value given
    # before the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--enum-budget", default=default,
                        help="max subspaces enumerated (env PLALG_ENUM_BUDGET)")
    common.add_argument("--element-budget", default=default,
                        help="max elements scanned (env PLALG_ELEMENT_BUDGET)")
    common.add_argument("--seed", default=default, help="RNG seed (env PLALG_SEED)")
    common.add_argument("--output", choices=("text", "json"), default=default)
    common.add_argument("--stable", action="store_true", default=default or False,
                        help="omit timings so reports compare byte for byte")
    common.add_argument("--jobs", type=int, default=default, help="worker processes for theorems")
    return common


def build_parser() -> argparse.ArgumentParser:
    top, common = _common(None), _common(argparse.SUPPRESS)
    parser = argparse.ArgumentParser(prog="plalg", parents=[top],
                                     description="Exact computations in restricted Lie algebras over F_p.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check the restricted axioms")
    p.add_argument("file")
    p = sub.add_parser("analyze", parents=[common], help="structural summary")
    p.add_argument("file")
    p = sub.add_parser("decompose", parents=[common], help="toral or nilpotent decomposition")
    p.add_argument("file")
    p.add_argument("--subspace", help='rows "1,0,0;0,1,0" or basis names "e0;e1"')
    p = sub.add_parser("construct", parents=[common], help="write a standard family member")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--modulus", help="monic modulus coefficients, low degree first")
    p.add_argument("--pmap", help='p-map matrix rows for abelian, e.g. "1,0;0,0"')
    p.add_argument("-o", "--out")
    p = sub.add_parser("theorems", parents=[common], help="run a theorem-check suite")
    p.add_argument("files", nargs="+")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p = sub.add_parser("search", parents=[common], help="random minimal-simple search")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--dim-max", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p = sub.add_parser("module", parents=[common], help="weight decomposition under a torus")
    p.add_argument("file")
    p.add_argument("--torus", required=True, help='basis names or rows, ";"-separated')
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        cfg = CliConfig.resolve(ns)
        code, result, lines = COMMANDS[ns.command](ns, cfg)
    except InputError as exc:
        print(f"plalg {ns.command}: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        code = EXIT_BUDGET
        result = {"budget": {"what": exc.what, "count": exc.count, "limit": exc.budget}}
        lines = [f"budget exceeded: {exc}"]
        print(f"plalg {ns.command}: {exc}", file=sys.stderr)
        if cfg.output == "text":
            return code
    except (PlalgError, InvalidModule, ValueError) as exc:
        msg = f"plalg {ns.command}: input error: {exc}"
        if isinstance(exc, PlalgError) and exc.witness is not None:
            msg += f" witness={json.dumps(exc.witness, default=str)}"
        print(msg, file=sys.stderr)
        return EXIT_INPUT
    if cfg.output == "json":
        if "checks" in result:
            out = result
        else:
            out = {"command": ns.command, "exit_code": code, "result": result}
        print(json.dumps(out, sort_keys=True, indent=2, default=str))
    elif ns.command == "construct" and not ns.out:
        print(lines[0])
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
