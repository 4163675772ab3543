"""Command-line front end.

Every command reads JSON specs, emits a JSON report (or a table derived
from it) and exits with: 0 success / mathematically true, 1 mathematically
false or no witness, 2 input error, 3 budget error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field as dfield

from . import config
from .automorphism import (aut_brute, aut_enumerate, aut_order_closed_form,
                           aut_order_monomial, support_of)
from .codes import (build_h_code, is_mrd, min_distance_exhaustive,
                    mrd_norm_criterion)
from .equivalence import (EquivMap, equiv_closed_form, full_equiv_search,
                          gamma_closed_form, gamma_enumerate,
                          monomial_equiv_search)
from .errors import BudgetExceededError, PreconditionError, PresetConditionError
from .invariants import (adjoint_code, adjoint_code_shape_check, delsarte_dual,
                         dual_closed_form, nucleus, nucleus_closed_form)
from .jsonio import (code_to_json, codespec_from_json, codespec_to_json,
                     linpoly_to_json, parse_field_flag)
from .verification import run_checks

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


@dataclass
class JobConfig:
    fmt: str = "json"
    budget: int | None = None
    dlog_budget: int | None = None
    field_flag: str | None = None
    method: str = "both"
    all_witnesses: bool = False
    extra: dict = dfield(default_factory=dict)


def _load_config_file(path):
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise PreconditionError(f"bad config line: {line!r}")
            key, val = line.split("=", 1)
            out[key.strip()] = val.strip()
    return out


_KNOWN_KEYS = {"format", "budget", "dlog-budget", "field", "method",
               "all-witnesses"}


def _merge_config(args) -> JobConfig:
    cfg = JobConfig()
    filevals = _load_config_file(args.config) if args.config else {}
    unknown = set(filevals) - _KNOWN_KEYS
    if unknown:
        raise PreconditionError(f"unknown config keys: {sorted(unknown)}")
    fmt = args.format or filevals.get("format") or "json"
    if fmt not in ("json", "table"):
        raise PreconditionError("--format must be json or table")
    cfg.fmt = fmt
    budget = args.budget if args.budget is not None else filevals.get("budget")
    cfg.budget = int(budget) if budget is not None else None
    if cfg.budget is not None and cfg.budget <= 0:
        raise PreconditionError("budget must be positive")
    dlb = (args.dlog_budget if args.dlog_budget is not None
           else filevals.get("dlog-budget"))
    cfg.dlog_budget = int(dlb) if dlb is not None else None
    if cfg.dlog_budget is not None and cfg.dlog_budget <= 0:
        raise PreconditionError("dlog budget must be positive")
    cfg.field_flag = args.field or filevals.get("field")
    cfg.method = args.method or filevals.get("method") or "both"
    if cfg.method not in ("closed", "oracle", "both"):
        raise PreconditionError("--method must be closed, oracle or both")
    cfg.all_witnesses = bool(getattr(args, "all_witnesses", False)
                             or filevals.get("all-witnesses") == "true")
    return cfg


def _read_spec(path, cfg: JobConfig):
    with open(path) as fh:
        obj = json.load(fh)
    override = None
    if cfg.field_flag:
        override = parse_field_flag(cfg.field_flag, dlog_budget=cfg.dlog_budget)
    return codespec_from_json(obj, field=override, dlog_budget=cfg.dlog_budget)


def _emit(report, cfg: JobConfig):
    if cfg.fmt == "json":
        print(json.dumps(report, indent=2, default=str))
        return
    # the table rendering is a flat view of the same JSON document
    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}{k}.", v)
        elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
            for i, v in enumerate(obj):
                walk(f"{prefix}{i}.", v)
        else:
            print(f"{prefix[:-1]:<40} {obj}")
    walk("", json.loads(json.dumps(report, default=str)))


def _report(inputs_echo, method, result, t0):
    return {
        "inputs_echo": inputs_echo,
        "method": method,
        "result": result,
        "elapsed": round(time.perf_counter() - t0, 6),
    }


def _witness_json(w: EquivMap | None):
    if w is None:
        return None
    F = w.phi1.field
    out = {
        "phi1": linpoly_to_json(w.phi1),
        "phi2": linpoly_to_json(w.phi2),
        "nu": w.nu,
    }
    if len(w.phi1.support) == 1 and len(w.phi2.support) == 1:
        l1 = w.phi1.support[0]
        l2 = w.phi2.support[0]
        out["monomial"] = {
            "a": list(F.digits(w.phi1.coeffs[l1])),
            "b": list(F.digits(w.phi2.coeffs[l2])),
            "l1": l1,
            "l2": l2,
        }
    return out


# -- commands -----------------------------------------------------------------

def cmd_construct(args, cfg):
    t0 = time.perf_counter()
    spec = _read_spec(args.spec, cfg)
    code = build_h_code(spec)
    report = _report(codespec_to_json(spec), "construction",
                     code_to_json(code), t0)
    _emit(report, cfg)
    return EXIT_TRUE


def cmd_check(args, cfg):
    t0 = time.perf_counter()
    spec = _read_spec(args.spec, cfg)
    code = build_h_code(spec)
    result = {"criterion": mrd_norm_criterion(spec)}
    method = "norm-criterion"
    if cfg.method in ("oracle", "both"):
        result["min_distance"] = min_distance_exhaustive(code, cfg.budget)
        result["is_mrd"] = is_mrd(code, cfg.budget)
        method = "norm-criterion+exhaustive"
    report = _report(codespec_to_json(spec), method, result, t0)
    _emit(report, cfg)
    verdict = result.get("is_mrd", result["criterion"])
    return EXIT_TRUE if verdict else EXIT_FALSE


def cmd_dual(args, cfg):
    t0 = time.perf_counter()
    spec = _read_spec(args.spec, cfg)
    code = build_h_code(spec)
    dual = delsarte_dual(code)
    result = {"dual": code_to_json(dual)}
    method = "linear-system"
    if cfg.method in ("closed", "both"):
        try:
            closed = dual_closed_form(spec)
            result["closed_form_matches"] = closed == dual
            method = "linear-system+closed-form"
        except PreconditionError as exc:
            result["closed_form_matches"] = None
            result["closed_form_note"] = str(exc)
    report = _report(codespec_to_json(spec), method, result, t0)
    _emit(report, cfg)
    return EXIT_TRUE


def cmd_adjoint(args, cfg):
    t0 = time.perf_counter()
    spec = _read_spec(args.spec, cfg)
    code = build_h_code(spec)
    adj = adjoint_code(code)
    shape = adjoint_code_shape_check(spec)
    result = {
        "adjoint": code_to_json(adj),
        "shape_identification": {
            "matches": shape.matches,
            "k_witnessed": shape.k_witnessed,
            "k_printed_elsewhere": shape.k_printed_elsewhere,
            "note": shape.note,
        },
    }
    report = _report(codespec_to_json(spec), "basiswise-adjoint", result, t0)
    _emit(report, cfg)
    return EXIT_TRUE


def cmd_nucleus(args, cfg):
    t0 = time.perf_counter()
    spec = _read_spec(args.spec, cfg)
    code = build_h_code(spec)
    res = nucleus(code, args.kind)
    result = {
        "kind": args.kind,
        "dimension_over_p": res.dim_fp,
        "subfield_degree_if_scalar": res.closed_form_d,
        "basis": [linpoly_to_json(b) for b in res.basis],
    }
    method = "linear-system"
    if cfg.method in ("closed", "both"):
        try:
            d = nucleus_closed_form(spec)
            result["closed_form_d"] = d
            result["closed_form_matches"] = d == res.closed_form_d
            method = "linear-system+closed-form"
        except PreconditionError as exc:
            result["closed_form_d"] = None
            result["closed_form_note"] = str(exc)
    report = _report(codespec_to_json(spec), method, result, t0)
    _emit(report, cfg)
    return EXIT_TRUE


def cmd_gamma(args, cfg):
    t0 = time.perf_counter()
    enum = gamma_enumerate(args.n, args.r, args.s, args.k)
    result = {"enumerated": sorted(enum.members)}
    method = "enumeration"
    if 2 * args.k >= args.n:
        closed = gamma_closed_form(args.n, args.r, args.s, args.k)
        result["closed_form"] = sorted(closed.members)
        result["equal"] = closed.members == enum.members
        method = "enumeration+closed-form"
    report = _report({"n": args.n, "r": args.r, "s": args.s, "k": args.k},
                     method, result, t0)
    _emit(report, cfg)
    return EXIT_TRUE if result.get("equal", True) else EXIT_FALSE


def cmd_equiv(args, cfg):
    t0 = time.perf_counter()
    specA = _read_spec(args.specA, cfg)
    specB = _read_spec(args.specB, cfg)
    method = args.search or ("closed-form" if cfg.method == "closed"
                             else "monomial")
    if method == "closed-form":
        w = equiv_closed_form(specA, specB, budget=cfg.budget)
    elif method == "monomial":
        w = monomial_equiv_search(build_h_code(specA), build_h_code(specB))
    elif method == "full":
        w = full_equiv_search(build_h_code(specA), build_h_code(specB),
                              budget=cfg.budget)
    else:
        raise PreconditionError(f"unknown search {method!r}")
    result = {"equivalent": w is not None, "witness": _witness_json(w)}
    report = _report({"specA": codespec_to_json(specA),
                      "specB": codespec_to_json(specB)}, method, result, t0)
    _emit(report, cfg)
    return EXIT_TRUE if w is not None else EXIT_FALSE


def cmd_aut(args, cfg):
    t0 = time.perf_counter()
    spec = _read_spec(args.spec, cfg)
    result = {}
    method_parts = []
    if cfg.method in ("closed", "both"):
        supp = support_of(spec)
        if len(supp.members) == 1:
            result["order_closed_form"] = aut_order_monomial(spec)
        else:
            result["order_closed_form"] = aut_order_closed_form(spec)
        result["k_boundary"] = spec.k in (2, spec.field.n - 2)
        method_parts.append("closed_form")
    if cfg.method in ("oracle", "both") or args.list:
        triples = aut_enumerate(spec, cfg.budget)
        result["order"] = len(triples)
        method_parts.append("enumeration")
        if args.list:
            F = spec.field
            result["triples"] = [
                {"a": list(F.digits(t.a)), "b": list(F.digits(t.b)),
                 "l": t.l, "nu": t.nu} for t in triples]
    if "order" in result and "order_closed_form" in result:
        result["agree"] = result["order"] == result["order_closed_form"]
    report = _report(codespec_to_json(spec), "+".join(method_parts), result, t0)
    _emit(report, cfg)
    ok = result.get("agree", True)
    return EXIT_TRUE if ok else EXIT_FALSE


def cmd_verify_paper(args, cfg):
    t0 = time.perf_counter()
    results = run_checks()
    lines = []
    for r in results:
        lines.append({"name": r.name, "pass": r.ok, "detail": r.detail,
                      "elapsed": round(r.elapsed, 3)})
        status = "PASS" if r.ok else "FAIL"
        print(f"[{status}] {r.name:<45} {r.detail}", file=sys.stderr)
    ok = all(r.ok for r in results)
    report = _report({}, "verification-ledger",
                     {"checks": lines, "all_pass": ok}, t0)
    _emit(report, cfg)
    return EXIT_TRUE if ok else EXIT_FALSE


# -- entry point ---------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="mrdcodes",
        description="Rank-metric MRD codes: construction, invariants, "
                    "equivalence and automorphism groups.")
    ap.add_argument("--field", help="p,lambda,n[,modulus-int] override")
    ap.add_argument("--budget", type=int, help="exhaustive-scan budget")
    ap.add_argument("--dlog-budget", type=int, dest="dlog_budget",
                    help="largest field size for dlog tables")
    ap.add_argument("--format", choices=("json", "table"))
    ap.add_argument("--method", choices=("closed", "oracle", "both"))
    ap.add_argument("--config", help="flat key=value config file; flags win")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("construct", help="build a code and report its record")
    s.add_argument("spec")
    s.set_defaults(fn=cmd_construct)

    s = sub.add_parser("check", help="norm criterion, distance, MRD verdict")
    s.add_argument("spec")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("dual", help="Delsarte dual (and closed form when valid)")
    s.add_argument("spec")
    s.set_defaults(fn=cmd_dual)

    s = sub.add_parser("adjoint", help="adjoint code and its identification")
    s.add_argument("spec")
    s.set_defaults(fn=cmd_adjoint)

    s = sub.add_parser("nucleus", help="right or middle nucleus")
    s.add_argument("spec")
    s.add_argument("--kind", choices=("right", "middle"), default="right")
    s.set_defaults(fn=cmd_nucleus)

    s = sub.add_parser("gamma", help="difference set, both routes")
    s.add_argument("n", type=int)
    s.add_argument("r", type=int)
    s.add_argument("s", type=int)
    s.add_argument("k", type=int)
    s.set_defaults(fn=cmd_gamma)

    s = sub.add_parser("equiv", help="equivalence witness search")
    s.add_argument("specA")
    s.add_argument("specB")
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--closed-form", dest="search", action="store_const",
                     const="closed-form")
    grp.add_argument("--monomial", dest="search", action="store_const",
                     const="monomial")
    grp.add_argument("--full", dest="search", action="store_const",
                     const="full")
    s.add_argument("--all-witnesses", action="store_true")
    s.set_defaults(fn=cmd_equiv, search=None)

    s = sub.add_parser("aut", help="automorphism group order / listing")
    s.add_argument("spec")
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--count", action="store_true")
    grp.add_argument("--list", action="store_true")
    s.set_defaults(fn=cmd_aut)

    s = sub.add_parser("verify-paper",
                       help="run the pinned verification-vector ledger")
    s.set_defaults(fn=cmd_verify_paper)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _merge_config(args)
        return args.fn(args, cfg)
    except BudgetExceededError as exc:
        print(json.dumps({"error": "budget", "message": str(exc)}))
        return EXIT_BUDGET
    except PresetConditionError as exc:
        print(json.dumps({"error": "conditions-violated",
                          "violations": exc.violations}))
        return EXIT_FALSE
    except (PreconditionError, OSError, json.JSONDecodeError, KeyError,
            ValueError) as exc:
        print(json.dumps({"error": "input", "message": str(exc)}))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
