"""Command-line front end.

    cbeta jack --part 2,1 --alpha 1/2 --basis monomial
    cbeta average --query q.json --routes thm1,pfaffian,quadrature
    cbeta verify jack-core

Exit codes: 0 success, 2 input error, 3 disagreement or route failure,
4 a series route did not converge.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__, multialt, ratioavg, symfun
from .ensemble import QuadratureConfig
from .partition import Partition, to_fraction

EXIT_OK, EXIT_INPUT, EXIT_DISAGREE, EXIT_NOT_CONVERGED = 0, 2, 3, 4


class InputError(Exception):
    pass


# requested name -> (route, keyword options for the route function)
ROUTE_ALIASES = {
    "product": ("product", {}),
    "prop21": ("product", {}),
    "thm1": ("thm1", {}),
    "specialP": ("thm1", {"form": "specialP"}),
    "specialQ": ("thm1", {"form": "specialQ"}),
    "thm2": ("thm2", {}),
    "thm2-orthogonality": ("thm2", {"form": "orthogonality"}),
    "hyperdet_even": ("hyperdet_even", {}),
    "thm3": ("hyperdet_even", {}),
    "hyperdet_dual": ("hyperdet_dual", {}),
    "thm3-2": ("hyperdet_dual", {}),
    "pfaffian": ("pfaffian", {}),
    "power_one": ("power_one", {}),
    "quadrature": ("quadrature", {}),
    "oracle": ("oracle", {}),
}


def _run_route(name, q, trunc, quad, budget):
    route, kw = ROUTE_ALIASES[name]
    if route == "product":
        return ratioavg.product_average(q)
    if route == "thm1":
        return ratioavg.ratio_thm1(q, trunc, **kw)
    if route == "thm2":
        return ratioavg.ratio_thm2(q, trunc, **kw)
    if route == "hyperdet_even":
        return ratioavg.ratio_hyperdet_even_beta(q, budget)
    if route == "hyperdet_dual":
        return ratioavg.ratio_hyperdet_even_dual(q, budget)
    if route == "pfaffian":
        return ratioavg.ratio_pfaffian_coe_cse(q)
    if route == "power_one":
        return ratioavg.ratio_inverse_power_one(q)
    if route == "quadrature":
        return ratioavg.quadrature(q, quad)
    from .testkit.oracle import oracle_average

    return oracle_average(q, grid=quad.points_per_dim)


def _parse_partition(text):
    try:
        parts = [int(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError:
        raise InputError(f"malformed partition {text!r}: expected comma-separated integers") from None
    try:
        return Partition(parts)
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed partition {text!r}: {exc}") from None


def _parse_alpha(text):
    try:
        a = to_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"alpha must be a rational like 1/2, got {text!r}") from None
    if a <= 0:
        raise InputError(f"alpha must be positive, got {a}")
    return a


def cmd_jack(args):
    lam = _parse_partition(args.part)
    alpha = _parse_alpha(args.alpha)
    try:
        basis = symfun.basis_tag(args.basis)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    try:
        f = symfun.jack_P(lam, alpha) if args.kind == "P" else symfun.jack_Q(lam, alpha)
        if basis != f.basis:
            f = symfun.to_basis(f, basis, alpha)
    except symfun.JackWeightError as exc:
        raise InputError(str(exc)) from None
    out = f.to_json()
    out["partition"] = list(lam)
    out["kind"] = args.kind
    print(json.dumps(out, indent=2))
    return EXIT_OK


def _load_query(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read query file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"query file is not valid JSON: {exc}") from None
    try:
        return ratioavg.RatioQuery.from_json(obj)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"query does not validate: {exc}") from None


def _route_entry(name, res, error=None):
    entry = {"name": name, "route": ROUTE_ALIASES[name][0]}
    if error is not None:
        entry.update(error)
        return entry
    entry.update(res.to_json())
    entry["route"] = ROUTE_ALIASES[name][0]
    entry["status"] = "ok"
    if not res.exact and res.meta.get("converged") is False:
        entry["status"] = "not_converged"
    return entry


def _agreement(entries, results, tol):
    """Exact values must coincide; other values must sit within ``tol`` of the reference."""
    usable = [(e["name"], results[e["name"]]) for e in entries if e.get("status") == "ok"]
    exact = [(n, r) for n, r in usable if r.exact]
    verdicts = {}
    ref_name = exact[0][0] if exact else (usable[0][0] if usable else None)
    if ref_name is None:
        return {"reference": None, "tolerance": tol, "verdicts": verdicts, "all_agree": True}
    ref = results[ref_name]
    for name, r in usable:
        if r.exact and ref.exact:
            ok = r.value == ref.value
            diff = 0.0 if ok else abs(complex(r.value) - complex(ref.value))
        else:
            diff = abs(complex(r.value) - complex(ref.value))
            ok = diff <= tol
        verdicts[name] = {"agree": ok, "difference": diff}
    for e in entries:
        if e["name"] not in verdicts:
            verdicts[e["name"]] = {"agree": None, "difference": None}
    all_agree = all(v["agree"] is not False for v in verdicts.values())
    return {"reference": ref_name, "tolerance": tol, "verdicts": verdicts, "all_agree": all_agree}


def _exit_code(entries, agreement):
    if any(e.get("status") == "input_error" for e in entries):
        return EXIT_INPUT
    if any(e.get("status") == "failed" for e in entries) or not agreement["all_agree"]:
        return EXIT_DISAGREE
    if any(e.get("status") == "not_converged" for e in entries):
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_average(args):
    q = _load_query(args.query)
    names = []
    for raw in (args.routes.split(",") if args.routes else ratioavg.applicable_routes(q)):
        name = raw.strip()
        if not name:
            continue
        if name not in ROUTE_ALIASES:
            raise InputError(f"unknown route {name!r}; choose from {', '.join(ROUTE_ALIASES)}")
        if name not in names:
            names.append(name)
    if not names:
        raise InputError("no routes requested")
    try:
        trunc = ratioavg.TruncationPolicy(max_weight=args.max_weight, tol=args.series_tol)
        quad = QuadratureConfig(points_per_dim=args.quad_points, precision_bits=args.precision_bits)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    budget = multialt.work_budget()

    def run(name):
        start = time.perf_counter()
        try:
            res = _run_route(name, q, trunc, quad, budget)
            err = None
        except ratioavg.NotApplicable as exc:
            res, err = None, {"status": "input_error", "error": f"{name}: {exc}"}
        except multialt.WorkBudgetExceeded as exc:
            res, err = None, {"status": "failed", "error": f"{name}: {exc}"}
        except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
            res, err = None, {"status": "failed", "error": f"{name}: {exc}"}
        return name, res, err, time.perf_counter() - start

    with ThreadPoolExecutor(max_workers=min(4, len(names))) as pool:
        outcomes = list(pool.map(run, names))
    entries, results, timings = [], {}, {}
    for name, res, err, elapsed in outcomes:
        entries.append(_route_entry(name, res, err))
        if res is not None:
            results[name] = res
        timings[name] = round(elapsed, 6)
    agreement = _agreement(entries, results, args.tol)
    code = _exit_code(entries, agreement)
    report = {
        "tool": "cbeta",
        "version": __version__,
        "query": q.to_json(),
        "config": {
            "max_weight": args.max_weight,
            "series_tol": args.series_tol,
            "tol": args.tol,
            "quad_points": args.quad_points,
            "precision_bits": args.precision_bits,
            "work_budget": budget,
        },
        "routes": entries,
        "agreement": agreement,
        "exit_code": code,
    }
    if not args.no_timings:
        report["timings"] = timings
    if args.format == "csv":
        _write_csv(report)
    else:
        print(json.dumps(report, indent=2, sort_keys=False))
    return code


def _write_csv(report):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["route", "status", "value", "exact", "err_est", "agree", "seconds"])
    verdicts = report["agreement"]["verdicts"]
    timings = report.get("timings", {})
    for e in report["routes"]:
        v = e.get("value")
        w.writerow([
            e["name"],
            e.get("status"),
            json.dumps(v) if v is not None else "",
            e.get("exact", ""),
            e.get("err_est", ""),
            verdicts.get(e["name"], {}).get("agree"),
            timings.get(e["name"], ""),
        ])
    sys.stdout.write(buf.getvalue())


def cmd_verify(args):
    from .testkit.acceptance import SUITES

    if args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    results = []
    start = time.perf_counter()
    for check in SUITES[args.suite]:
        res = check()
        results.append(res)
        if args.format == "text":
            print(res.line(), flush=True)
    total = time.perf_counter() - start
    failed = [r for r in results if not r.passed]
    code = EXIT_DISAGREE if failed else EXIT_OK
    if args.format == "json":
        print(json.dumps({
            "tool": "cbeta",
            "version": __version__,
            "suite": args.suite,
            "checks": [r.to_json() for r in results],
            "passed": len(results) - len(failed),
            "failed": len(failed),
            "elapsed": round(total, 3),
            "exit_code": code,
        }, indent=2))
    else:
        print(f"{len(results) - len(failed)} passed, {len(failed)} failed in {total:.1f}s")
        if failed:
            first = failed[0]
            detail = first.failures[0] if first.failures else first.notes
            print(f"first failure in {first.name}:")
            print(json.dumps(_plain(detail), indent=2))
    return code


def _plain(obj):
    from .testkit.acceptance import _jsonable

    return _jsonable(obj)


def build_parser():
    p = argparse.ArgumentParser(prog="cbeta", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"cbeta {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    j = sub.add_parser("jack", help="print a Jack P or Q function")
    j.add_argument("--part", required=True, help="partition, e.g. 2,1")
    j.add_argument("--alpha", required=True, help="Jack parameter, e.g. 1/2")
    j.add_argument("--basis", default="monomial", help="monomial, powersum, jackP, jackQ or gBasis")
    j.add_argument("--kind", choices=("P", "Q"), default="P")
    j.set_defaults(func=cmd_jack)

    a = sub.add_parser("average", help="evaluate a ratio average by several routes")
    a.add_argument("--query", required=True, help="JSON query file")
    a.add_argument("--routes", help="comma-separated routes (default: every applicable one)")
    a.add_argument("--max-weight", type=int, default=24, help="series truncation weight")
    a.add_argument("--series-tol", type=float, default=1e-10, help="tail tolerance for series convergence")
    a.add_argument("--tol", type=float, default=1e-8, help="agreement tolerance for floating values")
    a.add_argument("--quad-points", type=int, default=64)
    a.add_argument("--precision-bits", type=int, default=53)
    a.add_argument("--no-timings", action="store_true", help="leave timings out of the report")
    fmt = a.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    a.set_defaults(func=cmd_average, format="json")

    v = sub.add_parser("verify", help="run a registered verification suite")
    v.add_argument("suite", help="jack-core, superjack, multialt, ratios, dualities, asymptotics or all")
    v.add_argument("--json", dest="format", action="store_const", const="json", default="text")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage already; keep --help at 0
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
