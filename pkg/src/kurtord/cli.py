"""Command-line front end.

    kurtord order --f "power(p=3)" --g "power(p=1)" --rel k3
    kurtord scan --f "weibull(k=0.2:5:12:log)" --g "weibull(k=0.2:5:12:log)" --rel k3 --csv
    kurtord functional --f "weibull(k=2)" --fn gamma_mode
    kurtord verify

Exit codes: 0 Holds (or success), 1 Fails (or a failed verify item),
2 Undecided, 3 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import functionals as fn
from . import verify as vf
from .distributions import FamilySpec, make_distribution
from .orders import (SEED, TAIL_N, TOL, InflectionReport, OrderVerdict, Relation,
                     inflection_values, max_threads)
from .parsing import ParseError, parse_distribution, parse_functional, parse_relation, parse_scan
from .transport import EPS_P, GRID_N, Grid, TransportMap

SCHEMA_VERSION = 1
EXIT = {"Holds": 0, "Fails": 1, "Undecided": 2}
USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid", type=int, default=GRID_N, metavar="N",
                   help="uniform probability levels (default %(default)s)")
    p.add_argument("--eps-p", type=float, default=EPS_P, help="level clipping (default %(default)g)")
    p.add_argument("--tail", type=int, default=TAIL_N,
                   help="extra log-spaced tail levels per side (default %(default)s)")
    p.add_argument("--tol", type=float, default=TOL, help="sign tolerance (default %(default)g)")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=SEED,
                   help="RNG seed (default 0x5EED)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report")
    fmt.add_argument("--csv", action="store_true", help="CSV report")
    p.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="kurtord", description="Certified kurtosis and lower-order orderings.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("order", help="decide one order relation")
    p.add_argument("--f", required=True, help='source law, e.g. "weibull(k=1)"')
    p.add_argument("--g", required=True, help="target law")
    p.add_argument("--rel", required=True, help="k0..k3, gs(t0=..), gss or equiv3")
    _common(p)

    p = sub.add_parser("scan", help="verdicts over parameter grids")
    p.add_argument("--f", required=True, help='e.g. "weibull(k=0.2:5:12:log)" or "sas(nu={-1,1},tau=2)"')
    p.add_argument("--g", required=True)
    p.add_argument("--rel", required=True)
    _common(p)

    p = sub.add_parser("functional", help="evaluate a skewness or kurtosis functional")
    p.add_argument("--f", required=True)
    p.add_argument("--g", help="second law (kappa_qf)")
    p.add_argument("--fn", required=True,
                   help="gamma_d(p=..), gamma_mode, kappa_q(alpha=..,eta=..), kappa_qf(alpha=..), eta_f(q=..)")
    _common(p)

    p = sub.add_parser("verify", help="run the reproduction suite")
    p.add_argument("--only", nargs="*", choices=list(vf.CHECKS), help="subset of checks")
    _common(p)
    return ap


# ---------------------------------------------------------------------------


def _grid(args) -> Grid:
    try:
        return Grid(args.grid, args.eps_p, args.tail)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _law(text: str):
    try:
        return make_distribution(parse_distribution(text))
    except ParseError:
        raise
    except ValueError as e:
        raise UsageError(f"{text}: {e}") from None


def _config(args) -> dict:
    return {"grid": args.grid, "eps_p": args.eps_p, "tail": args.tail, "tol": args.tol,
            "seed": args.seed}


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else str(x)


def _verdict_dict(v: OrderVerdict) -> dict:
    w = None
    if v.witness is not None:
        w = {"t": _num(v.witness.t), "p": _num(v.witness.p), "value": _num(v.witness.value)}
    return {"status": v.status, "margin": _num(v.margin), "witness": w,
            "relation": v.relation, "points": v.grid_n, "note": v.note}


def _infl_dict(r: InflectionReport) -> dict:
    return {"p_lo": _num(r.p_lo), "p_hi": _num(r.p_hi), "degenerate": r.degenerate,
            "empty": bool(r.empty), "leq3_precondition": bool(r.precondition)}


def _spec_str(s: FamilySpec) -> str:
    args = ",".join(f"{k}={v:.12g}" for k, v in s.params.items())
    return f"{s.family}({args})"


def _emit(text: str, args) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _decide(f, g, rel: Relation, grid: Grid, tol: float):
    v = TransportMap(f, g).evaluate_grid(grid)
    verdict = rel.check(f, g, grid, tol, v if rel.kind != "gss" else None)
    infl = None
    if rel.kind in ("gs", "gss", "k3", "equiv3"):
        infl = inflection_values(f, g, rel.t0 if rel.kind == "gs" else 0.0, grid, tol, v)
    return verdict, infl


# ---------------------------------------------------------------------------


def cmd_order(args) -> int:
    f, g, rel = _law(args.f), _law(args.g), parse_relation(args.rel)
    t = time.perf_counter()
    verdict, infl = _decide(f, g, rel, _grid(args), args.tol)
    elapsed = time.perf_counter() - t
    if args.json:
        out = {"schema_version": SCHEMA_VERSION, "command": "order",
               "query": {"f": f.name, "g": g.name, "rel": str(rel)},
               "config": _config(args), "verdict": _verdict_dict(verdict),
               "inflection": _infl_dict(infl) if infl else None}
        _emit(_json(out), args)
    elif args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["paramsF", "paramsG", "verdict", "margin", "p_lo", "p_hi"])
        w.writerow(_scan_row(f.name, g.name, verdict, infl))
        _emit(buf.getvalue(), args)
    else:
        lines = [f"{f.name} {rel} {g.name}: {verdict.status}",
                 f"  margin {verdict.margin:.6g} over {verdict.grid_n} levels "
                 f"(grid {args.grid}, eps_p {args.eps_p:g}, tail {args.tail}, tol {args.tol:g}, "
                 f"seed {args.seed:#x})"]
        if verdict.witness is not None:
            w = verdict.witness
            lines.append(f"  witness t={w.t:.12g} p={w.p:.12g} slack={w.value:.6g}")
        if verdict.note:
            lines.append(f"  note: {verdict.note}")
        if infl is not None and not infl.empty:
            lines.append(f"  inflection values [{infl.p_lo:.12g}, {infl.p_hi:.12g}]"
                         + (f" ({infl.degenerate})" if infl.degenerate else ""))
        lines.append(f"  runtime {elapsed:.3f} s")
        _emit("\n".join(lines) + "\n", args)
    return EXIT[verdict.status]


def _scan_row(fname, gname, verdict, infl):
    p_lo = p_hi = ""
    if infl is not None and not infl.empty:
        p_lo, p_hi = repr(float(infl.p_lo)), repr(float(infl.p_hi))
    return [fname, gname, verdict.status, repr(float(verdict.margin)), p_lo, p_hi]


def cmd_scan(args) -> int:
    fs = sorted(parse_scan(args.f), key=lambda s: tuple(s.params.values()))
    gs = sorted(parse_scan(args.g), key=lambda s: tuple(s.params.values()))
    rel = parse_relation(args.rel)
    grid = _grid(args)
    try:
        cells = [(a, b, make_distribution(a), make_distribution(b)) for a in fs for b in gs]
    except ValueError as e:
        raise UsageError(str(e)) from None

    def run(cell):
        return _decide(cell[2], cell[3], rel, grid, args.tol)

    with ThreadPoolExecutor(max_workers=max_threads()) as ex:
        results = list(ex.map(run, cells))

    if args.json:
        rows = [{"f": _spec_str(a), "g": _spec_str(b), "verdict": _verdict_dict(v),
                 "inflection": _infl_dict(i) if i else None}
                for (a, b, _, _), (v, i) in zip(cells, results)]
        _emit(_json({"schema_version": SCHEMA_VERSION, "command": "scan",
                     "query": {"f": args.f, "g": args.g, "rel": str(rel)},
                     "config": _config(args), "cells": rows}), args)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["paramsF", "paramsG", "verdict", "margin", "p_lo", "p_hi"])
        for (a, b, _, _), (v, i) in zip(cells, results):
            w.writerow(_scan_row(_spec_str(a), _spec_str(b), v, i))
        _emit(buf.getvalue(), args)
    return 0


def cmd_functional(args) -> int:
    call, arity = parse_functional(args.fn)
    f = _law(args.f)
    if arity == 2 and not args.g:
        raise UsageError(f"{call.name} needs --g")
    if arity == 1 and args.g:
        raise UsageError(f"{call.name} takes a single law")
    a = call.args
    try:
        if call.name == "gamma_d":
            value = fn.gamma_d(f, a["p"]).value
        elif call.name == "gamma_mode":
            value = fn.gamma_mode(f).value
        elif call.name == "kappa_q":
            value = fn.kappa_q(f, a["alpha"], a["eta"])
        elif call.name == "eta_f":
            value = fn.eta_f(f, a["q"])
        else:
            value = fn.kappa_qf(f, _law(args.g), a["alpha"])
    except ValueError as e:
        raise UsageError(str(e)) from None
    value = 0.0 if value == 0 else value  # no negative zero in reports
    if args.json:
        _emit(_json({"schema_version": SCHEMA_VERSION, "command": "functional",
                     "query": {"f": f.name, "g": args.g and _law(args.g).name, "fn": args.fn},
                     "config": _config(args), "value": _num(value)}), args)
    elif args.csv:
        _emit(f"functional,value\n{call.name},{value!r}\n", args)
    else:
        _emit(f"{call.name} = {value:.12g}\n", args)
    return 0


def cmd_verify(args) -> int:
    results = vf.run_all(args.only)
    if args.json:
        _emit(_json({"schema_version": SCHEMA_VERSION, "command": "verify",
                     "config": _config(args),
                     "items": [{"name": r.name, "passed": r.passed, "detail": r.detail}
                               for r in results]}), args)
    else:
        lines = [f"[{'PASS' if r.passed else 'FAIL'}] {r.name:18s} {r.seconds:6.2f}s  {r.detail}"
                 for r in results]
        total = sum(r.seconds for r in results)
        npass = sum(r.passed for r in results)
        lines.append(f"{npass}/{len(results)} passed in {total:.1f} s")
        _emit("\n".join(lines) + "\n", args)
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {"order": cmd_order, "scan": cmd_scan, "functional": cmd_functional,
            "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.cmd](args)
    except ParseError as e:
        print(f"kurtord: parse error: {e}", file=sys.stderr)
        return USAGE
    except UsageError as e:
        print(f"kurtord: error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
