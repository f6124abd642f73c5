"""Reproduction suite: worked examples, closed-form oracles and shape tables.

Each check returns a :class:`CheckResult`; ``run_all`` executes them in a
fixed order. The whole suite runs in well under a minute.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import families as fam
from .distributions import PowerUnit, ReflectedCubeRoot, SinhArsinh, Weibull
from .orders import (DEFAULT_GRID, Relation, equiv_3, leq_gs, leq_k, sign_changes,
                     transitivity_probe)
from .transport import TransportMap


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


CHAIN_ROOTS = (((5 - 3 * math.sqrt(2)) / 14) ** (1 / 3), ((5 + 3 * math.sqrt(2)) / 14) ** (1 / 3))
GS_CROSSING = 2 ** (-2 / 3)
# range of 4t^7 - 5t^4 + t on (0, 1)
GS_POLY_MAX, GS_POLY_MIN = 0.2803316122, -0.4854794623

# (tau_tilde band representative) -> sign change, monotonicity, limit, <=3, <=gs
SAS_SHAPES = {
    0.5: ("+ to -", "no", "0", "no", "no"),
    1.0: ("none", "no", "0", "no", "no"),
    1.5: ("- to +", "no", "0", "no", "iff t0=0"),
    2.0: ("- to +", "increasing", "finite", "yes", "yes"),
    2.5: ("- to +", "increasing", "sublinear", "yes", "yes"),
    3.0: ("- to +", "increasing", "linear", "yes", "yes"),
    4.0: ("- to +", "increasing", "superlinear", "yes", "yes"),
}
# footnotes for tau_tilde = 1, nu_tilde = 0: R'' vanishes identically
SHAPE_IDENTITY = ("none", "constant", "0", "yes", "yes")

SAS_NUS = (-2.0, -1.0, 0.0, 1.0, 2.0)
SAS_TAUS = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0)
WEIBULL_SHAPES = tuple(np.geomspace(0.2, 5.0, 12))
MONOMIAL_P = tuple(0.1 + 3.9 * (np.arange(40) + 0.7) / 40)


def near(x: float, marks, rel: float = 1e-3) -> bool:
    return any(abs(x - m) <= rel * abs(m) for m in marks)


def chain_verdicts() -> tuple[bool, str]:
    F, G, H = PowerUnit(3), PowerUnit(1), ReflectedCubeRoot(1)
    fg, gh, fh, hf = leq_k(F, G, 3), leq_k(G, H, 3), leq_k(F, H, 3), leq_k(H, F, 3)
    ok = fg.holds and gh.holds and fh.fails and hf.holds
    return ok, (f"F<=3G {fg.status}, G<=3H {gh.status}, F<=3H {fh.status} "
                f"(t={fh.witness.t:.4f}), H<=3F {hf.status} margin {hf.margin:.3g}")


def chain_roots() -> tuple[bool, str]:
    roots = sign_changes(PowerUnit(3), ReflectedCubeRoot(1), 3)
    ok = len(roots) == 2 and all(abs(a - b) < 1e-6 for a, b in zip(roots, CHAIN_ROOTS))
    return ok, f"sign changes of R_FH''' at {[f'{r:.9f}' for r in roots]}"


def gs_thresholds() -> tuple[bool, str]:
    F, G = PowerUnit(3), PowerUnit(1)
    bad = []
    for c in (0.1, 1.0, 10.0):
        H = ReflectedCubeRoot(c)
        for t0 in (0.5 * 18 * c * GS_POLY_MIN, 0.0, 0.5 * 18 * c * GS_POLY_MAX):
            v = (leq_gs(F, G, t0), leq_gs(G, H, t0), leq_gs(F, H, t0))
            if not (v[0].holds and v[1].holds and v[2].fails):
                bad.append((c, t0, [x.status for x in v]))
        roots = sign_changes(F, H, 2)
        if len(roots) != 1 or abs(roots[0] - GS_CROSSING) >= 1e-6:
            bad.append((c, "crossing", roots))
    return not bad, "all 9 threshold cases and 3 crossings" if not bad else f"failures: {bad}"


def monomials() -> tuple[bool, str]:
    bad = []
    for p in MONOMIAL_P:
        if near(p, (0.5, 1.0, 2.0)):
            continue
        want = fam.monomial_order_predicate(p).equiv3
        got = equiv_3(PowerUnit(p), PowerUnit(1))
        if got.holds != want or got.status == "Undecided":
            bad.append((round(p, 4), got.status))
    return not bad, f"{len(MONOMIAL_P)} exponents" if not bad else f"mismatches: {bad}"


def weibull_chain() -> tuple[bool, str]:
    out = []
    for k in (0.5, 1.0, 2.0):
        a, b, c = Weibull(k), Weibull(1.5 * k), Weibull(0.7 * k)
        ok = (leq_k(a, b, 3).holds and not equiv_3(a, b).holds and equiv_3(b, c).holds
              and leq_k(a, c, 3).fails)
        rep = transitivity_probe([a, b, c], "k3")
        out.append(ok and any((v.a, v.b, v.c) == (0, 1, 2) for v in rep.violations))
    return all(out), f"k in (0.5, 1, 2): {out}"


def weibull_grid() -> tuple[bool, str]:
    bad, n = [], 0
    for k, l in itertools.product(WEIBULL_SHAPES, WEIBULL_SHAPES):
        if k != l and near(k / l, (0.5, 1.0, 2.0)):
            continue
        n += 1
        v = TransportMap(Weibull(k), Weibull(l)).evaluate_grid(DEFAULT_GRID)
        want = fam.weibull_order_predicate(k, l)
        a, e = leq_k(None, None, 3, values=v), equiv_3(None, None, values=v)
        if a.holds != want.leq3 or e.holds != want.equiv3 or "Undecided" in (a.status, e.status):
            bad.append((k, l))
    return not bad, f"{n} cells agree" if not bad else f"{len(bad)} of {n} disagree: {bad[:3]}"


def sas_grid() -> tuple[bool, str]:
    bad3, badgs, n3, ngs = [], [], 0, 0
    for nf, tf, ng, tg in itertools.product(SAS_NUS, SAS_TAUS, SAS_NUS, SAS_TAUS):
        if (nf, tf) == (ng, tg):
            continue
        v = TransportMap(SinhArsinh(nf, tf), SinhArsinh(ng, tg)).evaluate_grid(DEFAULT_GRID)
        want = fam.sas_order_predicate(nf, tf, ng, tg)
        if not near(tf, (2 * tg,)):
            n3 += 1
            if leq_k(None, None, 3, values=v).holds != want.leq3:
                bad3.append((nf, tf, ng, tg))
        # tau_F = tau_G is a boundary: t0 = 0 is not a reasonable threshold there
        if not near(tf, (tg,)):
            ngs += 1
            if leq_gs(None, None, 0.0, values=v).holds != want.leq_gs0:
                badgs.append((nf, tf, ng, tg))
    ok = not bad3 and not badgs
    return ok, (f"<=3: {n3 - len(bad3)}/{n3}, <=gs0: {ngs - len(badgs)}/{ngs}"
                + ("" if ok else f"; first bad {(bad3 + badgs)[:3]}"))


def sas_shapes() -> tuple[bool, str]:
    bad = []
    for tau, row in SAS_SHAPES.items():
        for nu in (-1.0, 0.0, 1.0):
            got = fam.sas_table1_row(fam.SasReduced(nu, tau))
            want = SHAPE_IDENTITY if (tau == 1.0 and nu == 0.0) else row
            have = (got.sign_change, got.monotonicity, got.limit, got.leq3, got.leq_gs)
            if have != want:
                bad.append((tau, nu, have))
            if tau == 2.0 and nu == 0.0 and not np.allclose(got.limits, (-4.0, 4.0), atol=1e-3):
                bad.append((tau, nu, got.limits))
    return not bad, "21 rows" if not bad else f"mismatches: {bad}"


def sas_special_cases() -> tuple[bool, str]:
    msgs, ok = [], True
    _, r2, _ = fam.sas_r_derivs(fam.SasReduced(0.0, 2.0), np.array([-50.0, 50.0]))
    e = float(np.max(np.abs(r2 - np.array([-4.0, 4.0]))))
    ok &= e < 1e-3
    msgs.append(f"tau=2 |r2(+-50)-+4|={e:.2e}")
    t = np.linspace(-5, 5, 1001)
    tm = TransportMap(SinhArsinh(0.0, 3.0), SinhArsinh(0.0, 1.0))
    e = float(np.max(np.abs(tm.r_derivs(t)[1] - 24 * t)))
    ok &= e < 1e-9
    msgs.append(f"tau=3 max|r2-24t|={e:.2e}")
    for nu in (-1.0, 0.5):
        tm = TransportMap(SinhArsinh(nu, 1.0), SinhArsinh(0.0, 1.0))
        c = tm.r_derivs(t)[1] * (1 + t * t) ** 1.5
        e = float(np.max(np.abs(c - fam.sas_h_constant(nu))))
        ok &= e < 1e-9
        msgs.append(f"tau=1 nu={nu} spread={e:.2e}")
    for tau in (0.5, 2.5, 3.0, 4.0):
        red = fam.SasReduced(0.0, tau)
        for side in (1.0, -1.0):
            s = fam.r2_growth_exponent(red, side)
            ok &= abs(s - (tau - 2.0)) < 0.05
    msgs.append("asymptotic slopes within 0.05")
    return bool(ok), "; ".join(msgs)


def sas_transitivity() -> tuple[bool, str]:
    fs = [SinhArsinh(nu, tau) for nu in SAS_NUS for tau in SAS_TAUS]
    n = 0
    for rel in (Relation("k3"), Relation("gs", 0.0)):
        rep = transitivity_probe(fs, rel)
        n += len(rep.violations)
    return n == 0, f"{len(fs)} laws, {n} violations"


CHECKS: dict[str, Callable[[], tuple[bool, str]]] = {
    "chain-verdicts": chain_verdicts,
    "chain-roots": chain_roots,
    "gs-thresholds": gs_thresholds,
    "monomials": monomials,
    "weibull-chain": weibull_chain,
    "weibull-grid": weibull_grid,
    "sas-grid": sas_grid,
    "sas-shapes": sas_shapes,
    "sas-special-cases": sas_special_cases,
    "sas-transitivity": sas_transitivity,
}


def run_check(name: str) -> CheckResult:
    t = time.perf_counter()
    try:
        ok, detail = CHECKS[name]()
    except Exception as e:  # a crash is a failed item, not a crashed suite
        ok, detail = False, f"error: {e!r}"
    return CheckResult(name, bool(ok), detail, time.perf_counter() - t)


def run_all(names=None) -> list[CheckResult]:
    return [run_check(n) for n in (names or CHECKS)]
