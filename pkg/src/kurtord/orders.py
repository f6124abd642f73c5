"""Grid-certified decisions for the orders <=_0 ... <=_3, <=_gs^t0, <_gss and =_3.

Every check reduces to sign conditions on a quantity ``v`` evaluated on a
probability grid. Each value carries a magnitude ``scale`` (its largest
summand), and the decision uses the normalised slack ``v / max(1, scale)``
compared with ``tol``. A verdict of Holds means that no violation was found
at the given resolution. It is not a proof.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import optimize

from .distributions import Distribution
from .transport import Grid, Levels, MapValues, TransportMap

TOL = 1e-9
SEED = 0x5EED
TAIL_N = 200
DEFAULT_GRID = Grid(tail=TAIL_N)

HOLDS, FAILS, UNDECIDED = "Holds", "Fails", "Undecided"


@dataclass(frozen=True)
class Witness:
    """Offending point: location, probability level and normalised slack."""

    t: float
    p: float | None
    value: float
    nodes: tuple[float, ...] | None = None


@dataclass(frozen=True)
class OrderVerdict:
    status: str
    margin: float
    witness: Witness | None = None
    relation: str = ""
    grid_n: int = 0
    tol: float = TOL
    note: str = ""

    def __post_init__(self):
        if self.status not in (HOLDS, FAILS, UNDECIDED):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAILS and self.witness is None:
            raise ValueError("a failed verdict needs a witness")

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def fails(self) -> bool:
        return self.status == FAILS


@dataclass(frozen=True)
class InflectionReport:
    """Admissible crossing levels ``[p_lo, p_hi]`` of ``R'' - t0``.

    ``degenerate`` is ``"p0"`` when ``R'' >= t0`` throughout, ``"p1"`` when
    ``R'' <= t0`` throughout and ``"both"`` when ``R''`` equals ``t0``
    everywhere. ``empty`` marks the case without any single crossing, where
    ``p_lo == p_hi`` is the split with the smallest violation.
    ``precondition`` records whether <=_3 held for the pair.
    """

    p_lo: float
    p_hi: float
    degenerate: str | None = None
    empty: bool = False
    precondition: bool = True
    t_lo: float = math.nan
    t_hi: float = math.nan

    def __post_init__(self):
        if self.p_lo > self.p_hi:
            raise ValueError("p_lo must not exceed p_hi")

    def __contains__(self, p: float) -> bool:
        return not self.empty and self.p_lo <= p <= self.p_hi


# ---------------------------------------------------------------------------
# divided differences
# ---------------------------------------------------------------------------


def _check_nodes(nodes):
    x = np.asarray(nodes, dtype=float)
    if x.ndim == 1:
        x = x[None, :]
    if x.shape[1] < 1:
        raise ValueError("need at least one node")
    if np.any(np.diff(x, axis=1) <= 0):
        raise ValueError("nodes must be strictly increasing (no duplicates)")
    return x


def divided_difference(phi: Callable, nodes: Sequence[float]) -> float | np.ndarray:
    """``[x_0, ..., x_k | phi]`` by the recursive definition.

    ``nodes`` may be one tuple or a 2-d array with one tuple per row.
    """
    x = _check_nodes(nodes)
    d = np.asarray(phi(x), dtype=float)
    k = x.shape[1] - 1
    for j in range(1, k + 1):
        d = (d[:, 1:] - d[:, :-1]) / (x[:, j:] - x[:, :-j])
    out = d[:, 0]
    return float(out[0]) if np.ndim(nodes) == 1 else out


def _dd_weights(x):
    # [x_0..x_k|phi] = sum_i w_i phi(x_i) with w_i = 1 / prod_{j != i} (x_i - x_j)
    k1 = x.shape[1]
    diff = x[:, :, None] - x[:, None, :]
    diff[:, np.arange(k1), np.arange(k1)] = 1.0
    return 1.0 / np.prod(diff, axis=2)


def kconvex_check(phi: Callable, domain: tuple[float, float], k: int, samples: int = 10_000,
                  grid_n: int = 201, tol: float = TOL, seed: int = SEED) -> OrderVerdict:
    """Test ``[x_0..x_k | phi] >= 0`` on random and consecutive-grid tuples.

    The slack of a tuple is normalised by ``sum |w_i phi(x_i)|``, the size of
    the terms that cancel in the divided difference.
    """
    a, b = map(float, domain)
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise ValueError("kconvex_check needs a finite interval")
    if not 0 <= k <= 3:
        raise ValueError("orders 0..3 are supported")
    if samples < k + 1:
        raise ValueError("samples must be at least k + 1")
    pad = 1e-6 * (b - a)
    lo, hi = a + pad, b - pad
    rng = np.random.default_rng(seed)
    rand = np.sort(rng.uniform(lo, hi, size=(samples, k + 1)), axis=1)
    rand = rand[np.all(np.diff(rand, axis=1) > 0, axis=1)] if k else rand
    g = np.linspace(lo, hi, grid_n)
    cons = np.lib.stride_tricks.sliding_window_view(g, k + 1)
    x = np.vstack([cons, rand])
    with np.errstate(all="ignore"):
        fx = np.asarray(phi(x), dtype=float)
        terms = _dd_weights(x) * fx
        val = divided_difference(phi, x) if k else fx[:, 0]
        scale = np.sum(np.abs(terms), axis=1)
        slack = val / np.maximum(1.0, scale)
    rel = f"{k}-convex"
    finite = np.isfinite(slack)
    if not np.any(finite):
        return OrderVerdict(UNDECIDED, math.nan, relation=rel, grid_n=grid_n, tol=tol,
                            note="no finite evaluations")
    s = np.where(finite, slack, np.inf)
    margin = float(np.min(s))
    if margin < -tol:
        # the narrowest failing tuple localises the violation best
        bad = np.flatnonzero(s < -tol)
        width = x[bad, -1] - x[bad, 0]
        narrow = bad[width <= 1.001 * np.min(width)]
        i = int(narrow[np.argmin(s[narrow])])
        wit = Witness(float(np.mean(x[i])), None, float(s[i]), tuple(map(float, x[i])))
        return OrderVerdict(FAILS, margin, wit, rel, grid_n, tol)
    if not np.all(finite):
        return OrderVerdict(UNDECIDED, margin, None, rel, grid_n, tol, "non-finite evaluations")
    return OrderVerdict(HOLDS, margin, None, rel, grid_n, tol)


# ---------------------------------------------------------------------------
# grid sign tests
# ---------------------------------------------------------------------------


def _values(f, g, grid: Grid | None, values: MapValues | None) -> MapValues:
    if values is not None:
        return values
    return TransportMap(f, g).evaluate_grid(grid or DEFAULT_GRID)


def _slack_k(v: MapValues, k: int):
    if k == 0:
        val = v.r - v.t
        scale = np.maximum(np.abs(v.r), np.abs(v.t))
    elif k == 1:
        val = v.r1 - 1.0
        scale = v.r1
    elif k == 2:
        val, scale = v.r2, v.scale2
    elif k == 3:
        val, scale = v.r3, v.scale3
    else:
        raise ValueError("k must be 0, 1, 2 or 3")
    with np.errstate(all="ignore"):
        return val / np.maximum(1.0, scale)


def _sign_verdict(slack, v: MapValues, relation: str, tol: float) -> OrderVerdict:
    n = len(v)
    finite = np.isfinite(slack)
    if not np.any(finite):
        return OrderVerdict(UNDECIDED, math.nan, relation=relation, grid_n=n, tol=tol,
                            note="no finite evaluations")
    s = np.where(finite, slack, np.inf)
    i = int(np.argmin(s))
    margin = float(s[i])
    if margin < -tol:
        return OrderVerdict(FAILS, margin, Witness(float(v.t[i]), float(v.p[i]), margin),
                            relation, n, tol)
    if not np.all(finite):
        return OrderVerdict(UNDECIDED, margin, None, relation, n, tol,
                            f"{int(np.sum(~finite))} non-finite evaluations")
    return OrderVerdict(HOLDS, margin, None, relation, n, tol)


def leq_k(f: Distribution, g: Distribution, k: int, grid: Grid | None = None,
          tol: float = TOL, values: MapValues | None = None) -> OrderVerdict:
    """``F <=_k G``: sign of ``Delta^(k)`` (k <= 1) or ``R^(k)`` (k = 2, 3)."""
    v = _values(f, g, grid, values)
    return _sign_verdict(_slack_k(v, k), v, f"<={k}", tol)


def equiv_3(f: Distribution, g: Distribution, grid: Grid | None = None,
            tol: float = TOL, values: MapValues | None = None) -> OrderVerdict:
    """``F =_3 G`` through ``0 <= R''' <= 3 R''^2 / R'``."""
    v = _values(f, g, grid, values)
    with np.errstate(all="ignore"):
        lower = _slack_k(v, 3)
        bound = 3.0 * v.r2**2 / v.r1
        upper = (bound - v.r3) / np.maximum(1.0, np.maximum(bound, v.scale3))
    return _sign_verdict(np.fmin(lower, upper), v, "=3", tol)


# ---------------------------------------------------------------------------
# single crossing
# ---------------------------------------------------------------------------


def _gs_slack(v: MapValues, t0: float):
    with np.errstate(all="ignore"):
        return (v.r2 - t0) / np.maximum(1.0, np.maximum(v.scale2, abs(t0)))


def _split_violation(s):
    """Best split for "<= 0 then >= 0": returns (violation, split index)."""
    n = s.size
    pre = np.concatenate([[-np.inf], np.maximum.accumulate(s)])      # max s[:j]
    suf = np.concatenate([np.minimum.accumulate(s[::-1])[::-1], [np.inf]])  # min s[j:]
    viol = np.maximum(pre, -suf)
    j = int(np.argmin(viol))
    return float(viol[j]), j, pre, suf


def _refine_level(tm: TransportMap, t0: float, target: float, p_a: float, p_b: float) -> float:
    if not (1e-280 < p_a < p_b < 1.0 - 1e-16):
        return p_b  # tail levels: no finer resolution in p

    def h(p):
        v = tm.evaluate(Levels.from_p(p))
        return float(_gs_slack(v, t0)[0]) - target

    try:
        ha, hb = h(p_a), h(p_b)
        if not (np.isfinite(ha) and np.isfinite(hb)) or ha * hb > 0:
            return p_b
        return float(optimize.brentq(h, p_a, p_b, xtol=1e-15, rtol=1e-15))
    except (ValueError, RuntimeError):
        return p_b


def _crossing(f, g, t0, grid, tol, values, refine=True):
    v = _values(f, g, grid, values)
    s = _gs_slack(v, t0)
    finite = np.isfinite(s)
    sf, pf = s[finite], v.p[finite]
    neg = np.flatnonzero(sf < -tol)
    pos = np.flatnonzero(sf > tol)
    viol, j, pre, suf = _split_violation(sf) if sf.size else (math.nan, 0, None, None)
    tm = TransportMap(f, g)

    # lower end of Pi: right of the last certified value below t0
    if neg.size == 0:
        p_lo = 0.0
    elif neg[-1] == sf.size - 1:
        p_lo = 1.0
    else:
        i = neg[-1]
        p_lo = _refine_level(tm, t0, -tol, pf[i], pf[i + 1]) if refine else pf[i]
    # upper end: left of the first certified value above t0
    if pos.size == 0:
        p_hi = 1.0
    elif pos[0] == 0:
        p_hi = 0.0
    else:
        i = pos[0]
        p_hi = _refine_level(tm, t0, tol, pf[i - 1], pf[i]) if refine else pf[i]
    return v, s, finite, viol, j, p_lo, p_hi, neg.size == 0, pos.size == 0


def leq_gs(f: Distribution, g: Distribution, t0: float = 0.0, grid: Grid | None = None,
           tol: float = TOL, values: MapValues | None = None) -> OrderVerdict:
    """``F <=_gs^t0 G``: ``R'' - t0`` is <= 0 left of some level and >= 0 right of it.

    The margin is minus the smallest violation over all split points.
    """
    v = _values(f, g, grid, values)
    s = _gs_slack(v, t0)
    rel = f"<=gs({t0:g})"
    finite = np.isfinite(s)
    if not np.any(finite):
        return OrderVerdict(UNDECIDED, math.nan, relation=rel, grid_n=len(v), tol=tol,
                            note="no finite evaluations")
    sf = s[finite]
    idx = np.flatnonzero(finite)
    viol, j, pre, suf = _split_violation(sf)
    margin = -viol
    if viol > tol:
        # report the worse side of the best split
        if pre[j] >= -suf[j]:
            i = idx[int(np.argmax(sf[:j]))]
        else:
            i = idx[j + int(np.argmin(sf[j:]))]
        wit = Witness(float(v.t[i]), float(v.p[i]), float(s[i]))
        return OrderVerdict(FAILS, margin, wit, rel, len(v), tol)
    if not np.all(finite):
        return OrderVerdict(UNDECIDED, margin, None, rel, len(v), tol, "non-finite evaluations")
    return OrderVerdict(HOLDS, margin, None, rel, len(v), tol)


def strict_gss(f: Distribution, g: Distribution, grid: Grid | None = None,
               tol: float = TOL, values: MapValues | None = None) -> OrderVerdict:
    """``F <_gss G``: ``R''`` strictly negative, then strictly positive.

    Grid values are classified as -1, 0 or +1 against ``tol``. The
    classification must be non-decreasing with at most one zero (the
    crossing itself). An empty side is allowed. By default no tail levels
    are used: where ``R''`` decays to zero at a support edge, strictness
    cannot be certified there.
    """
    v = _values(f, g, grid or Grid(), values)
    s = _gs_slack(v, 0.0)
    rel = "<gss"
    finite = np.isfinite(s)
    if not np.all(finite):
        return OrderVerdict(UNDECIDED, math.nan, relation=rel, grid_n=len(v), tol=tol,
                            note="non-finite evaluations")
    c = np.where(s > tol, 1, np.where(s < -tol, -1, 0))
    zeros = np.flatnonzero(c == 0)
    # smallest certified magnitude, ignoring the one tie allowed at the crossing
    strict = np.abs(np.delete(s, zeros[:1]))
    margin = float(np.min(strict)) if strict.size else 0.0
    bad = np.flatnonzero(np.diff(c) < 0)
    if bad.size:
        i = int(bad[0]) + 1
    elif zeros.size > 1:
        i = int(zeros[1])
    else:
        return OrderVerdict(HOLDS, margin, None, rel, len(v), tol)
    return OrderVerdict(FAILS, -margin if margin > 0 else margin,
                        Witness(float(v.t[i]), float(v.p[i]), float(s[i])), rel, len(v), tol)


def inflection_values(f: Distribution, g: Distribution, t0: float = 0.0,
                      grid: Grid | None = None, tol: float = TOL,
                      values: MapValues | None = None) -> InflectionReport:
    """Interval of levels at which ``R'' - t0`` may change sign from - to +."""
    v, s, finite, viol, j, p_lo, p_hi, no_neg, no_pos = _crossing(f, g, t0, grid, tol, values)
    pre3 = leq_k(f, g, 3, grid, tol, values=v).holds
    empty = p_lo > p_hi
    if empty:
        pf = v.p[finite]
        p_split = float(pf[min(j, pf.size - 1)])
        p_lo = p_hi = p_split
    degenerate = None
    if not empty:
        at0, at1 = no_neg, no_pos
        degenerate = "both" if (at0 and at1) else "p0" if at0 else "p1" if at1 else None
    return InflectionReport(p_lo, p_hi, degenerate, empty, pre3,
                            _level_to_t(f, p_lo), _level_to_t(f, p_hi))


def _level_to_t(f: Distribution, p: float) -> float:
    if p <= 0.0:
        return float(f.support.lower)
    if p >= 1.0:
        return float(f.support.upper)
    return float(Levels.from_p(p).quantile(f)[0])


def reasonable_thresholds(f: Distribution, g: Distribution, grid: Grid | None = None,
                          tol: float = TOL) -> tuple[float, float] | None:
    """Estimate of the interior of the range of ``R''``, or None when constant.

    Tail levels are always included so that limits at the support edges
    are approached.
    """
    base = grid or DEFAULT_GRID
    ext = Grid(base.n, base.eps_p, max(base.tail, TAIL_N), base.tail_logq)
    v = TransportMap(f, g).evaluate_grid(ext)
    ok = np.isfinite(v.r2) & f.support.contains(v.t)
    r2 = v.r2[ok]
    if r2.size == 0:
        return None
    lo, hi = float(np.min(r2)), float(np.max(r2))
    scale = max(1.0, float(np.max(v.scale2[ok])))
    if hi - lo <= tol * scale:
        return None
    return lo + tol * max(1.0, abs(lo)), hi - tol * max(1.0, abs(hi))


# ---------------------------------------------------------------------------
# sign changes of R^(k)
# ---------------------------------------------------------------------------


def sign_changes(f: Distribution, g: Distribution, k: int, grid: Grid | None = None,
                 tol: float = TOL) -> list[float]:
    """Locations ``t`` where ``R^(k)`` (k = 2, 3) changes certified sign.

    Brackets come from the grid; each root is refined in probability space.
    """
    if k not in (2, 3):
        raise ValueError("k must be 2 or 3")
    tm = TransportMap(f, g)
    v = tm.evaluate_grid(grid or Grid())
    s = _slack_k(v, k)
    cls = np.where(s > tol, 1, np.where(s < -tol, -1, 0))
    nz = np.flatnonzero(cls != 0)
    roots = []

    def h(p):
        return float(_slack_k(tm.evaluate(Levels.from_p(p)), k)[0])

    for a, b in zip(nz[:-1], nz[1:]):
        if cls[a] != cls[b]:
            p = optimize.brentq(h, v.p[a], v.p[b], xtol=1e-15, rtol=1e-15)
            roots.append(_level_to_t(f, p))
    return roots


# ---------------------------------------------------------------------------
# relations and transitivity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    """Order selector: ``k0``..``k3``, ``gs`` (with ``t0``), ``gss`` or ``equiv3``."""

    kind: str
    t0: float = 0.0

    def __post_init__(self):
        if self.kind not in ("k0", "k1", "k2", "k3", "gs", "gss", "equiv3"):
            raise ValueError(f"unknown relation {self.kind!r}")

    def __str__(self):
        return f"gs(t0={self.t0:g})" if self.kind == "gs" else self.kind

    def check(self, f: Distribution, g: Distribution, grid: Grid | None = None,
              tol: float = TOL, values: MapValues | None = None) -> OrderVerdict:
        if self.kind.startswith("k"):
            return leq_k(f, g, int(self.kind[1]), grid, tol, values)
        if self.kind == "gs":
            return leq_gs(f, g, self.t0, grid, tol, values)
        if self.kind == "gss":
            return strict_gss(f, g, grid, tol, values)
        return equiv_3(f, g, grid, tol, values)


def max_threads() -> int:
    try:
        n = int(os.environ.get("KURTORD_THREADS", "0"))
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def pairwise(fs: Sequence[Distribution], relation: Relation, grid: Grid | None = None,
             tol: float = TOL) -> dict[tuple[int, int], OrderVerdict]:
    """Verdicts for all ordered pairs ``(i, j)``, ``i != j``, in index order."""
    pairs = [(i, j) for i in range(len(fs)) for j in range(len(fs)) if i != j]
    with ThreadPoolExecutor(max_workers=max_threads()) as ex:
        out = list(ex.map(lambda ij: relation.check(fs[ij[0]], fs[ij[1]], grid, tol), pairs))
    return dict(zip(pairs, out))


@dataclass(frozen=True)
class TransitivityViolation:
    a: int
    b: int
    c: int
    ab: OrderVerdict
    bc: OrderVerdict
    ac: OrderVerdict


@dataclass
class TransitivityReport:
    relation: Relation
    verdicts: dict[tuple[int, int], OrderVerdict]
    violations: list[TransitivityViolation] = field(default_factory=list)

    @property
    def transitive(self) -> bool:
        return not self.violations


def transitivity_probe(fs: Sequence[Distribution], relation: Relation | str = "k3",
                       grid: Grid | None = None, tol: float = TOL) -> TransitivityReport:
    """Find triples with ``A <= B``, ``B <= C`` but a certified ``A </= C``."""
    if len(fs) < 3:
        raise ValueError("need at least three distributions")
    rel = Relation(relation) if isinstance(relation, str) else relation
    ver = pairwise(fs, rel, grid, tol)
    bad = []
    for a, b, c in itertools.permutations(range(len(fs)), 3):
        ab, bc, ac = ver[a, b], ver[b, c], ver[a, c]
        if ab.holds and bc.holds and ac.fails:
            bad.append(TransitivityViolation(a, b, c, ab, bc, ac))
    return TransitivityReport(rel, ver, bad)
