"""Quantile transport map ``R = G^{-1} o F`` and its first three derivatives.

With ``a1 = f'/f``, ``a2 = f''/f`` evaluated at ``t`` and ``b1 = g'/g``,
``b2 = g''/g`` evaluated at ``R(t)``, the chain rule gives

    R'   = f(t) / g(R(t))
    R''  = R' * (a1 - R' * b1)
    R''' = R' * a2 - 3 R' R'' b1 - R'^3 b2

``R'`` is formed as ``exp(log f - log g)`` so tail evaluations do not
underflow. When both laws are transforms ``B o S`` of the same base law B
(normal, exponential) the same formulas run on ``S'`` in place of the
densities, which removes the base density from the computation. Each
derivative is returned together with the magnitude of its largest summand,
which sets the scale for sign decisions downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .distributions import Distribution

EPS_P = 1e-6
GRID_N = 2001
TAIL_LOGQ = 1e6
# log densities lose about eps*|log q| relative precision in the tails, so
# pairs without a shared base transform stop here
TAIL_LOGQ_DENSITY = 1e4


@dataclass(frozen=True)
class Grid:
    """Probability levels: ``n`` uniform points on ``[eps_p, 1 - eps_p]``.

    ``tail`` adds that many levels per side beyond ``eps_p``, spaced
    geometrically in ``-log q`` up to ``tail_logq``. Quantiles there are
    taken from log tail probabilities, so levels far below the smallest
    double are reachable.
    """

    n: int = GRID_N
    eps_p: float = EPS_P
    tail: int = 0
    tail_logq: float = TAIL_LOGQ

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("grid needs at least two points")
        if not 0.0 < self.eps_p < 0.5:
            raise ValueError("eps_p must lie in (0, 1/2)")
        if self.tail < 0:
            raise ValueError("tail must be non-negative")
        if self.tail and not self.tail_logq > -math.log(self.eps_p):
            raise ValueError("tail_logq must exceed -log(eps_p)")

    def levels(self) -> "Levels":
        p = np.linspace(self.eps_p, 1.0 - self.eps_p, self.n)
        lev = Levels.from_p(p)
        if not self.tail:
            return lev
        a = -math.log(self.eps_p)
        ext = -np.geomspace(a, self.tail_logq, self.tail + 1)[1:]
        logq = np.concatenate([ext[::-1], lev.logq, ext])
        upper = np.concatenate([np.zeros(ext.size, bool), lev.upper, np.ones(ext.size, bool)])
        core = np.concatenate([np.zeros(ext.size, bool), np.ones(lev.logq.size, bool),
                               np.zeros(ext.size, bool)])
        return Levels.from_logq(logq, upper, core)


@dataclass(frozen=True)
class Levels:
    """Probability levels, stored as log tail probabilities for precision.

    ``logq = log min(p, 1-p)``; ``upper`` marks levels above one half
    (evaluated through the upper-tail quantile). ``p`` and ``q`` are the
    plain values, which may round to 0 or 1 far in the tails.
    """

    logq: np.ndarray
    upper: np.ndarray
    core: np.ndarray | None = None  # False for tail-extension levels

    @classmethod
    def from_p(cls, p) -> "Levels":
        p = np.atleast_1d(np.asarray(p, dtype=float))
        upper = p > 0.5
        with np.errstate(divide="ignore"):
            return cls(np.log(np.where(upper, 1.0 - p, p)), upper)

    @classmethod
    def from_logq(cls, logq, upper, core=None) -> "Levels":
        return cls(np.atleast_1d(np.asarray(logq, float)), np.atleast_1d(np.asarray(upper, bool)),
                   None if core is None else np.asarray(core, bool))

    @property
    def q(self) -> np.ndarray:
        return np.exp(self.logq)

    @property
    def p(self) -> np.ndarray:
        q = self.q
        return np.where(self.upper, 1.0 - q, q)

    def quantile(self, d: Distribution):
        q = self.q
        tiny = q < 1e-280
        with np.errstate(all="ignore"):
            lower = np.where(tiny, d.ppf_log(self.logq), d.ppf(q))
            upper = np.where(tiny, d.isf_log(self.logq), d.isf(q))
        return np.where(self.upper, upper, lower)


@dataclass(frozen=True)
class MapValues:
    """Transport map values on a set of points (arrays of equal length)."""

    p: np.ndarray
    t: np.ndarray
    r: np.ndarray
    r1: np.ndarray
    r2: np.ndarray
    r3: np.ndarray
    scale2: np.ndarray
    scale3: np.ndarray
    dropped: int = 0

    def __len__(self):
        return len(self.t)

    @staticmethod
    def _fields():
        return ("p", "t", "r", "r1", "r2", "r3", "scale2", "scale3")


@dataclass(frozen=True)
class TransportMap:
    """Transport from ``source`` (F) to ``target`` (G)."""

    source: Distribution
    target: Distribution

    def _check(self, t):
        t = np.asarray(t, dtype=float)
        if not np.all(self.source.support.contains(t)):
            raise ValueError(f"point(s) outside the support of {self.source!r}")
        return t

    def r(self, t):
        """``G^{-1}(F(t))``.

        Routed through the base score when both laws are transforms of
        the same base law, otherwise through log tail probabilities.
        """
        t = self._check(t)
        F, G = self.source, self.target
        with np.errstate(all="ignore"):
            if self.shared_base:
                out = np.asarray(G.from_base_score(F.base_score(t)), dtype=float)
                return out if out.ndim else float(out)
            lc = F.logcdf(t)
            ls = F.logsf(t)
            out = np.where(lc <= ls, G.ppf_log(lc), G.isf_log(ls))
        return out if out.ndim else float(out)

    @property
    def shared_base(self) -> bool:
        b = self.source.score_base
        return b is not None and b == self.target.score_base

    def delta(self, t):
        """``R(t) - t``; its derivatives are ``(R' - 1, R'', R''')``."""
        return self.r(t) - np.asarray(t, dtype=float)

    def r_derivs(self, t):
        """``(R', R'', R''')`` at ``t``."""
        t = self._check(t)
        v = self._values(np.full(np.shape(t), np.nan), t, np.asarray(self.r(t), dtype=float))
        if np.ndim(t) == 0:
            return float(v.r1), float(v.r2), float(v.r3)
        return v.r1, v.r2, v.r3

    def evaluate(self, levels: Levels) -> MapValues:
        """All map quantities at probability levels (``t = F^{-1}(p)``).

        Levels whose quantile under F or G rounds onto the edge of the
        support, or where either law reports it cannot resolve its density,
        are dropped, and so are tail-extension levels where the
        derivatives overflow. ``MapValues.dropped`` counts them.
        """
        if levels.core is not None and not self.shared_base:
            sel = levels.core | (levels.logq >= -TAIL_LOGQ_DENSITY)
            levels = Levels(levels.logq[sel], levels.upper[sel], levels.core[sel])
        t = levels.quantile(self.source)
        r = levels.quantile(self.target)
        keep = self.source.resolved(t) & self.target.resolved(r)
        v = self._values(levels.p[keep], t[keep], r[keep])
        if levels.core is not None:
            ok = np.isfinite(v.r1) & np.isfinite(v.r2) & np.isfinite(v.r3)
            ok |= levels.core[keep]
            v = MapValues(*(getattr(v, n)[ok] for n in MapValues._fields()))
            keep[np.flatnonzero(keep)[~ok]] = False
        return replace(v, dropped=int(np.sum(~keep)))

    def evaluate_grid(self, grid: Grid | None = None) -> MapValues:
        return self.evaluate((grid or Grid()).levels())

    def _values(self, p, t, r) -> MapValues:
        F, G = self.source, self.target
        with np.errstate(all="ignore"):
            if self.shared_base:
                fp, gp = F.base_score_parts(t), G.base_score_parts(r)
            else:
                fp = F.logpdf(t), F.score(t), F.score2(t)
                gp = G.logpdf(r), G.score(r), G.score2(r)
            r1 = np.exp(fp[0] - gp[0])
            a1, a2 = fp[1], fp[2]
            b1, b2 = gp[1], gp[2]
            r2 = r1 * (a1 - r1 * b1)
            s3a, s3b, s3c = r1 * a2, 3.0 * r1 * r2 * b1, r1**3 * b2
            r3 = s3a - s3b - s3c
            scale2 = r1 * np.maximum(np.abs(a1), np.abs(r1 * b1))
            # R'' carries rounding of size scale2, so the middle term is sized with it
            scale3 = np.maximum.reduce([np.abs(s3a), np.abs(3.0 * r1 * scale2 * b1),
                                        np.abs(s3c)])
        return MapValues(np.asarray(p, float), np.asarray(t, float), np.asarray(r, float),
                         r1, r2, r3, scale2, scale3)


@dataclass(frozen=True)
class CompositionResiduals:
    r: float
    r2: float
    r3: float

    def max(self) -> float:
        return max(self.r, self.r2, self.r3)


def _rel(a, b):
    return abs(a - b) / max(1.0, abs(a), abs(b))


def compose_check(f: Distribution, g: Distribution, h: Distribution, t: float) -> CompositionResiduals:
    """Relative residuals between ``R_FH`` and its composition through G.

    Uses ``R_FH = R_GH o R_FG`` and the second and third chain-rule
    identities for the composed derivatives.
    """
    fg, gh, fh = TransportMap(f, g), TransportMap(g, h), TransportMap(f, h)
    s = fg.r(t)
    a1, a2, a3 = fg.r_derivs(t)
    b1, b2, b3 = gh.r_derivs(s)
    d1, d2, d3 = fh.r_derivs(t)
    direct_r = fh.r(t)
    comp_r = gh.r(s)
    comp2 = b2 * a1**2 + b1 * a2
    comp3 = b3 * a1**3 + b1 * a3 + 3.0 * b2 * a1 * a2
    return CompositionResiduals(_rel(direct_r, comp_r), _rel(d2, comp2), _rel(d3, comp3))
