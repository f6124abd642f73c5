"""Skewness and kurtosis functionals built from quantiles and densities."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .distributions import Distribution, mode
from .transport import Levels

SET_TOL = 1e-8


@dataclass(frozen=True)
class SkewnessValue:
    value: float
    kind: str  # "density" or "mode"
    p: float | None = None
    boundary: str | None = None  # set when the mode sits on a support edge

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class TD:
    """Tag of the set of laws with ``gamma_d(F, p) == t``."""

    p: float
    t: float

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise ValueError("p must lie in (0, 1)")


@dataclass(frozen=True)
class TMode:
    """Tag of the set of laws with ``gamma_mode(F) == p_tilde``."""

    p_tilde: float

    def __post_init__(self):
        if not -1.0 <= self.p_tilde <= 1.0:
            raise ValueError("p_tilde must lie in [-1, 1]")


def _q(f: Distribution, p: float) -> float:
    return float(Levels.from_p(p).quantile(f)[0])


def gamma_d(f: Distribution, p: float) -> SkewnessValue:
    """Density-based skewness ``f'(t) / f(t)^2`` at ``t = F^{-1}(p)``.

    With this sign the functional reverses ``<=_2``: ``F <=_2 G`` gives
    ``gamma_d(F, p) >= gamma_d(G, p)`` for every ``p``.
    """
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1)")
    t = _q(f, p)
    logd = float(f.logpdf(t))
    if logd < math.log(1e-300):
        raise ValueError(f"density underflow at the {p}-quantile of {f!r}")
    return SkewnessValue(float(f.score(t)) * math.exp(-logd), "density", p)


def gamma_mode(f: Distribution) -> SkewnessValue:
    """Mode-based skewness ``1 - 2 F(M)``; ``+-1`` when the mode is on an edge."""
    m = mode(f)
    if m.boundary == "lower":
        return SkewnessValue(1.0, "mode", boundary="lower")
    if m.boundary == "upper":
        return SkewnessValue(-1.0, "mode", boundary="upper")
    c = float(f.cdf(m.location))
    # 1 - 2F = 2S - 1 is the accurate form above the median
    v = 1.0 - 2.0 * c if c <= 0.5 else 2.0 * float(f.sf(m.location)) - 1.0
    return SkewnessValue(v, "mode")


def same_transitivity_set(fs: Sequence[Distribution], tag: TD | TMode,
                          tol: float = SET_TOL) -> bool:
    """Whether every law in ``fs`` carries the skewness value fixed by ``tag``."""
    if isinstance(tag, TMode):
        if abs(tag.p_tilde) == 1.0:
            warnings.warn("<=_3 is not transitive on the sets with gamma_mode = +-1",
                          stacklevel=2)
        vals = [gamma_mode(f).value for f in fs]
        target = tag.p_tilde
    else:
        vals = [gamma_d(f, tag.p).value for f in fs]
        target = tag.t
    return all(abs(v - target) <= tol for v in vals)


def kappa_q(f: Distribution, alpha: float, eta: float) -> float:
    """Quantile kurtosis with outer level ``alpha`` and inner level ``eta``."""
    if not 0.0 < alpha < eta < 0.5:
        raise ValueError("need 0 < alpha < eta < 1/2")
    a_lo, a_hi = _q(f, alpha), _q(f, 1.0 - alpha)
    e_lo, e_hi = _q(f, eta), _q(f, 1.0 - eta)
    den = e_hi - e_lo
    if not den > 0:
        raise ValueError("degenerate denominator")
    return (a_hi - 3.0 * e_hi + 3.0 * e_lo - a_lo) / den


def _eta_level(f: Distribution, q: float) -> Levels:
    x = 2.0 / 3.0 * _q(f, q) + 1.0 / 3.0 * _q(f, 1.0 - q)
    lc, ls = float(f.logcdf(x)), float(f.logsf(x))
    return Levels.from_logq([min(lc, ls)], [ls < lc])


def eta_f(f: Distribution, q: float) -> float:
    """``F(2/3 F^{-1}(q) + 1/3 F^{-1}(1 - q))``."""
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie in (0, 1)")
    return float(_eta_level(f, q).p[0])


def kappa_qf(f: Distribution, g: Distribution, alpha: float) -> float:
    """Kurtosis comparison of G at evaluation points customised to F.

    Non-negative whenever ``F <=_3 G``.
    """
    if not 0.0 < alpha < 0.5:
        raise ValueError("need 0 < alpha < 1/2")
    a_lo, a_hi = _q(g, alpha), _q(g, 1.0 - alpha)
    e_lo = float(_eta_level(f, alpha).quantile(g)[0])
    e_hi = float(_eta_level(f, 1.0 - alpha).quantile(g)[0])
    den = a_hi - a_lo
    if not den > 0:
        raise ValueError("degenerate denominator")
    return (a_hi - 3.0 * e_hi + 3.0 * e_lo - a_lo) / den


def kappa_qf_values(f: Distribution, g: Distribution, alphas) -> np.ndarray:
    return np.array([kappa_qf(f, g, a) for a in alphas])
