"""Continuous distributions with analytic densities and density derivatives.

Every distribution lives on an open interval and exposes, besides the usual
``cdf``/``pdf``/``ppf``, the two log-density ratios

    score(t)  = f'(t) / f(t)
    score2(t) = f''(t) / f(t)

Transport-map derivatives are assembled from these ratios and from
``logpdf`` differences, so nothing underflows in the tails. Tail-sensitive
quantile evaluation goes through ``isf`` and the log-probability inverses
``ppf_log`` / ``isf_log``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy import optimize, special

LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class Support:
    """Open interval ``(lower, upper)``; infinite endpoints allowed."""

    lower: float
    upper: float

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError(f"empty support ({self.lower}, {self.upper})")

    def contains(self, t):
        t = np.asarray(t, dtype=float)
        return (t > self.lower) & (t < self.upper)

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.lower) and math.isfinite(self.upper)


class Mode(NamedTuple):
    location: float
    boundary: str | None  # None, "lower" or "upper"


def _as_float(x):
    x = np.asarray(x, dtype=float)
    return x


def _log1mexp(a):
    """log(1 - exp(a)) for a <= 0, accurate on both sides of -log 2."""
    a = np.asarray(a, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(a > -math.log(2.0), np.log(-np.expm1(a)), np.log1p(-np.exp(a)))


class Distribution:
    """Base class. Subclasses fill in the log-space primitives.

    Required: ``support``, ``logpdf``, ``score``, ``score2``, ``cdf``, ``sf``,
    ``ppf``, ``isf``. Everything else has a generic fallback.
    """

    support: Support
    quantile_kind = "analytic"
    name = "distribution"

    # --- densities -------------------------------------------------------
    def logpdf(self, t):
        raise NotImplementedError

    def score(self, t):
        raise NotImplementedError

    def score2(self, t):
        raise NotImplementedError

    def pdf(self, t):
        return np.exp(self.logpdf(t))

    def pdf_d1(self, t):
        return self.pdf(t) * self.score(t)

    def pdf_d2(self, t):
        return self.pdf(t) * self.score2(t)

    # --- probabilities ---------------------------------------------------
    def cdf(self, t):
        raise NotImplementedError

    def sf(self, t):
        return 1.0 - self.cdf(t)

    def logcdf(self, t):
        with np.errstate(divide="ignore"):
            return np.log(self.cdf(t))

    def logsf(self, t):
        with np.errstate(divide="ignore"):
            return np.log(self.sf(t))

    # --- quantiles -------------------------------------------------------
    def ppf(self, p):
        raise NotImplementedError

    def isf(self, q):
        return self.ppf(1.0 - _as_float(q))

    def ppf_log(self, logp):
        return self.ppf(np.exp(logp))

    def isf_log(self, logq):
        return self.isf(np.exp(logq))

    # Many laws are increasing transforms of a fixed base law B: F = B o S.
    # ``score_base`` names B ("normal", "exponential"). Transport maps
    # between two laws on the same base are R = S_G^{-1} o S_F, computed
    # without touching B, which keeps far-tail evaluations exact.
    score_base: str | None = None

    def base_score(self, t):
        return None

    def from_base_score(self, z):
        return None

    def base_score_parts(self, t):
        """Log-derivative triple of the base score S, or None.

        The triple is ``log S1, S2 / S1, S3 / S1`` with ``Sk`` the k-th
        derivative of S.
        """
        return None

    def resolved(self, t):
        """Points of the support where the density triple is computed accurately."""
        return self.support.contains(t)

    def quantile(self, p):
        """Quantile using the upper-tail route above the median."""
        p = _as_float(p)
        upper = p > 0.5
        q = np.where(upper, 1.0 - p, p)
        return np.where(upper, self.isf(q), self.ppf(q))

    def __repr__(self):
        return self.name


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


def _positive(name, value):
    value = float(value)
    if not (value > 0 and math.isfinite(value)):
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")
    return value


@dataclass(frozen=True, repr=False)
class PowerUnit(Distribution):
    """F(t) = t**p on (0, 1)."""

    p: float
    support: Support = field(default=Support(0.0, 1.0), init=False)

    def __post_init__(self):
        object.__setattr__(self, "p", _positive("p", self.p))

    @property
    def name(self):
        return f"power(p={self.p:g})"

    def logpdf(self, t):
        t = _as_float(t)
        return math.log(self.p) + (self.p - 1.0) * np.log(t)

    def score(self, t):
        return (self.p - 1.0) / _as_float(t)

    def score2(self, t):
        t = _as_float(t)
        return (self.p - 1.0) * (self.p - 2.0) / (t * t)

    def cdf(self, t):
        return _as_float(t) ** self.p

    def sf(self, t):
        return -np.expm1(self.p * np.log(_as_float(t)))

    def logcdf(self, t):
        return self.p * np.log(_as_float(t))

    def logsf(self, t):
        return _log1mexp(self.p * np.log(_as_float(t)))

    def ppf(self, p):
        return _as_float(p) ** (1.0 / self.p)

    def isf(self, q):
        return np.exp(np.log1p(-_as_float(q)) / self.p)

    def ppf_log(self, logp):
        return np.exp(_as_float(logp) / self.p)

    def isf_log(self, logq):
        return np.exp(_log1mexp(logq) / self.p)


@dataclass(frozen=True, repr=False)
class ReflectedCubeRoot(Distribution):
    """F(t) = 1 - ((c - t)/c)**(1/3) on (0, c)."""

    c: float
    support: Support = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "c", _positive("c", self.c))
        object.__setattr__(self, "support", Support(0.0, self.c))

    @property
    def name(self):
        return f"refcube(c={self.c:g})"

    def _logu(self, t):
        return np.log1p(-_as_float(t) / self.c)

    def logpdf(self, t):
        return -math.log(3.0 * self.c) - (2.0 / 3.0) * self._logu(t)

    def score(self, t):
        return (2.0 / 3.0) / (self.c - _as_float(t))

    def score2(self, t):
        d = self.c - _as_float(t)
        return (10.0 / 9.0) / (d * d)

    def cdf(self, t):
        return -np.expm1(self._logu(t) / 3.0)

    def sf(self, t):
        return np.exp(self._logu(t) / 3.0)

    def logcdf(self, t):
        return _log1mexp(self._logu(t) / 3.0)

    def logsf(self, t):
        return self._logu(t) / 3.0

    def ppf(self, p):
        return self.c * -np.expm1(3.0 * np.log1p(-_as_float(p)))

    def isf(self, q):
        q = _as_float(q)
        return self.c * (1.0 - q**3)

    def ppf_log(self, logp):
        return self.c * -np.expm1(3.0 * _log1mexp(logp))

    def isf_log(self, logq):
        return self.c * -np.expm1(3.0 * _as_float(logq))


@dataclass(frozen=True, repr=False)
class Weibull(Distribution):
    """Weibull with shape ``k`` and unit scale."""

    k: float
    support: Support = field(default=Support(0.0, math.inf), init=False)

    def __post_init__(self):
        object.__setattr__(self, "k", _positive("k", self.k))

    @property
    def name(self):
        return f"weibull(k={self.k:g})"

    def logpdf(self, t):
        t = _as_float(t)
        k = self.k
        return math.log(k) + (k - 1.0) * np.log(t) - t**k

    def score(self, t):
        t = _as_float(t)
        k = self.k
        return (k - 1.0) / t - k * t ** (k - 1.0)

    def score2(self, t):
        t = _as_float(t)
        k = self.k
        s = self.score(t)
        ds = -(k - 1.0) / (t * t) - k * (k - 1.0) * t ** (k - 2.0)
        return ds + s * s

    def cdf(self, t):
        return -np.expm1(-_as_float(t) ** self.k)

    def sf(self, t):
        return np.exp(-_as_float(t) ** self.k)

    def logcdf(self, t):
        return _log1mexp(-_as_float(t) ** self.k)

    def logsf(self, t):
        return -_as_float(t) ** self.k

    def ppf(self, p):
        return (-np.log1p(-_as_float(p))) ** (1.0 / self.k)

    def isf(self, q):
        return (-np.log(_as_float(q))) ** (1.0 / self.k)

    def ppf_log(self, logp):
        return (-_log1mexp(logp)) ** (1.0 / self.k)

    def isf_log(self, logq):
        return (-_as_float(logq)) ** (1.0 / self.k)

    score_base = "exponential"

    def base_score(self, t):
        return _as_float(t) ** self.k

    def from_base_score(self, z):
        return _as_float(z) ** (1.0 / self.k)

    def base_score_parts(self, t):
        t = _as_float(t)
        k = self.k
        return math.log(k) + (k - 1.0) * np.log(t), (k - 1.0) / t, (k - 1.0) * (k - 2.0) / (t * t)


@dataclass(frozen=True, repr=False)
class StandardNormal(Distribution):
    support: Support = field(default=Support(-math.inf, math.inf), init=False)
    name = "normal()"

    def logpdf(self, t):
        t = _as_float(t)
        return -0.5 * t * t - 0.5 * LOG_2PI

    def score(self, t):
        return -_as_float(t)

    def score2(self, t):
        t = _as_float(t)
        return t * t - 1.0

    def cdf(self, t):
        return special.ndtr(t)

    def sf(self, t):
        return special.ndtr(-_as_float(t))

    def logcdf(self, t):
        return special.log_ndtr(t)

    def logsf(self, t):
        return special.log_ndtr(-_as_float(t))

    def ppf(self, p):
        return special.ndtri(p)

    def isf(self, q):
        return -special.ndtri(q)

    def ppf_log(self, logp):
        return special.ndtri_exp(logp)

    def isf_log(self, logq):
        return -special.ndtri_exp(logq)

    score_base = "normal"

    def base_score(self, t):
        return _as_float(t)

    def from_base_score(self, z):
        return _as_float(z)

    def base_score_parts(self, t):
        zero = np.zeros_like(_as_float(t))
        return zero, zero, zero


def arsinh(t):
    """Inverse hyperbolic sine; numpy's version is odd-symmetric and keeps
    full relative accuracy for large negative ``t``."""
    return np.arcsinh(_as_float(t))


def _logcosh(w):
    a = np.abs(w)
    return a + np.log1p(np.exp(-2.0 * a)) - math.log(2.0)


@dataclass(frozen=True, repr=False)
class SinhArsinh(Distribution):
    """X with sinh(tau * arsinh(X) - nu) standard normal."""

    nu: float
    tau: float
    support: Support = field(default=Support(-math.inf, math.inf), init=False)

    def __post_init__(self):
        object.__setattr__(self, "nu", float(self.nu))
        if not math.isfinite(self.nu):
            raise ValueError(f"nu must be finite, got {self.nu!r}")
        object.__setattr__(self, "tau", _positive("tau", self.tau))

    @property
    def name(self):
        return f"sas(nu={self.nu:g},tau={self.tau:g})"

    def _w(self, t):
        return self.tau * arsinh(t) - self.nu

    def transform(self, t):
        """The normalising map ``S(t) = sinh(tau*arsinh(t) - nu)``."""
        return np.sinh(self._w(t))

    def inverse_transform(self, z):
        return np.sinh((arsinh(z) + self.nu) / self.tau)

    def logpdf(self, t):
        t = _as_float(t)
        w = self._w(t)
        z = np.sinh(w)
        return (math.log(self.tau) + _logcosh(w) - 0.5 * np.log1p(t * t)
                - 0.5 * z * z - 0.5 * LOG_2PI)

    def base_score_parts(self, t):
        t = _as_float(t)
        w = self._w(t)
        one_t2 = 1.0 + t * t
        wd = self.tau / np.sqrt(one_t2)
        wdd = -self.tau * t / one_t2**1.5
        th = np.tanh(w)
        logd = math.log(self.tau) + _logcosh(w) - 0.5 * np.log1p(t * t)
        rho1 = th * wd - t / one_t2
        drho1 = (1.0 - th * th) * wd * wd + th * wdd + (t * t - 1.0) / one_t2**2
        return logd, rho1, drho1 + rho1 * rho1

    def score(self, t):
        t = _as_float(t)
        w = self._w(t)
        wd = self.tau / np.sqrt(1.0 + t * t)
        _, rho1, _ = self.base_score_parts(t)
        return rho1 - 0.5 * np.sinh(2.0 * w) * wd

    def score2(self, t):
        # f = phi(S) S' gives f''/f = rho2 + 2 rho1 m + m' + m^2 with m = -S S'
        t = _as_float(t)
        w = self._w(t)
        wd = self.tau / np.sqrt(1.0 + t * t)
        _, rho1, rho2 = self.base_score_parts(t)
        s, c = np.sinh(w), np.cosh(w)
        sd = c * wd
        m = -s * sd
        dm = -sd * sd - s * sd * rho1
        return rho2 + 2.0 * rho1 * m + dm + m * m

    def cdf(self, t):
        return special.ndtr(self.transform(t))

    def sf(self, t):
        return special.ndtr(-self.transform(t))

    def logcdf(self, t):
        return special.log_ndtr(self.transform(t))

    def logsf(self, t):
        return special.log_ndtr(-self.transform(t))

    def ppf(self, p):
        return self.inverse_transform(special.ndtri(p))

    def isf(self, q):
        return self.inverse_transform(-special.ndtri(q))

    def ppf_log(self, logp):
        return self.inverse_transform(special.ndtri_exp(logp))

    def isf_log(self, logq):
        return self.inverse_transform(-special.ndtri_exp(logq))

    score_base = "normal"
    base_score = transform
    from_base_score = inverse_transform


# ---------------------------------------------------------------------------
# derived distributions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, repr=False)
class LocationScale(Distribution):
    """Law of ``loc + scale * X`` for X ~ ``base``."""

    base: Distribution
    loc: float = 0.0
    scale: float = 1.0
    support: Support = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "scale", _positive("scale", self.scale))
        lo = self.loc + self.scale * self.base.support.lower
        hi = self.loc + self.scale * self.base.support.upper
        object.__setattr__(self, "support", Support(lo, hi))

    @property
    def name(self):
        return f"{self.base.name}*{self.scale:g}+{self.loc:g}"

    @property
    def score_base(self):
        return self.base.score_base

    def _z(self, t):
        return (_as_float(t) - self.loc) / self.scale

    def resolved(self, t):
        return self.base.resolved(self._z(t))

    def logpdf(self, t):
        return self.base.logpdf(self._z(t)) - math.log(self.scale)

    def score(self, t):
        return self.base.score(self._z(t)) / self.scale

    def score2(self, t):
        return self.base.score2(self._z(t)) / self.scale**2

    def cdf(self, t):
        return self.base.cdf(self._z(t))

    def sf(self, t):
        return self.base.sf(self._z(t))

    def logcdf(self, t):
        return self.base.logcdf(self._z(t))

    def logsf(self, t):
        return self.base.logsf(self._z(t))

    def ppf(self, p):
        return self.loc + self.scale * self.base.ppf(p)

    def isf(self, q):
        return self.loc + self.scale * self.base.isf(q)

    def ppf_log(self, logp):
        return self.loc + self.scale * self.base.ppf_log(logp)

    def isf_log(self, logq):
        return self.loc + self.scale * self.base.isf_log(logq)

    def base_score(self, t):
        return self.base.base_score(self._z(t))

    def from_base_score(self, z):
        x = self.base.from_base_score(z)
        return None if x is None else self.loc + self.scale * x

    def base_score_parts(self, t):
        parts = self.base.base_score_parts(self._z(t))
        if parts is None:
            return None
        logd, s1, s2 = parts
        return logd - math.log(self.scale), s1 / self.scale, s2 / self.scale**2


@dataclass(frozen=True)
class CubicMap:
    """Increasing map ``x + a*(x - center)**3`` with an inflection at ``center``."""

    a: float
    center: float = 0.0

    def __post_init__(self):
        if not self.a >= 0:
            raise ValueError("cubic coefficient must be non-negative")

    def __call__(self, x):
        y = _as_float(x) - self.center
        return self.center + y + self.a * y**3

    def d1(self, x):
        y = _as_float(x) - self.center
        return 1.0 + 3.0 * self.a * y * y

    def d2(self, x):
        return 6.0 * self.a * (_as_float(x) - self.center)

    def d3(self, x):
        return np.full_like(_as_float(x), 6.0 * self.a)

    def inverse(self, v):
        s = _as_float(v) - self.center
        if self.a == 0:
            return s + self.center
        # unique real root of a*y^3 + y - s, then two Newton polishes
        a = self.a
        disc = np.sqrt(s * s / (4 * a * a) + 1.0 / (27 * a**3))
        y = np.cbrt(s / (2 * a) + disc) + np.cbrt(s / (2 * a) - disc)
        for _ in range(2):
            y = y - (a * y**3 + y - s) / (3 * a * y * y + 1.0)
        return y + self.center


@dataclass(frozen=True, repr=False)
class Pushforward(Distribution):
    """Law of ``phi(X)`` for X ~ ``base`` and an increasing smooth ``phi``.

    ``phi`` must provide ``__call__``, ``d1``, ``d2``, ``d3`` and ``inverse``.
    The transport map from ``base`` to the pushforward is ``phi`` itself.
    """

    base: Distribution
    phi: CubicMap
    support: Support = field(init=False)

    def __post_init__(self):
        lo, hi = self.base.support.lower, self.base.support.upper
        lo = lo if math.isinf(lo) else float(self.phi(lo))
        hi = hi if math.isinf(hi) else float(self.phi(hi))
        object.__setattr__(self, "support", Support(lo, hi))

    @property
    def name(self):
        return f"push({self.base.name},{self.phi})"

    @property
    def score_base(self):
        return self.base.score_base

    def resolved(self, t):
        # inverting phi within 1e-6 (relative) of a nonzero edge leaves
        # fewer than 10 digits of the base coordinate
        t = _as_float(t)
        lo, hi = self.support.lower, self.support.upper
        ok = self.support.contains(t)
        with np.errstate(invalid="ignore"):
            if math.isfinite(lo) and lo != 0.0:
                ok &= (t - lo) >= 1e-6 * abs(lo)
            if math.isfinite(hi) and hi != 0.0:
                ok &= (hi - t) >= 1e-6 * abs(hi)
        return ok

    def _push(self, x, logd, s1, s2):
        # density-like triple (log h, h'/h, h''/h) of the law of phi(X)
        d1, d2, d3 = self.phi.d1(x), self.phi.d2(x), self.phi.d3(x)
        s = s1 - d2 / d1
        ds = (s2 - s1 * s1) - (d3 * d1 - d2 * d2) / (d1 * d1)
        score = s / d1
        dscore = (ds * d1 - s * d2) / d1**3
        return logd - np.log(d1), score, dscore + score * score

    def _triple(self, t):
        x = self.phi.inverse(t)
        b = self.base
        return self._push(x, b.logpdf(x), b.score(x), b.score2(x))

    def logpdf(self, t):
        return self._triple(t)[0]

    def score(self, t):
        return self._triple(t)[1]

    def score2(self, t):
        return self._triple(t)[2]

    def cdf(self, t):
        return self.base.cdf(self.phi.inverse(t))

    def sf(self, t):
        return self.base.sf(self.phi.inverse(t))

    def logcdf(self, t):
        return self.base.logcdf(self.phi.inverse(t))

    def logsf(self, t):
        return self.base.logsf(self.phi.inverse(t))

    def ppf(self, p):
        return self.phi(self.base.ppf(p))

    def isf(self, q):
        return self.phi(self.base.isf(q))

    def ppf_log(self, logp):
        return self.phi(self.base.ppf_log(logp))

    def isf_log(self, logq):
        return self.phi(self.base.isf_log(logq))

    def base_score(self, t):
        return self.base.base_score(self.phi.inverse(t))

    def from_base_score(self, z):
        x = self.base.from_base_score(z)
        return None if x is None else self.phi(x)

    def base_score_parts(self, t):
        x = self.phi.inverse(t)
        parts = self.base.base_score_parts(x)
        return None if parts is None else self._push(x, *parts)


# ---------------------------------------------------------------------------
# construction, numeric quantile, mode
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    """A named family with keyword parameters, e.g. ``FamilySpec("weibull", {"k": 2})``."""

    family: str
    params: dict = field(default_factory=dict)

    def __hash__(self):
        return hash((self.family, tuple(sorted(self.params.items()))))


_FAMILIES: dict[str, tuple[Callable[..., Distribution], tuple[str, ...]]] = {
    "power": (PowerUnit, ("p",)),
    "refcube": (ReflectedCubeRoot, ("c",)),
    "weibull": (Weibull, ("k",)),
    "sas": (SinhArsinh, ("nu", "tau")),
    "normal": (StandardNormal, ()),
}


def family_parameters(family: str) -> tuple[str, ...]:
    try:
        return _FAMILIES[family.lower()][1]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; expected one of {sorted(_FAMILIES)}") from None


def make_distribution(spec: FamilySpec | str) -> Distribution:
    """Instantiate a distribution from a :class:`FamilySpec` or a spec string."""
    if isinstance(spec, str):
        from .parsing import parse_distribution

        spec = parse_distribution(spec)
    family = spec.family.lower()
    names = family_parameters(family)
    cls = _FAMILIES[family][0]
    params = {k.lower(): v for k, v in spec.params.items()}
    unknown = set(params) - set(names)
    missing = set(names) - set(params)
    if unknown or missing:
        raise ValueError(
            f"{family}: expected parameters {list(names)}, got {sorted(params)}"
        )
    return cls(**{k: float(params[k]) for k in names})


def quantile_numeric(d: Distribution, p: float, tol: float = 1e-12) -> float:
    """Invert ``d.cdf`` at ``p`` by bracketing and Brent's method.

    Raises ``RuntimeError`` if no bracket is found or the residual
    ``|F(t) - p|`` exceeds ``tol``.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"probability level must lie in (0, 1), got {p}")
    lo, hi = d.support.lower, d.support.upper

    def resid(t):
        with np.errstate(divide="ignore", invalid="ignore"):
            return float(d.cdf(t)) - p

    # inner bracket points: step outward from a finite seed
    if math.isfinite(lo) and math.isfinite(hi):
        a, b = lo, hi
        fa, fb = -p, 1.0 - p
    else:
        seed = 0.0 if not math.isfinite(lo) else lo + 1.0
        seed = min(seed, hi - 1.0) if math.isfinite(hi) else seed
        a = b = seed
        step = 1.0
        fa = fb = resid(seed)
        for _ in range(200):
            if fa <= 0.0 <= fb:
                break
            if fa > 0:
                b, fb = a, fa
                a = a - step if not math.isfinite(lo) else lo + (a - lo) / 2.0
                fa = resid(a)
            else:
                a, fa = b, fb
                b = b + step if not math.isfinite(hi) else hi - (hi - b) / 2.0
                fb = resid(b)
            step *= 2.0
        else:
            raise RuntimeError(f"could not bracket the {p}-quantile of {d!r}")
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    t = optimize.brentq(resid, a, b, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
    if abs(resid(t)) > tol:
        raise RuntimeError(
            f"quantile inversion of {d!r} at p={p} stalled with residual {resid(t):.3g}"
        )
    return t


def mode(d: Distribution) -> Mode:
    """Maximiser of the density, flagged when it sits on the support edge.

    Closed forms for the analytic families; otherwise the sign change of the
    score ``f'/f`` is bracketed on a quantile grid and refined with Brent.
    """
    if isinstance(d, StandardNormal):
        return Mode(0.0, None)
    if isinstance(d, Weibull):
        if d.k <= 1.0:
            return Mode(0.0, "lower")
        return Mode(((d.k - 1.0) / d.k) ** (1.0 / d.k), None)
    if isinstance(d, PowerUnit):
        if d.p == 1.0:
            raise ValueError("uniform density has no unique mode")
        return Mode(1.0, "upper") if d.p > 1.0 else Mode(0.0, "lower")
    if isinstance(d, ReflectedCubeRoot):
        return Mode(d.c, "upper")
    if isinstance(d, SinhArsinh) and d.nu == 0.0:
        return Mode(0.0, None)
    if isinstance(d, LocationScale):
        m = mode(d.base)
        return Mode(d.loc + d.scale * m.location, m.boundary)
    return _numeric_mode(d)


def _numeric_mode(d: Distribution) -> Mode:
    p = np.linspace(1e-6, 1 - 1e-6, 2001)
    t = d.quantile(p)
    s = d.score(t)
    if np.all(s < 0):
        return Mode(float(d.support.lower), "lower")
    if np.all(s > 0):
        return Mode(float(d.support.upper), "upper")
    # first + to - change of the score is the (first) local maximum
    idx = np.flatnonzero((s[:-1] > 0) & (s[1:] <= 0))
    if idx.size == 0:
        i = int(np.argmax(d.logpdf(t)))
        return Mode(float(t[i]), None)
    i = int(idx[0])
    if s[i + 1] == 0.0:
        return Mode(float(t[i + 1]), None)
    root = optimize.brentq(lambda x: float(d.score(x)), t[i], t[i + 1], xtol=1e-15)
    return Mode(float(root), None)
