"""Closed-form order predicates for monomial, Weibull and sinh-arsinh pairs.

These are the reference answers the grid-based checkers in
:mod:`kurtord.orders` are validated against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .distributions import SinhArsinh, arsinh


class MonomialOrders(NamedTuple):
    leq3_fw: bool
    leq3_bw: bool
    equiv3: bool


class WeibullOrders(NamedTuple):
    leq3: bool
    equiv3: bool


class SasOrders(NamedTuple):
    leq3: bool
    leq_gs0: bool
    leq_gs_t0_nonzero: bool


def monomial_order_predicate(p: float) -> MonomialOrders:
    """Orders implied by a transport map ``t -> t**p`` on (0, 1)."""
    if not p > 0:
        raise ValueError("exponent must be positive")
    fw = not (1.0 < p < 2.0)
    bw = not (0.5 < p < 1.0)
    return MonomialOrders(fw, bw, fw and bw)


def weibull_order_predicate(k: float, l: float) -> WeibullOrders:
    """W(k) vs W(l): the transport map is ``t**(k/l)``."""
    if not (k > 0 and l > 0):
        raise ValueError("Weibull shapes must be positive")
    m = monomial_order_predicate(k / l)
    return WeibullOrders(m.leq3_fw, m.equiv3)


@dataclass(frozen=True)
class SasReduced:
    """Two-parameter reduction of a SAS pair: ``R(t) = sinh(tau_tilde*arsinh(t) - nu_tilde)``."""

    nu_tilde: float
    tau_tilde: float

    def __post_init__(self):
        if not self.tau_tilde > 0:
            raise ValueError("tau_tilde must be positive")

    @classmethod
    def from_params(cls, nu_f, tau_f, nu_g, tau_g) -> "SasReduced":
        return cls((nu_f - nu_g) / tau_g, tau_f / tau_g)

    @classmethod
    def from_pair(cls, f: SinhArsinh, g: SinhArsinh) -> "SasReduced":
        return cls.from_params(f.nu, f.tau, g.nu, g.tau)

    def _w(self, t):
        return self.tau_tilde * arsinh(t) - self.nu_tilde

    def S(self, t):
        return np.sinh(self._w(t))

    def C(self, t):
        return np.cosh(self._w(t))


def sas_r_derivs(red: SasReduced, t):
    """``(R', R'', R''')`` of ``S_{nu,tau}`` in closed form."""
    t = np.asarray(t, dtype=float)
    tau = red.tau_tilde
    S, C = red.S(t), red.C(t)
    one_t2 = 1.0 + t * t
    root = np.sqrt(one_t2)
    r1 = tau * C / root
    r2 = tau * one_t2**-1.5 * (tau * root * S - t * C)
    r3 = tau * one_t2**-2.5 * (-3.0 * tau * t * root * S
                               + ((tau * tau + 2.0) * t * t + tau * tau - 1.0) * C)
    return r1, r2, r3


def sas_h(red: SasReduced, t):
    """``tau*sqrt(1+t^2)*S(t) - t*C(t)``, which carries the sign of ``R''``."""
    t = np.asarray(t, dtype=float)
    return red.tau_tilde * np.sqrt(1.0 + t * t) * red.S(t) - t * red.C(t)


def sas_h_d1(red: SasReduced, t):
    """Derivative of :func:`sas_h`: ``(tau^2 - 1) * C(t)``."""
    return (red.tau_tilde**2 - 1.0) * red.C(t)


def sas_h_constant(nu_tilde: float) -> float:
    """Value of ``h`` when ``tau_tilde == 1``: ``(1 - e^{2 nu}) / (2 e^{nu})``."""
    return (1.0 - math.exp(2.0 * nu_tilde)) / (2.0 * math.exp(nu_tilde))


def sas_order_predicate(nu_f, tau_f, nu_g, tau_g) -> SasOrders:
    if not (tau_f > 0 and tau_g > 0):
        raise ValueError("tail weights must be positive")
    if nu_f == nu_g and tau_f == tau_g:
        raise ValueError("identical distributions are excluded")
    leq3 = tau_f >= 2.0 * tau_g
    return SasOrders(leq3, tau_f > tau_g, leq3)


class SasShapeRow(NamedTuple):
    tau_tilde: float
    nu_tilde: float
    sign_change: str   # "+ to -", "- to +", "none"
    monotonicity: str  # "increasing", "constant", "no"
    limit: str         # "0", "finite", "sublinear", "linear", "superlinear"
    limits: tuple[float, float]  # numeric estimates at -inf, +inf
    leq3: str          # "yes" / "no"
    leq_gs: str        # "yes" / "no" / "iff t0=0"


def r2_growth_exponent(red: SasReduced, side: float, t1: float = 1e3, t2: float = 1e5) -> float:
    """Log-log slope of ``|R''|`` between ``side*t1`` and ``side*t2``."""
    t1, t2 = side * t1, side * t2
    _, a, _ = sas_r_derivs(red, t1)
    _, b, _ = sas_r_derivs(red, t2)
    return float(math.log(abs(b) / abs(a)) / math.log(abs(t2 / t1)))


def sas_table1_row(red: SasReduced, tol: float = 1e-9) -> SasShapeRow:
    """Classify the shape of ``R''`` for a reduced SAS pair by evaluation.

    Sign pattern and monotonicity are read off ``h`` and ``R'''`` on a
    symmetric log-spaced sweep of the real line; the limit class comes from
    the growth exponent of ``|R''|`` between ``|t| = 1e3`` and ``1e5``.
    """
    mag = np.logspace(-4, 6, 801)
    t = np.concatenate([-mag[::-1], [0.0], mag])
    h = sas_h(red, t)
    _, r2, r3 = sas_r_derivs(red, t)
    # h is a difference of two large terms; judge it against their size
    hscale = red.tau_tilde * np.sqrt(1.0 + t * t) * np.abs(red.S(t)) + np.abs(t * red.C(t))
    hs = np.sign(np.where(np.abs(h) <= tol * np.maximum(1.0, hscale), 0.0, h))
    nz = hs[hs != 0]
    changes = np.flatnonzero(np.diff(nz) != 0)
    if changes.size == 0:
        sign_change = "none"
    elif nz[0] > 0:
        sign_change = "+ to -"
    else:
        sign_change = "- to +"

    spread = np.max(r2) - np.min(r2)
    if spread <= tol * max(1.0, np.max(np.abs(r2))):
        mono = "constant"
    elif np.all(r3 >= -tol * np.maximum(1.0, np.abs(r3))):
        mono = "increasing"
    else:
        mono = "no"

    if mono == "constant":
        limit, limits = "0", (float(r2[0]), float(r2[-1]))
    else:
        e = 0.5 * (r2_growth_exponent(red, 1.0) + r2_growth_exponent(red, -1.0))
        if e < -0.05:
            limit = "0"
        elif e <= 0.05:
            limit = "finite"
        elif e < 0.95:
            limit = "sublinear"
        elif e <= 1.05:
            limit = "linear"
        else:
            limit = "superlinear"
        big = 1e8
        limits = (float(sas_r_derivs(red, -big)[1]), float(sas_r_derivs(red, big)[1]))
        if limit == "0":
            limits = (0.0, 0.0)

    leq3 = "yes" if mono in ("increasing", "constant") else "no"
    if leq3 == "yes":
        gs = "yes"
    elif sign_change == "- to +":
        gs = "iff t0=0"
    else:
        gs = "no"
    return SasShapeRow(red.tau_tilde, red.nu_tilde, sign_change, mono, limit, limits, leq3, gs)
