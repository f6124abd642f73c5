import itertools
import math

import mpmath as mp
import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from kurtord import (Grid, LocationScale, PowerUnit, ReflectedCubeRoot, SinhArsinh, StandardNormal,
                     TransportMap, Weibull, compose_check)
from kurtord.distributions import CubicMap, Pushforward
from kurtord.transport import Levels

from conftest import FAMILY_LAWS

P_INNER = np.linspace(0.01, 0.99, 99)

T = sp.symbols("t", positive=True)


def _sym_derivs(expr, t):
    return [float(sp.diff(expr, T, k).subs(T, t)) for k in (0, 1, 2, 3)]


def test_example_values():
    assert TransportMap(PowerUnit(3), ReflectedCubeRoot(1)).r(0.5) == pytest.approx(
        0.330078125, abs=1e-15)
    assert TransportMap(Weibull(1), Weibull(2)).r(2.0) == pytest.approx(math.sqrt(2), rel=1e-14)
    assert TransportMap(PowerUnit(3), PowerUnit(1)).delta(0.5) == pytest.approx(-0.375, abs=1e-15)
    r1, r2, r3 = TransportMap(PowerUnit(3), ReflectedCubeRoot(1)).r_derivs(0.5)
    assert r3 == pytest.approx(-19.125, rel=1e-12)
    assert TransportMap(SinhArsinh(0, 3), SinhArsinh(0, 1)).r_derivs(1.0)[1] == pytest.approx(24.0)


@pytest.mark.parametrize("f,g,expr", [
    (PowerUnit(3), ReflectedCubeRoot(1), 1 - (1 - T**3) ** 3),
    (PowerUnit(3), PowerUnit(1), T**3),
    (PowerUnit(1), ReflectedCubeRoot(2.5), sp.Rational(5, 2) * (1 - (1 - T) ** 3)),
    (Weibull(1.0), Weibull(2.0), sp.sqrt(T)),
    (Weibull(3.0), Weibull(0.5), T**6),
    (SinhArsinh(0, 3), SinhArsinh(0, 1), sp.sinh(3 * sp.asinh(T))),
])
def test_derivatives_against_symbolic(f, g, expr):
    tm = TransportMap(f, g)
    for p in (0.05, 0.3, 0.5, 0.8, 0.95):
        t = float(f.ppf(p))
        want = _sym_derivs(expr, t)
        got = (tm.r(t),) + tm.r_derivs(t)
        for a, b in zip(got, want):
            assert a == pytest.approx(b, rel=1e-10, abs=1e-10)


def test_chain_third_derivative_polynomial():
    tm = TransportMap(PowerUnit(3), ReflectedCubeRoot(1))
    t = np.linspace(0.01, 0.99, 99)
    assert np.allclose(tm.r_derivs(t)[2], 18 * (28 * t**6 - 20 * t**3 + 1), rtol=1e-10, atol=1e-10)


PAIRS = [(f, g) for f, g in itertools.permutations(FAMILY_LAWS, 2)]


@pytest.mark.parametrize("f,g", PAIRS[::3], ids=lambda d: d.name)
def test_monotone(f, g):
    v = TransportMap(f, g).evaluate_grid(Grid(201))
    assert len(v) > 0 and np.all(v.r1 > 0)


@pytest.mark.parametrize("f,g", PAIRS[::5], ids=lambda d: d.name)
def test_r_derivs_match_finite_differences(f, g):
    tm = TransportMap(f, g)
    for t in f.quantile(P_INNER):
        room = min(t - f.support.lower, f.support.upper - t)
        h = 1e-4 * min(max(1.0, abs(t)), room)
        d = tm.r_derivs(t)
        lo, hi = tm.r_derivs(t - h), tm.r_derivs(t + h)
        fd1 = (tm.r(t + h) - tm.r(t - h)) / (2 * h)
        fd2 = (hi[0] - lo[0]) / (2 * h)
        fd3 = (hi[1] - lo[1]) / (2 * h)
        for fd, exact, sc in ((fd1, d[0], d[0]), (fd2, d[1], d[0]), (fd3, d[2], abs(d[1]) + d[0])):
            assert abs(fd - exact) <= 1e-5 * max(1.0, abs(exact), sc), (f, g, t)


@pytest.mark.parametrize("f,g", PAIRS[1::4], ids=lambda d: d.name)
def test_inverse_map_identity(f, g):
    fg, gf = TransportMap(f, g), TransportMap(g, f)
    for t in g.quantile(P_INNER[5:-5:4]):
        s = gf.r(t)
        a1, a2, a3 = fg.r_derivs(s)
        want = (3 * a2**2 - a3 * a1) / a1**5
        got = gf.r_derivs(t)[2]
        assert abs(got - want) <= 1e-6 * max(1.0, abs(want), abs(3 * a2**2 / a1**5))


@pytest.mark.parametrize("triple,t", [
    ((PowerUnit(3), PowerUnit(1), ReflectedCubeRoot(1)), 0.5),
    ((Weibull(1), Weibull(1.5), Weibull(2)), 1.0),
    ((Weibull(2), Weibull(0.7), Weibull(3)), 1.0),
    ((StandardNormal(), SinhArsinh(0.3, 2), SinhArsinh(-1, 0.5)), 0.7),
    ((SinhArsinh(1, 3), Weibull(2), PowerUnit(0.5)), 0.2),
])
def test_composition(triple, t):
    assert compose_check(*triple, t).max() < 1e-7


def test_weibull_composition_is_monomial():
    f, g, h = Weibull(1), Weibull(1.5), Weibull(2)
    t = 1.7
    assert TransportMap(g, h).r(TransportMap(f, g).r(t)) == pytest.approx(t**0.5, rel=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 3), st.floats(0.3, 4), st.floats(-3, 3), st.floats(0.3, 4),
       st.floats(-30, 30))
def test_sas_map_matches_mpmath(nf, tf, ng, tg, t):
    tm = TransportMap(SinhArsinh(nf, tf), SinhArsinh(ng, tg))
    with mp.workdps(40):
        nt, tt = (nf - ng) / tg, tf / tg
        want = mp.sinh(tt * mp.asinh(mp.mpf(t)) - nt)
        d2 = mp.diff(lambda x: mp.sinh(tt * mp.asinh(x) - nt), mp.mpf(t), 2)
    assert tm.r(t) == pytest.approx(float(want), rel=1e-10, abs=1e-12)
    assert tm.r_derivs(t)[1] == pytest.approx(float(d2), rel=1e-8, abs=1e-10)


def test_grid_levels():
    g = Grid(11, 1e-3)
    lev = g.levels()
    assert np.allclose(lev.p, np.linspace(1e-3, 1 - 1e-3, 11))
    ext = Grid(11, 1e-3, tail=5, tail_logq=1e3).levels()
    assert ext.logq.size == 21 and ext.core.sum() == 11
    assert ext.logq.min() == pytest.approx(-1e3)


@pytest.mark.parametrize("kw", [dict(n=1), dict(eps_p=0.0), dict(eps_p=0.5), dict(tail=-1),
                                dict(tail=3, tail_logq=1.0)])
def test_grid_rejects(kw):
    with pytest.raises(ValueError):
        Grid(**kw)


def test_far_tail_quantiles():
    lev = Levels.from_logq([-1e4, -1e4], [False, True])
    t = lev.quantile(StandardNormal())
    with mp.workdps(30):
        # normal quantile at q = e^-10000 from the mpmath erfc inverse via root finding
        z = mp.findroot(lambda x: mp.log(mp.erfc(x / mp.sqrt(2)) / 2) + 10000, 140)
    assert t[1] == pytest.approx(float(z), rel=1e-10)
    assert t[0] == pytest.approx(-float(z), rel=1e-10)


def test_shared_base_far_tail_is_exact():
    # SAS(0,2) -> SAS(0,1): R = sinh(2 arsinh t) = 2 t sqrt(1 + t^2)
    tm = TransportMap(SinhArsinh(0, 2), SinhArsinh(0, 1))
    v = tm.evaluate(Levels.from_logq([-1e5], [True]))
    t = v.t[0]
    assert v.r[0] == pytest.approx(2 * t * math.sqrt(1 + t * t), rel=1e-12)


def test_edge_points_dropped():
    # refcube quantile rounds onto c at the top of the grid
    v = TransportMap(PowerUnit(1), ReflectedCubeRoot(1)).evaluate_grid(Grid(2001, 1e-6, tail=50))
    assert v.dropped > 0
    assert np.all(np.isfinite(v.r2))


def test_pushforward_near_edge_unresolved():
    d = Pushforward(Weibull(2), CubicMap(1.0, math.sqrt(0.5)))
    lo = d.support.lower
    assert lo < 0
    assert list(d.resolved(np.array([lo - 1e-8 * lo, lo - 1e-3 * lo]))) == [False, True]
    shifted = LocationScale(d, 1.0, 2.0)
    assert list(shifted.resolved(1.0 + 2.0 * np.array([lo - 1e-8 * lo, 0.5]))) == [False, True]
    v = TransportMap(Weibull(2), d).evaluate_grid(Grid(tail=50))
    # R = phi, so R''' = 6 up to rounding of its summands
    assert v.dropped > 0 and np.all(v.r3 > -1e-9 * v.scale3)


def test_points_outside_support_rejected():
    with pytest.raises(ValueError):
        TransportMap(PowerUnit(2), PowerUnit(1)).r(1.5)
