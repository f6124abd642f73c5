import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kurtord import SinhArsinh, TransportMap
from kurtord.families import (SasReduced, monomial_order_predicate, r2_growth_exponent,
                              sas_h, sas_h_constant, sas_h_d1, sas_order_predicate,
                              sas_r_derivs, sas_table1_row, weibull_order_predicate)


@pytest.mark.parametrize("p,want", [(2.0, (True, True, True)), (0.7, (True, False, False)),
                                    (1.5, (False, True, False)), (1.0, (True, True, True)),
                                    (0.5, (True, True, True)), (0.3, (True, True, True))])
def test_monomial(p, want):
    assert tuple(monomial_order_predicate(p)) == want


@pytest.mark.parametrize("k,l,want", [(1, 1.5, (True, False)), (1, 2, (True, True)),
                                      (1.5, 1.05, (False, False))])
def test_weibull(k, l, want):
    assert tuple(weibull_order_predicate(k, l)) == want


def test_predicates_reject():
    with pytest.raises(ValueError):
        monomial_order_predicate(0.0)
    with pytest.raises(ValueError):
        weibull_order_predicate(-1, 1)
    with pytest.raises(ValueError):
        sas_order_predicate(0.2, 1.0, 0.2, 1.0)
    with pytest.raises(ValueError):
        SasReduced(0.0, 0.0)


@pytest.mark.parametrize("args,want", [((0.7, 2.0, -1.3, 1.0), (True, True, True)),
                                       ((0, 1.5, 0, 1.0), (False, True, False)),
                                       ((0, 1.0, 0, 2.0), (False, False, False))])
def test_sas_predicate(args, want):
    assert tuple(sas_order_predicate(*args)) == want


@settings(max_examples=40)
@given(st.floats(-2, 2), st.floats(0.3, 4), st.floats(-2, 2), st.floats(0.3, 4))
def test_sas_closed_form_matches_transport(nf, tf, ng, tg):
    red = SasReduced.from_params(nf, tf, ng, tg)
    tm = TransportMap(SinhArsinh(nf, tf), SinhArsinh(ng, tg))
    t = np.linspace(-6, 6, 25)
    for a, b in zip(sas_r_derivs(red, t), tm.r_derivs(t)):
        assert np.all(np.abs(a - b) <= 1e-9 * np.maximum(1.0, np.abs(a)))


@settings(max_examples=25)
@given(st.floats(-2, 2), st.floats(0.3, 4), st.floats(-20, 20))
def test_sas_r2_against_mpmath(nu, tau, t):
    red = SasReduced(nu, tau)
    with mp.workdps(40):
        want = mp.diff(lambda x: mp.sinh(tau * mp.asinh(x) - nu), mp.mpf(t), 2)
    assert sas_r_derivs(red, t)[1] == pytest.approx(float(want), rel=1e-9, abs=1e-10)


def test_h_examples():
    assert sas_h(SasReduced(0.5, 1.0), np.linspace(-10, 10, 9)) == pytest.approx(
        math.sinh(-0.5), abs=1e-12)
    assert sas_h_constant(0.5) == pytest.approx(-0.52110, abs=1e-5)
    for tau in (0.5, 1.5, 3.0):
        assert sas_h(SasReduced(0.0, tau), 0.0) == 0.0
    # leading behaviour 2^(tau-1) (tau-1) |t|^tau with tau = 2
    t = 1e4
    assert sas_h(SasReduced(0.0, 2.0), t) / t**3 == pytest.approx(2.0, rel=1e-6)


@settings(max_examples=40)
@given(st.floats(-2, 2), st.floats(0.3, 4), st.floats(-5, 5))
def test_h_derivative(nu, tau, t):
    red = SasReduced(nu, tau)
    h = 1e-5 * max(1.0, abs(t))
    fd = (sas_h(red, t + h) - sas_h(red, t - h)) / (2 * h)
    exact = sas_h_d1(red, t)
    # the two terms of h cancel; measure against their size
    size = tau * math.sqrt(1 + t * t) * abs(red.S(t)) + abs(t * red.C(t))
    assert abs(fd - exact) <= 1e-6 * max(1.0, abs(exact), size)


def test_sign_of_r2_follows_h():
    for red in (SasReduced(0.3, 0.6), SasReduced(-1, 2.5), SasReduced(1, 1.4)):
        t = np.linspace(-8, 8, 161)
        h, r2 = sas_h(red, t), sas_r_derivs(red, t)[1]
        big = np.abs(h) > 1e-9
        assert np.all(np.sign(h[big]) == np.sign(r2[big]))


def test_sas_special_values():
    _, r2, _ = sas_r_derivs(SasReduced(0.0, 2.0), np.array([-50.0, 50.0]))
    assert np.all(np.abs(r2 - np.array([-4.0, 4.0])) < 1e-3)
    t = np.linspace(-5, 5, 1001)
    assert np.max(np.abs(sas_r_derivs(SasReduced(0.0, 3.0), t)[1] - 24 * t)) < 1e-9
    for nu in (-1.0, 0.5):
        c = sas_r_derivs(SasReduced(nu, 1.0), t)[1] * (1 + t * t) ** 1.5
        assert np.ptp(c) < 1e-9
        assert c[0] == pytest.approx(sas_h_constant(nu), abs=1e-12)


@pytest.mark.parametrize("tau", [0.5, 2.5, 3.0, 4.0])
@pytest.mark.parametrize("side", [1.0, -1.0])
def test_growth_exponent(tau, side):
    assert abs(r2_growth_exponent(SasReduced(0.0, tau), side) - (tau - 2)) < 0.05
    # slope of log|r2| against log|t| measured at |t| = 1e4
    t = side * 1e4
    r2 = sas_r_derivs(SasReduced(0.0, tau), np.array([t, 10 * t]))[1]
    assert abs(math.log10(abs(r2[1] / r2[0])) - (tau - 2)) < 0.05


@pytest.mark.parametrize("tau,want", [
    (0.5, ("+ to -", "no", "0", "no", "no")),
    (1.5, ("- to +", "no", "0", "no", "iff t0=0")),
    (2.0, ("- to +", "increasing", "finite", "yes", "yes")),
    (2.5, ("- to +", "increasing", "sublinear", "yes", "yes")),
    (3.0, ("- to +", "increasing", "linear", "yes", "yes")),
    (4.0, ("- to +", "increasing", "superlinear", "yes", "yes")),
])
@pytest.mark.parametrize("nu", [-1.0, 0.0, 1.0])
def test_sas_shape_rows(tau, want, nu):
    row = sas_table1_row(SasReduced(nu, tau))
    assert (row.sign_change, row.monotonicity, row.limit, row.leq3, row.leq_gs) == want


def test_sas_shape_limits():
    row = sas_table1_row(SasReduced(0.0, 2.0))
    assert row.limits == pytest.approx((-4.0, 4.0), abs=1e-3)
    row = sas_table1_row(SasReduced(0.0, 1.0))
    assert row.monotonicity == "constant" and row.leq3 == "yes"
    row = sas_table1_row(SasReduced(0.7, 1.0))
    assert row.sign_change == "none" and row.leq3 == "no"
