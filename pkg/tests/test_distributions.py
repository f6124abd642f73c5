import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kurtord import (FamilySpec, LocationScale, PowerUnit, ReflectedCubeRoot, SinhArsinh,
                     StandardNormal, Weibull, make_distribution, mode, quantile_numeric)
from kurtord.distributions import CubicMap, Pushforward, arsinh

P_GRID = np.linspace(0.005, 0.995, 201)


def _step(d, t):
    # local scale is |t| capped by the distance to a support edge; the step
    # balances h^4 truncation against rounding in t itself
    room = min(t - d.support.lower, d.support.upper - t)
    scale = min(max(1.0, abs(t)), room)
    return scale * (2.2e-16 * max(1.0, abs(t)) / scale) ** 0.2


def _fd(fn, t, h):
    # fourth-order central stencil; singular densities near an edge need it
    return (fn(t - 2 * h) - 8 * fn(t - h) + 8 * fn(t + h) - fn(t + 2 * h)) / (12 * h)


def test_closed_form_examples():
    assert PowerUnit(3).cdf(0.5) == pytest.approx(0.125, abs=1e-15)
    assert Weibull(1).ppf(1 - math.exp(-1)) == pytest.approx(1.0, abs=1e-14)
    assert SinhArsinh(0, 1).ppf(0.5) == pytest.approx(0.0, abs=1e-15)
    t = np.linspace(-4, 4, 17)
    assert np.allclose(SinhArsinh(0, 1).cdf(t), StandardNormal().cdf(t), atol=1e-15)


def test_derivatives_match_finite_differences(law):
    t = law.quantile(P_GRID)
    for ti in t:
        h = _step(law, ti)
        fd_pdf = _fd(law.cdf, ti, h)
        fd_d1 = _fd(law.pdf, ti, h)
        fd_d2 = _fd(law.pdf_d1, ti, h)
        for fd, exact in ((fd_pdf, law.pdf(ti)), (fd_d1, law.pdf_d1(ti)), (fd_d2, law.pdf_d2(ti))):
            assert abs(fd - exact) / max(1.0, abs(exact)) < 1e-6, (law.name, ti)


def test_quantile_round_trip(law):
    t = law.quantile(P_GRID)
    back = law.quantile(law.cdf(t))
    assert np.all(np.abs(back - t) < 1e-9 * np.maximum(1.0, np.abs(t)))


def test_tail_quantiles_in_log_space(law):
    # ppf_log / isf_log agree with ppf / isf where both are representable
    lp = np.log(np.array([1e-12, 1e-6, 1e-3]))
    assert np.allclose(law.ppf_log(lp), law.ppf(np.exp(lp)), rtol=1e-9, atol=1e-300)
    assert np.allclose(law.isf_log(lp), law.isf(np.exp(lp)), rtol=1e-9, atol=1e-300)


@given(st.floats(0.0, 30.0))
def test_symmetric_sas(t):
    d = SinhArsinh(0.0, 1.7)
    assert abs(d.cdf(-t) - d.sf(t)) < 1e-12


@given(st.floats(-1e6, 1e6))
def test_arsinh_matches_mpmath(t):
    want = float(mp.asinh(mp.mpf(t)))
    assert arsinh(t) == pytest.approx(want, rel=1e-14, abs=1e-300)


@pytest.mark.parametrize("d,p,want", [
    (StandardNormal(), 0.5, 0.0),
    (PowerUnit(2), 0.25, 0.5),
    (Weibull(2), 0.5, math.sqrt(math.log(2.0))),
    (SinhArsinh(0.3, 1.4), 0.9, None),
    (ReflectedCubeRoot(2.0), 0.2, None),
])
def test_quantile_numeric(d, p, want):
    t = quantile_numeric(d, p)
    assert abs(float(d.cdf(t)) - p) <= 1e-12
    if want is not None:
        assert t == pytest.approx(want, abs=1e-10)
    assert t == pytest.approx(float(d.quantile(p)), rel=1e-9, abs=1e-12)


def test_quantile_numeric_rejects_bad_level():
    with pytest.raises(ValueError):
        quantile_numeric(StandardNormal(), 1.0)


def test_modes():
    assert mode(StandardNormal()) == (0.0, None)
    m = mode(Weibull(2))
    assert m.boundary is None and m.location == pytest.approx(math.sqrt(0.5), abs=1e-15)
    assert mode(Weibull(0.5)).boundary == "lower"
    # f decreasing on (0, inf) for k <= 1
    t = np.geomspace(1e-3, 20, 200)
    assert np.all(Weibull(0.5).pdf_d1(t) < 0)


def test_numeric_mode_matches_maximiser():
    d = SinhArsinh(0.8, 1.3)
    m = mode(d)
    t = np.linspace(m.location - 0.5, m.location + 0.5, 20001)
    assert abs(t[np.argmax(d.pdf(t))] - m.location) < 1e-4
    assert abs(float(d.score(m.location))) < 1e-9


def test_mode_uniform_raises():
    with pytest.raises(ValueError):
        mode(PowerUnit(1.0))


@pytest.mark.parametrize("bad", [
    FamilySpec("power", {"p": 0}), FamilySpec("refcube", {"c": -1}),
    FamilySpec("weibull", {"k": -2}), FamilySpec("sas", {"nu": 0, "tau": 0}),
    FamilySpec("weibull", {}), FamilySpec("cauchy", {}),
])
def test_invalid_parameters(bad):
    with pytest.raises(ValueError):
        make_distribution(bad)


def test_make_distribution_from_string():
    d = make_distribution("SAS(nu=0.5, tau=2)")
    assert isinstance(d, SinhArsinh) and (d.nu, d.tau) == (0.5, 2.0)
    assert isinstance(make_distribution("normal()"), StandardNormal)


def test_location_scale_and_pushforward():
    w = LocationScale(Weibull(2.0), loc=1.0, scale=3.0)
    t = np.array([1.5, 2.0, 4.0])
    assert np.allclose(w.cdf(t), Weibull(2.0).cdf((t - 1.0) / 3.0))
    assert np.allclose(w.pdf(t), Weibull(2.0).pdf((t - 1.0) / 3.0) / 3.0)
    phi = CubicMap(0.5)
    push = Pushforward(StandardNormal(), phi)
    x = np.array([-1.0, 0.2, 1.3])
    assert np.allclose(push.cdf(phi(x)), StandardNormal().cdf(x))
    assert np.allclose(phi.inverse(phi(x)), x, atol=1e-14)
    for y in (-1.1, 0.4, 2.0):
        h = 1e-5
        fd = (push.pdf_d1(y + h) - push.pdf_d1(y - h)) / (2 * h)
        assert fd == pytest.approx(float(push.pdf_d2(y)), rel=1e-6, abs=1e-9)


@settings(max_examples=50)
@given(st.floats(0.05, 0.95), st.floats(0.3, 4.0))
def test_weibull_quantile_closed_form(p, k):
    assert Weibull(k).ppf(p) == pytest.approx((-math.log1p(-p)) ** (1 / k), rel=1e-13)
