import pytest

from kurtord import PowerUnit, ReflectedCubeRoot, SinhArsinh, StandardNormal, Weibull

FAMILY_LAWS = [
    PowerUnit(0.5), PowerUnit(1.0), PowerUnit(3.0),
    ReflectedCubeRoot(1.0), ReflectedCubeRoot(10.0),
    Weibull(0.5), Weibull(1.0), Weibull(2.0), Weibull(3.5),
    SinhArsinh(0.0, 1.0), SinhArsinh(0.5, 2.0), SinhArsinh(-1.0, 0.7),
    StandardNormal(),
]


@pytest.fixture(params=FAMILY_LAWS, ids=lambda d: d.name)
def law(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
