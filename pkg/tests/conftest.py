import cmath
import math

import numpy as np
import pytest

from modelspace import InnerFunctionSpec
from modelspace.serialize import load_bundled

# bundled specs with 0, 1, 3, 8 and 20 zeros (sigma in {0, 0.5, 1})
ACCEPTANCE_SPECS = ("exponential", "single", "three", "eight", "twenty")
ALL_SPECS = ACCEPTANCE_SPECS + ("shannon",)

EXPONENTIAL = InnerFunctionSpec(1.0, 1.0, ())
SINGLE_I = InnerFunctionSpec(1.0, 0.0, (1j,))


def naive_F(spec, z):
    """Direct product formula, scalar loop; independent of the package evaluator."""
    val = complex(spec.gamma) * cmath.exp(1j * spec.sigma * z)
    for a in spec.zeros:
        val *= (z - a) / (z - a.conjugate())
    return val


def naive_kernel(spec, w, z):
    """(i/2pi)(1 - conj F(w) F(z))/(z - conj w) straight from the definition."""
    return 1j / (2 * math.pi) * (1 - naive_F(spec, w).conjugate() * naive_F(spec, z)) / (z - w.conjugate())


def sign_scan_roots(spec, beta, lo, hi, n=400001):
    """Roots of F(x) = e^{i beta} by sign changes of Im(e^{-i beta} F) where Re > 0.

    Dense uniform grid, no phase function involved.
    """
    x = np.linspace(lo, hi, n)
    g = _vector_F(spec, x) * np.exp(-1j * beta)
    s = np.sign(g.imag)
    idx = np.nonzero((s[:-1] != s[1:]) & (g.real[:-1] > 0) & (g.real[1:] > 0))[0]
    return x[idx]


def _vector_F(spec, x):
    val = complex(spec.gamma) * np.exp(1j * spec.sigma * x.astype(complex))
    for a in spec.zeros:
        val = val * (x - a) / (x - a.conjugate())
    return val


@pytest.fixture(scope="session")
def bundled():
    return {name: load_bundled(name) for name in ALL_SPECS}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_uhp(rng, n, scale=5.0, min_im=0.05):
    return rng.uniform(-scale, scale, n) + 1j * rng.uniform(min_im, scale, n)


# one PASS/FAIL line per acceptance criterion, whatever the capture mode
_CRITERIA = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::test_criterion_", 1)[1].split("[", 1)[0]
    failed = report.failed
    if report.when == "call" or failed:
        _CRITERIA[name] = _CRITERIA.get(name, True) and not failed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        number, _, label = name.partition("_")
        verdict = "PASS" if _CRITERIA[name] else "FAIL"
        terminalreporter.write_line(f"criterion {int(number):2d} {verdict}  {label.replace('_', ' ')}")
