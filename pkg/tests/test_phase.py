import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import EXPONENTIAL, SINGLE_I, naive_F, sign_scan_roots
from modelspace import (
    InnerFunctionSpec,
    PhaseFunction,
    alpha_of_beta,
    alternation_check,
    beta_of_alpha,
    coverage_check,
    eval_inner,
    kernel_norm_sq,
    spectrum,
    tau,
    tau_prime,
)
from modelspace.errors import SpectralError, ValidationError, WindowError
from modelspace.phase import angle_distance, interleaves, normalize_angle
from strategies import real_point, specs

angle = st.floats(0, 2 * math.pi, exclude_max=True)


def test_tau_prime_examples():
    x = np.linspace(-5, 5, 11)
    assert np.all(tau_prime(EXPONENTIAL, x) == 1.0)
    assert tau_prime(SINGLE_I, 0.0) == pytest.approx(2.0, abs=1e-15)
    assert tau_prime(SINGLE_I, 0.0) == pytest.approx(2 * math.pi * kernel_norm_sq(SINGLE_I, 0.0), abs=1e-14)


def test_tau_examples():
    x = np.linspace(-7, 7, 15)
    assert np.max(np.abs(tau(PhaseFunction(EXPONENTIAL), x) - x)) < 1e-15
    omega = 2.5
    shannon = InnerFunctionSpec(1.0, 2 * omega, ())
    assert np.max(np.abs(tau(PhaseFunction(shannon), x) - 2 * omega * x)) < 1e-13
    lam = spectrum(PhaseFunction(shannon), 0.0, (-5, 5)).eigenvalues
    assert np.max(np.abs(np.diff(lam) - math.pi / omega)) < 1e-12


def test_tau_is_anchored_at_zero(bundled):
    for spec in bundled.values():
        f0 = naive_F(spec, 0j)
        assert angle_distance(PhaseFunction(spec)(0.0), cmath.phase(f0)) < 1e-13
        assert -math.pi < PhaseFunction(spec).anchor_value <= math.pi


def test_spectrum_example():
    rep = spectrum(PhaseFunction(EXPONENTIAL), 0.0, (-10, 10))
    assert np.allclose(rep.eigenvalues, [-2 * math.pi, 0.0, 2 * math.pi], rtol=0, atol=1e-12)
    assert list(rep.n_indices) == [-1, 0, 1]


def test_spectrum_round_trip(bundled):
    rng = np.random.default_rng(9)
    for spec in bundled.values():
        pf = PhaseFunction(spec)
        for x0 in rng.uniform(-15, 15, 5):
            lam = spectrum(pf, normalize_angle(pf(x0)), (-20, 20)).eigenvalues
            assert np.min(np.abs(lam - x0)) < 1e-9


def test_spectrum_empty_and_cap():
    pf = PhaseFunction(EXPONENTIAL)
    assert len(spectrum(pf, 3.0, (0.5, 1.0))) == 0
    with pytest.raises(WindowError) as info:
        spectrum(pf, 0.0, (-1e4, 1e4), cap=100)
    assert info.value.code == "WINDOW_TOO_LARGE"
    with pytest.raises(WindowError):
        spectrum(pf, 0.0, (1.0, -1.0))


def test_spectrum_normalizes_beta():
    pf = PhaseFunction(EXPONENTIAL)
    a = spectrum(pf, 1.0, (-10, 10))
    b = spectrum(pf, 1.0 + 4 * math.pi, (-10, 10))
    assert a.beta == pytest.approx(b.beta, abs=1e-14)
    assert np.allclose(a.eigenvalues, b.eigenvalues, atol=1e-12)


def test_spectrum_residual_check_is_enforced():
    with pytest.raises(SpectralError):
        spectrum(PhaseFunction(SINGLE_I), 0.3, (-10, 10), check_tol=1e-300)


def test_alpha_beta_examples(bundled):
    assert alpha_of_beta(EXPONENTIAL, 0.0) == pytest.approx(0.0, abs=1e-15)
    zero_at_i = InnerFunctionSpec(1.0, 0.5, (1j, 2 + 1j))
    for beta in (0.1, 2.0, 5.5):
        assert angle_distance(alpha_of_beta(zero_at_i, beta), beta) < 1e-14
    for spec in bundled.values():
        for beta in np.linspace(0, 6, 7):
            assert angle_distance(beta_of_alpha(spec, alpha_of_beta(spec, beta)), beta) < 1e-12


def test_alternation_examples():
    pf = PhaseFunction(EXPONENTIAL)
    assert alternation_check(pf, 0.0, math.pi, (-10, 10))
    with pytest.raises(ValidationError):
        alternation_check(pf, 1.0, 1.0 + 2 * math.pi, (-10, 10))
    with pytest.raises(WindowError) as info:
        alternation_check(pf, 0.0, math.pi, (0.5, 1.0))
    assert info.value.code == "DEGENERATE_WINDOW"


def test_alternation_against_sign_scan():
    spec = InnerFunctionSpec(cmath.exp(0.4j), 0.0, (-3 + 0.7j, 0.5 + 1.2j, 4 + 0.4j))
    rng = np.random.default_rng(11)
    for b1, b2 in rng.uniform(0, 2 * math.pi, (5, 2)):
        r1 = sign_scan_roots(spec, b1, -20, 20)
        r2 = sign_scan_roots(spec, b2, -20, 20)
        assert interleaves(r1, r2)
        assert alternation_check(PhaseFunction(spec), b1, b2, (-20, 20))


def test_interleaves():
    assert interleaves(np.array([0.0, 2.0]), np.array([1.0, 3.0]))
    assert not interleaves(np.array([0.0, 1.0]), np.array([2.0, 3.0]))
    assert not interleaves(np.array([0.0]), np.array([0.0]))


def test_coverage_examples(bundled):
    assert coverage_check(PhaseFunction(EXPONENTIAL), 1.5) == pytest.approx(1.5, abs=1e-14)
    for spec in bundled.values():
        beta = coverage_check(PhaseFunction(spec), 0.0)
        assert angle_distance(beta, cmath.phase(naive_F(spec, 0j))) < 1e-13


def test_normalize_angle():
    assert normalize_angle(-0.5) == pytest.approx(2 * math.pi - 0.5)
    assert normalize_angle(2 * math.pi) == 0.0
    assert 0 <= normalize_angle(-1e-18) < 2 * math.pi


@settings(max_examples=40, deadline=None)
@given(specs(), real_point)
def test_phase_properties(spec, x):
    pf = PhaseFunction(spec)
    assert tau_prime(spec, x) > 0
    assert abs(cmath.exp(1j * pf(x)) - eval_inner(spec, x)) < 1e-11
    rel = abs(tau_prime(spec, x) - 2 * math.pi * kernel_norm_sq(spec, x)) / tau_prime(spec, x)
    assert rel < 1e-10
    h = 1e-5
    assert abs((pf(x + h) - pf(x - h)) / (2 * h) - tau_prime(spec, x)) < 1e-6 * max(1.0, tau_prime(spec, x))


@settings(max_examples=30, deadline=None)
@given(specs(), angle)
def test_spectrum_properties(spec, beta):
    pf = PhaseFunction(spec)
    rep = spectrum(pf, beta, (-15, 15))
    assert np.all(np.diff(rep.eigenvalues) > 0)
    assert np.all(np.abs(eval_inner(spec, rep.eigenvalues) - cmath.exp(1j * beta)) < 1e-8)
    assert np.all(np.diff(rep.n_indices) == 1)
    assert len(rep) == len(sign_scan_roots(spec, beta, -15, 15, n=200001))


@settings(max_examples=30, deadline=None)
@given(specs(), angle, angle)
def test_alternation_property(spec, b1, b2):
    assume(angle_distance(b1, b2) > 1e-6)
    pf = PhaseFunction(spec)
    try:
        assert alternation_check(pf, b1, b2, (-20, 20))
    except WindowError:
        # too few eigenvalues in the window for one label
        assert len(spectrum(pf, b1, (-20, 20))) == 0 or len(spectrum(pf, b2, (-20, 20))) == 0


@settings(max_examples=30, deadline=None)
@given(specs(), real_point)
def test_coverage_property(spec, x):
    pf = PhaseFunction(spec)
    beta = coverage_check(pf, x)
    assert abs(eval_inner(spec, x) - cmath.exp(1j * beta)) < 1e-9
