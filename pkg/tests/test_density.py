import math

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import EXPONENTIAL, SINGLE_I
from modelspace import (
    InnerFunctionSpec,
    PhaseFunction,
    angular_derivative_indicator,
    coverage_check,
    dense_defined_report,
    eigenvalue_admissibility_sum,
    mu,
)
from modelspace.density import Verdict, termwise_identity_residuals
from modelspace.errors import ValidationError
from strategies import specs


def test_report_examples():
    assert dense_defined_report(EXPONENTIAL).verdict is Verdict.DENSELY_DEFINED
    rep = dense_defined_report(SINGLE_I)
    assert rep.verdict is Verdict.NOT_DENSELY_DEFINED
    assert rep.partial_im_sum == 1.0
    tail = InnerFunctionSpec(1.0, 0.0, (1j, 2j, 3j), tail_im_sum_diverges=True)
    assert dense_defined_report(tail).verdict is Verdict.DECLARED_DENSELY_DEFINED_BY_TAIL
    assert dense_defined_report(tail).densely_defined
    assert Verdict.DECLARED_DENSELY_DEFINED_BY_TAIL.value == "DeclaredDenselyDefinedByTail"


def test_admissibility_examples(bundled):
    assert eigenvalue_admissibility_sum(SINGLE_I, 0.0) == pytest.approx(1.0, abs=1e-15)
    assert eigenvalue_admissibility_sum(EXPONENTIAL, 3.0) == 0.0
    rng = np.random.default_rng(8)
    for spec in bundled.values():
        pf = PhaseFunction(spec)
        for lam in rng.uniform(-20, 20, 20):
            assert math.isfinite(eigenvalue_admissibility_sum(spec, lam))
            coverage_check(pf, lam)


def test_indicator_examples():
    ind = angular_derivative_indicator(EXPONENTIAL, 1.0)
    assert ind.infinite and not ind.angular_derivative_exists
    single = InnerFunctionSpec(1.0, 0.0, (1j,))
    assert mu(1j) == 0
    at_one = angular_derivative_indicator(single, 1.0)
    assert not at_one.infinite and at_one.finite_sum == pytest.approx(1.0, abs=1e-15)
    at_minus_one = angular_derivative_indicator(single, -1.0)
    assert at_minus_one.finite_sum == pytest.approx(1.0, abs=1e-15)
    assert mu(0) == -1
    coverage_check(PhaseFunction(single), 0.0)


def test_indicator_away_from_one_adds_point_mass():
    # sigma / |1 - zeta|^2 from the point mass of the exponential factor
    zeta = complex(math.cos(0.7), math.sin(0.7))
    ind = angular_derivative_indicator(EXPONENTIAL, zeta)
    assert not ind.infinite
    assert ind.finite_sum == pytest.approx(1.0 / abs(1 - zeta) ** 2, rel=1e-14)


def test_indicator_with_declared_tail():
    tail = InnerFunctionSpec(1.0, 0.0, (1j, 2j, 3j), tail_im_sum_diverges=True)
    ind = angular_derivative_indicator(tail, 1.0)
    assert ind.infinite
    assert ind.finite_sum == pytest.approx(6.0, rel=1e-14)


def test_indicator_off_circle():
    with pytest.raises(ValidationError) as info:
        angular_derivative_indicator(EXPONENTIAL, 0.5)
    assert info.value.code == "OFF_CIRCLE"


def test_consistency_on_bundled(bundled):
    for spec in bundled.values():
        ind = angular_derivative_indicator(spec, 1.0)
        assert ind.infinite == dense_defined_report(spec).densely_defined
        assert np.max(termwise_identity_residuals(spec), initial=0.0) < 1e-12


@settings(max_examples=50, deadline=None)
@given(specs(max_zeros=8))
def test_consistency_property(spec):
    ind = angular_derivative_indicator(spec, 1.0)
    report = dense_defined_report(spec)
    assert ind.infinite == report.densely_defined == (spec.sigma > 0)
    if not ind.infinite:
        # at zeta = 1 the sum is exactly sum Im z_n
        assert ind.finite_sum == pytest.approx(report.partial_im_sum, rel=1e-12)
    assert np.max(termwise_identity_residuals(spec), initial=0.0) < 1e-12
