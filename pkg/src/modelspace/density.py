"""Dense-definedness and angular-derivative criteria, on finite zero data.

A finite zero list can never certify that sum Im z_n diverges; the only route
to that verdict is the spec's declared ``tail_im_sum_diverges`` flag.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .mobius import mu


class Verdict(enum.Enum):
    DENSELY_DEFINED = "DenselyDefined"
    NOT_DENSELY_DEFINED = "NotDenselyDefined"
    DECLARED_DENSELY_DEFINED_BY_TAIL = "DeclaredDenselyDefinedByTail"


@dataclass(frozen=True)
class DensityReport:
    sigma: float
    partial_im_sum: float
    tail_flag: bool
    verdict: Verdict

    @property
    def densely_defined(self):
        return self.verdict is not Verdict.NOT_DENSELY_DEFINED


@dataclass(frozen=True)
class IndicatorValue:
    """Angular-derivative sum at a boundary point.

    ``infinite`` is the flagged infinity: set when a point mass of the singular
    measure sits at the evaluation point (sigma > 0 at zeta = 1) or a divergent
    tail is declared there. ``finite_sum`` is always the finite partial sum.
    """

    finite_sum: float
    infinite: bool = False
    reason: str = ""

    @property
    def angular_derivative_exists(self):
        return not self.infinite


def dense_defined_report(spec):
    partial = float(sum(z.imag for z in spec.zeros))
    if spec.sigma > 0:
        verdict = Verdict.DENSELY_DEFINED
    elif spec.tail_im_sum_diverges:
        verdict = Verdict.DECLARED_DENSELY_DEFINED_BY_TAIL
    else:
        verdict = Verdict.NOT_DENSELY_DEFINED
    return DensityReport(spec.sigma, partial, spec.tail_im_sum_diverges, verdict)


def eigenvalue_admissibility_sum(spec, lam):
    """sum Im z_n / |lambda - z_n|^2 (no singular measure term for meromorphic F)."""
    lam = float(lam)
    return float(sum(z.imag / abs(lam - z) ** 2 for z in spec.zeros))


def angular_derivative_indicator(spec, zeta):
    """sum (1 - |a_n|^2)/|zeta - a_n|^2 + int |theta - zeta|^-2 d rho, a_n = mu(z_n).

    The singular measure of the pulled-back exponential factor is the point
    mass sigma at 1, contributing sigma/|1 - zeta|^2 away from 1 and the
    flagged infinity at zeta = 1.
    """
    zeta = complex(zeta)
    if abs(abs(zeta) - 1.0) >= 1e-9:
        raise ValidationError("zeta must lie on the unit circle", code="OFF_CIRCLE")
    a = np.array([mu(z) for z in spec.zeros], dtype=complex)
    total = float(np.sum((1.0 - np.abs(a) ** 2) / np.abs(zeta - a) ** 2)) if a.size else 0.0
    at_one = abs(zeta - 1.0) < 1e-12
    if spec.sigma > 0:
        if at_one:
            return IndicatorValue(total, True, "point mass sigma at 1")
        total += spec.sigma / abs(1.0 - zeta) ** 2
    if at_one and spec.tail_im_sum_diverges:
        return IndicatorValue(total, True, "declared divergent tail")
    return IndicatorValue(total)


def termwise_identity_residuals(spec):
    """|(1 - |mu(z_n)|^2)/|1 - mu(z_n)|^2 - Im z_n| for each zero."""
    out = []
    for z in spec.zeros:
        a = mu(z)
        out.append(abs((1.0 - abs(a) ** 2) / abs(1.0 - a) ** 2 - z.imag))
    return np.array(out)
