"""De Branges functions E with F = E*/E, built from Krein's product formula.

    E(z) = gamma_E exp(-i sigma_E z) prod_n (1 - z/zeta_n) exp((p_n(z) + p_n*(z))/2)

with zeta_n = conj(z_n) the (lower half-plane) zeros, sigma_E = sigma/2,
p_n(z) = sum_{k=1}^{n} z^k / (k zeta_n^k), and G = 1. The convergence
exponents are optional: they are *-symmetric and cancel from E*/E.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import CalibrationError, ModelSpaceError, ValidationError
from .inner import eval_inner
from .mobius import as_complex
from .space import TermKind, evaluate, kernel_eval

_MAX_ABS_Z = 1e150


@dataclass(frozen=True)
class DeBrangesSpec:
    gamma_E: complex
    sigma_E: float
    zeros_conj: tuple
    convergence_exponents: bool = False

    def __post_init__(self):
        gamma = complex(self.gamma_E)
        if abs(abs(gamma) - 1.0) >= 1e-12:
            raise ValidationError("|gamma_E| must be 1", code="GAMMA")
        if not float(self.sigma_E) >= 0:
            raise ValidationError("sigma_E must be >= 0", code="SIGMA")
        zeros = tuple(complex(z) for z in self.zeros_conj)
        if any(z.imag >= 0 for z in zeros):
            raise ValidationError("zeros of E must lie in the open lower half-plane", code="ZEROS")
        object.__setattr__(self, "gamma_E", gamma)
        object.__setattr__(self, "sigma_E", float(self.sigma_E))
        object.__setattr__(self, "zeros_conj", zeros)
        object.__setattr__(self, "convergence_exponents", bool(self.convergence_exponents))

    def with_exponents(self, flag):
        return DeBrangesSpec(self.gamma_E, self.sigma_E, self.zeros_conj, flag)


def _exponent_series(z, zeta, n):
    """p_n(z) = sum_{k=1}^{n} (z/zeta)^k / k."""
    u = z / zeta
    total = np.zeros_like(u)
    power = np.ones_like(u)
    for k in range(1, n + 1):
        power = power * u
        total = total + power / k
    return total


def log_eval_E(e, z):
    """log E(z) (branch unspecified); keeps large convergence exponents finite."""
    z = as_complex(z)
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > _MAX_ABS_Z):
        raise ModelSpaceError("|z| too large for E evaluation", code="OVERFLOW")
    out = 1j * math.atan2(e.gamma_E.imag, e.gamma_E.real) - 1j * e.sigma_E * z
    with np.errstate(divide="ignore"):
        for n, zeta in enumerate(e.zeros_conj, start=1):
            out = out + np.log(1.0 - z / zeta)
            if e.convergence_exponents:
                p = _exponent_series(z, zeta, n)
                p_star = np.conj(_exponent_series(np.conj(z), zeta, n))
                out = out + 0.5 * (p + p_star)
    return complex(out) if scalar else out


def eval_E(e, z):
    return np.exp(log_eval_E(e, z)) if np.ndim(z) else complex(np.exp(log_eval_E(e, z)))


def eval_E_star(e, z):
    """E*(z) = conj(E(conj z))."""
    val = np.conj(eval_E(e, np.conj(as_complex(z))))
    return complex(val) if np.ndim(val) == 0 else val


def ratio(e, z):
    """E*(z)/E(z), formed from logarithms so large factors cancel exactly."""
    z = as_complex(z)
    val = np.exp(np.conj(log_eval_E(e, np.conj(z))) - log_eval_E(e, z))
    return complex(val) if np.ndim(val) == 0 else val


def build_E(spec, convergence_exponents=False, x0=0.0):
    """De Branges function for ``spec`` with gamma_E calibrated at the real point ``x0``.

    Zeros are ordered by modulus, as Krein's product formula requires.
    """
    zeros = sorted(spec.zeros, key=abs)
    base = DeBrangesSpec(1.0, spec.sigma / 2.0, tuple(z.conjugate() for z in zeros), convergence_exponents)
    for k in range(64):
        x = x0 + (0.5 * ((k + 1) // 2) * (-1) ** k)
        log_e = log_eval_E(base, x)
        if np.isfinite(log_e.real):
            break
    else:
        raise CalibrationError("E vanishes on the whole calibration grid")
    # need conj(gamma)^2 * conj(E1(x))/E1(x) = F(x)
    r = complex(np.exp(-2j * log_e.imag))
    g2 = r * complex(eval_inner(spec, x)).conjugate()
    gamma = complex(np.exp(0.5j * math.atan2(g2.imag, g2.real)))
    return DeBrangesSpec(gamma, base.sigma_E, base.zeros_conj, convergence_exponents)


def ratio_residual(e, spec, x):
    """|E*(x)/E(x) - F(x)| on real ``x``."""
    x = np.asarray(x, dtype=float)
    res = np.abs(ratio(e, x) - eval_inner(spec, x))
    return float(res) if res.ndim == 0 else res


def he_kernel(e, spec, w, z):
    """Reproducing kernel of H(E): K(w, z) = E(z) conj(E(w)) k_w(z)."""
    z = as_complex(z)
    scale = np.exp(log_eval_E(e, z) + np.conj(log_eval_E(e, w)))
    val = scale * kernel_eval(spec, w, z)
    return complex(val) if np.ndim(val) == 0 else val


def he_inner_product(e, f, g):
    """<E f, E g> in H(E) for kernel-only elements, via the H(E) kernel Gram.

    E k_w = K(w, .) / conj(E(w)), and <K(w, .), K(v, .)> = K(w, v).
    """
    for t in f.terms + g.terms:
        if t.kind is not TermKind.KERNEL:
            raise ValidationError("he_inner_product supports kernel terms only")
    total = 0j
    for s in f.terms:
        es = complex(eval_E(e, s.node))
        for t in g.terms:
            et = complex(eval_E(e, t.node))
            K = he_kernel(e, f.spec, s.node, t.node)
            total += s.coefficient * t.coefficient.conjugate() * K / (es.conjugate() * et)
    return total


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    tail_estimate: float
    n_points: int


def _bound_constant(f):
    return sum(abs(t.coefficient) for t in f.terms) / math.pi


def l2_weight_inner_product(e, f, g, quad_window, quad_points, order=10):
    """Approximate <Ef, Eg>_{H(E)} = int (Ef)(x) conj((Eg)(x)) |E(x)|^-2 dx on a window.

    Composite Gauss-Legendre. The tail outside the window is not added; it is
    bounded from the 1/|x| decay of kernels and reported as ``tail_estimate``.
    """
    if quad_points < 100:
        raise ValidationError("at least 100 quadrature points are required", code="INSUFFICIENT_POINTS")
    lo, hi = (float(v) for v in quad_window)
    if not lo < hi:
        raise ValidationError("quadrature window must satisfy lo < hi")
    if not f.terms or not g.terms:
        return QuadratureResult(0j, 0.0, 0)
    panels = max(1, quad_points // order)
    nodes, weights = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * nodes).ravel()
    wts = (half[:, None] * weights).ravel()
    E = eval_E(e, x)
    integrand = (evaluate(f, x) * E) * np.conj(evaluate(g, x) * E) / np.abs(E) ** 2
    value = complex(np.sum(wts * integrand))
    radius = max(abs(t.node) for t in f.terms + g.terms)
    if hi > radius and -lo > radius:
        c = _bound_constant(f) * _bound_constant(g)
        tail = c / (hi - radius) + c / (-lo - radius)
    else:
        tail = math.inf
    return QuadratureResult(value, tail, x.size)
