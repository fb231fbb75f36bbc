"""Meromorphic inner functions F(z) = gamma * exp(i sigma z) * prod (z - z_n)/(z - conj z_n).

Differences of F (for kernels and derivatives) are never formed by subtracting
two computed values of F. They are telescoped over the factorisation, using the
closed forms

    b(z) - b(u)             = (z - u) (a - conj a) / ((z - conj a)(u - conj a))
    conj(b(w)) b(z) - 1     = (z - conj w) (a - conj a) / ((conj w - a)(z - conj a))
    exp(i s z) - exp(i s u) = exp(i s u) expm1(i s (z - u))

for a Blaschke factor b with zero a, so every quotient is free of cancellation,
including at coincident arguments.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DiskParameterError, PoleError, ValidationError
from .mobius import as_complex, disk_automorphism, mu_inv

_POLE_GUARD = 1e-300


def _expm1_quotient(x):
    """expm1(x)/x for complex arrays, equal to 1 at x = 0."""
    x = np.asarray(x, dtype=complex)
    out = np.ones_like(x)
    small = np.abs(x) < 1e-5
    xs = x[small]
    out[small] = 1.0 + xs / 2.0 + xs * xs / 6.0 + xs * xs * xs / 24.0
    xl = x[~small]
    out[~small] = np.expm1(xl) / xl
    return out


@dataclass(frozen=True)
class InnerFunctionSpec:
    """Meromorphic inner function on the upper half-plane.

    Parameters
    ----------
    gamma : complex
        Unimodular constant.
    sigma : float
        Exponential rate, ``sigma >= 0``.
    zeros : tuple of complex
        Distinct zeros in the open upper half-plane. Blaschke factors are
        ``(z - z_n)/(z - conj z_n)``; any convergence normalisers are assumed
        to be absorbed into ``gamma``.
    tail_im_sum_diverges : bool
        Declared metadata: the (truncated) zero family is conceptually infinite
        with ``sum Im z_n = inf``. Only consulted by density reporting.
    label : str
    """

    gamma: complex = 1.0 + 0.0j
    sigma: float = 0.0
    zeros: tuple = ()
    tail_im_sum_diverges: bool = False
    label: str = ""

    def __post_init__(self):
        gamma = complex(self.gamma)
        sigma = float(self.sigma)
        zeros = tuple(complex(z) for z in self.zeros)
        if not (np.isfinite(gamma.real) and np.isfinite(gamma.imag)):
            raise ValidationError("gamma must be finite", code="GAMMA")
        if abs(abs(gamma) - 1.0) >= 1e-12:
            raise ValidationError("|gamma| must be 1", code="GAMMA")
        if not np.isfinite(sigma) or sigma < 0:
            raise ValidationError("sigma must be a finite number >= 0", code="SIGMA")
        for k, z in enumerate(zeros):
            if not (np.isfinite(z.real) and np.isfinite(z.imag)):
                raise ValidationError(f"zeros[{k}] must be finite", code="ZEROS")
            if z.imag <= 0:
                raise ValidationError(f"zeros[{k}] = {z!r} must have Im > 0", code="ZEROS")
        for j in range(len(zeros)):
            for k in range(j):
                if abs(zeros[j] - zeros[k]) <= 1e-12 * max(1.0, abs(zeros[j])):
                    raise ValidationError(f"zeros[{k}] and zeros[{j}] coincide", code="ZEROS")
        if sigma == 0 and not zeros:
            # F would be constant and K^2_F trivial.
            raise ValidationError("sigma = 0 with no zeros gives a constant inner function", code="CONSTANT")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "tail_im_sum_diverges", bool(self.tail_im_sum_diverges))
        object.__setattr__(self, "label", str(self.label))

    @cached_property
    def zero_array(self):
        return np.array(self.zeros, dtype=complex)

    @cached_property
    def value_at_i(self):
        return complex(eval_inner(self, 1j))

    def __call__(self, z):
        return eval_inner(self, z)


def _prepare(spec, z):
    z = as_complex(z)
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=complex)
    a = spec.zero_array
    if a.size and np.any(np.abs(z[..., None] - a.conj()) < _POLE_GUARD):
        raise PoleError("F has a pole at conj(z_n)")
    return z, scalar, a


def _out(value, scalar):
    return complex(value) if scalar else value


def _factors(z, a):
    return (z[..., None] - a) / (z[..., None] - a.conj())


def eval_inner(spec, z):
    """F(z). Scalars in, scalars out; arrays are evaluated elementwise."""
    z, scalar, a = _prepare(spec, z)
    val = spec.gamma * np.exp(1j * spec.sigma * z)
    if a.size:
        val = val * np.prod(_factors(z, a), axis=-1)
    return _out(val, scalar)


def divided_difference(spec, z, w):
    """(F(z) - F(w))/(z - w), with the value F'(w) where z = w.

    ``z`` and ``w`` broadcast against each other.
    """
    z, scalar, a = _prepare(spec, z)
    w = np.asarray(as_complex(w, "w"), dtype=complex)
    scalar = scalar and w.ndim == 0
    z, w = np.broadcast_arrays(z, w)
    if a.size and np.any(np.abs(w[..., None] - a.conj()) < _POLE_GUARD):
        raise PoleError("F has a pole at conj(z_n)")
    s = spec.sigma
    # factor 0 is the exponential, factors 1..n the Blaschke terms
    delta_exp = np.exp(1j * s * w) * (1j * s) * _expm1_quotient(1j * s * (z - w))
    if not a.size:
        return _out(spec.gamma * delta_exp, scalar)
    fz = np.concatenate([np.exp(1j * s * z)[..., None], _factors(z, a)], axis=-1)
    fw = np.concatenate([np.exp(1j * s * w)[..., None], _factors(w, a)], axis=-1)
    delta = np.concatenate(
        [delta_exp[..., None], (a - a.conj()) / ((z[..., None] - a.conj()) * (w[..., None] - a.conj()))],
        axis=-1,
    )
    prefix = np.ones_like(fz)
    prefix[..., 1:] = np.cumprod(fz[..., :-1], axis=-1)
    suffix = np.ones_like(fw)
    suffix[..., :-1] = np.flip(np.cumprod(np.flip(fw[..., 1:], axis=-1), axis=-1), axis=-1)
    val = spec.gamma * np.sum(prefix * delta * suffix, axis=-1)
    return _out(val, scalar)


def eval_derivative(spec, z):
    """F'(z), by the product rule over the factorisation (no division by F)."""
    return divided_difference(spec, z, z)


def kernel_quotient(spec, w, z):
    """(1 - conj(F(w)) F(z)) / (z - conj w), telescoped.

    Regular at ``z = conj w``; singular only at the poles of F.
    """
    z, scalar, a = _prepare(spec, z)
    w = complex(as_complex(w, "w"))
    s = spec.sigma
    d = z - w.conjugate()
    r_exp = 1j * s * _expm1_quotient(1j * s * d)
    if not a.size:
        return _out(-r_exp, scalar)
    q_exp = np.exp(1j * s * d)
    bw = (w - a) / (w - a.conj())
    q = np.concatenate([q_exp[..., None], bw.conj() * _factors(z, a)], axis=-1)
    r = np.concatenate(
        [r_exp[..., None], (a - a.conj()) / ((w.conjugate() - a) * (z[..., None] - a.conj()))], axis=-1
    )
    prefix = np.ones_like(q)
    prefix[..., 1:] = np.cumprod(q[..., :-1], axis=-1)
    return _out(-np.sum(r * prefix, axis=-1), scalar)


def characteristic_eval(spec, z):
    """omega(z) = (F(z) - F(i)) / (1 - conj(F(i)) F(z))."""
    return disk_automorphism(eval_inner(spec, z), spec.value_at_i)


def disk_side_characteristic(spec, v):
    """Disk-side characteristic function of the pullback ``F o mu^{-1}``."""
    v = as_complex(v, "v")
    if np.any(np.abs(v) >= 1.0):
        raise DiskParameterError("disk point must satisfy |v| < 1")
    phi = eval_inner(spec, mu_inv(v))
    return disk_automorphism(phi, spec.value_at_i)
