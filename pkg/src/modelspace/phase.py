"""Phase function, self-adjoint extension spectra and the alpha/beta labels.

On the real line F(x) = exp(i tau(x)) with tau strictly increasing. The
extension labelled by beta has spectrum {x : tau(x) = beta + 2 pi n}. Each
Blaschke factor contributes ``2 atan2(-Im a, x - Re a)``, which is continuous
in x, so tau is available in closed form without quadrature or unwrapping;
the branch is fixed by tau(0) = Arg F(0) in (-pi, pi].
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import SpectralError, ValidationError, WindowError
from .inner import eval_inner

TWO_PI = 2.0 * math.pi
DEFAULT_ROOT_CAP = 10**6
_BRACKET_STEP = math.pi / 4


def normalize_angle(theta):
    """Reduce to [0, 2 pi)."""
    r = math.fmod(float(theta), TWO_PI)
    if r < 0:
        r += TWO_PI
    if r >= TWO_PI:
        r = 0.0
    return r


def angle_distance(a, b):
    """Distance between two angles on the circle."""
    d = abs(normalize_angle(a) - normalize_angle(b))
    return min(d, TWO_PI - d)


def _check_window(window):
    lo, hi = (float(v) for v in window)
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise WindowError(f"window must be a finite interval with lo < hi, got {window!r}")
    return lo, hi


def tau_prime(spec, x):
    """sigma + sum 2 Im z_n / |x - z_n|^2."""
    x = np.asarray(x, dtype=float)
    out = np.full(x.shape, spec.sigma, dtype=float)
    for a in spec.zeros:
        out += 2.0 * a.imag / ((x - a.real) ** 2 + a.imag**2)
    return float(out) if out.ndim == 0 else out


def _raw_phase(spec, x):
    out = math.atan2(spec.gamma.imag, spec.gamma.real) + spec.sigma * x
    for a in spec.zeros:
        out = out + 2.0 * np.arctan2(-a.imag, x - a.real)
    return out


@dataclass(frozen=True)
class SpectrumReport:
    beta: float
    window: tuple
    eigenvalues: np.ndarray
    n_indices: np.ndarray

    def __len__(self):
        return len(self.eigenvalues)


class PhaseFunction:
    """Continuous phase tau of F on the real line.

    Immutable after construction; bracketing grids are built per call.
    """

    def __init__(self, spec):
        self.spec = spec
        f0 = complex(eval_inner(spec, 0.0))
        anchor = math.atan2(f0.imag, f0.real)
        if anchor == -math.pi:
            anchor = math.pi
        self.anchor_value = anchor
        raw0 = float(_raw_phase(spec, 0.0))
        self._offset = TWO_PI * round((anchor - raw0) / TWO_PI)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        val = _raw_phase(self.spec, x) + self._offset
        return float(val) if np.ndim(val) == 0 else val

    def derivative(self, x):
        return tau_prime(self.spec, x)

    def bracketing_grid(self, window, max_rounds=60):
        """Monotone grid on ``window`` with tau increments below pi/4 per cell."""
        lo, hi = _check_window(window)
        xs = np.linspace(lo, hi, 65)
        ts = self(xs)
        for _ in range(max_rounds):
            dt = np.diff(ts)
            bad = dt >= _BRACKET_STEP
            if not bad.any():
                break
            pieces = np.where(bad, np.ceil(dt / (_BRACKET_STEP / 2)), 1).astype(np.int64)
            starts = np.repeat(xs[:-1], pieces)
            widths = np.repeat(np.diff(xs) / pieces, pieces)
            offsets = np.arange(pieces.sum()) - np.repeat(np.cumsum(pieces) - pieces, pieces)
            xs = np.append(starts + offsets * widths, hi)
            ts = self(xs)
        else:
            raise SpectralError("bracketing grid did not resolve the phase")
        if np.any(np.diff(ts) <= 0):
            raise SpectralError("phase function is not strictly increasing on the grid")
        return xs, ts


def tau(pf, x):
    return pf(x)


def _solve_levels(pf, levels, a, b, max_iter=60):
    """Safeguarded Newton for tau(x) = levels inside brackets [a, b]."""
    a = a.copy()
    b = b.copy()
    ta, tb = pf(a), pf(b)
    frac = np.where(tb > ta, (levels - ta) / np.where(tb > ta, tb - ta, 1.0), 0.5)
    x = a + np.clip(frac, 0.0, 1.0) * (b - a)
    for _ in range(max_iter):
        g = pf(x) - levels
        below = g < 0
        a = np.where(below, x, a)
        b = np.where(below, b, x)
        step = g / pf.derivative(x)
        x_new = x - step
        outside = (x_new <= a) | (x_new >= b) | ~np.isfinite(x_new)
        x_new = np.where(outside, 0.5 * (a + b), x_new)
        dx = np.abs(x_new - x)
        x = np.where(g == 0, x, x_new)
        if np.all((dx < 1e-13 * np.maximum(1.0, np.abs(x))) | (g == 0)):
            break
    return x


def spectrum(pf, beta, window, cap=DEFAULT_ROOT_CAP, residual_tol=1e-10, check_tol=1e-8):
    """All x in ``window`` with tau(x) = beta + 2 pi n, i.e. F(x) = exp(i beta).

    Raises
    ------
    WindowError
        If more than ``cap`` eigenvalues would be produced.
    SpectralError
        If a root fails its phase residual or ``|F(x) - e^{i beta}|`` check.
    """
    if not math.isfinite(beta):
        raise ValidationError("beta must be finite")
    beta = normalize_angle(beta)
    lo, hi = _check_window(window)
    t_lo, t_hi = pf(lo), pf(hi)
    n_min = math.ceil((t_lo - beta) / TWO_PI)
    n_max = math.floor((t_hi - beta) / TWO_PI)
    count = n_max - n_min + 1
    if count > cap:
        raise WindowError(f"window would produce {count} eigenvalues (cap {cap})", code="WINDOW_TOO_LARGE")
    if count <= 0:
        return SpectrumReport(beta, (lo, hi), np.empty(0), np.empty(0, dtype=np.int64))
    n = np.arange(n_min, n_max + 1, dtype=np.int64)
    levels = beta + TWO_PI * n
    xs, ts = pf.bracketing_grid((lo, hi))
    idx = np.clip(np.searchsorted(ts, levels, side="left"), 1, len(xs) - 1)
    lam = _solve_levels(pf, levels, xs[idx - 1], xs[idx])
    lam = np.clip(lam, lo, hi)
    resid = np.abs(pf(lam) - levels)
    if resid.max() >= residual_tol:
        raise SpectralError(f"phase residual {resid.max():.3e} exceeds {residual_tol:g}")
    f_err = np.abs(eval_inner(pf.spec, lam) - np.exp(1j * beta))
    if f_err.max() >= check_tol:
        raise SpectralError(f"|F(lambda) - exp(i beta)| = {f_err.max():.3e} exceeds {check_tol:g}")
    if np.any(np.diff(lam) <= 0):
        raise SpectralError("eigenvalues are not strictly increasing")
    return SpectrumReport(beta, (lo, hi), lam, n)


def alpha_of_beta(spec, beta):
    """Extension label alpha for the extension whose spectrum is {F = e^{i beta}}.

    exp(i alpha) = (F(i) + e^{i beta}) / (1 + conj(F(i)) e^{i beta}).
    """
    fi = spec.value_at_i
    eb = complex(math.cos(beta), math.sin(beta))
    ea = (fi + eb) / (1.0 + fi.conjugate() * eb)
    return normalize_angle(math.atan2(ea.imag, ea.real))


def beta_of_alpha(spec, alpha):
    """Inverse of :func:`alpha_of_beta`: e^{i beta} = (e^{i alpha} - F(i)) / (1 - conj(F(i)) e^{i alpha})."""
    fi = spec.value_at_i
    ea = complex(math.cos(alpha), math.sin(alpha))
    eb = (ea - fi) / (1.0 - fi.conjugate() * ea)
    return normalize_angle(math.atan2(eb.imag, eb.real))


def interleaves(first, second):
    """True if two sorted point sets strictly alternate when merged."""
    values = np.concatenate([first, second])
    labels = np.concatenate([np.zeros(len(first), dtype=int), np.ones(len(second), dtype=int)])
    order = np.argsort(values, kind="stable")
    values, labels = values[order], labels[order]
    return bool(np.all(np.diff(values) > 0) and np.all(labels[1:] != labels[:-1]))


def alternation_check(pf, beta1, beta2, window):
    """Whether the spectra for ``beta1`` and ``beta2`` interleave inside ``window``."""
    if angle_distance(beta1, beta2) == 0.0:
        raise ValidationError("alternation needs two distinct extensions (beta1 != beta2 mod 2 pi)")
    s1 = spectrum(pf, beta1, window)
    s2 = spectrum(pf, beta2, window)
    if not len(s1) or not len(s2):
        raise WindowError("a spectrum is empty in the window", code="DEGENERATE_WINDOW")
    return interleaves(s1.eigenvalues, s2.eigenvalues)


def coverage_check(pf, x, tol=1e-9, n_probe=8):
    """Return the unique beta with x in the beta-spectrum; verify uniqueness.

    x must be recovered by the root finder for beta = tau(x) mod 2 pi, and must
    stay further than ``tol / tau'(x)`` from the spectra of probe labels
    beta' != beta.
    """
    x = float(x)
    t = pf(x)
    beta = normalize_angle(t)
    n = round((t - beta) / TWO_PI)
    if abs(t - (beta + TWO_PI * n)) >= tol:
        raise SpectralError(f"x = {x!r}: phase residual exceeds {tol:g}")
    slope = pf.derivative(x)
    half = 0.5 * math.pi / slope
    window = (x - half, x + half)
    own = spectrum(pf, beta, window).eigenvalues
    if not len(own) or np.min(np.abs(own - x)) * slope >= tol:
        raise SpectralError(f"x = {x!r} not recovered in the spectrum of beta = {beta!r}")
    probes = [beta + TWO_PI * k / n_probe for k in range(1, n_probe)] + [beta + 1e-6, beta - 1e-6]
    for b in probes:
        other = spectrum(pf, normalize_angle(b), window).eigenvalues
        if len(other) and np.min(np.abs(other - x)) <= tol / slope:
            raise SpectralError(f"x = {x!r} also lies in the spectrum of beta' = {b!r}")
    return beta
