"""Cayley-type maps between the upper half-plane and the unit disk."""

import numpy as np

from .errors import DiskParameterError, PoleError, ValidationError

_GUARD = 1e-300


def as_complex(z, name="z"):
    """Coerce to complex (scalar or ndarray), rejecting NaN/Inf."""
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} must be finite")
    if arr.ndim == 0:
        return complex(arr)
    return arr


def _pack(arr, scalar):
    return complex(arr) if scalar else arr


def mu(z):
    """(z - i)/(z + i): upper half-plane -> open disk, R -> circle minus {1}."""
    z = as_complex(z)
    scalar = np.ndim(z) == 0
    z = np.asarray(z)
    den = z + 1j
    if np.any(np.abs(den) < _GUARD):
        raise PoleError("mu has a pole at z = -i")
    return _pack((z - 1j) / den, scalar)


def mu_inv(w):
    """i(1 + w)/(1 - w)."""
    w = as_complex(w, "w")
    scalar = np.ndim(w) == 0
    w = np.asarray(w)
    den = 1.0 - w
    if np.any(np.abs(den) < _GUARD):
        raise PoleError("mu_inv has a pole at w = 1")
    return _pack(1j * (1.0 + w) / den, scalar)


def disk_automorphism(v, a):
    """Frostman shift (v - a)/(1 - conj(a) v); sends ``a`` to 0."""
    a = complex(as_complex(a, "a"))
    if abs(a) >= 1.0:
        raise DiskParameterError(f"automorphism parameter must satisfy |a| < 1, got |a| = {abs(a)!r}")
    v = as_complex(v, "v")
    scalar = np.ndim(v) == 0
    v = np.asarray(v)
    return _pack((v - a) / (1.0 - a.conjugate() * v), scalar)
