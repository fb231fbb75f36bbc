"""Named numerical tolerances used by the invariant suite and the CLI."""

from .errors import ValidationError

DEFAULTS = {
    "unimodular": 1e-10,
    "reflection": 1e-10,
    "modulus_bound": 1e-12,
    "characteristic_at_i": 1e-13,
    "characteristic_unimodular": 1e-10,
    "reproducing": 1e-10,
    "phase_identity": 1e-10,
    "finite_difference": 1e-6,
    "phase_residual": 1e-10,
    "spectrum_check": 1e-8,
    "coverage": 1e-9,
    "orthogonality": 1e-9,
    "parseval": 1e-9,
    "reconstruction": 1e-9,
    "alignment": 1e-9,
    "ratio": 1e-9,
    "exponent_toggle": 1e-12,
    "termwise": 1e-12,
}


def resolve(overrides=None):
    tol = dict(DEFAULTS)
    for name, value in (overrides or {}).items():
        if name not in DEFAULTS:
            raise ValidationError(f"unknown tolerance {name!r}", code="TOLERANCE")
        value = float(value)
        if not value > 0:
            raise ValidationError(f"tolerance {name!r} must be positive", code="TOLERANCE")
        tol[name] = value
    return tol


def parse_override(text):
    """Parse ``NAME=VALUE``."""
    name, sep, value = text.partition("=")
    if not sep:
        raise ValidationError(f"tolerance override must look like NAME=VALUE, got {text!r}", code="TOLERANCE")
    try:
        return name.strip(), float(value)
    except ValueError:
        raise ValidationError(f"tolerance value in {text!r} is not a number", code="TOLERANCE") from None
