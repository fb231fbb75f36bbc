"""Orthogonal sampling sequences and Kramer-type reconstruction.

For a fixed label beta the kernels at the eigenvalues of the beta extension
are pairwise orthogonal, so any f in their span is recovered from its samples by

    f(z) = sum_n f(lambda_n) k_{lambda_n}(z) / ||k_{lambda_n}||^2 .
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptySpectrumError, SampleAlignmentError, SpectralError, ValidationError
from .mobius import as_complex
from .phase import PhaseFunction, spectrum
from .space import KernelTerm, SpaceElement, TermKind, evaluate, inner_product, kernel_eval, kernel_norm_sq

_FULL_GRAM_LIMIT = 400


@dataclass(frozen=True)
class SamplingSequence:
    spec: object
    beta: float
    window: tuple
    lambdas: np.ndarray
    norms_sq: np.ndarray

    def __len__(self):
        return len(self.lambdas)

    def kernel_gram(self):
        """G[m, n] = <k_{lambda_m}, k_{lambda_n}> = k_{lambda_m}(lambda_n)."""
        return np.array([kernel_eval(self.spec, lam, self.lambdas) for lam in self.lambdas])

    def element(self, coefficients):
        """Span element sum c_n k_{lambda_n}."""
        if len(coefficients) != len(self):
            raise ValidationError("one coefficient per sampling node is required")
        return SpaceElement(
            self.spec,
            tuple(KernelTerm(TermKind.KERNEL, lam, c) for lam, c in zip(self.lambdas, coefficients) if c != 0),
        )


def _max_offdiagonal(seq):
    n = len(seq)
    if n <= _FULL_GRAM_LIMIT:
        G = seq.kernel_gram()
        return float(np.max(np.abs(G - np.diag(np.diag(G))))) if n > 1 else 0.0
    # long sequences: near neighbours only, where cancellation is worst
    worst = 0.0
    for shift in (1, 2, 3):
        for m in range(n - shift):
            worst = max(worst, abs(kernel_eval(seq.spec, seq.lambdas[m], seq.lambdas[m + shift])))
    return worst


def build_sequence(spec, beta, window, orthogonality_tol=1e-9, phase=None):
    """Sampling sequence from the spectrum of the beta extension inside ``window``."""
    pf = phase if phase is not None else PhaseFunction(spec)
    report = spectrum(pf, beta, window)
    if not len(report):
        raise EmptySpectrumError(f"no eigenvalue of the beta = {beta!r} extension in {window!r}")
    seq = SamplingSequence(
        spec, report.beta, report.window, report.eigenvalues, np.atleast_1d(kernel_norm_sq(spec, report.eigenvalues))
    )
    off = _max_offdiagonal(seq)
    if off >= orthogonality_tol:
        raise SpectralError(f"sampling kernels not orthogonal: max |<k_m, k_n>| = {off:.3e}")
    return seq


def _sample_values(seq, samples, align_tol):
    samples = list(samples)
    if len(samples) != len(seq):
        raise SampleAlignmentError(f"{len(samples)} samples for {len(seq)} sampling nodes")
    values = np.empty(len(samples), dtype=complex)
    for k, (x, v) in enumerate(samples):
        if abs(float(x) - seq.lambdas[k]) >= align_tol:
            raise SampleAlignmentError(
                f"sample {k} at x = {float(x)!r} does not match lambda_{k} = {seq.lambdas[k]!r}"
            )
        values[k] = complex(v)
    return values


def reconstruct(seq, samples, z, align_tol=1e-9):
    """Sampling-series value at ``z`` from ``(x_n, f(x_n))`` pairs aligned with ``seq.lambdas``."""
    values = _sample_values(seq, samples, align_tol)
    z = as_complex(z)
    total = np.zeros(np.shape(z), dtype=complex)
    for lam, v, nsq in zip(seq.lambdas, values, seq.norms_sq):
        if v != 0:
            total = total + (v / nsq) * kernel_eval(seq.spec, lam, z)
    return complex(total) if np.ndim(total) == 0 else total


def parseval_residual(f, seq):
    """| <f, f> - sum |f(lambda_n)|^2 / ||k_{lambda_n}||^2 |."""
    samples = evaluate(f, seq.lambdas)
    energy = float(np.sum(np.abs(samples) ** 2 / seq.norms_sq))
    return abs(inner_product(f, f).real - energy)


def shannon_reference(omega, samples, x, spacing_tol=1e-9):
    """Partial sinc series sum f(x_n) sin(omega (x - x_n)) / (omega (x - x_n)).

    ``samples`` are ``(x_n, f(x_n))`` pairs on a grid of spacing pi/omega.
    """
    omega = float(omega)
    if not omega > 0 or not math.isfinite(omega):
        raise ValidationError("omega must be positive")
    nodes = np.array([float(s[0]) for s in samples])
    values = np.array([complex(s[1]) for s in samples])
    if len(nodes) > 1 and np.max(np.abs(np.diff(nodes) - math.pi / omega)) >= spacing_tol:
        raise SampleAlignmentError("Shannon nodes must be spaced by pi/omega")
    x = np.asarray(x, dtype=float)
    # np.sinc(t) = sin(pi t)/(pi t)
    weights = np.sinc(omega * (x[..., None] - nodes) / math.pi)
    out = weights @ values
    return complex(out) if out.ndim == 0 else out
