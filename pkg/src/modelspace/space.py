"""Finite kernel combinations in the model space K^2_F.

Elements are linear combinations of reproducing kernels

    k_w(z) = (i/2pi) (1 - conj(F(w)) F(z)) / (z - conj w)

and their images under the conjugation C f = F conj(f) (on R),

    (C k_w)(z) = (-i/2pi) (F(z) - F(w)) / (z - w).

Inner products are finite Gram sums, using ``<k_w, k_v> = k_w(v)``,
``<C k_w, k_v> = (C k_w)(v)`` and ``<C f, C g> = <g, f>``. The inner product is
conjugate linear in its second argument.
"""

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import MixedSpecError, ValidationError
from .inner import divided_difference, eval_derivative, eval_inner, kernel_quotient
from .mobius import as_complex

_I_OVER_2PI = 0.5j / np.pi


class TermKind(enum.Enum):
    KERNEL = "kernel"
    CONJUGATE_KERNEL = "conjugate_kernel"


@dataclass(frozen=True)
class KernelTerm:
    kind: TermKind
    node: complex
    coefficient: complex = 1.0 + 0.0j

    def __post_init__(self):
        node = complex(as_complex(self.node, "node"))
        if node.imag < 0:
            raise ValidationError("kernel nodes must lie in the closed upper half-plane")
        object.__setattr__(self, "node", node)
        object.__setattr__(self, "coefficient", complex(as_complex(self.coefficient, "coefficient")))
        object.__setattr__(self, "kind", TermKind(self.kind))


@dataclass(frozen=True)
class SpaceElement:
    """Finite combination of kernel terms over one inner function."""

    spec: object
    terms: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    @classmethod
    def kernel(cls, spec, w, coefficient=1.0):
        return cls(spec, (KernelTerm(TermKind.KERNEL, w, coefficient),))

    @classmethod
    def conjugate_kernel(cls, spec, w, coefficient=1.0):
        return cls(spec, (KernelTerm(TermKind.CONJUGATE_KERNEL, w, coefficient),))

    def __add__(self, other):
        if other.spec != self.spec:
            raise MixedSpecError("cannot add elements of different model spaces")
        return SpaceElement(self.spec, self.terms + other.terms)

    def __mul__(self, c):
        c = complex(c)
        return SpaceElement(self.spec, tuple(replace(t, coefficient=c * t.coefficient) for t in self.terms))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __call__(self, z):
        return evaluate(self, z)

    def norm(self):
        return float(np.sqrt(max(inner_product(self, self).real, 0.0)))


def kernel_eval(spec, w, z):
    """k_w(z); regular on the diagonal, where k_x(x) = ||k_x||^2."""
    return _I_OVER_2PI * kernel_quotient(spec, w, z)


def conjugate_kernel_eval(spec, w, z):
    """(C k_w)(z) = (-i/2pi) (F(z) - F(w))/(z - w)."""
    return -_I_OVER_2PI * divided_difference(spec, z, w)


def kernel_norm_sq(spec, x):
    """||k_x||^2 = conj(F(x)) F'(x) / (2 pi i) for real ``x``."""
    x = np.asarray(x, dtype=float)
    val = np.conj(eval_inner(spec, x)) * eval_derivative(spec, x) / (2j * np.pi)
    val = np.real(val)
    return float(val) if np.ndim(val) == 0 else val


def _term_eval(spec, term, z):
    if term.kind is TermKind.KERNEL:
        return kernel_eval(spec, term.node, z)
    return conjugate_kernel_eval(spec, term.node, z)


def evaluate(f, z):
    """Pointwise value of a space element (coefficients taken literally)."""
    z = as_complex(z)
    total = np.zeros(np.shape(z), dtype=complex)
    for term in f.terms:
        total = total + term.coefficient * _term_eval(f.spec, term, z)
    return complex(total) if np.ndim(total) == 0 else total


def _pair(spec, s, t):
    """<s, t> for unit-coefficient terms."""
    K, C = TermKind.KERNEL, TermKind.CONJUGATE_KERNEL
    if s.kind is K and t.kind is K:
        return kernel_eval(spec, s.node, t.node)
    if s.kind is C and t.kind is C:
        return kernel_eval(spec, t.node, s.node)
    if s.kind is C and t.kind is K:
        return conjugate_kernel_eval(spec, s.node, t.node)
    return conjugate_kernel_eval(spec, t.node, s.node).conjugate()


def gram_matrix(f):
    """Gram matrix G[j, k] = <t_j, t_k> of the (unit-coefficient) terms of ``f``."""
    n = len(f.terms)
    G = np.empty((n, n), dtype=complex)
    for j, s in enumerate(f.terms):
        for k, t in enumerate(f.terms):
            G[j, k] = _pair(f.spec, s, t)
    return G


def inner_product(f, g):
    if f.spec != g.spec:
        raise MixedSpecError("inner product of elements from different model spaces")
    total = 0j
    for s in f.terms:
        for t in g.terms:
            total += s.coefficient * t.coefficient.conjugate() * _pair(f.spec, s, t)
    return total


def conjugate(f):
    """Apply C: swap kernel/conjugate-kernel kinds and conjugate coefficients."""
    swap = {TermKind.KERNEL: TermKind.CONJUGATE_KERNEL, TermKind.CONJUGATE_KERNEL: TermKind.KERNEL}
    return SpaceElement(
        f.spec,
        tuple(KernelTerm(swap[t.kind], t.node, t.coefficient.conjugate()) for t in f.terms),
    )


def deficiency_vectors(spec):
    """Return ``(psi_plus, psi_minus)`` with psi_- = 2 pi i k_i and psi_+ = -C psi_-."""
    psi_minus = SpaceElement.kernel(spec, 1j, 2j * np.pi)
    psi_plus = -conjugate(psi_minus)
    return psi_plus, psi_minus
