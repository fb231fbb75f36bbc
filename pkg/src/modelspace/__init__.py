"""Symmetric operators with deficiency indices (1,1) as multiplication in model spaces.

Reproducing kernels, phase functions, self-adjoint-extension spectra, orthogonal
sampling and de Branges functions for meromorphic inner functions.
"""

from .debranges import DeBrangesSpec, build_E, eval_E, he_kernel, l2_weight_inner_product, ratio_residual
from .density import angular_derivative_indicator, dense_defined_report, eigenvalue_admissibility_sum
from .errors import ModelSpaceError
from .inner import (
    InnerFunctionSpec,
    characteristic_eval,
    disk_side_characteristic,
    eval_derivative,
    eval_inner,
)
from .mobius import disk_automorphism, mu, mu_inv
from .phase import (
    PhaseFunction,
    SpectrumReport,
    alpha_of_beta,
    alternation_check,
    beta_of_alpha,
    coverage_check,
    spectrum,
    tau,
    tau_prime,
)
from .sampling import SamplingSequence, build_sequence, parseval_residual, reconstruct, shannon_reference
from .serialize import load_bundled, parse_spec
from .space import (
    KernelTerm,
    SpaceElement,
    TermKind,
    conjugate,
    deficiency_vectors,
    evaluate,
    inner_product,
    kernel_eval,
    kernel_norm_sq,
)

__version__ = "0.1.0"

__all__ = [
    "alpha_of_beta",
    "alternation_check",
    "angular_derivative_indicator",
    "beta_of_alpha",
    "build_E",
    "build_sequence",
    "characteristic_eval",
    "conjugate",
    "coverage_check",
    "DeBrangesSpec",
    "deficiency_vectors",
    "dense_defined_report",
    "disk_automorphism",
    "disk_side_characteristic",
    "eigenvalue_admissibility_sum",
    "eval_derivative",
    "eval_E",
    "eval_inner",
    "evaluate",
    "he_kernel",
    "inner_product",
    "InnerFunctionSpec",
    "kernel_eval",
    "kernel_norm_sq",
    "KernelTerm",
    "l2_weight_inner_product",
    "load_bundled",
    "ModelSpaceError",
    "mu",
    "mu_inv",
    "parse_spec",
    "parseval_residual",
    "PhaseFunction",
    "ratio_residual",
    "reconstruct",
    "SamplingSequence",
    "shannon_reference",
    "SpaceElement",
    "spectrum",
    "SpectrumReport",
    "tau",
    "tau_prime",
    "TermKind",
]
