"""Command line front end.

Primary artifacts (CSV or JSON) go to ``--out`` or stdout; the short summaries
of ``reconstruct`` and ``build-e`` go to stderr as one JSON document. Exit
codes: 0 success, 1 validation/usage failure, 2 invariant-suite failure.
"""

import argparse
import math
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from . import serialize, tolerances
from .checks import run_checks
from .debranges import build_E, eval_E, ratio_residual
from .density import angular_derivative_indicator, dense_defined_report
from .errors import ModelSpaceError, SpectralError, ValidationError
from .inner import eval_inner
from .phase import PhaseFunction, alpha_of_beta, beta_of_alpha, normalize_angle, spectrum, tau_prime
from .sampling import build_sequence, reconstruct, shannon_reference
from .space import evaluate, kernel_eval, kernel_norm_sq

COMMANDS = ("info", "eval", "kernel", "phase", "spectrum", "sample", "reconstruct", "build-e", "check")


@dataclass
class RunConfig:
    spec_path: str
    command: str
    window: tuple = (-10.0, 10.0)
    beta: float = 0.0
    grid_points: int = 201
    output_path: str = None
    tolerance_overrides: dict = field(default_factory=dict)
    samples_path: str = None
    omega: float = None
    node: complex = 0j
    debranges_path: str = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}", code="USAGE")
        lo, hi = (float(v) for v in self.window)
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValidationError("window must satisfy LO < HI", code="WINDOW")
        self.window = (lo, hi)
        if not math.isfinite(self.beta):
            raise ValidationError("beta must be finite", code="USAGE")
        self.beta = normalize_angle(self.beta)
        if int(self.grid_points) < 2:
            raise ValidationError("grid must have at least 2 points", code="USAGE")
        self.grid_points = int(self.grid_points)


@contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _grid(cfg):
    return np.linspace(cfg.window[0], cfg.window[1], cfg.grid_points)


def _cmd_info(cfg, spec, out):
    pf = PhaseFunction(spec)
    density = dense_defined_report(spec)
    ind = angular_derivative_indicator(spec, 1.0)
    lo, hi = cfg.window
    doc = serialize.spec_to_dict(spec)
    doc["F_at_i"] = serialize.pair(spec.value_at_i)
    doc["phase_anchor"] = pf.anchor_value
    doc["phase_range_over_window"] = [pf(lo), pf(hi)]
    doc["density"] = {
        "sigma": density.sigma,
        "partial_im_sum": density.partial_im_sum,
        "tail_flag": density.tail_flag,
        "verdict": density.verdict.value,
    }
    doc["angular_derivative_at_1"] = {
        "finite_sum": ind.finite_sum,
        "flagged_infinite": ind.infinite,
        "exists": ind.angular_derivative_exists,
    }
    out.write(serialize.dumps(doc))


def _cmd_eval(cfg, spec, out):
    xs = _grid(cfg)
    F = eval_inner(spec, xs)
    serialize.write_csv(out, ["x", "re_F", "im_F", "abs_F"],
                        ((x, f.real, f.imag, abs(f)) for x, f in zip(xs, F)))


def _cmd_kernel(cfg, spec, out):
    xs = _grid(cfg)
    k = kernel_eval(spec, cfg.node, xs)
    serialize.write_csv(out, ["x", "re_k", "im_k"], ((x, v.real, v.imag) for x, v in zip(xs, k)))


def _cmd_phase(cfg, spec, out):
    xs = _grid(cfg)
    pf = PhaseFunction(spec)
    serialize.write_csv(out, ["x", "tau", "tau_prime", "kernel_norm_sq"],
                        zip(xs, pf(xs), tau_prime(spec, xs), kernel_norm_sq(spec, xs)))


def _cmd_spectrum(cfg, spec, out):
    tol = tolerances.resolve(cfg.tolerance_overrides)
    rep = spectrum(PhaseFunction(spec), cfg.beta, cfg.window,
                   residual_tol=tol["phase_residual"], check_tol=tol["spectrum_check"])
    out.write(serialize.dumps({
        "beta": rep.beta,
        "alpha": alpha_of_beta(spec, rep.beta),
        "window": list(rep.window),
        "count": len(rep),
        "eigenvalues": [float(v) for v in rep.eigenvalues],
        "n_indices": [int(n) for n in rep.n_indices],
    }))


def _sequence(cfg, spec):
    tol = tolerances.resolve(cfg.tolerance_overrides)
    return build_sequence(spec, cfg.beta, cfg.window, orthogonality_tol=tol["orthogonality"])


def _cmd_sample(cfg, spec, out):
    seq = _sequence(cfg, spec)
    serialize.write_csv(out, ["n", "lambda", "norm_sq"],
                        ((n, lam, nsq) for n, lam, nsq in zip(range(len(seq)), seq.lambdas, seq.norms_sq)))


def _shannon_truth(cfg, spec, samples, xs):
    omega = float(cfg.omega)
    if spec.zeros or abs(spec.sigma - 2 * omega) > 1e-12 * max(1.0, spec.sigma):
        raise ValidationError("--omega requires a Paley-Wiener spec with no zeros and sigma = 2 omega", code="USAGE")
    e = build_E(spec)
    # H(E) element E f has samples E(x_n) f(x_n) and is the sinc series itself
    shifted = [(x, complex(eval_E(e, x)) * v) for x, v in samples]
    return shannon_reference(omega, shifted, xs) / eval_E(e, xs)


def _cmd_reconstruct(cfg, spec, out):
    if cfg.samples_path is None:
        raise ValidationError("reconstruct needs --samples PATH", code="USAGE")
    tol = tolerances.resolve(cfg.tolerance_overrides)
    seq = _sequence(cfg, spec)
    samples = serialize.read_samples(cfg.samples_path)
    xs = _grid(cfg)
    recon = reconstruct(seq, samples, xs, align_tol=tol["alignment"])
    if cfg.omega is not None:
        truth = _shannon_truth(cfg, spec, samples, xs)
        source = "shannon"
    else:
        values = np.array([v for _, v in samples])
        truth = evaluate(seq.element(values / seq.norms_sq), xs)
        source = "span_element"
    err = np.abs(recon - truth)
    serialize.write_csv(out, ["x", "re_f", "im_f", "re_recon", "im_recon", "abs_err"],
                        zip(xs, truth.real, truth.imag, recon.real, recon.imag, err))
    at_nodes = reconstruct(seq, samples, seq.lambdas, align_tol=tol["alignment"])
    node_res = np.abs(at_nodes - np.array([v for _, v in samples]))
    return {"reference": source, "n_samples": len(samples), "max_abs_err": float(err.max()),
            "max_node_residual": float(node_res.max())}


def _cmd_build_e(cfg, spec, out):
    e = build_E(spec)
    out.write(serialize.dumps(serialize.debranges_to_dict(e)))
    res = ratio_residual(e, spec, _grid(cfg))
    return {"max_ratio_residual": float(np.max(res)), "grid_points": cfg.grid_points, "window": list(cfg.window)}


def _cmd_check(cfg, spec, out):
    e = serialize.parse_debranges(cfg.debranges_path) if cfg.debranges_path else None
    report = run_checks(spec, cfg.window, cfg.grid_points, cfg.tolerance_overrides, debranges=e)
    out.write(serialize.dumps(report))
    return report


_HANDLERS = {
    "info": _cmd_info,
    "eval": _cmd_eval,
    "kernel": _cmd_kernel,
    "phase": _cmd_phase,
    "spectrum": _cmd_spectrum,
    "sample": _cmd_sample,
    "reconstruct": _cmd_reconstruct,
    "build-e": _cmd_build_e,
    "check": _cmd_check,
}


def run(cfg):
    """Execute one command; returns the process exit code."""
    try:
        spec = serialize.parse_spec(cfg.spec_path)
        with _output(cfg.output_path) as out:
            result = _HANDLERS[cfg.command](cfg, spec, out)
    except ModelSpaceError as exc:
        sys.stderr.write(serialize.dumps({"error": exc.code, "message": str(exc)}))
        return 2 if isinstance(exc, SpectralError) else 1
    if cfg.command == "check":
        return 0 if result["passed"] else 2
    if result is not None:
        sys.stderr.write(serialize.dumps(result))
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(serialize.dumps({"error": "USAGE", "message": message}))
        sys.exit(1)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--spec", required=True, metavar="PATH", help="inner function spec (JSON)")
    common.add_argument("--beta", type=float, default=None, help="extension label beta (radians)")
    common.add_argument("--alpha", type=float, default=None, help="extension label alpha; converted to beta")
    common.add_argument("--window", type=float, nargs=2, metavar=("LO", "HI"), default=None)
    common.add_argument("--grid", type=int, default=None, metavar="N", help="grid points")
    common.add_argument("--out", metavar="PATH", default=None)
    common.add_argument("--samples", metavar="PATH", default=None, help="samples CSV (lambda,re,im)")
    common.add_argument("--omega", type=float, default=None, help="Shannon reference bandwidth")
    common.add_argument("--node", type=float, nargs=2, metavar=("RE", "IM"), default=(0.0, 0.0),
                        help="kernel node for the kernel command")
    common.add_argument("--debranges", metavar="PATH", default=None, help="build-e output to re-check")
    common.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE")

    parser = _Parser(prog="modelspace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def config_from_args(args):
    overrides = dict(tolerances.parse_override(t) for t in args.tol)
    tolerances.resolve(overrides)
    if args.alpha is not None and args.beta is not None:
        raise ValidationError("give either --beta or --alpha, not both", code="USAGE")
    beta = args.beta if args.beta is not None else 0.0
    if args.alpha is not None:
        beta = beta_of_alpha(serialize.parse_spec(args.spec), args.alpha)
    default_window = (-20.0, 20.0) if args.command == "check" else (-10.0, 10.0)
    default_grid = 2001 if args.command == "check" else 201
    return RunConfig(
        spec_path=args.spec,
        command=args.command,
        window=tuple(args.window) if args.window else default_window,
        beta=beta,
        grid_points=args.grid if args.grid is not None else default_grid,
        output_path=args.out,
        tolerance_overrides=overrides,
        samples_path=args.samples,
        omega=args.omega,
        node=complex(*args.node),
        debranges_path=args.debranges,
    )


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ModelSpaceError as exc:
        sys.stderr.write(serialize.dumps({"error": exc.code, "message": str(exc)}))
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
