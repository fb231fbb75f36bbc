"""Invariant suite run by ``modelspace check``.

Every assertion records its measured value and the named tolerance it used.
Randomised points come from a fixed seed, so reports are reproducible.
"""

import math

import numpy as np

from . import tolerances
from .debranges import build_E, log_eval_E, ratio_residual
from .density import angular_derivative_indicator, dense_defined_report, termwise_identity_residuals
from .errors import ModelSpaceError
from .inner import characteristic_eval, eval_inner
from .phase import PhaseFunction, alternation_check, coverage_check, normalize_angle, spectrum, tau_prime
from .sampling import build_sequence, parseval_residual, reconstruct
from .space import SpaceElement, evaluate, inner_product, kernel_norm_sq

SEED = 20240917


class _Suite:
    def __init__(self, tol):
        self.tol = tol
        self.results = []

    def record(self, name, measured, tol_name, passed=None, detail=None):
        limit = self.tol[tol_name] if tol_name else None
        if passed is None:
            passed = bool(measured < limit)
        entry = {"name": name, "passed": bool(passed), "measured": float(measured)}
        entry["tolerance_name"] = tol_name
        entry["tolerance"] = limit
        if detail:
            entry["detail"] = detail
        self.results.append(entry)

    def guard(self, name, tol_name, fn):
        try:
            fn()
        except ModelSpaceError as exc:
            self.results.append(
                {"name": name, "passed": False, "measured": None, "tolerance_name": tol_name,
                 "tolerance": self.tol.get(tol_name), "detail": f"{exc.code}: {exc}"}
            )


def _random_uhp(rng, n, scale):
    return rng.uniform(-scale, scale, n) + 1j * rng.uniform(0.05, scale, n)


def run_checks(spec, window=(-20.0, 20.0), grid_points=2001, overrides=None, debranges=None):
    """Run all invariants for ``spec``; returns a JSON-ready report dict."""
    tol = tolerances.resolve(overrides)
    suite = _Suite(tol)
    rng = np.random.default_rng(SEED)
    lo, hi = window
    xs = np.linspace(lo, hi, grid_points)
    pf = PhaseFunction(spec)
    scale = max(abs(lo), abs(hi))

    F = eval_inner(spec, xs)
    suite.record("unimodular_on_grid", np.max(np.abs(np.abs(F) - 1.0)), "unimodular")

    z = _random_uhp(rng, 100, scale)
    refl = np.abs(eval_inner(spec, z) * np.conj(eval_inner(spec, np.conj(z))) - 1.0)
    suite.record("schwarz_reflection", np.max(refl), "reflection")
    z = _random_uhp(rng, 1000, scale)
    suite.record("modulus_bound", max(0.0, np.max(np.abs(eval_inner(spec, z))) - 1.0), "modulus_bound",
                 passed=np.max(np.abs(eval_inner(spec, z))) <= 1.0 + tol["modulus_bound"])

    suite.record("characteristic_at_i", abs(characteristic_eval(spec, 1j)), "characteristic_at_i")
    suite.record("characteristic_unimodular",
                 np.max(np.abs(np.abs(characteristic_eval(spec, xs)) - 1.0)), "characteristic_unimodular")

    def reproducing():
        nodes = _random_uhp(rng, 3, 5.0)
        f = (SpaceElement.kernel(spec, nodes[0], 1.0 - 0.5j) + SpaceElement.conjugate_kernel(spec, nodes[1], 0.7)
             + SpaceElement.kernel(spec, float(nodes[2].real), 2.0))
        worst = 0.0
        for w in _random_uhp(rng, 10, 5.0):
            direct = evaluate(f, w)
            via_gram = inner_product(f, SpaceElement.kernel(spec, w))
            worst = max(worst, abs(direct - via_gram) / max(1.0, abs(direct)))
        suite.record("reproducing_property", worst, "reproducing")

    suite.guard("reproducing_property", "reproducing", reproducing)

    tp = tau_prime(spec, xs)
    suite.record("phase_identity", np.max(np.abs(tp - 2 * math.pi * kernel_norm_sq(spec, xs)) / tp), "phase_identity")
    suite.record("phase_positive", -np.min(tp), None, passed=bool(np.min(tp) > 0))
    h = 1e-5
    fd = (pf(xs + h) - pf(xs - h)) / (2 * h)
    suite.record("phase_finite_difference", np.max(np.abs(fd - tp)), "finite_difference")
    suite.record("phase_reproduces_F", np.max(np.abs(np.exp(1j * pf(xs)) - F)), "unimodular")

    # labels guaranteed to have eigenvalues inside the window
    x1 = lo + 0.3 * (hi - lo)
    b1 = normalize_angle(pf(x1))
    x2 = x1 + math.pi / tau_prime(spec, x1)
    if x2 >= hi:
        x2 = x1 - math.pi / tau_prime(spec, x1)
    b2 = normalize_angle(pf(min(max(x2, lo), hi)))

    def spec_check():
        rep = spectrum(pf, b1, window, residual_tol=tol["phase_residual"], check_tol=tol["spectrum_check"])
        err = np.max(np.abs(eval_inner(spec, rep.eigenvalues) - np.exp(1j * b1)))
        suite.record("spectrum_eigen_equation", err, "spectrum_check")
        gaps = np.diff(pf(rep.eigenvalues))
        suite.record("spectrum_phase_spacing", np.max(np.abs(gaps - 2 * math.pi)) if len(gaps) else 0.0, "coverage")

    suite.guard("spectrum_eigen_equation", "spectrum_check", spec_check)

    def alternation():
        ok = alternation_check(pf, b1, b2, window)
        suite.record("krein_alternation", 0.0 if ok else 1.0, None, passed=ok)

    suite.guard("krein_alternation", None, alternation)

    def coverage():
        for x in rng.uniform(lo, hi, 20):
            coverage_check(pf, x, tol=tol["coverage"])
        suite.record("coverage_exactly_once", 0.0, "coverage")

    suite.guard("coverage_exactly_once", "coverage", coverage)

    def sampling():
        seq = build_sequence(spec, b1, window, orthogonality_tol=tol["orthogonality"], phase=pf)
        G = seq.kernel_gram()
        off = np.max(np.abs(G - np.diag(np.diag(G)))) if len(seq) > 1 else 0.0
        suite.record("sampling_gram_diagonal", off, "orthogonality")
        picks = [0, len(seq) // 2] if len(seq) > 1 else [0]
        coeffs = np.zeros(len(seq), dtype=complex)
        coeffs[picks[0]] = 1.0
        coeffs[picks[-1]] += 2j
        f = seq.element(coeffs)
        suite.record("parseval_span", parseval_residual(f, seq), "parseval")
        samples = list(zip(seq.lambdas, evaluate(f, seq.lambdas)))
        grid = np.linspace(lo, hi, 101)
        err = np.max(np.abs(reconstruct(seq, samples, grid, align_tol=tol["alignment"]) - evaluate(f, grid)))
        suite.record("reconstruction_span", err, "reconstruction")

    suite.guard("sampling_gram_diagonal", "orthogonality", sampling)

    def de_branges():
        e = build_E(spec)
        suite.record("ratio_residual", np.max(ratio_residual(e, spec, xs)), "ratio")
        zz = _random_uhp(rng, 200, scale)
        ok = bool(np.all(log_eval_E(e, zz).real > log_eval_E(e, np.conj(zz)).real))
        suite.record("de_branges_inequality", 0.0 if ok else 1.0, None, passed=ok)
        on = ratio_residual(e.with_exponents(True), spec, xs)
        off = ratio_residual(e, spec, xs)
        suite.record("exponent_toggle", np.max(np.abs(on - off)), "exponent_toggle")
        if debranges is not None:
            suite.record("supplied_ratio_residual", np.max(ratio_residual(debranges, spec, xs)), "ratio")

    suite.guard("ratio_residual", "ratio", de_branges)

    report = dense_defined_report(spec)
    ind = angular_derivative_indicator(spec, 1.0)
    consistent = ind.infinite == report.densely_defined
    suite.record("density_consistency", 0.0 if consistent else 1.0, None, passed=consistent)
    tw = termwise_identity_residuals(spec)
    suite.record("termwise_identity", float(tw.max()) if tw.size else 0.0, "termwise")

    passed = all(r["passed"] for r in suite.results)
    return {"label": spec.label, "window": [float(lo), float(hi)], "grid_points": int(grid_points),
            "passed": passed, "checks": suite.results}
