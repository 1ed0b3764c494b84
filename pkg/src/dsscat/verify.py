"""
Self-check suite: operator identities, representation identities, circuit
coefficient formulas, parameter inversions and closed-form Wigner functions.

Every check returns a residual that is compared with a fixed tolerance.  A
check that raises (typically a truncation error at a too small ``dim``)
counts as failed and records the exception text.
"""

from __future__ import annotations

import json
import math
import time
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from . import circuit, fock, optimizer, states, wigner
from .states import EVEN, ODD

__all__ = ["Check", "VerifyReport", "run_checks", "CHECKS"]


@dataclass
class Check:
    name: str
    tol: float
    residual: float | None = None
    passed: bool = False
    error: str | None = None
    seconds: float = 0.0


@dataclass
class VerifyReport:
    dim: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list:
        return [c.name for c in self.checks if not c.passed]

    def to_json(self) -> str:
        return json.dumps({"dim": self.dim, "passed": self.passed, "checks": [asdict(c) for c in self.checks]}, indent=1)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            detail = f"residual={c.residual:.3e}" if c.residual is not None else f"error: {c.error}"
            out.append(f"{status} {c.name:<32} {detail} (tol {c.tol:.0e})")
        return out


def _test_vectors(dim, support):
    rng = np.random.default_rng(7)
    vs = []
    for n in (0, 1, 2, 5):
        if n < support:
            vs.append(fock.basis(n, dim).amps)
    v = np.zeros(dim, dtype=complex)
    v[:support] = rng.normal(size=support) + 1j * rng.normal(size=support)
    vs.append(v / np.linalg.norm(v))
    return vs


def _aligned_distance(u, w):
    """``min_phi || u - e^{i phi} w ||``."""
    ov = np.vdot(w, u)
    ph = ov / abs(ov) if abs(ov) > 0 else 1.0
    return float(np.linalg.norm(u - ph * w))


def check_displaced_creation(dim):
    alpha = 0.7 + 0.3j
    d = fock.displacement_op(alpha, dim)
    ad = fock.create_op(dim)
    lhs = d.conj().T @ ad @ d
    rhs = ad + np.conj(alpha) * np.eye(dim)
    # compare on vectors supported below dim/2 and read only the safe half
    k = dim // 2
    return max(float(np.max(np.abs((lhs @ v - rhs @ v)[:k]))) for v in _test_vectors(dim, max(1, int(0.4 * dim))))


def check_bch_composition(dim):
    a, b = 0.6 - 0.4j, -0.3 + 0.8j
    lhs = fock.displacement_op(a, dim) @ fock.displacement_op(b, dim)
    rhs = np.exp(1j * (a * np.conj(b)).imag) * fock.displacement_op(a + b, dim)
    k = dim // 2
    return float(np.max(np.abs((lhs - rhs)[:k, :k])))


def check_squeeze_inverse(dim):
    r = -0.4
    m = fock.squeeze_op(r, dim) @ fock.squeeze_op(-r, dim)
    k = dim // 2
    return float(np.max(np.abs(m[:k, :k] - np.eye(k))))


def check_unitarity_block(dim):
    return max(fock.safe_block_defect(fock.displacement_op(1.5j, dim)),
               fock.safe_block_defect(fock.squeeze_op(-0.52, dim)))


def check_displacement_column(dim):
    alpha = 1.1 - 0.9j
    col = fock.displacement_op(alpha, dim)[:, 0]
    ref = states.coherent_amps(alpha, dim)
    k = dim // 2
    return float(np.max(np.abs(col[:k] - ref[:k])))


def check_gamma_transform(dim):
    alpha, beta, r = 1.3j, 0.4j, -0.3
    g = optimizer.gamma_transform(beta, alpha, r)
    s = fock.squeeze_op(r, dim)
    lhs_op = s.conj().T @ fock.displacement_op(alpha, dim).conj().T @ fock.displacement_op(beta, dim)
    rhs_op = fock.displacement_op(g, dim) @ fock.squeeze_op(-r, dim)
    worst = 0.0
    for v in _test_vectors(dim, 4):
        worst = max(worst, _aligned_distance(lhs_op @ v, rhs_op @ v))
    return worst


def check_fidelity_routes(dim):
    worst = 0.0
    for prob in (
        optimizer.FidelityProblem(1, ODD, 0.8, math.inf, None, 0j, -0.207344, dim),
        optimizer.FidelityProblem(1, EVEN, 1.0, 0.8j, None, 0.5j, -0.445, dim),
        optimizer.FidelityProblem(2, EVEN, 1.0, 0j, math.sqrt(2) / 1.5904**2, 0.3 - 0.2j, -0.179612, dim),
        optimizer.FidelityProblem(2, ODD, 1.3, 0.4 + 0.1j, -0.7j, 0.2j, -0.368812, dim),
    ):
        worst = max(worst, abs(optimizer.fidelity_sq(prob) - optimizer.fidelity_sq_direct(prob, beta=0.5j)))
    return worst


def check_vacuum_rep(dim):
    worst = 0.0
    for c in (1.5, 2j, -1.2 + 1.4j):
        v = states.vacuum_rep(c, 40).to_state(dim).amps
        worst = max(worst, float(np.linalg.norm(v - fock.basis(0, dim).amps)))
    return worst


def check_alpha_rep_reconstruction(dim):
    series = states.alpha_rep(EVEN, 1.0, 0.5j, 40)
    return float(np.linalg.norm(series.to_state(dim).amps - states.scs(EVEN, 1.0, dim).amps))


def check_alpha_rep_centers(dim):
    d = dim + 20
    worst = 0.0
    for q in (EVEN, ODD):
        ref = states.alpha_rep(q, 1.7, 0j, 50).to_state(d).amps
        for c in (2.0, -1.5j, 1.2 + 1.2j):
            v = states.alpha_rep(q, 1.7, c, 50).to_state(d).amps
            worst = max(worst, float(np.max(np.abs(v - ref))))
    return worst


def check_one_addition(dim):
    ain = 1.2464j
    out = circuit.run_circuit(circuit.CircuitSpec(ain, [circuit.AddPhoton()], dim))
    ref = fock.displacement_op(ain, dim) @ states.half_finished_state(circuit.coeffs_from_seed(ain), dim).amps
    return 1.0 - abs(np.vdot(ref, out.amps))


def check_two_addition(dim):
    worst = 0.0
    for ain, a1 in ((1.5904j, -3.1808j), (0.243421j, -4.09883j), (0.3 + 0.2j, -1.1 + 0.5j)):
        out = circuit.run_circuit(circuit.CircuitSpec.two_addition(ain, a1, dim))
        h = circuit.coeffs_from_circuit(ain, a1)
        ref = fock.displacement_op(ain + a1, dim) @ states.half_finished_state(h, dim).amps
        worst = max(worst, 1.0 - abs(np.vdot(ref, out.amps)))
    return worst


def check_even_inversion(dim):
    worst = 0.0
    for mag in (1.5904, 1.25598, 1.02351):
        for sign in (1, -1):
            a2 = math.sqrt(2) / mag**2
            ain, a1, _ = circuit.invert_even_params(a2, sign)
            h = circuit.coeffs_from_circuit(ain, a1)
            worst = max(worst, abs(h.a1), abs(h.a2 - a2), abs(abs(ain) - mag))
    return worst


def check_odd_inversion(dim):
    worst = 0.0
    for ain, a1 in ((0.243421j, -4.09883j), (-3.85488j, 4.09883j), (0.4 - 0.1j, 1.3 + 0.7j)):
        h = circuit.coeffs_from_circuit(ain, a1)
        roots = [circuit.invert_odd_params(h.a1, h.a2, b) for b in (1, -1)]
        worst = max(worst, min(abs(r[0] - ain) + abs(r[1] - a1) for r in roots))
        for r in roots:
            h2 = circuit.coeffs_from_circuit(*r)
            worst = max(worst, abs(h2.a1 - h.a1), abs(h2.a2 - h.a2))
    return worst


def check_parity(dim):
    worst = 0.0
    for q, start in ((EVEN, 1), (ODD, 0)):
        worst = max(worst, float(np.max(np.abs(states.scs(q, 1.3, dim).amps[start::2]))))
        worst = max(worst, float(np.max(np.abs(states.alpha_rep(q, 1.3, 0j, 40).coeffs[start::2]))))
    s = fock.squeeze_op(-0.4, dim)
    worst = max(worst, float(np.max(np.abs(s[1::2, 0::2]))), float(np.max(np.abs(s[0::2, 1::2]))))
    return worst


def _grid():
    xs = np.linspace(-6, 6, 31)
    return np.meshgrid(xs, xs)


def check_wigner_cats(dim):
    x, p = _grid()
    worst = 0.0
    for q in (EVEN, ODD):
        num = wigner.w_numeric(states.scs(q, 1.0, dim), x, p)
        worst = max(worst, float(np.max(np.abs(num - wigner.w_scs(q, 1.0, x, p)))))
    return worst


def check_wigner_dsscs(dim):
    x, p = _grid()
    worst = 0.0
    for t in (states.TargetCat(1.4, EVEN, -1.32164j, -0.40712), states.TargetCat(1.4, ODD, -2.64334j, -0.40712)):
        num = wigner.w_numeric(states.dsscs(t, dim), x, p)
        worst = max(worst, float(np.max(np.abs(num - wigner.w_dsscs(t, x, p)))))
        worst = max(worst, float(np.max(np.abs(wigner.w_dsscs(t, x, p) - wigner.w_dsscs_substituted(t, x, p)))))
    return worst


def check_wigner_circuit(dim):
    x, p = _grid()
    worst = 0.0
    for ain, a1 in ((1.32164j, -2.64328j), (0.373226j, -2.64328j)):
        out = circuit.run_circuit(circuit.CircuitSpec.two_addition(ain, a1, dim))
        h = circuit.coeffs_from_circuit(ain, a1)
        worst = max(worst, float(np.max(np.abs(wigner.w_numeric(out, x, p) - wigner.w_halffinished(h, ain + a1, x, p)))))
    ain = 1.83218j
    out = circuit.run_circuit(circuit.CircuitSpec(ain, [circuit.AddPhoton()], dim))
    num = wigner.w_numeric(out, x, p)
    worst = max(worst, float(np.max(np.abs(num - wigner.w_halffinished(circuit.coeffs_from_seed(ain), ain, x, p)))))
    return worst


def check_wigner_mixture(dim):
    x, p = _grid()
    spacs = circuit.run_circuit(circuit.CircuitSpec(0.9j, [circuit.AddPhoton()], dim))
    vac = fock.outer(fock.basis(0, dim))
    rho = circuit.noisy_output(spacs, circuit.NoiseModel(0.1, vac))
    lhs = wigner.w_numeric(rho, x, p)
    rhs = 0.9 * wigner.w_numeric(spacs, x, p) + 0.1 * wigner.w_numeric(fock.basis(0, dim), x, p)
    return float(np.max(np.abs(lhs - rhs)))


CHECKS = [
    ("displaced_creation", 1e-8, check_displaced_creation),
    ("bch_composition", 1e-7, check_bch_composition),
    ("squeeze_inverse", 1e-7, check_squeeze_inverse),
    ("safe_block_unitarity", 1e-8, check_unitarity_block),
    ("displacement_column", 1e-9, check_displacement_column),
    ("gamma_transform", 1e-7, check_gamma_transform),
    ("fidelity_two_routes", 1e-9, check_fidelity_routes),
    ("vacuum_rep", 1e-10, check_vacuum_rep),
    ("alpha_rep_reconstruction", 1e-8, check_alpha_rep_reconstruction),
    ("alpha_rep_center_independence", 1e-7, check_alpha_rep_centers),
    ("one_addition_coefficients", 1e-9, check_one_addition),
    ("two_addition_coefficients", 1e-9, check_two_addition),
    ("even_inversion_roundtrip", 1e-6, check_even_inversion),
    ("odd_inversion_roundtrip", 1e-6, check_odd_inversion),
    ("parity_zeros", 1e-14, check_parity),
    ("wigner_cats", 1e-6, check_wigner_cats),
    ("wigner_dsscs", 1e-6, check_wigner_dsscs),
    ("wigner_circuit_outputs", 1e-6, check_wigner_circuit),
    ("wigner_mixture_linearity", 1e-12, check_wigner_mixture),
]


def run_checks(dim: int = 100, names=None) -> VerifyReport:
    """Run the suite (or the named subset) at truncation ``dim``."""
    report = VerifyReport(dim)
    for name, tol, fn in CHECKS:
        if names is not None and name not in names:
            continue
        chk = Check(name, tol)
        t0 = time.perf_counter()
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", fock.TruncationWarning)
                chk.residual = float(fn(dim))
            chk.passed = bool(np.isfinite(chk.residual) and chk.residual < tol)
        except Exception as exc:  # any failure to evaluate is a failed check
            chk.error = f"{type(exc).__name__}: {exc}"
        chk.seconds = round(time.perf_counter() - t0, 3)
        report.checks.append(chk)
    return report
