"""
Photon-addition / displacement chains and the displacing Hadamard gate.

A chain starts from a coherent seed ``|alpha_in>`` and applies ideal photon
additions (``a^+``) and displacements ``D(beta)`` left to right; the result
is normalized once at the end and the discarded norm is kept as
``StateVector.scale`` (proportional to the heralding amplitude).

With two additions and one intermediate displacement ``alpha_1`` the output
is, up to a global phase, ``D(alpha_in + alpha_1)`` applied to::

    u v |0> + (u + v) |1> + sqrt(2) |2>,   u = alpha_in^*,  v = alpha_1^* + alpha_in^*

which fixes the half-finished coefficients ``a1 = (u + v)/(u v)`` and
``a2 = sqrt(2)/(u v)``.  :func:`invert_odd_params` solves the quadratic
``z^2 - (sqrt(2) a1/a2) z + sqrt(2)/a2 = 0`` for ``u`` to go back.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .fock import (
    DimensionError,
    StateVector,
    TruncationError,
    check_density,
    create_op,
    displacement_op,
    mix,
    normalize,
    outer,
)
from .states import EVEN, ODD, HalfFinished, TargetCat, coherent, dsscs

__all__ = [
    "DegenerateCircuitError",
    "AddPhoton",
    "Displace",
    "CircuitSpec",
    "NoiseModel",
    "HadamardParams",
    "run_circuit",
    "coeffs_from_seed",
    "coeffs_from_circuit",
    "invert_even_params",
    "invert_odd_params",
    "hadamard_gate",
    "hadamard_targets",
    "hadamard_fidelity",
    "preprocess_front_end",
    "absorber_for",
    "noisy_output",
]


class DegenerateCircuitError(ValueError):
    """Circuit parameters for which the half-finished coefficients are undefined."""


@dataclass(frozen=True)
class AddPhoton:
    """Ideal photon addition ``a^+``."""


@dataclass(frozen=True)
class Displace:
    beta: complex

    def __post_init__(self):
        beta = complex(self.beta)
        if not (math.isfinite(beta.real) and math.isfinite(beta.imag)):
            raise ValueError("displacement amplitude must be finite")
        object.__setattr__(self, "beta", beta)


@dataclass(frozen=True)
class CircuitSpec:
    """
    Seed coherent amplitude, ordered chain of steps and truncation dimension.

    The JSON form is ``{"seed": [re, im], "dim": n, "steps": [{"add": true} |
    {"displace": [re, im]}]}``.
    """

    seed: complex
    steps: tuple = ()
    dim: int = 100

    def __post_init__(self):
        object.__setattr__(self, "seed", complex(self.seed))
        object.__setattr__(self, "steps", tuple(self.steps))
        for s in self.steps:
            if not isinstance(s, (AddPhoton, Displace)):
                raise TypeError(f"unknown circuit step {s!r}")

    def centers(self) -> list[complex]:
        """Coherent centre of the state after the seed and after each displacement."""
        out = [self.seed]
        for s in self.steps:
            if isinstance(s, Displace):
                out.append(out[-1] + s.beta)
        return out

    def check_truncation(self):
        """Every intermediate centre must satisfy ``|c|^2 + photons added <= dim/4``."""
        n_add = sum(isinstance(s, AddPhoton) for s in self.steps)
        worst = max(abs(c) for c in self.centers())
        if worst**2 + n_add > self.dim / 4:
            raise TruncationError(
                f"circuit reaches |centre|={worst:.4g} with {n_add} additions; too large for dim={self.dim}"
            )

    def to_dict(self) -> dict:
        steps = []
        for s in self.steps:
            if isinstance(s, AddPhoton):
                steps.append({"add": True})
            else:
                steps.append({"displace": [s.beta.real, s.beta.imag]})
        return {"seed": [self.seed.real, self.seed.imag], "dim": self.dim, "steps": steps}

    @classmethod
    def from_dict(cls, doc: dict) -> "CircuitSpec":
        try:
            seed = complex(*doc["seed"])
            dim = int(doc.get("dim", 100))
            steps = []
            for item in doc.get("steps", []):
                if item.get("add") is True and "displace" not in item:
                    steps.append(AddPhoton())
                elif "displace" in item and "add" not in item:
                    steps.append(Displace(complex(*item["displace"])))
                else:
                    raise ValueError(f"bad step {item!r}")
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"malformed circuit document: {exc}") from exc
        return cls(seed, tuple(steps), dim)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "CircuitSpec":
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> "CircuitSpec":
        return cls.from_json(Path(path).read_text())

    @classmethod
    def two_addition(cls, alpha_in: complex, alpha_1: complex, dim: int = 100) -> "CircuitSpec":
        return cls(alpha_in, (AddPhoton(), Displace(alpha_1), AddPhoton()), dim)


def run_circuit(spec: CircuitSpec) -> StateVector:
    spec.check_truncation()
    v = coherent(spec.seed, spec.dim).amps
    adag = None
    for step in spec.steps:
        if isinstance(step, AddPhoton):
            if adag is None:
                adag = create_op(spec.dim)
            v = adag @ v
        else:
            v = displacement_op(step.beta, spec.dim) @ v
    return normalize(v)


def coeffs_from_seed(alpha_in: complex) -> HalfFinished:
    """Single addition: ``a1 = 1/alpha_in^*`` (``alpha_in = 0`` gives the pure ``|1>`` limit)."""
    if alpha_in == 0:
        raise DegenerateCircuitError("alpha_in = 0 is the pure single-photon limit (a1 -> infinity)")
    return HalfFinished(1, 1 / complex(alpha_in).conjugate())


def coeffs_from_circuit(alpha_in: complex, alpha_1: complex) -> HalfFinished:
    u = complex(alpha_in).conjugate()
    v = complex(alpha_1).conjugate() + u
    if u == 0 or v == 0:
        raise DegenerateCircuitError("alpha_in and alpha_in + alpha_1 must both be nonzero")
    uv = u * v
    return HalfFinished(2, (u + v) / uv, math.sqrt(2) / uv)


def invert_even_params(a2: float, sign: int = 1) -> tuple[complex, complex, complex]:
    """
    Circuit amplitudes for the even-cat structure ``a1 = 0``, ``a2 > 0``.

    Returns ``(alpha_in, alpha_1, alpha_plus)`` with ``alpha_in = sign * i sqrt(sqrt(2)/a2)``,
    ``alpha_1 = -2 alpha_in`` and ``alpha_plus = -alpha_in``.
    """
    if not a2 > 0:
        raise ValueError(f"a2 must be positive, got {a2}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    alpha_in = sign * 1j * math.sqrt(math.sqrt(2) / a2)
    return alpha_in, -2 * alpha_in, -alpha_in


def invert_odd_params(a1: complex, a2: complex, branch: int = 1) -> tuple[complex, complex]:
    """
    Roots of the half-finished coefficient map.

    ``alpha_in^* = a1/(sqrt(2) a2) + branch * sqrt(D)/2`` and
    ``alpha_1^* = -branch * sqrt(D)`` with ``D = 2 (a1/a2)^2 - 4 sqrt(2)/a2``.
    Works for any ``(a1, a2)``; the even structure is the special case ``a1 = 0``.
    """
    a1, a2 = complex(a1), complex(a2)
    if a2 == 0:
        raise ValueError("a2 must be nonzero")
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    disc = 2 * (a1 / a2) ** 2 - 4 * math.sqrt(2) / a2
    root = cmath.sqrt(disc)
    u = a1 / (math.sqrt(2) * a2) + branch * root / 2
    alpha_1_conj = -branch * root
    return u.conjugate(), alpha_1_conj.conjugate()


@dataclass(frozen=True)
class NoiseModel:
    """Dark-count mixture: with probability ``dark_prob`` the fallback state is registered."""

    dark_prob: float
    fallback: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not 0.0 <= self.dark_prob <= 1.0:
            raise ValueError(f"dark_prob must lie in [0, 1], got {self.dark_prob}")
        check_density(self.fallback)


def noisy_output(ideal: StateVector, noise: NoiseModel) -> np.ndarray:
    """``(1 - P) |ideal><ideal| + P * fallback``."""
    if np.shape(noise.fallback) != (ideal.dim, ideal.dim):
        raise DimensionError(f"fallback {np.shape(noise.fallback)} does not match dim {ideal.dim}")
    p = noise.dark_prob
    return mix([(1.0 - p, outer(ideal)), (p, np.asarray(noise.fallback))])


def preprocess_front_end(alpha_scs_in: float, gamma: float) -> complex:
    """Phase shift by pi/2 followed by an absorber: ``|A> -> |i A exp(-gamma)>``."""
    if gamma < 0:
        raise ValueError("absorption gamma must be >= 0")
    return 1j * alpha_scs_in * math.exp(-gamma)


def absorber_for(alpha_scs_in: float, alpha_hg: complex) -> float:
    """Absorption ``gamma`` that maps amplitude ``alpha_scs_in`` onto ``|alpha_hg|``."""
    return math.log(alpha_scs_in / abs(alpha_hg))


@dataclass(frozen=True)
class HadamardParams:
    """
    Settings of the displacing Hadamard gate.

    The two logical inputs ``|+-alpha_hg>`` are displaced by ``beta`` into the
    seeds ``alpha_in_plus`` / ``alpha_in_minus``; both then pass through the
    same ``[a^+, D(alpha_1), a^+]`` chain.  The even output approximates
    ``D(alpha_plus) S(r) |even cat>``, the odd one ``D(alpha_minus) S(r) |odd cat>``.
    """

    alpha_scs: float
    r: float
    alpha_1: complex
    alpha_hg: complex
    beta_plus: complex
    beta_minus: complex
    alpha_in_plus: complex
    alpha_in_minus: complex
    alpha_plus: complex
    alpha_minus: complex
    gamma_absorb: float
    branch: str = "a"

    def __post_init__(self):
        for name in ("alpha_1", "alpha_hg", "beta_plus", "beta_minus", "alpha_in_plus",
                     "alpha_in_minus", "alpha_plus", "alpha_minus"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.branch not in ("a", "b"):
            raise ValueError("branch must be 'a' or 'b'")
        if abs(self.alpha_in_plus - (self.alpha_hg + self.beta_plus)) > 1e-9:
            raise ValueError("alpha_in_plus != alpha_hg + beta_plus")
        if abs(self.alpha_in_minus - (-self.alpha_hg + self.beta_minus)) > 1e-9:
            raise ValueError("alpha_in_minus != -alpha_hg + beta_minus")
        if self.gamma_absorb < 0:
            raise ValueError("gamma_absorb must be >= 0")
        if abs(abs(self.alpha_hg) - self.alpha_scs * math.exp(-self.gamma_absorb)) > 1e-9:
            raise ValueError("|alpha_hg| != alpha_scs * exp(-gamma_absorb)")

    @classmethod
    def from_seeds(cls, alpha_scs, r, alpha_1, alpha_in_plus, alpha_in_minus,
                   alpha_plus, alpha_minus, branch="a") -> "HadamardParams":
        """
        Derive the encoding amplitude and the displacement from the two seeds.

        One ``beta`` serves both inputs when ``alpha_hg = (in_plus - in_minus)/2``
        and ``beta = (in_plus + in_minus)/2``.
        """
        alpha_in_plus, alpha_in_minus = complex(alpha_in_plus), complex(alpha_in_minus)
        alpha_hg = (alpha_in_plus - alpha_in_minus) / 2
        beta = (alpha_in_plus + alpha_in_minus) / 2
        gamma = absorber_for(alpha_scs, alpha_hg) if alpha_hg != 0 else math.inf
        return cls(alpha_scs, r, alpha_1, alpha_hg, beta, beta, alpha_in_plus, alpha_in_minus,
                   alpha_plus, alpha_minus, gamma, branch)

    @property
    def beta(self) -> complex:
        """The common displacement (meaningful when ``single_beta_defect`` is ~0)."""
        return (self.beta_plus + self.beta_minus) / 2

    @property
    def single_beta_defect(self) -> float:
        return abs(self.beta_plus - self.beta_minus)


def hadamard_targets(params: HadamardParams) -> tuple[TargetCat, TargetCat]:
    even = TargetCat(params.alpha_scs, EVEN, params.alpha_plus, params.r)
    odd = TargetCat(params.alpha_scs, ODD, params.alpha_minus, params.r)
    return even, odd


def hadamard_gate(input_sign: int, params: HadamardParams, dim: int = 100) -> StateVector:
    """Output of the gate for the logical input ``|input_sign * alpha_hg>``."""
    if input_sign not in (1, -1):
        raise ValueError("input_sign must be +1 or -1")
    beta = params.beta_plus if input_sign == 1 else params.beta_minus
    seed = input_sign * params.alpha_hg + beta
    return run_circuit(CircuitSpec.two_addition(seed, params.alpha_1, dim))


def hadamard_fidelity(input_sign: int, params: HadamardParams, dim: int = 100) -> float:
    """Squared overlap of the gate output with its intended displaced squeezed cat."""
    out = hadamard_gate(input_sign, params, dim)
    target = hadamard_targets(params)[0 if input_sign == 1 else 1]
    return float(abs(np.vdot(dsscs(target, dim).amps, out.amps)) ** 2)
