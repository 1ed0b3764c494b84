"""
Coherent states, rotated cat states and their displaced-number-state expansions.

A rotated cat ("Q-cat") of amplitude ``A > 0`` is::

    |SCS_Q(A)> = N_Q(A) (cos Q |A> + sin Q |-A>),
    N_Q(A) = 1 / sqrt(1 + 2 cos Q sin Q exp(-2 A^2))

so ``Q = +pi/4`` is the even cat and ``Q = -pi/4`` the odd cat.  The target
family of the generation circuits is ``D(disp) S(squeeze) |SCS_Q(A)>``.

Any state can also be written over displaced number states ``|l, c> = D(c)|l>``
sharing one centre ``c``; :func:`alpha_rep` gives that series for a cat and
:func:`vacuum_rep` for the vacuum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import (
    StateVector,
    TruncationError,
    displacement_op,
    normalize,
    squeeze_op,
)

__all__ = [
    "DegenerateCatError",
    "TargetCat",
    "AlphaRepSeries",
    "HalfFinished",
    "cos_sin",
    "coherent",
    "coherent_amps",
    "scs_normalization",
    "scs",
    "dsscs",
    "alpha_rep",
    "vacuum_rep",
    "half_finished_state",
    "EVEN",
    "ODD",
]

EVEN = math.pi / 4
ODD = -math.pi / 4

DEGENERATE_RADICAND = 1e-12
DEGENERATE_ALPHA = 1e-6


class DegenerateCatError(ValueError):
    """The requested cat has (numerically) vanishing norm, e.g. an odd cat at A -> 0."""


def cos_sin(q: float) -> tuple[float, float]:
    """
    ``(cos q, sin q)`` with the two magnitudes made exactly equal at odd multiples of pi/4.

    ``np.cos(pi/4)`` and ``np.sin(pi/4)`` differ in the last bit, which would
    leave ~1e-17 residue in amplitudes that vanish by parity.
    """
    c, s = math.cos(q), math.sin(q)
    if abs(abs(c) - abs(s)) < 4e-16:
        m = math.sqrt(0.5)
        c, s = math.copysign(m, c), math.copysign(m, s)
    return c, s


def _is_odd_cat(q: float) -> bool:
    return abs(math.remainder(q + math.pi / 4, math.pi)) < 1e-12


@dataclass(frozen=True)
class TargetCat:
    """
    Displaced squeezed cat ``D(disp) S(squeeze) |SCS_q(alpha_scs)>``.

    Parameters
    ----------
    alpha_scs : float
        Cat amplitude, strictly positive.
    q : float
        Rotation angle in radians (``+pi/4`` even, ``-pi/4`` odd).
    disp : complex
        Final displacement.
    squeeze : float
        Squeeze parameter ``r`` of ``S(r) = exp((r/2)(a^+^2 - a^2))``.
    """

    alpha_scs: float
    q: float = EVEN
    disp: complex = 0j
    squeeze: float = 0.0

    def __post_init__(self):
        if not self.alpha_scs > 0:
            raise ValueError(f"alpha_scs must be > 0, got {self.alpha_scs}")
        if _is_odd_cat(self.q) and self.alpha_scs <= DEGENERATE_ALPHA:
            raise DegenerateCatError(f"odd cat is degenerate at alpha_scs={self.alpha_scs}")
        object.__setattr__(self, "disp", complex(self.disp))
        object.__setattr__(self, "squeeze", float(self.squeeze))


@dataclass(frozen=True)
class AlphaRepSeries:
    """
    Expansion ``prefactor * sum_l coeffs[l] |l, center>`` over displaced number states.
    """

    center: complex
    coeffs: np.ndarray
    prefactor: complex = 1.0

    @property
    def terms(self) -> int:
        return len(self.coeffs)

    def weights(self) -> np.ndarray:
        """Probabilities ``|prefactor * coeffs[l]|^2``."""
        return np.abs(self.prefactor * np.asarray(self.coeffs)) ** 2

    def missing_mass(self) -> float:
        return float(1.0 - self.weights().sum())

    def to_state(self, dim: int) -> StateVector:
        """Resum the series in the Fock basis (not renormalized)."""
        if self.terms > dim:
            raise TruncationError(f"{self.terms} terms do not fit into dim={dim}")
        v = np.zeros(dim, dtype=complex)
        v[: self.terms] = self.prefactor * np.asarray(self.coeffs)
        return StateVector(displacement_op(self.center, dim) @ v)


@dataclass(frozen=True)
class HalfFinished:
    """
    Low-lying Fock superposition ``|0> + a1|1> (+ a2|2>)`` (normalized on use).

    ``order`` is the number of photon additions that produce it (1 or 2).
    """

    order: int
    a1: complex
    a2: complex | None = None

    def __post_init__(self):
        if self.order not in (1, 2):
            raise ValueError(f"order must be 1 or 2, got {self.order}")
        object.__setattr__(self, "a1", complex(self.a1))
        if self.order == 1:
            object.__setattr__(self, "a2", None)
        else:
            object.__setattr__(self, "a2", complex(0 if self.a2 is None else self.a2))

    def coefficients(self) -> np.ndarray:
        """Normalized ``(c0, c1[, c2])``; ``a1 = inf`` (order 1) is the pure ``|1>`` limit."""
        if self.order == 1 and math.isinf(abs(self.a1)):
            return np.array([0.0, 1.0], dtype=complex)
        c = [1.0, self.a1] if self.order == 1 else [1.0, self.a1, self.a2]
        c = np.array(c, dtype=complex)
        return c / np.linalg.norm(c)


def coherent_amps(alpha: complex, dim: int) -> np.ndarray:
    """Closed-form amplitudes ``exp(-|a|^2/2) a^n / sqrt(n!)``, no truncation check."""
    alpha = complex(alpha)
    steps = np.empty(dim, dtype=complex)
    steps[0] = math.exp(-abs(alpha) ** 2 / 2)
    steps[1:] = alpha / np.sqrt(np.arange(1, dim))
    return np.cumprod(steps)


def coherent(alpha: complex, dim: int) -> StateVector:
    """Normalized coherent state ``|alpha>``; requires ``|alpha|^2 <= dim/4``."""
    if abs(alpha) ** 2 > dim / 4:
        raise TruncationError(f"|alpha|^2={abs(alpha) ** 2:.3g} exceeds dim/4={dim / 4:g}")
    return StateVector(coherent_amps(alpha, dim))


def scs_normalization(q: float, alpha_scs: float) -> float:
    c, s = cos_sin(q)
    rad = 1.0 + 2.0 * c * s * math.exp(-2.0 * abs(alpha_scs) ** 2)
    if rad <= DEGENERATE_RADICAND:
        raise DegenerateCatError(f"cat norm vanishes (radicand {rad:.3g}) at q={q}, alpha_scs={alpha_scs}")
    return 1.0 / math.sqrt(rad)


def scs(q: float, alpha_scs: float, dim: int) -> StateVector:
    """Rotated cat ``N_Q (cos Q |A> + sin Q |-A>)``."""
    nq = scs_normalization(q, alpha_scs)
    c, s = cos_sin(q)
    v = nq * (c * coherent(alpha_scs, dim).amps + s * coherent(-alpha_scs, dim).amps)
    return StateVector(v)


def dsscs(target: TargetCat, dim: int) -> StateVector:
    """``D(disp) S(squeeze) |SCS_q>``: squeeze first, then displace."""
    if abs(target.disp) ** 2 > dim / 4:
        raise TruncationError(f"displacement |{target.disp}| too large for dim={dim}")
    if (target.alpha_scs * math.exp(abs(target.squeeze))) ** 2 > dim / 4:
        raise TruncationError(f"squeezed cat extent too large for dim={dim}")
    v = scs(target.q, target.alpha_scs, dim).amps
    if target.squeeze != 0:
        v = squeeze_op(target.squeeze, dim) @ v
    if target.disp != 0:
        v = displacement_op(target.disp, dim) @ v
    if target.squeeze == 0 and target.disp == 0:
        return StateVector(v)
    return StateVector(normalize(v).amps)


def _power_series(z: complex, terms: int) -> np.ndarray:
    """``z^l / sqrt(l!)`` for ``l < terms``."""
    steps = np.empty(terms, dtype=complex)
    steps[0] = 1.0
    steps[1:] = complex(z) / np.sqrt(np.arange(1, terms))
    return np.cumprod(steps)


MAX_TERMS = 200
DEFAULT_TERMS = 40
TAIL_TOL = 1e-10


def alpha_rep(q: float, alpha_scs: float, center: complex, terms: int | None = None) -> AlphaRepSeries:
    """
    Cat expansion over displaced number states ``|l, center>``.

    The coefficient of ``|l, center>`` is::

        cos Q exp(A c^*) (A - c)^l / sqrt(l!)  +  sin Q exp(-A c^*) (-A - c)^l / sqrt(l!)

    with overall prefactor ``N_Q exp(-(A^2 + |c|^2)/2)``.  With ``terms=None``
    the series starts at 40 terms and grows (up to 200) until the missing
    probability falls below 1e-10.
    """
    nq = scs_normalization(q, alpha_scs)
    c, s = cos_sin(q)
    center = complex(center)
    amp = float(alpha_scs)
    pref = nq * math.exp(-(amp**2 + abs(center) ** 2) / 2)

    def build(n):
        plus = c * np.exp(amp * center.conjugate()) * _power_series(amp - center, n)
        minus = s * np.exp(-amp * center.conjugate()) * _power_series(-amp - center, n)
        return AlphaRepSeries(center, plus + minus, pref)

    if terms is not None:
        if terms < 1:
            raise ValueError("terms must be >= 1")
        return build(int(terms))
    n = DEFAULT_TERMS
    series = build(n)
    while series.missing_mass() > TAIL_TOL and n < MAX_TERMS:
        n = min(2 * n, MAX_TERMS)
        series = build(n)
    return series


def vacuum_rep(center: complex, terms: int = DEFAULT_TERMS) -> AlphaRepSeries:
    """Vacuum over ``|l, center>``: coefficients ``exp(-|c|^2/2) (-c)^l / sqrt(l!)``."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    center = complex(center)
    coeffs = math.exp(-abs(center) ** 2 / 2) * _power_series(-center, int(terms))
    return AlphaRepSeries(center, coeffs, 1.0)


def half_finished_state(h: HalfFinished, dim: int) -> StateVector:
    if dim < 3:
        raise ValueError("half-finished states need dim >= 3")
    v = np.zeros(dim, dtype=complex)
    c = h.coefficients()
    v[: c.size] = c
    return StateVector(v)
