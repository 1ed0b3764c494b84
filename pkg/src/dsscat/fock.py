"""
Dense linear algebra on a truncated single-mode Fock space.

Operators are plain ``numpy`` arrays of shape ``(dim, dim)`` with the row
index being the output Fock level.  Kets are wrapped in :class:`StateVector`
so that the norm of an unnormalized vector (e.g. the heralding amplitude of a
photon-addition chain) survives normalization.  Density matrices are plain
Hermitian arrays validated by :func:`check_density`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

__all__ = [
    "DimensionError",
    "TruncationError",
    "TruncationWarning",
    "StateVector",
    "basis",
    "create_op",
    "annihilate_op",
    "displacement_op",
    "squeeze_op",
    "parity_op",
    "inner",
    "norm",
    "normalize",
    "apply",
    "outer",
    "mix",
    "check_density",
    "safe_block_defect",
    "NORM_TOL",
]

NORM_TOL = 1e-10


class DimensionError(ValueError):
    """Raised for invalid truncation dimensions or mismatched operands."""


class TruncationError(ValueError):
    """Raised when a requested state cannot be represented at the given dimension."""


class TruncationWarning(UserWarning):
    """Emitted when an operator is built outside its truncation-safe range."""


@dataclass(frozen=True)
class StateVector:
    """
    Ket in a truncated Fock basis.

    Parameters
    ----------
    amps : ndarray of complex
        Coefficient of ``|n>`` at index ``n``.
    scale : float
        Norm of the underlying unnormalized vector; 1.0 for states that were
        built normalized.
    """

    amps: np.ndarray
    scale: float = 1.0

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex).reshape(-1)
        if amps.size < 1:
            raise DimensionError("state vector needs dim >= 1")
        if not np.all(np.isfinite(amps)):
            raise ValueError("state amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)
        object.__setattr__(self, "scale", float(self.scale))

    @property
    def dim(self) -> int:
        return self.amps.size

    @property
    def is_normalized(self) -> bool:
        return abs(np.vdot(self.amps, self.amps).real - 1.0) <= NORM_TOL

    def tail_mass(self) -> float:
        """Probability in the top eighth of the Fock ladder (truncation health)."""
        start = self.dim - self.dim // 8
        return float(np.sum(np.abs(self.amps[start:]) ** 2))

    def mean_photon(self) -> float:
        p = np.abs(self.amps) ** 2
        return float(np.dot(np.arange(self.dim), p) / p.sum())

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amps, dtype=dtype)


def _check_dim(dim, minimum=2):
    if int(dim) != dim or dim < minimum:
        raise DimensionError(f"dimension must be an integer >= {minimum}, got {dim}")
    return int(dim)


def basis(n: int, dim: int) -> StateVector:
    """Fock state ``|n>`` truncated to ``dim`` levels."""
    dim = _check_dim(dim, 1)
    if not 0 <= n < dim:
        raise DimensionError(f"level {n} outside truncation dim={dim}")
    v = np.zeros(dim, dtype=complex)
    v[n] = 1.0
    return StateVector(v)


def create_op(dim: int) -> np.ndarray:
    """Creation operator: entry ``(n+1, n)`` is ``sqrt(n+1)``."""
    dim = _check_dim(dim)
    return np.diag(np.sqrt(np.arange(1, dim)), -1).astype(complex)


def annihilate_op(dim: int) -> np.ndarray:
    dim = _check_dim(dim)
    return np.diag(np.sqrt(np.arange(1, dim)), 1).astype(complex)


def displacement_op(alpha: complex, dim: int) -> np.ndarray:
    """
    Truncated matrix exponential of ``alpha a^+ - alpha^* a``.

    Column 0 approximates the coherent state ``|alpha>``; accuracy holds on
    the low-lying block while ``|alpha|**2 <= dim/4``.  Beyond that a
    :class:`TruncationWarning` is emitted and the matrix is still returned.
    """
    dim = _check_dim(dim)
    alpha = complex(alpha)
    if abs(alpha) ** 2 > dim / 4:
        warnings.warn(
            f"|alpha|^2={abs(alpha) ** 2:.3g} exceeds dim/4={dim / 4:g}; "
            "displacement is inaccurate in this truncation",
            TruncationWarning,
            stacklevel=2,
        )
    if alpha == 0:
        return np.eye(dim, dtype=complex)
    a = annihilate_op(dim)
    return expm(alpha * a.conj().T - np.conj(alpha) * a)


def squeeze_op(r: float, dim: int) -> np.ndarray:
    """
    Truncated matrix exponential of ``(r/2)(a^+^2 - a^2)``.

    The generator is real, so the returned matrix is real (stored complex)
    and only couples Fock levels of equal parity.
    """
    dim = _check_dim(dim)
    r = float(r)
    if abs(r) > 1.5:
        warnings.warn(f"|r|={abs(r):.3g} > 1.5; squeezing is poorly resolved", TruncationWarning, stacklevel=2)
    if r == 0:
        return np.eye(dim, dtype=complex)
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1)
    ad = a.T
    gen = 0.5 * r * (ad @ ad - a @ a)
    return expm(gen).astype(complex)


def parity_op(dim: int) -> np.ndarray:
    dim = _check_dim(dim, 1)
    return np.diag((-1.0) ** np.arange(dim)).astype(complex)


def _vec(v):
    return v.amps if isinstance(v, StateVector) else np.asarray(v, dtype=complex)


def inner(a, b) -> complex:
    """``<a|b>`` (conjugate-linear in the first argument)."""
    va, vb = _vec(a), _vec(b)
    if va.shape != vb.shape:
        raise DimensionError(f"dimension mismatch: {va.size} vs {vb.size}")
    return complex(np.vdot(va, vb))


def norm(a) -> float:
    return float(np.linalg.norm(_vec(a)))


def normalize(a) -> StateVector:
    """Unit-norm copy of ``a``; the pre-normalization norm is kept in ``scale``."""
    v = _vec(a)
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise ValueError("cannot normalize the zero vector")
    prior = a.scale if isinstance(a, StateVector) else 1.0
    return StateVector(v / nrm, scale=prior * nrm)


def apply(op: np.ndarray, v) -> StateVector:
    """Apply ``op`` to ``v`` without renormalizing; ``scale`` is carried over unchanged."""
    op = np.asarray(op)
    vv = _vec(v)
    if op.shape != (vv.size, vv.size):
        raise DimensionError(f"operator {op.shape} does not act on dim {vv.size}")
    scale = v.scale if isinstance(v, StateVector) else 1.0
    return StateVector(op @ vv, scale=scale)


def outer(v) -> np.ndarray:
    """Projector ``|v><v|`` of the normalized ket."""
    vv = _vec(v)
    vv = vv / np.linalg.norm(vv)
    return np.outer(vv, vv.conj())


def mix(components) -> np.ndarray:
    """
    Convex combination of density matrices.

    Parameters
    ----------
    components : iterable of (float, ndarray)
        ``(weight, rho)`` pairs; weights must be non-negative and sum to 1.
    """
    components = list(components)
    if not components:
        raise ValueError("mix needs at least one component")
    weights = np.array([w for w, _ in components], dtype=float)
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-12:
        raise ValueError(f"mixture weights must be >= 0 and sum to 1, got {weights}")
    shape = np.shape(components[0][1])
    out = np.zeros(shape, dtype=complex)
    for w, rho in components:
        rho = np.asarray(rho)
        if rho.shape != shape:
            raise DimensionError(f"density matrix shapes differ: {rho.shape} vs {shape}")
        out += w * rho
    return out


def check_density(rho: np.ndarray, *, herm_tol=1e-12, trace_tol=1e-10, eig_tol=1e-10) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; returns ``rho`` unchanged."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionError(f"density matrix must be square, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) >= herm_tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) >= trace_tol:
        raise ValueError(f"density matrix trace {np.trace(rho).real:.12g} != 1")
    if np.linalg.eigvalsh(rho).min() < -eig_tol:
        raise ValueError("density matrix has negative eigenvalues")
    return rho


def safe_block_defect(m: np.ndarray) -> float:
    """``max |M^+ M - I|`` restricted to the top-left ``(dim/2) x (dim/2)`` block."""
    m = np.asarray(m)
    k = m.shape[0] // 2
    g = m.conj().T @ m
    return float(np.max(np.abs(g[:k, :k] - np.eye(k))))
