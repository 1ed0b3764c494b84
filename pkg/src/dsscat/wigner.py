"""
Wigner functions on the phase plane ``alpha = x + i p``.

Normalization is ``integral W dx dp = 1`` with the vacuum peaking at
``2/pi``.  Closed forms are provided for rotated cats, displaced squeezed
cats and displaced low-lying Fock superpositions; :func:`w_numeric` evaluates
any ket or density matrix through the displaced-parity formula::

    W(alpha) = (2/pi) sum_n (-1)^n |<n| D(-alpha) |psi>|^2

and is the oracle the closed forms are tested against.

Grids are stored with ``values[j, i] = W(x_i, p_j)``, i.e. one row per
momentum value, matching the text file layout.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .fock import StateVector, TruncationError, check_density
from .states import HalfFinished, TargetCat, cos_sin, scs_normalization

__all__ = [
    "w_scs",
    "w_dsscs",
    "w_dsscs_substituted",
    "w_halffinished",
    "w_numeric",
    "oracle_dim",
    "WignerGrid",
    "wigner_grid",
    "emit_grid",
    "marginals",
    "save_grid",
    "load_grid",
]

TWO_PI = 2.0 / math.pi
TAIL_LIMIT = 1e-10


def _gauss(dx, dp):
    return TWO_PI * np.exp(-2.0 * (dx * dx + dp * dp))


def w_scs(q: float, alpha_scs: complex, x, p):
    """
    Wigner function of the rotated cat ``N_Q (cos Q |A> + sin Q |-A>)``.

    Parameters
    ----------
    q : float
        Rotation angle; ``+pi/4`` even cat, ``-pi/4`` odd cat.
    alpha_scs : complex
        Cat amplitude ``A = x_s + i p_s``.
    x, p : array_like
        Phase-space coordinates (broadcast together).

    Notes
    -----
    ``W = N_Q^2 (cos^2 Q W_A + sin^2 Q W_-A + 2 cos Q sin Q X)`` with the
    interference term ``X = (2/pi) exp(-2|alpha|^2) cos(4(x p_s - p x_s))``.
    For ``Q = +-pi/4`` the prefactor is ``1 / (2 (1 +- exp(-2|A|^2)))``.
    """
    a = complex(alpha_scs)
    nq2 = scs_normalization(q, abs(a)) ** 2
    c, s = cos_sin(q)
    x, p = np.asarray(x, dtype=float), np.asarray(p, dtype=float)
    xs, ps = a.real, a.imag
    interference = _gauss(x, p) * np.cos(4.0 * (x * ps - p * xs))
    return nq2 * (c * c * _gauss(x - xs, p - ps) + s * s * _gauss(x + xs, p + ps) + 2 * c * s * interference)


def w_dsscs(target: TargetCat, x, p):
    """
    Wigner function of ``D(xi) S(r) |SCS_Q(A)>`` in explicit rescaled coordinates.

    The squeeze contracts ``x - x_xi`` by ``exp(-r)`` and stretches
    ``p - p_xi`` by ``exp(r)``; the cat form is then evaluated at the
    rescaled point.
    """
    a = float(target.alpha_scs)
    xi, r = target.disp, target.squeeze
    nq2 = scs_normalization(target.q, a) ** 2
    c, s = cos_sin(target.q)
    u = (np.asarray(x, dtype=float) - xi.real) * math.exp(-r)
    v = (np.asarray(p, dtype=float) - xi.imag) * math.exp(r)
    w_plus = TWO_PI * np.exp(-2.0 * (u - a) ** 2 - 2.0 * v**2)
    w_minus = TWO_PI * np.exp(-2.0 * (u + a) ** 2 - 2.0 * v**2)
    cross = TWO_PI * np.exp(-2.0 * u**2 - 2.0 * v**2) * np.cos(-4.0 * a * v)
    return nq2 * (c * c * w_plus + s * s * w_minus + 2 * c * s * cross)


def w_dsscs_substituted(target: TargetCat, x, p):
    """Cat Wigner function at ``cosh r (alpha - xi) - sinh r (alpha - xi)^*``."""
    r = target.squeeze
    d = np.asarray(x, dtype=float) - target.disp.real + 1j * (np.asarray(p, dtype=float) - target.disp.imag)
    g = math.cosh(r) * d - math.sinh(r) * np.conj(d)
    return w_scs(target.q, target.alpha_scs, g.real, g.imag)


def w_halffinished(h: HalfFinished, center: complex, x, p):
    """
    Wigner function of ``D(center) (|0> + a1|1> [+ a2|2>])`` (normalized).

    ``center`` is the seed ``alpha_in`` for one addition and
    ``alpha_in + alpha_1`` for two.  Built from the displaced Fock-diagonal
    terms (Laguerre polynomials) and the ``|m><n|`` cross terms.
    """
    c = h.coefficients()
    center = complex(center)
    d = np.asarray(x, dtype=float) - center.real + 1j * (np.asarray(p, dtype=float) - center.imag)
    dc = np.conj(d)
    d2 = (d * dc).real
    y = TWO_PI * np.exp(-2.0 * d2)
    w = abs(c[0]) ** 2 * y + abs(c[1]) ** 2 * y * (4 * d2 - 1)
    w = w + 4 * y * (c[1] * np.conj(c[0]) * dc).real
    if h.order == 2:
        w = w + abs(c[2]) ** 2 * y * (1 - 8 * d2 + 8 * d2 * d2)
        w = w + 4 * math.sqrt(2) * y * (c[2] * np.conj(c[0]) * dc * dc).real
        w = w + 4 * math.sqrt(2) * y * (c[2] * np.conj(c[1]) * dc * (2 * d2 - 1)).real
    return w


# ---- numeric oracle ------------------------------------------------------------

def oracle_dim(states, max_radius: float) -> int:
    """Working dimension that keeps ``D(-alpha)|psi>`` clear of the cutoff."""
    nbar = max(StateVector(v).mean_photon() for v in states)
    d = int(math.ceil((max_radius + math.sqrt(nbar) + 6.0) ** 2)) + 20
    return max(d, max(len(v) for v in states))


def _pure_components(rho):
    """Weighted kets of a ket or a density matrix."""
    if isinstance(rho, StateVector):
        v = rho.amps
        return [1.0], [v / np.linalg.norm(v)]
    arr = np.asarray(rho)
    if arr.ndim == 1:
        return [1.0], [arr / np.linalg.norm(arr)]
    check_density(arr)
    vals, vecs = np.linalg.eigh(arr)
    keep = vals > 1e-14
    return list(vals[keep]), [vecs[:, k] for k in np.flatnonzero(keep)]


def _quadrature_eig(dim):
    sq = np.sqrt(np.arange(1, dim, dtype=float))
    a = np.diag(sq, 1).astype(complex)
    # exp(-x (a^+ - a)) = exp(i x G1), exp(-i p (a^+ + a)) = exp(-i p G2)
    g1 = 1j * (a.conj().T - a)
    g2 = a + a.conj().T
    return np.linalg.eigh(g1), np.linalg.eigh(g2)


def w_numeric(rho, x, p, *, work_dim: int | None = None, chunk: int = 2048):
    """
    Displaced-parity Wigner function of a ket or density matrix.

    Parameters
    ----------
    rho : StateVector, 1-D array or 2-D density matrix
    x, p : array_like
        Evaluation points (broadcast together).
    work_dim : int, optional
        Fock dimension used for ``D(-alpha)``; the input is zero-padded to it.
        Chosen by :func:`oracle_dim` when omitted.

    Raises
    ------
    TruncationError
        If more than 1e-10 of the displaced probability lands in the top
        eighth of the working space.
    """
    x, p = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(p, dtype=float))
    shape = x.shape
    xf, pf = x.ravel(), p.ravel()
    weights, kets = _pure_components(rho)
    radius = float(np.max(np.hypot(xf, pf))) if xf.size else 0.0
    dim = work_dim or oracle_dim(kets, radius)
    if dim < max(len(v) for v in kets):
        raise TruncationError(f"work_dim={dim} is smaller than the state dimension")
    (l1, u1), (l2, u2) = _quadrature_eig(dim)
    parity = (-1.0) ** np.arange(dim)
    top = dim - dim // 8
    out = np.zeros(xf.size)
    for w, v in zip(weights, kets):
        psi = np.zeros(dim, dtype=complex)
        psi[: v.size] = v
        b = u2.conj().T @ psi
        for lo in range(0, xf.size, chunk):
            xs, ps = xf[lo: lo + chunk], pf[lo: lo + chunk]
            phi = u2 @ (np.exp(-1j * np.outer(l2, ps)) * b[:, None])
            phi = u1 @ (np.exp(1j * np.outer(l1, xs)) * (u1.conj().T @ phi))
            prob = np.abs(phi) ** 2
            tail = prob[top:].sum(axis=0).max()
            if tail > TAIL_LIMIT:
                raise TruncationError(f"displaced state leaks {tail:.2e} into the cutoff (work_dim={dim})")
            out[lo: lo + chunk] += w * TWO_PI * (parity @ prob)
    return out.reshape(shape)


# ---- grids ---------------------------------------------------------------------

@dataclass(frozen=True)
class WignerGrid:
    """
    Sampled Wigner function on a rectangular window.

    ``values`` has shape ``(np, nx)``: row ``j`` is ``p_j``, column ``i`` is ``x_i``.
    """

    x_min: float
    x_max: float
    nx: int
    p_min: float
    p_max: float
    np: int
    values: np.ndarray

    def __post_init__(self):
        if self.nx < 2 or self.np < 2:
            raise ValueError("a grid needs at least 2 points per axis")
        vals = np.array(self.values, dtype=float)
        if vals.shape != (self.np, self.nx):
            raise ValueError(f"values shape {vals.shape} != (np, nx) = {(self.np, self.nx)}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def xs(self):
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def ps(self):
        return np.linspace(self.p_min, self.p_max, self.np)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dp(self) -> float:
        return (self.p_max - self.p_min) / (self.np - 1)

    @property
    def norm(self) -> float:
        """Riemann sum ``sum W dx dp``."""
        return float(self.values.sum() * self.dx * self.dp)

    def to_dict(self) -> dict:
        return {
            "format": "wigner v1",
            "x_min": self.x_min, "x_max": self.x_max, "nx": self.nx,
            "p_min": self.p_min, "p_max": self.p_max, "np": self.np,
            "norm": self.norm,
            "values": self.values.tolist(),
        }


def wigner_grid(source, x_range=(-6.0, 6.0), p_range=(-6.0, 6.0), nx: int = 301, np_: int = 301) -> WignerGrid:
    """
    Sample ``source`` on a grid.

    ``source`` is either a callable ``f(x, p)`` (e.g. a closed form with its
    state parameters bound) or a ket / density matrix for the numeric oracle.
    """
    if nx < 2 or np_ < 2:
        raise ValueError("resolution must be >= 2 per axis")
    xs = np.linspace(x_range[0], x_range[1], nx)
    ps = np.linspace(p_range[0], p_range[1], np_)
    xx, pp = np.meshgrid(xs, ps)
    vals = source(xx, pp) if callable(source) else w_numeric(source, xx, pp)
    return WignerGrid(float(x_range[0]), float(x_range[1]), nx, float(p_range[0]), float(p_range[1]), np_, vals)


def emit_grid(source, path=None, x_range=(-6.0, 6.0), p_range=(-6.0, 6.0), nx: int = 301, np_: int = 301,
              fmt: str | None = None) -> WignerGrid:
    """Sample ``source`` and, if ``path`` is given, write it (format from ``fmt`` or the suffix)."""
    grid = wigner_grid(source, x_range, p_range, nx, np_)
    if path is not None:
        save_grid(grid, path, fmt)
    return grid


def marginals(grid: WignerGrid) -> tuple[np.ndarray, np.ndarray]:
    """``(x_dist, p_dist)``: Riemann sums of ``W`` over ``p`` and over ``x``."""
    return grid.values.sum(axis=0) * grid.dp, grid.values.sum(axis=1) * grid.dx


def save_grid(grid: WignerGrid, path, fmt: str | None = None) -> None:
    path = Path(path)
    fmt = fmt or ("json" if path.suffix == ".json" else "txt")
    if fmt == "json":
        path.write_text(json.dumps(grid.to_dict()))
        return
    if fmt != "txt":
        raise ValueError(f"unknown grid format {fmt!r}")
    lines = [
        "# wigner v1",
        f"# {grid.x_min!r} {grid.x_max!r} {grid.nx}",
        f"# {grid.p_min!r} {grid.p_max!r} {grid.np}",
        f"# norm {grid.norm!r}",
    ]
    lines += [" ".join(f"{v:.17g}" for v in row) for row in grid.values]
    path.write_text("\n".join(lines) + "\n")


def load_grid(path) -> WignerGrid:
    path = Path(path)
    text = path.read_text()
    if text.lstrip().startswith("{"):
        d = json.loads(text)
        if d.get("format") != "wigner v1":
            raise ValueError("not a wigner v1 grid")
        return WignerGrid(d["x_min"], d["x_max"], d["nx"], d["p_min"], d["p_max"], d["np"], d["values"])
    lines = text.splitlines()
    if not lines or lines[0].strip() != "# wigner v1":
        raise ValueError("not a wigner v1 grid")
    x_min, x_max, nx = lines[1][1:].split()
    p_min, p_max, n_p = lines[2][1:].split()
    vals = np.loadtxt(lines[4:], ndmin=2)
    return WignerGrid(float(x_min), float(x_max), int(nx), float(p_min), float(p_max), int(n_p), vals)
