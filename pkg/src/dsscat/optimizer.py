"""
Fidelity of circuit outputs with displaced squeezed cats, and its maximization.

For an output ``D(beta) |Psi>`` (``|Psi>`` a half-finished superposition) and a
target ``D(alpha) S(r) |SCS_Q>``, the squared overlap can be evaluated as::

    F = |<SCS_Q| S(-r) D(-alpha) D(beta) |Psi>|^2
      = |<SCS_Q| D(gamma) S(-r) |Psi>|^2,
    gamma = cosh(r) (beta - alpha) - sinh(r) (beta - alpha)^*

which only needs closed-form coherent states and three squeezed Fock
columns.  :func:`fidelity_sq` uses that form; :func:`fidelity_sq_direct`
builds both states with matrix exponentials and serves as a cross-check.

:func:`maximize` runs a multi-start Nelder-Mead search over the half-finished
coefficients, ``gamma`` and ``r``, then maps the optimum back to circuit
amplitudes.  Fidelities are squared moduli throughout.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np
from scipy.optimize import minimize

from .circuit import coeffs_from_circuit, invert_even_params, invert_odd_params
from .fock import displacement_op, squeeze_op
from .states import EVEN, TargetCat, coherent_amps, cos_sin, scs, scs_normalization

__all__ = [
    "gamma_transform",
    "gamma_inverse",
    "squeezed_fock_columns",
    "shifted_cat_amps",
    "FidelityProblem",
    "fidelity_sq",
    "fidelity_sq_direct",
    "circuit_fidelity",
    "OptConfig",
    "OptResult",
    "maximize",
    "maximize_seed",
    "physical_branches",
    "rotation_targets",
    "rotation_overlap",
]


def gamma_transform(alpha_in_total: complex, alpha_disp: complex, r: float) -> complex:
    """``cosh r (b - a) - sinh r (b - a)^*`` with ``b = alpha_in_total``, ``a = alpha_disp``."""
    d = complex(alpha_in_total) - complex(alpha_disp)
    return math.cosh(r) * d - math.sinh(r) * d.conjugate()


def gamma_inverse(gamma: complex, r: float) -> complex:
    """Recover ``beta - alpha`` from ``gamma``."""
    g = complex(gamma)
    return math.cosh(r) * g + math.sinh(r) * g.conjugate()


def squeezed_fock_columns(r: float, k: int, dim: int) -> np.ndarray:
    """
    Rows ``S(r)|n>`` for ``n < k`` from the closed-form squeezed vacuum.

    Uses ``S(r)|n> = (cosh r a^+ - sinh r a) S(r)|n-1> / sqrt(n)``.
    """
    ch, sh, th = math.cosh(r), math.sinh(r), math.tanh(r)
    m = np.arange(1, (dim + 1) // 2)
    steps = np.empty(m.size + 1)
    steps[0] = ch**-0.5
    steps[1:] = th * np.sqrt((2 * m - 1) / (2 * m))
    out = np.zeros((k, dim), dtype=complex)
    out[0, 0::2] = np.cumprod(steps)[: (dim + 1) // 2]
    sq = np.sqrt(np.arange(1, dim))
    for n in range(1, k):
        prev = out[n - 1]
        nxt = np.zeros(dim, dtype=complex)
        nxt[1:] += ch * sq * prev[:-1]
        nxt[:-1] -= sh * sq * prev[1:]
        out[n] = nxt / math.sqrt(n)
    return out


def shifted_cat_amps(q: float, alpha_scs: float, shift: complex, dim: int) -> np.ndarray:
    """Fock amplitudes of ``D(shift)|SCS_q(alpha_scs)>`` including the BCH phases."""
    nq = scs_normalization(q, alpha_scs)
    c, s = cos_sin(q)
    shift = complex(shift)
    amp = float(alpha_scs)
    # D(s)|A> = exp(i Im(s A^*)) |A + s>
    ph = math.e ** (1j * amp * shift.imag)
    return nq * (c * ph * coherent_amps(amp + shift, dim) + s * ph.conjugate() * coherent_amps(-amp + shift, dim))


@dataclass(frozen=True)
class FidelityProblem:
    """
    Free parameters of one fidelity evaluation.

    ``a1 = inf`` (order 1) stands for the pure ``|1>`` limit reached with a
    vacuum seed.
    """

    order: int
    q: float
    alpha_scs: float
    a1: complex
    a2: complex | None = None
    gamma: complex = 0j
    r: float = 0.0
    dim: int = 100

    def __post_init__(self):
        if self.order not in (1, 2):
            raise ValueError("order must be 1 or 2")
        if not self.alpha_scs > 0:
            raise ValueError("alpha_scs must be > 0")
        if self.order == 2 and self.a2 is None:
            raise ValueError("order 2 needs a2")

    def coefficients(self) -> np.ndarray:
        if self.order == 1 and math.isinf(abs(self.a1)):
            return np.array([0.0, 1.0], dtype=complex)
        c = [1.0, self.a1] if self.order == 1 else [1.0, self.a1, self.a2]
        c = np.asarray(c, dtype=complex)
        return c / np.linalg.norm(c)


def _overlap_sq(coeffs, gamma, r, q, alpha_scs, dim):
    cols = squeezed_fock_columns(-r, len(coeffs), dim)
    psi = coeffs @ cols
    target = shifted_cat_amps(q, alpha_scs, -gamma, dim)
    return float(abs(np.vdot(target, psi)) ** 2)


def fidelity_sq(problem: FidelityProblem) -> float:
    """``|<SCS_Q| D(gamma) S(-r) |Psi>|^2`` via closed-form vectors."""
    return _overlap_sq(problem.coefficients(), problem.gamma, problem.r, problem.q, problem.alpha_scs, problem.dim)


def fidelity_sq_direct(problem: FidelityProblem, beta: complex = 0j) -> float:
    """
    Same quantity from truncated matrix exponentials:
    ``|<D(alpha) S(r) SCS | D(beta) Psi>|^2`` with ``alpha = beta - gamma_inverse(gamma, r)``.

    Any ``beta`` gives the same value; it only moves both states together.
    """
    dim = problem.dim
    alpha = complex(beta) - gamma_inverse(problem.gamma, problem.r)
    target = displacement_op(alpha, dim) @ (squeeze_op(problem.r, dim) @ scs(problem.q, problem.alpha_scs, dim).amps)
    psi = np.zeros(dim, dtype=complex)
    c = problem.coefficients()
    psi[: c.size] = c
    out = displacement_op(beta, dim) @ psi
    return float(abs(np.vdot(target, out)) ** 2)


def circuit_fidelity(q, alpha_scs, r, alpha_in, alpha_disp, alpha_1=None, dim=100) -> float:
    """
    Fidelity of a physical circuit setting.

    One addition when ``alpha_1`` is None (``alpha_in = 0`` allowed), otherwise
    two additions around ``D(alpha_1)``.
    """
    alpha_in = complex(alpha_in)
    if alpha_1 is None:
        a1 = math.inf if alpha_in == 0 else 1 / alpha_in.conjugate()
        prob = FidelityProblem(1, q, alpha_scs, a1, None, gamma_transform(alpha_in, alpha_disp, r), r, dim)
    else:
        h = coeffs_from_circuit(alpha_in, alpha_1)
        total = alpha_in + complex(alpha_1)
        prob = FidelityProblem(2, q, alpha_scs, h.a1, h.a2, gamma_transform(total, alpha_disp, r), r, dim)
    return fidelity_sq(prob)


@dataclass(frozen=True)
class OptConfig:
    """
    Search settings.

    ``restricted`` keeps all circuit amplitudes on the imaginary axis (every
    tabulated optimum lies there); ``restricted=False`` searches the full
    complex parameter space.  ``fixed_r`` pins the squeeze parameter.
    """

    dim: int = 100
    restarts: int = 16
    seed: int = 20110
    restricted: bool = True
    fixed_r: float | None = None
    xatol: float = 1e-10
    fatol: float = 1e-14
    maxiter: int = 20000
    stable_tol: float = 1e-9


@dataclass
class OptResult:
    order: int
    q: float
    alpha_scs: float
    fidelity_sq: float
    free_params: dict
    physical: dict
    physical_b: dict | None
    restarts_used: int
    converged: bool
    evaluations: int = 0
    restart_values: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        def enc(v):
            if isinstance(v, complex):
                return [v.real, v.imag]
            if isinstance(v, dict):
                return {k: enc(x) for k, x in v.items()}
            if isinstance(v, list):
                return [enc(x) for x in v]
            return v

        return enc(asdict(self))


# ---- parameter vectors -------------------------------------------------------

def _unpack(x, order, restricted, fixed_r):
    """Map a flat search vector to (coefficients, gamma, r)."""
    x = list(x)
    r = fixed_r if fixed_r is not None else x.pop()
    if order == 1:
        if restricted:
            th, g = x
            c = np.array([math.cos(th), 1j * math.sin(th)])
            gamma = 1j * g
        else:
            th, ph, gr, gi = x
            c = np.array([math.cos(th), np.exp(1j * ph) * math.sin(th)])
            gamma = complex(gr, gi)
        return c, gamma, r
    # spherical chart: compact, so no restart can run off to |a1|, |a2| -> inf
    if restricted:
        th, ph, g = x
        c = np.array([math.cos(th), 1j * math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph)])
        gamma = 1j * g
    else:
        th, ph, x1, x2, gr, gi = x
        c = np.array([math.cos(th), math.sin(th) * math.cos(ph) * np.exp(1j * x1),
                      math.sin(th) * math.sin(ph) * np.exp(1j * x2)])
        gamma = complex(gr, gi)
    return c, gamma, r


def _start(rng, order, restricted, fixed_r):
    if order == 1:
        x = [rng.uniform(-math.pi / 2, math.pi / 2)]
        x += [rng.uniform(-3, 3)] if restricted else [rng.uniform(-math.pi, math.pi), rng.uniform(-3, 3), rng.uniform(-3, 3)]
    elif restricted:
        x = [rng.uniform(-math.pi / 2, math.pi / 2), rng.uniform(-math.pi, math.pi), rng.uniform(-3, 3)]
    else:
        x = [rng.uniform(-math.pi / 2, math.pi / 2), rng.uniform(-math.pi, math.pi),
             rng.uniform(-math.pi, math.pi), rng.uniform(-math.pi, math.pi), rng.uniform(-3, 3), rng.uniform(-3, 3)]
    if fixed_r is None:
        x.append(rng.uniform(-1.0, 0.3))
    return np.array(x)


def _nelder_mead(fun, x0, config):
    opts = dict(xatol=config.xatol, fatol=config.fatol, maxiter=config.maxiter, maxfev=config.maxiter)
    res = minimize(fun, x0, method="Nelder-Mead", options=opts)
    # one restart from the optimum re-inflates a possibly collapsed simplex
    res2 = minimize(fun, res.x, method="Nelder-Mead", options=opts)
    best = res2 if res2.fun <= res.fun else res
    return best, res.nfev + res2.nfev


def _multistart(fun, starts, config):
    values, points, nfev = [], [], 0
    for x0 in starts:
        res, n = _nelder_mead(fun, x0, config)
        values.append(-float(res.fun))
        points.append(res.x)
        nfev += n
    k = int(np.argmax(values))  # first index wins ties
    best = values[k]
    hits = sum(abs(v - best) <= config.stable_tol for v in values)
    return points[k], best, values, nfev, hits >= 2


# ---- physical parameters --------------------------------------------------------

def physical_branches(order, a1, a2, gamma, r, q=None):
    """
    Circuit amplitudes for both roots of the coefficient map.

    Returns ``(branch_a, branch_b)`` dicts with keys ``alpha_in``,
    ``alpha_1`` (order 2), ``alpha_disp`` and ``r``.  Branch ``a`` is the
    root with the smaller seed; the overall sign is chosen so that its seed
    (or, for a vacuum seed, its output displacement) has non-negative
    imaginary part.  Order 1 has a single branch (``branch_b`` is None).
    """
    r = float(r)
    delta = gamma_inverse(gamma, r)
    if order == 1:
        alpha_in = 0j if math.isinf(abs(a1)) or abs(a1) > 1e12 else 1 / complex(a1).conjugate()
        disp = alpha_in - delta
        key = alpha_in if abs(alpha_in) > 1e-6 else disp
        if key.imag < 0:
            alpha_in, disp = -alpha_in, -disp
        return {"alpha_in": alpha_in, "alpha_disp": disp, "r": r}, None

    a1, a2 = complex(a1), complex(a2)
    if q is not None and math.isclose(q, EVEN) and abs(a1) < 1e-6 and a2.real > 0 and abs(a2.imag) < 1e-9:
        roots = []
        for sign in (1, -1):
            ain, al1, _ = invert_even_params(a2.real, sign)
            roots.append((ain, al1))
    else:
        roots = [invert_odd_params(a1, a2, b) for b in (1, -1)]
    roots.sort(key=lambda t: (round(abs(t[0]), 8), -t[0].imag))
    flip = -1 if roots[0][0].imag < 0 else 1

    def pack(ain, al1):
        ain, al1 = flip * ain, flip * al1
        return {"alpha_in": ain, "alpha_1": al1, "alpha_disp": ain + al1 - flip * delta, "r": r}

    return pack(*roots[0]), pack(*roots[1])


def maximize(order: int, q: float, alpha_scs: float, config: OptConfig | None = None) -> OptResult:
    """
    Maximize the squared fidelity over half-finished coefficients, ``gamma`` and ``r``.

    Restart ``k`` starts from ``default_rng([config.seed, k])``, so adding
    restarts never changes earlier ones and the best value cannot drop.
    ``converged`` is set when at least two restarts agree with the best value
    to ``config.stable_tol``.
    """
    config = config or OptConfig()
    if not alpha_scs > 0:
        raise ValueError("alpha_scs must be > 0")
    scs_normalization(q, alpha_scs)

    def fun(x):
        c, g, r = _unpack(x, order, config.restricted, config.fixed_r)
        return -_overlap_sq(c, g, r, q, alpha_scs, config.dim)

    starts = [_start(np.random.default_rng([config.seed, k]), order, config.restricted, config.fixed_r)
              for k in range(config.restarts)]
    x, best, values, nfev, stable = _multistart(fun, starts, config)
    c, gamma, r = _unpack(x, order, config.restricted, config.fixed_r)

    if order == 1:
        a1 = math.inf if abs(c[0]) < 1e-15 else complex(c[1] / c[0])
        free = {"a1": a1, "gamma": complex(gamma), "r": float(r)}
        phys, phys_b = physical_branches(1, a1, None, gamma, r, q)
    else:
        if abs(c[0]) < 1e-12:
            raise ArithmeticError("optimum has no vacuum component; no finite circuit realizes it")
        a1, a2 = complex(c[1] / c[0]), complex(c[2] / c[0])
        free = {"a1": a1, "a2": a2, "gamma": complex(gamma), "r": float(r)}
        phys, phys_b = physical_branches(2, a1, a2, gamma, r, q)
    return OptResult(order, q, alpha_scs, best, free, phys, phys_b, config.restarts, stable, nfev, values)


def maximize_seed(q: float, alpha_scs: float, r: float, alpha_1: complex, config: OptConfig | None = None,
                  seed_range=(-4.0, 4.0)) -> OptResult:
    """
    Two-addition search with ``r`` and the intermediate displacement held fixed.

    Only the seed and the output displacement are free (imaginary when
    ``config.restricted``).  The search runs over ``(alpha_in, gamma)``
    rather than ``(alpha_in, alpha_disp)``: the output displacement enters
    through ``alpha_in + alpha_1 - alpha_disp``, which makes the raw
    coordinates a narrow ridge.  Used for the Hadamard gate, where both
    logical inputs must share ``alpha_1`` and ``r``.
    """
    config = config or OptConfig()
    alpha_1 = complex(alpha_1)
    r = float(r)

    def split(x):
        if config.restricted:
            return 1j * x[0], 1j * x[1]
        return complex(x[0], x[1]), complex(x[2], x[3])

    def fun(x):
        ain, gamma = split(x)
        if abs(ain) < 1e-12 or abs(ain + alpha_1) < 1e-12:
            return 0.0
        h = coeffs_from_circuit(ain, alpha_1)
        c = np.array([1.0, h.a1, h.a2])
        return -_overlap_sq(c / np.linalg.norm(c), gamma, r, q, alpha_scs, config.dim)

    starts = []
    for k in range(config.restarts):
        rng = np.random.default_rng([config.seed, 1, k])
        if config.restricted:
            starts.append(np.array([rng.uniform(*seed_range), rng.uniform(-3, 3)]))
        else:
            starts.append(np.array([rng.uniform(*seed_range), rng.uniform(*seed_range),
                                    rng.uniform(-3, 3), rng.uniform(-3, 3)]))
    x, best, values, nfev, stable = _multistart(fun, starts, config)
    ain, gamma = split(x)
    disp = ain + alpha_1 - gamma_inverse(gamma, r)
    # seeds ain and -ain - alpha_1 give parity-mirrored half-finished states;
    # report the smaller seed (output displacement alpha_1 - disp)
    alt = -ain - alpha_1
    if abs(alt) < abs(ain) - 1e-9:
        ain, disp = alt, alpha_1 - disp
        gamma = gamma_transform(ain + alpha_1, disp, r)
        best = circuit_fidelity(q, alpha_scs, r, ain, disp, alpha_1, config.dim)
    h = coeffs_from_circuit(ain, alpha_1)
    phys = {"alpha_in": ain, "alpha_1": alpha_1, "alpha_disp": disp, "r": r}
    free = {"a1": h.a1, "a2": h.a2, "gamma": gamma, "r": r}
    return OptResult(2, q, alpha_scs, best, free, phys, None, config.restarts, stable, nfev, values)


def rotation_targets(q: float, alpha_scs: float, disp_plus=0j, disp_minus=0j, r=0.0) -> tuple[TargetCat, TargetCat]:
    """
    Targets of a (displaced, squeezed) rotation by ``q``.

    Input ``|+A>`` maps to the ``q``-cat, input ``|-A>`` to the ``(q - pi/2)``-cat,
    i.e. ``sin q |A> - cos q |-A>`` up to normalization.
    """
    return (TargetCat(alpha_scs, q, disp_plus, r), TargetCat(alpha_scs, q - math.pi / 2, disp_minus, r))


def rotation_overlap(q: float, alpha_scs: float, dim: int = 100) -> complex:
    """Inner product of the two rotated outputs; zero would mean an exactly unitary rotation."""
    plus, minus = rotation_targets(q, alpha_scs)
    return complex(np.vdot(scs(plus.q, alpha_scs, dim).amps, scs(minus.q, alpha_scs, dim).amps))


def with_fixed_r(config: OptConfig, r: float) -> OptConfig:
    return replace(config, fixed_r=r)

