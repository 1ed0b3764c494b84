"""
Published optimum tables for the one- and two-addition circuits and the Hadamard gate.

Values are stored as printed, except where a printed digit is internally
inconsistent; those entries are listed in :data:`ERRATA` together with the
value used here.  All amplitudes in the tables lie on the imaginary axis.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Branch", "Entry", "TABLE1", "TABLE2", "TABLE3", "HadamardRow", "ERRATA"]


@dataclass(frozen=True)
class Branch:
    alpha_in: complex
    alpha_disp: complex
    alpha_1: complex | None = None


@dataclass(frozen=True)
class Entry:
    """One (amplitude, parity) cell: fidelity, squeeze and the a/b parameter branches."""

    alpha_scs: float
    parity: int
    fidelity: float
    r: float
    a: Branch
    b: Branch | None = None


def _t1(A, fe, re, ain, ap, fo, ro):
    return (
        Entry(A, +1, fe, re, Branch(1j * ain, 1j * ap)),
        Entry(A, -1, fo, ro, Branch(0j, 0j)),
    )


TABLE1 = [
    *_t1(0.8, 0.988095, -0.349324, 1.83218, 2.26764, 0.999376, -0.207344),
    *_t1(0.9, 0.97744, -0.397861, 1.49474, 1.98742, 0.998584, -0.258353),
    *_t1(1.0, 0.962444, -0.445031, 1.2464, 1.78867, 0.997109, -0.31257),
    *_t1(1.1, 0.943626, -0.491368, 1.05247, 1.6373, 0.994411, -0.36893),
    *_t1(1.2, 0.922092, -0.537234, 0.900828, 1.52201, 0.990085, -0.426398),
]


def _t2(A, fe, re, ein, e1, fo, ro, oin_a, o1, om_a, oin_b):
    even = Entry(
        A, +1, fe, re,
        Branch(1j * ein, -1j * ein, 1j * e1),
        Branch(-1j * ein, 1j * ein, -1j * e1),
    )
    odd = Entry(
        A, -1, fo, ro,
        Branch(1j * oin_a, 1j * om_a, 1j * o1),
        Branch(1j * oin_b, 0j, -1j * o1),
    )
    return even, odd


TABLE2 = [
    *_t2(1.0, 0.9999, -0.179612, 1.5904, -3.1808, 0.997473, -0.253791, 0.243421, -4.09883, -4.09884, -3.85488),
    *_t2(1.1, 0.999738, -0.215319, 1.45591, -2.91183, 0.995285, -0.292058, 0.279104, -3.56808, -3.56809, -3.28898),
    *_t2(1.2, 0.999392, -0.253272, 1.34629, -2.69259, 0.991945, -0.330436, 0.312901, -3.17489, -3.17491, -2.86199),
    *_t2(1.3, 0.998728, -0.293054, 1.25598, -2.51196, 0.987245, -0.368812, 0.344249, -2.87582, -2.87586, -2.53147),
    *_t2(1.4, 0.997583, -0.334228, 1.18095, -2.3619, 0.981078, -0.407125, 0.373226, -2.64328, -2.64334, -2.27005),
    *_t2(1.5, 0.995765, -0.376383, 1.11822, -2.23643, 0.973453, -0.445339, 0.399473, -2.45894, -2.45903, -2.05947),
    *_t2(1.6, 0.993085, -0.419055, 1.06794, -2.13588, 0.964491, -0.483419, 0.423166, -2.31033, -2.31047, -1.88716),
    *_t2(1.7, 0.989373, -0.46194597, 1.02351, -2.04701, 0.954387, -0.521336, 0.444419, -2.18895, -2.18914, -1.74453),
]


@dataclass(frozen=True)
class HadamardRow:
    """
    One amplitude of the Hadamard-gate table.

    ``a``/``b`` hold ``(alpha_1, alpha_hg, beta)``; the seeds and output
    displacements per parity are ``even_a``, ``odd_a`` etc. as ``Branch``.
    """

    alpha_scs: float
    r: float
    gate_a: tuple
    gate_b: tuple
    f_even: float
    f_odd: float
    even_a: Branch
    even_b: Branch
    odd_a: Branch
    odd_b: Branch


def _t3(A, r, a1, hg_a, beta_a, hg_b, beta_b, fe, ein, fo, oin_a, om_a, oin_b):
    return HadamardRow(
        A, r,
        (1j * a1, 1j * hg_a, 1j * beta_a),
        (-1j * a1, 1j * hg_b, 1j * beta_b),
        fe, fo,
        Branch(1j * ein, -1j * ein, 1j * a1),
        Branch(-1j * ein, 1j * ein, -1j * a1),
        Branch(1j * oin_a, 1j * om_a, 1j * a1),
        Branch(1j * oin_b, 0j, -1j * a1),
    )


TABLE3 = [
    _t3(1.3, -0.351, -2.87582, 0.546781, 0.89113, 0.54678, -1.98469,
        0.986582, 1.43791, 0.986539, 0.344349, -2.87586, -2.53147),
    _t3(1.4, -0.40712, -2.64328, 0.474207, 0.847433, 0.474205, -1.79585,
        0.986162, 1.32164, 0.981078, 0.373226, -2.64334, -2.27005),
    _t3(1.5, -0.445339, -2.45894, 0.414998, 0.8144715, 0.415, -1.64447,
        0.985525, 1.22947, 0.973453, 0.399473, -2.45903, -2.05947),
    _t3(1.6, -0.483418, -2.31033, 0.366002, 0.789168, 0.365995, -1.52116,
        0.983888, 1.15517, 0.964491, 0.423166, -2.31047, -1.88716),
    _t3(1.7, -0.521336, -2.188915, 0.32503, 0.769449, 0.325025, -1.41951,
        0.98118, 1.09448, 0.954387, 0.444419, -2.18914, -1.74453),
]

# (table, alpha_scs, field, printed, used)
ERRATA = [
    (2, 1.3, "even a: alpha_1", "-i2.251196", "-i2.51196 (= -2 alpha_in; matches branch b)"),
    (2, 1.4, "even b: alpha_plus", "i1.19095", "i1.18095 (= -alpha_in; matches branch a)"),
    (2, 1.5, "odd: F", "0.987245", "0.973453 (Hadamard table value; printed parameters evaluate to 0.97345)"),
    (3, 1.3, "odd a: alpha_in", "i0.344349", "kept; two-addition table prints i0.344249"),
    (3, 1.7, "a: alpha_1", "-2.188915", "-i2.188915 (imaginary unit missing)"),
]
