"""End-to-end acceptance checks: table reproduction, Hadamard gate, identities, Wigner functions, parity."""

import time

import numpy as np
import pytest

from dsscat.circuit import HadamardParams, coeffs_from_circuit, hadamard_fidelity, hadamard_gate, hadamard_targets
from dsscat.fock import squeeze_op
from dsscat.optimizer import OptConfig
from dsscat.reference import TABLE1, TABLE2, TABLE3
from dsscat.states import EVEN, ODD, alpha_rep, scs
from dsscat.tables import hadamard_params_from_row, reproduce_table
from dsscat.verify import run_checks
from dsscat.wigner import marginals, w_numeric, w_scs, wigner_grid

C1 = pytest.mark.criterion(1, "Table 1 reproduction")
C2 = pytest.mark.criterion(2, "Table 2 reproduction")
C3 = pytest.mark.criterion(3, "Hadamard gate table")
C4 = pytest.mark.criterion(4, "identity suite")
C5 = pytest.mark.criterion(5, "Wigner suite")
C6 = pytest.mark.criterion(6, "parity properties")

F_TOL = 2e-3
P_TOL = 0.02


def _cplx(row, key):
    return complex(row[f"{key}_re"], row[f"{key}_im"])


def _param_deviation(row):
    """Largest |.|-deviation of r, alpha_in, alpha_1, alpha_disp from the printed branch."""
    ref = row["printed"]
    dev = abs(abs(row["r"]) - abs(ref["r"]))
    for key in ("alpha_in", "alpha_1", "alpha_disp"):
        if key not in ref:
            continue
        printed = complex(*ref[key])
        if key == "alpha_disp" and printed == 0 and row["branch"] == "b" and "alpha_1" in ref:
            continue  # odd branch b output displacement is not printed
        dev = max(dev, abs(abs(_cplx(row, key)) - abs(printed)))
    return dev


@pytest.fixture(scope="module")
def table1():
    t0 = time.perf_counter()
    report = reproduce_table(1, OptConfig())
    return report, time.perf_counter() - t0


@pytest.fixture(scope="module")
def table2():
    return reproduce_table(2, OptConfig())


@pytest.fixture(scope="module")
def table3():
    return reproduce_table(3, OptConfig())


def _ids(table):
    return [f"{e.alpha_scs}-{'even' if e.parity > 0 else 'odd'}" for e in table]


# ---- criterion 1 ------------------------------------------------------------------

@C1
@pytest.mark.slow
def test_table1_runtime(table1):
    assert table1[1] < 120.0


@C1
@pytest.mark.slow
@pytest.mark.parametrize("k", range(len(TABLE1)), ids=_ids(TABLE1))
def test_table1_fidelity_and_parameters(table1, k):
    report, _ = table1
    entry = TABLE1[k]
    rows = [r for r in report.rows if r["alpha_scs"] == entry.alpha_scs
            and (r["q"] > 0) == (entry.parity > 0)]
    assert rows
    for row in rows:
        assert abs(row["F_computed"] - entry.fidelity) <= F_TOL
        assert _param_deviation(row) <= P_TOL


# ---- criterion 2 ------------------------------------------------------------------

@C2
@pytest.mark.slow
@pytest.mark.parametrize("k", range(len(TABLE2)), ids=_ids(TABLE2))
def test_table2_fidelity_and_parameters(table2, k):
    entry = TABLE2[k]
    rows = [r for r in table2.rows if r["alpha_scs"] == entry.alpha_scs
            and (r["q"] > 0) == (entry.parity > 0)]
    assert len(rows) == 2
    for row in rows:
        assert abs(row["F_computed"] - entry.fidelity) <= F_TOL
        assert _param_deviation(row) <= P_TOL


@C2
@pytest.mark.slow
@pytest.mark.parametrize("k", range(0, len(TABLE2), 2), ids=_ids(TABLE2)[0::2])
def test_table2_even_structure(table2, k):
    entry = TABLE2[k]
    for row in (r for r in table2.rows if r["alpha_scs"] == entry.alpha_scs and r["q"] > 0):
        ain, a1, ap = _cplx(row, "alpha_in"), _cplx(row, "alpha_1"), _cplx(row, "alpha_disp")
        h = coeffs_from_circuit(ain, a1)
        a2_norm = h.a2 if abs(h.a2) else 1.0
        assert abs(h.a1) < 1e-3
        assert h.a2.real > 0 and abs(h.a2.imag) < 1e-3 * abs(a2_norm)
        assert abs(a1 + 2 * ain) <= 1e-3 * abs(2 * ain)
        assert abs(ap + ain) <= 1e-3 * abs(ain)


@C2
@pytest.mark.slow
def test_table2_odd_15_discrepancy(table2, acceptance_notes):
    # the printed 0.987245 repeats the 1.3 row; the consistent value is 0.973453
    row = next(r for r in table2.rows if r["alpha_scs"] == 1.5 and r["q"] < 0)
    assert abs(row["F_computed"] - 0.973453) <= F_TOL
    acceptance_notes.append(
        f"Table 2 alpha_scs=1.5 odd: computed F={row['F_computed']:.6f}, checked against 0.973453; "
        f"printed 0.987245 differs by {row['F_computed'] - 0.987245:+.6f}"
    )


# ---- criterion 3 ------------------------------------------------------------------

def _params_from_report(report, alpha_scs, branch):
    plus = next(r for r in report.rows if r["alpha_scs"] == alpha_scs and r["branch"] == branch and r["q"] > 0)
    minus = next(r for r in report.rows if r["alpha_scs"] == alpha_scs and r["branch"] == branch and r["q"] < 0)
    return HadamardParams.from_seeds(alpha_scs, plus["r"], _cplx(plus, "alpha_1"), _cplx(plus, "alpha_in"),
                                     _cplx(minus, "alpha_in"), _cplx(plus, "alpha_disp"),
                                     _cplx(minus, "alpha_disp"), branch)


@C3
@pytest.mark.slow
@pytest.mark.parametrize("k", range(len(TABLE3)), ids=[str(r.alpha_scs) for r in TABLE3])
@pytest.mark.parametrize("branch", ["a", "b"])
def test_hadamard_reoptimized(table3, k, branch):
    row = TABLE3[k]
    params = _params_from_report(table3, row.alpha_scs, branch)
    assert params.r == row.r
    assert abs(hadamard_fidelity(+1, params) - row.f_even) <= F_TOL
    assert abs(hadamard_fidelity(-1, params) - row.f_odd) <= F_TOL


@C3
@pytest.mark.parametrize("k", range(len(TABLE3)), ids=[str(r.alpha_scs) for r in TABLE3])
@pytest.mark.parametrize("branch", ["a", "b"])
def test_hadamard_printed_parameters(k, branch):
    row = TABLE3[k]
    params = hadamard_params_from_row(row, branch)
    assert abs(hadamard_fidelity(+1, params) - row.f_even) <= F_TOL
    assert abs(hadamard_fidelity(-1, params) - row.f_odd) <= F_TOL


@C3
@pytest.mark.parametrize("alpha_scs,expected", [(1.4, 1.32164), (1.5, 1.22947)])
def test_hadamard_marginal_shift(alpha_scs, expected):
    row = next(r for r in TABLE3 if r.alpha_scs == alpha_scs)
    params = hadamard_params_from_row(row, "a")
    dim = 100
    cents = []
    for sign in (1, -1):
        ket = hadamard_gate(sign, params, dim)
        g = wigner_grid(ket, (-7, 7), (-7, 7), 141, 141)
        _, pp = marginals(g)
        cents.append(float(np.sum(g.ps * pp) * g.dp))
    assert abs(abs(cents[0] - cents[1]) - expected) <= 0.05
    targets = hadamard_targets(params)
    assert abs(abs(targets[0].disp - targets[1].disp) - expected) <= 0.05


# ---- criterion 4 ------------------------------------------------------------------

IDENTITIES = [
    "displaced_creation", "bch_composition", "gamma_transform", "vacuum_rep",
    "alpha_rep_center_independence", "one_addition_coefficients", "two_addition_coefficients",
    "even_inversion_roundtrip", "odd_inversion_roundtrip",
]


@pytest.fixture(scope="module")
def identity_report():
    t0 = time.perf_counter()
    rep = run_checks(100, IDENTITIES)
    return rep, time.perf_counter() - t0


@C4
@pytest.mark.parametrize("name", IDENTITIES)
def test_identity(identity_report, name):
    chk = next(c for c in identity_report[0].checks if c.name == name)
    assert chk.passed, chk


@C4
def test_identity_runtime(identity_report):
    assert identity_report[1] < 30.0


# ---- criterion 5 ------------------------------------------------------------------

@C5
@pytest.mark.parametrize("name", ["wigner_cats", "wigner_dsscs", "wigner_circuit_outputs", "wigner_mixture_linearity"])
def test_wigner_against_oracle(name):
    rep = run_checks(100, [name])
    assert rep.passed, rep.lines()


@C5
def test_wigner_dense_grid_agreement():
    xs = np.linspace(-6, 6, 61)
    x, p = np.meshgrid(xs, xs)
    for q in (EVEN, ODD):
        assert np.max(np.abs(w_numeric(scs(q, 1.0, 100), x, p) - w_scs(q, 1.0, x, p))) < 1e-6


@C5
@pytest.mark.parametrize("q", [EVEN, ODD])
def test_wigner_grid_normalization(q):
    grid = wigner_grid(lambda x, p: w_scs(q, 1.0, x, p), (-6, 6), (-6, 6), 301, 301)
    assert abs(grid.norm - 1.0) < 1e-3


@C5
def test_odd_cat_negative_at_origin():
    assert w_scs(ODD, 1.0, 0.0, 0.0) < 0


# ---- criterion 6 ------------------------------------------------------------------

@C6
@pytest.mark.parametrize("q,start", [(EVEN, 1), (ODD, 0)])
@pytest.mark.parametrize("amp", [0.8, 1.3, 1.7])
def test_zero_representation_parity(q, start, amp):
    assert np.max(np.abs(alpha_rep(q, amp, 0j, 40).coeffs[start::2])) < 1e-14
    assert np.max(np.abs(scs(q, amp, 100).amps[start::2])) < 1e-14


@C6
@pytest.mark.parametrize("r", [-0.5, -0.2, 0.3])
def test_squeeze_parity_selection_exact(r):
    s = squeeze_op(r, 60)
    assert np.all(s[1::2, 0::2] == 0) and np.all(s[0::2, 1::2] == 0)
