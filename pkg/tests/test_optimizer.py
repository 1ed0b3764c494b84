import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dsscat.fock import displacement_op, squeeze_op
from dsscat.optimizer import (
    FidelityProblem,
    OptConfig,
    circuit_fidelity,
    fidelity_sq,
    fidelity_sq_direct,
    gamma_inverse,
    gamma_transform,
    maximize,
    maximize_seed,
    rotation_overlap,
    rotation_targets,
    with_fixed_r,
)
from dsscat.reference import TABLE1, TABLE2
from dsscat.states import EVEN, ODD


def test_gamma_unsqueezed():
    assert gamma_transform(1.0, 0.3, 0.0) == pytest.approx(0.7)


def test_gamma_squeezed_real():
    assert gamma_transform(1.0, 0.0, -0.3) == pytest.approx(math.exp(0.3), rel=1e-12)


def test_gamma_squeezed_imaginary():
    assert gamma_transform(1j, 0.0, -0.3) == pytest.approx(1j * math.exp(-0.3), rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(d=st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), r=st.floats(-1, 1))
def test_gamma_inverse_round_trip(d, r):
    assert abs(gamma_inverse(gamma_transform(d, 0, r), r) - d) < 1e-10


def test_gamma_operator_identity():
    # S(-r) D(delta) S(r) = D(gamma), checked on a low-photon vector
    dim, delta, r = 120, 0.6 - 0.4j, -0.35
    lhs = squeeze_op(-r, dim) @ displacement_op(delta, dim) @ squeeze_op(r, dim)
    rhs = displacement_op(gamma_transform(delta, 0, r), dim)
    v = np.zeros(dim, dtype=complex)
    v[:3] = [0.5, 0.6j, -0.4]
    assert np.max(np.abs((lhs - rhs) @ v)[:60]) < 1e-8


def test_vacuum_against_coherent_target():
    # the q = 0 cat is the coherent state |A>
    prob = FidelityProblem(1, 0.0, 1.0, 0.0, None, 1.0, 0.0)
    assert fidelity_sq(prob) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("entry", TABLE1, ids=lambda e: f"{e.alpha_scs}-{e.parity}")
def test_table1_parameters_evaluate(entry):
    q = EVEN if entry.parity > 0 else ODD
    f = circuit_fidelity(q, entry.alpha_scs, entry.r, entry.a.alpha_in, entry.a.alpha_disp)
    assert f == pytest.approx(entry.fidelity, abs=2e-4)


def test_odd_photon_fidelity():
    assert circuit_fidelity(ODD, 0.8, -0.207344, 0, 0) == pytest.approx(0.999376, abs=2e-4)


def test_two_addition_even_row():
    e = TABLE2[0]
    f = circuit_fidelity(EVEN, 1.0, e.r, e.a.alpha_in, e.a.alpha_disp, e.a.alpha_1)
    assert f == pytest.approx(0.9999, abs=2e-4)


@settings(max_examples=20, deadline=None)
@given(
    a1=st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
    a2=st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
    gamma=st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False),
    r=st.floats(-0.6, 0.3),
    beta=st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False),
    even=st.booleans(),
)
def test_two_routes_agree(a1, a2, gamma, r, beta, even):
    prob = FidelityProblem(2, EVEN if even else ODD, 1.2, a1, a2, gamma, r)
    assert abs(fidelity_sq(prob) - fidelity_sq_direct(prob, beta)) < 1e-8


def test_problem_validation():
    with pytest.raises(ValueError):
        FidelityProblem(3, EVEN, 1.0, 0)
    with pytest.raises(ValueError):
        FidelityProblem(1, EVEN, 0.0, 0)
    with pytest.raises(ValueError):
        FidelityProblem(2, EVEN, 1.0, 0)


def test_odd_photon_limit_coefficients():
    np.testing.assert_array_equal(FidelityProblem(1, ODD, 1.0, math.inf).coefficients(), [0, 1])


def test_maximize_order1_odd():
    res = maximize(1, ODD, 1.0, OptConfig(restarts=8))
    assert res.fidelity_sq == pytest.approx(0.997109, abs=2e-4)
    assert res.free_params["r"] == pytest.approx(-0.31257, abs=0.01)
    assert abs(res.physical["alpha_in"]) < 1e-3
    assert res.converged


def test_maximize_order2_even():
    res = maximize(2, EVEN, 1.2, OptConfig(restarts=8))
    assert res.fidelity_sq == pytest.approx(0.999392, abs=2e-4)
    assert abs(res.free_params["a1"]) < 1e-3
    assert res.free_params["a2"].real > 0
    assert abs(res.physical["alpha_in"]) == pytest.approx(1.34629, abs=0.02)


def test_maximize_deterministic():
    cfg = OptConfig(restarts=3, seed=7)
    a = maximize(1, EVEN, 0.9, cfg)
    b = maximize(1, EVEN, 0.9, cfg)
    assert a.fidelity_sq == b.fidelity_sq and a.restart_values == b.restart_values


def test_more_restarts_never_worse():
    few = maximize(2, ODD, 1.1, OptConfig(restarts=2, seed=3))
    many = maximize(2, ODD, 1.1, OptConfig(restarts=6, seed=3))
    assert many.restart_values[:2] == few.restart_values
    assert many.fidelity_sq >= few.fidelity_sq


def test_fixed_r_is_respected():
    res = maximize(1, EVEN, 0.8, with_fixed_r(OptConfig(restarts=4), -0.2))
    assert res.free_params["r"] == -0.2
    free = maximize(1, EVEN, 0.8, OptConfig(restarts=4))
    assert res.fidelity_sq <= free.fidelity_sq + 1e-9


def test_full_search_not_worse_than_restricted():
    res = maximize(1, EVEN, 0.8, OptConfig(restarts=6, restricted=False))
    assert res.fidelity_sq >= 0.988095 - 2e-4


def test_maximize_rejects_bad_amplitude():
    with pytest.raises(ValueError):
        maximize(1, EVEN, -1.0)


def test_result_serializes():
    d = maximize(1, ODD, 0.8, OptConfig(restarts=2)).to_dict()
    assert d["order"] == 1 and "fidelity_sq" in d


def test_maximize_seed_matches_two_addition_row():
    e = TABLE2[9]
    res = maximize_seed(ODD, 1.4, e.r, e.a.alpha_1, OptConfig(restarts=8))
    assert res.fidelity_sq == pytest.approx(e.fidelity, abs=2e-4)
    assert abs(res.physical["alpha_in"] - e.a.alpha_in) < 0.02


def test_rotation_targets():
    plus, minus = rotation_targets(EVEN, 1.2)
    assert plus.q == EVEN and minus.q == pytest.approx(-EVEN)


def test_rotation_overlap_small_for_large_cats():
    assert abs(rotation_overlap(EVEN, 1.7)) < 0.004

