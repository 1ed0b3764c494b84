import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dsscat.fock import (
    DimensionError,
    StateVector,
    TruncationWarning,
    annihilate_op,
    apply,
    basis,
    check_density,
    create_op,
    displacement_op,
    inner,
    mix,
    norm,
    normalize,
    outer,
    parity_op,
    safe_block_defect,
    squeeze_op,
)
from dsscat.states import coherent_amps

amplitudes = st.complex_numbers(max_magnitude=2.5, allow_nan=False, allow_infinity=False)


def test_create_op_dim2():
    m = create_op(2)
    expected = np.zeros((2, 2))
    expected[1, 0] = 1
    np.testing.assert_array_equal(m, expected)


def test_create_op_ladder():
    v = create_op(4) @ basis(2, 4).amps
    np.testing.assert_allclose(v, math.sqrt(3) * basis(3, 4).amps)


def test_annihilate_is_adjoint():
    np.testing.assert_array_equal(annihilate_op(6), create_op(6).conj().T)


@pytest.mark.parametrize("builder", [create_op, annihilate_op, lambda d: displacement_op(0.1, d),
                                     lambda d: squeeze_op(0.1, d)])
def test_dim_one_rejected(builder):
    with pytest.raises(DimensionError):
        builder(1)


def test_displaced_creation_identity():
    alpha, dim = 0.7 + 0.3j, 80
    d = displacement_op(alpha, dim)
    lhs = d.conj().T @ create_op(dim) @ d
    rhs = create_op(dim) + np.conj(alpha) * np.eye(dim)
    rng = np.random.default_rng(1)
    v = np.zeros(dim, dtype=complex)
    v[:40] = rng.normal(size=40) + 1j * rng.normal(size=40)
    assert np.max(np.abs((lhs @ v - rhs @ v)[:40])) < 1e-8


def test_displacement_zero_is_identity():
    np.testing.assert_array_equal(displacement_op(0, 10), np.eye(10))


def test_vacuum_overlap():
    assert displacement_op(1.0, 60)[0, 0] == pytest.approx(0.6065306597, abs=1e-10)


def test_displacement_inverse():
    dim = 100
    m = displacement_op(1.5j, dim) @ displacement_op(-1.5j, dim)
    assert np.max(np.abs(m[:50, :50] - np.eye(50))) < 1e-8


def test_displacement_warns_outside_safe_range():
    with pytest.warns(TruncationWarning):
        displacement_op(3.0, 20)


def test_squeeze_zero_is_identity():
    np.testing.assert_array_equal(squeeze_op(0.0, 8), np.eye(8))


def test_squeezed_vacuum_amplitude():
    r = -0.207344
    assert squeeze_op(r, 100)[0, 0].real == pytest.approx(math.cosh(r) ** -0.5, abs=1e-8)


def test_squeeze_parity_selection():
    s = squeeze_op(-0.4, 40)
    assert s[1, 0] == 0
    assert np.all(s[1::2, 0::2] == 0) and np.all(s[0::2, 1::2] == 0)
    assert np.all(s.imag == 0)


def test_squeeze_warns_for_large_r():
    with pytest.warns(TruncationWarning):
        squeeze_op(2.0, 30)


def test_parity_op():
    np.testing.assert_array_equal(parity_op(3), np.diag([1, -1, 1]))
    p = parity_op(7)
    np.testing.assert_array_equal(p @ p, np.eye(7))


def test_parity_flips_coherent_state():
    dim = 60
    plus = displacement_op(1.0, dim)[:, 0]
    minus = displacement_op(-1.0, dim)[:, 0]
    assert np.max(np.abs(parity_op(dim) @ plus - minus)) < 1e-9


@settings(max_examples=30, deadline=None)
@given(alpha=amplitudes)
def test_displacement_column_matches_coherent(alpha):
    dim = 100
    col = displacement_op(alpha, dim)[:, 0]
    assert np.max(np.abs(col[:50] - coherent_amps(alpha, dim)[:50])) < 1e-9


small = st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False)


@settings(max_examples=25, deadline=None)
@given(a=small, b=small)
def test_bch_composition(a, b):
    # both factors act on the n < 50 block, so each must stay well inside the cutoff
    dim = 100
    lhs = displacement_op(a, dim) @ displacement_op(b, dim)
    rhs = np.exp(1j * (a * np.conj(b)).imag) * displacement_op(a + b, dim)
    assert np.max(np.abs((lhs - rhs)[:50, :50])) < 1e-7


@settings(max_examples=20, deadline=None)
@given(r=st.floats(-1.0, 1.0))
def test_squeeze_inverse(r):
    m = squeeze_op(r, 100) @ squeeze_op(-r, 100)
    assert np.max(np.abs(m[:50, :50] - np.eye(50))) < 1e-7


@pytest.mark.parametrize("op", [lambda: displacement_op(2 - 1j, 100), lambda: squeeze_op(-0.52, 100)])
def test_safe_block_unitarity(op):
    assert safe_block_defect(op()) < 1e-8


def test_operators_are_deterministic():
    assert np.array_equal(displacement_op(0.3 + 0.9j, 50), displacement_op(0.3 + 0.9j, 50))
    assert np.array_equal(squeeze_op(-0.3, 50), squeeze_op(-0.3, 50))


def test_inner_and_norm():
    assert inner(basis(0, 5), basis(0, 5)) == 1
    assert inner(basis(0, 5), basis(1, 5)) == 0
    assert norm(np.array([3, 4j])) == pytest.approx(5)


def test_inner_conjugates_first_argument():
    assert inner(np.array([1j, 0]), np.array([1, 0])) == -1j


def test_coherent_overlap():
    dim = 60
    a = displacement_op(1.0, dim)[:, 0]
    b = displacement_op(-1.0, dim)[:, 0]
    assert abs(inner(a, b)) == pytest.approx(0.1353352832, abs=1e-10)


def test_inner_dimension_mismatch():
    with pytest.raises(DimensionError):
        inner(basis(0, 3), basis(0, 4))


def test_normalize_records_scale():
    v = normalize(np.array([3.0, 4.0]))
    assert v.scale == pytest.approx(5.0)
    assert v.is_normalized
    twice = normalize(StateVector([0.0, 2.0], scale=3.0))
    assert twice.scale == pytest.approx(6.0)


def test_normalize_zero_vector():
    with pytest.raises(ValueError):
        normalize(np.zeros(3))


def test_apply_keeps_scale_and_checks_shape():
    v = StateVector([1, 0, 0], scale=2.0)
    out = apply(create_op(3), v)
    assert out.scale == 2.0
    np.testing.assert_array_equal(out.amps, [0, 1, 0])
    with pytest.raises(DimensionError):
        apply(np.eye(2), v)


def test_state_vector_is_read_only():
    v = basis(1, 4)
    with pytest.raises(ValueError):
        v.amps[0] = 1


def test_state_vector_rejects_nan():
    with pytest.raises(ValueError):
        StateVector([np.nan, 0])


def test_tail_mass_and_mean_photon():
    v = basis(7, 8)
    assert v.tail_mass() == 1.0
    assert v.mean_photon() == 7.0
    assert basis(0, 8).tail_mass() == 0.0


def test_mix_idempotent():
    rho = outer(basis(0, 4))
    np.testing.assert_allclose(mix([(0.5, rho), (0.5, rho)]), rho)


@pytest.mark.parametrize("weights", [[0.5, 0.6], [-0.1, 1.1]])
def test_mix_rejects_bad_weights(weights):
    rho = outer(basis(0, 3))
    with pytest.raises(ValueError):
        mix([(w, rho) for w in weights])


def test_check_density():
    rho = mix([(0.3, outer(basis(0, 3))), (0.7, outer(np.array([1, 1j, 0])))])
    check_density(rho)
    with pytest.raises(ValueError):
        check_density(2 * rho)
    with pytest.raises(ValueError):
        check_density(np.array([[1, 1], [0, 0]]))
    with pytest.raises(ValueError):
        check_density(np.diag([1.5, -0.5]))
