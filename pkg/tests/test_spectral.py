import numpy as np
import pytest

from hbspace.errors import ExtremeTypeError
from hbspace.harmonic import grid_points, outer_from_modulus
from hbspace.spectral import MatrixSymbol, factor_residual, matrix_outer_factor

N = 1024


def test_identity_field_factors_to_identity():
    phi = np.tile(np.eye(2, dtype=complex), (N, 1, 1))
    rep = matrix_outer_factor(phi)
    assert rep.symbol.degree == 0
    assert np.max(np.abs(rep.symbol.at_zero() - np.eye(2))) < 1e-12


def test_constant_scalar_factor():
    rep = matrix_outer_factor(np.full(N, 0.5, dtype=complex))
    assert abs(rep.symbol.at_zero()[0, 0] - 1.0 / np.sqrt(2.0)) < 1e-12
    assert rep.residual < 1e-14


def test_polynomial_scalar_reconstruction():
    zeta = grid_points(N)
    rep = matrix_outer_factor(np.abs(1.0 - zeta / 2.0) ** 2)
    coeffs = rep.symbol.coeffs[:, 0, 0]
    assert rep.method == "wilson"
    assert abs(coeffs[0] - 1.0) < 1e-10
    assert abs(coeffs[1] + 0.5) < 1e-10
    assert coeffs[2:].size == 0 or np.max(np.abs(coeffs[2:])) < 1e-10


def test_factor_residual_trivial_cases():
    eye = np.tile(np.eye(2, dtype=complex), (N, 1, 1))
    assert factor_residual(MatrixSymbol(np.eye(2, dtype=complex)[None]), eye) == 0.0
    const = MatrixSymbol(np.full((1, 1, 1), 1.0 / np.sqrt(2.0), dtype=complex))
    assert factor_residual(const, np.full(N, 0.5, dtype=complex)) < 1e-15


def test_factor_residual_first_order_growth():
    zeta = grid_points(N)
    phi = np.abs(1.0 - zeta / 2.0) ** 2
    a = matrix_outer_factor(phi).symbol
    norm_a = float(np.max(np.abs(a.samples(N))))
    eps = 1e-6
    bumped = MatrixSymbol(a.coeffs + eps * np.eye(1)[None])
    slope = factor_residual(bumped, phi) / eps
    assert 0.5 * norm_a < slope < 4.0 * norm_a


def test_scalar_consistency_with_log_construction():
    zeta = grid_points(N)
    phi = 1.0 - np.abs(zeta) ** 2 / 2.0  # == 1/2; symbol z / sqrt(2)
    a = matrix_outer_factor(phi.astype(complex)).symbol
    w = outer_from_modulus(np.sqrt(phi.real))
    assert abs(a.at_zero()[0, 0] - w(0.0)) < 1e-8

    phi2 = np.abs(1.0 - zeta / 2.0) ** 2
    a2 = matrix_outer_factor(phi2).symbol
    w2 = outer_from_modulus(np.sqrt(phi2.real))
    vals_a = a2.samples(N)[:, 0, 0]
    vals_w = w2.boundary.samples
    assert np.max(np.abs(vals_a - vals_w)) < 1e-8


def test_factorization_is_deterministic():
    zeta = grid_points(N)
    phi = np.abs(1.0 - 0.3 * zeta - 0.2 * zeta ** 2) ** 2
    a1 = matrix_outer_factor(phi).symbol.coeffs
    a2 = matrix_outer_factor(phi).symbol.coeffs
    assert np.array_equal(a1, a2)


def _two_by_two_field():
    zeta = grid_points(N)
    a0 = np.array([[1.0, 0.0], [0.2, 0.8]])
    a1 = np.array([[0.1, -0.3], [0.0, 0.25]])
    samp = a0[None] + a1[None] * zeta[:, None, None]
    return np.conj(np.transpose(samp, (0, 2, 1))) @ samp


def test_matrix_factor_properties():
    phi = _two_by_two_field()
    rep = matrix_outer_factor(phi)
    assert rep.residual < 1e-10
    a0 = rep.symbol.at_zero()
    assert abs(a0[0, 1]) < 1e-10  # lower triangular gauge
    assert a0[0, 0].real > 0 and a0[1, 1].real > 0
    assert abs(a0[0, 0].imag) < 1e-12 and abs(a0[1, 1].imag) < 1e-12
    # outer: the determinant does not vanish inside the disk
    circle = 0.99 * np.exp(2j * np.pi * np.arange(128) / 128)
    dets = np.array([np.linalg.det(rep.symbol.at(z)) for z in circle])
    assert np.min(np.abs(dets)) > 1e-6


def test_matrix_factor_analyticity():
    phi = _two_by_two_field()
    rep = matrix_outer_factor(phi)
    samples = rep.symbol.samples(N)
    spectrum = np.fft.fft(samples, axis=0) / N
    negative = spectrum[N // 2:]
    assert np.max(np.abs(negative)) < 1e-8


def test_determinant_matches_scalar_outer_factor():
    phi = _two_by_two_field()
    rep = matrix_outer_factor(phi)
    det_a = np.linalg.det(rep.symbol.samples(N))
    det_phi = np.linalg.det(phi).real
    w = outer_from_modulus(np.sqrt(np.maximum(det_phi, 0.0)))
    ratio = det_a / w.boundary.samples
    # equal up to one unimodular constant
    assert np.max(np.abs(ratio - ratio[0])) < 1e-6
    assert abs(abs(ratio[0]) - 1.0) < 1e-6


def test_boundary_zero_field_is_regularized():
    zeta = grid_points(N)
    phi = (np.abs(1.0 - zeta) ** 2 / 4.0).astype(complex)  # sin^2(theta/2)
    rep = matrix_outer_factor(phi)
    assert rep.regularization > 0
    assert rep.residual < 1e-8


def test_extreme_type_field_rejected():
    phi = np.zeros(N, dtype=complex)  # defect of an inner symbol
    with pytest.raises(ExtremeTypeError):
        matrix_outer_factor(phi)


def test_arc_degenerate_field_rejected():
    zeta = grid_points(N)
    phi = np.where(np.abs(np.angle(zeta)) < np.pi / 3, 0.0, 1.0).astype(complex)
    with pytest.raises(ExtremeTypeError):
        matrix_outer_factor(phi)


def test_dimension_cap():
    phi = np.tile(np.eye(9, dtype=complex), (64, 1, 1))
    with pytest.raises(ValueError):
        matrix_outer_factor(phi)


def test_indefinite_field_rejected():
    phi = np.full(N, -1.0, dtype=complex)
    with pytest.raises(ValueError):
        matrix_outer_factor(phi)
