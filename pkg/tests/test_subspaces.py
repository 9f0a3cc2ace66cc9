import numpy as np
import pytest

from hbspace.analysis import LimitSchedule
from hbspace.errors import ConfigError
from hbspace.harmonic import grid_points
from hbspace.series import convolve, h2_norm_sq, szego_taylor
from hbspace.subspaces import (
    BlaschkeProduct,
    backward_invariance_residual,
    intersect_model_space,
    model_space_basis,
    nearly_invariant_norm,
    poly_density_residual,
    shift_subspace_membership,
)


def test_blaschke_unimodular_on_boundary():
    theta = BlaschkeProduct([0.0, 0.5, -0.3 + 0.2j])
    zeta = grid_points(512)
    assert np.max(np.abs(np.abs(theta(zeta)) - 1.0)) < 1e-12
    coeffs = theta.taylor(200)
    vals = np.polyval(coeffs[::-1], 0.3 + 0.1j)
    assert abs(vals - theta(0.3 + 0.1j)) < 1e-12


def test_blaschke_rejects_boundary_zero():
    with pytest.raises(ValueError):
        BlaschkeProduct([1.0])
    with pytest.raises(ValueError):
        BlaschkeProduct([])


def test_model_space_basis_monomials():
    basis = model_space_basis(BlaschkeProduct([0.0, 0.0, 0.0]))
    assert len(basis) == 3
    for j, b in enumerate(basis):
        expected = np.zeros(j + 1)
        expected[j] = 1.0
        assert np.array_equal(b, expected)
    single = model_space_basis(BlaschkeProduct([0.0]))
    assert len(single) == 1 and np.array_equal(single[0], [1.0])


def test_model_space_basis_szego_for_simple_zero():
    a = 0.4 - 0.1j
    basis = model_space_basis(BlaschkeProduct([a]), degree=128)
    assert np.max(np.abs(basis[0] - szego_taylor(a, 128))) < 1e-14


def test_model_space_basis_orthogonal_to_shifted_range():
    theta = BlaschkeProduct([0.0, 0.35, -0.5j])
    degree = 256
    basis = model_space_basis(theta, degree)
    assert len(basis) == theta.degree
    th = theta.taylor(degree)
    for b in basis:
        for k in range(0, degree - theta.degree - 8, 16):
            shifted = np.concatenate([np.zeros(k), th])[: degree + 1]
            inner = np.vdot(shifted[: b.size], b[: shifted.size])
            assert abs(inner) < 1e-10


def test_model_space_basis_rejects_repeats_off_origin():
    with pytest.raises(ValueError):
        model_space_basis(BlaschkeProduct([0.3, 0.3]))


def test_intersect_hardy_gives_model_space(h2):
    theta = BlaschkeProduct([0.0, 0.4])
    basis = intersect_model_space(h2, theta)
    assert basis.dim == 2
    assert np.max(np.abs(basis.gram - np.eye(2))) < 1e-10


def test_intersect_rank_one_monomial_case(rank1_half):
    basis = intersect_model_space(rank1_half, BlaschkeProduct([0.0, 0.0]))
    assert basis.dim == 2
    assert np.allclose(basis.raw_gram, np.diag([1.0, 2.0]), atol=1e-10)
    assert np.max(np.abs(basis.gram - np.eye(2))) < 1e-10


def test_intersect_single_blaschke_factor(rank1_half):
    basis = intersect_model_space(rank1_half, BlaschkeProduct([0.5]), degree=220)
    assert basis.dim == 1
    # the candidate 1/(1 - z/2) has squared norm 1 + 2 sum 4^-k = 5/3
    assert basis.raw_gram[0, 0].real == pytest.approx(5.0 / 3.0, rel=1e-10)


def test_backward_invariance_of_intersections(h2, rank1_half):
    cases = [
        (h2, BlaschkeProduct([0.0, 0.0])),
        (h2, BlaschkeProduct([0.5])),
        (rank1_half, BlaschkeProduct([0.0, 0.0])),
        (rank1_half, BlaschkeProduct([0.5, -0.3])),
    ]
    for space, theta in cases:
        basis = intersect_model_space(space, theta)
        assert backward_invariance_residual(space, basis) <= 1e-6


def test_poly_density_hardy_monomial(h2):
    res = poly_density_residual(h2, np.array([0.0, 1.0]), [0, 1, 2])
    assert np.allclose(res.residuals, [1.0, 0.0, 0.0], atol=1e-12)


def test_poly_density_kernel_decay(rank1_half):
    f = rank1_half.kernel_taylor(0.5, degree=200)
    res = poly_density_residual(rank1_half, f, list(range(0, 25, 2)))
    assert np.all(np.diff(res.residuals) <= 0)
    assert res.residuals[-1] <= 1e-3
    ratios = res.residuals[1:] / np.maximum(res.residuals[:-1], 1e-300)
    assert np.all(ratios[1:8] < 0.3)  # geometric decay, ratio ~ 0.25 per 2 degrees


def test_poly_density_refuses_non_invariant(inner_space):
    with pytest.raises(ConfigError):
        poly_density_residual(inner_space, np.array([1.0]), [0, 1])


def test_poly_density_on_dirichlet(d_pair):
    f = d_pair.kernel_taylor(0.4, degree=64)
    res = poly_density_residual(d_pair, f, [0, 4, 8, 12])
    assert np.all(np.diff(res.residuals) <= 0)
    assert res.residuals[-1] < 1e-3


def test_nearly_invariant_reduces_to_norm_formula(h2):
    result = nearly_invariant_norm(h2, np.array([1.0]), np.array([0.0, 1.0]),
                                   LimitSchedule(4, 8))
    assert result.quotient_norm_sq == pytest.approx(1.0, rel=1e-12)
    assert abs(result.final - 1.0) < 2e-2
    assert result.skipped_fraction == 0.0


def test_nearly_invariant_hitt_case(h2):
    # subspace of functions vanishing at a; generator is the Blaschke factor
    a = 0.4
    phi = BlaschkeProduct([a]).taylor(256)
    f = convolve(np.array([-a, 1.0]), np.array([1.0, 0.5, 0.25]))  # (z - a) p(z)
    result = nearly_invariant_norm(h2, phi, f, LimitSchedule(4, 9))
    assert result.quotient_norm_sq == pytest.approx(h2_norm_sq(f), rel=1e-8)
    assert result.final == pytest.approx(h2_norm_sq(f), rel=2e-2)


def test_nearly_invariant_consistency_in_rank_one(rank1_half):
    phi = np.array([0.0, 1.0]) / np.sqrt(2.0)  # normalized generator of z H
    sched = LimitSchedule(4, 9)
    for coeffs in ([0.0, 1.0], [0.0, 0.5, 0.25], [0.0, 1.0, 0.0, -0.5],
                   [0.0, 0.3, 0.3, 0.1], [0.0, 0.0, 1.0]):
        f = np.array(coeffs, dtype=complex)
        result = nearly_invariant_norm(rank1_half, phi, f, sched)
        target = rank1_half.poly_norm_sq(f)
        assert abs(result.final - target) / target < 2e-2


def test_quotient_membership_self(rank1_half):
    phi = np.array([0.0, 1.0]) / np.sqrt(2.0)
    assert shift_subspace_membership(rank1_half, phi, phi).member


def test_quotient_membership_pole(h2):
    report = shift_subspace_membership(h2, np.array([0.0, 1.0]), np.array([1.0]))
    assert not report.member
    assert "pole" in report.evidence


def test_quotient_membership_monomial_case(rank1_half):
    phi = np.array([0.0, 1.0]) / np.sqrt(2.0)
    assert shift_subspace_membership(rank1_half, phi, np.array([0.0, 0.0, 1.0])).member


def test_quotient_membership_interior_pole_detected(h2):
    # f / phi has a pole at 0.9 inside the disk
    phi = np.array([-0.9, 1.0])  # z - 0.9
    f = np.array([1.0])
    report = shift_subspace_membership(h2, phi, f, degree=512)
    assert not report.member
