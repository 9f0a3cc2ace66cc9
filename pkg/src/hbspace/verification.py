"""Per-space invariant battery behind the ``verify`` subcommand.

Each check returns (name, passed, detail); the set adapts to what the space
supports (factored symbol handles vs embedded Dirichlet spaces vs inner-type
handles)."""

from dataclasses import dataclass

import numpy as np

from .harmonic import fourier_coeffs, riesz_project, synthesize
from .model import SpaceHandle
from .series import shift_down
from .symbols import DirichletSpace, dirichlet_norm, estimate_rank


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def _random_interior(rng, count, radius=0.85):
    return rng.uniform(0.05, radius, count) * np.exp(2j * np.pi * rng.uniform(0, 1, count))


def _check_fft_roundtrip(space, rng):
    n = getattr(space, "n_grid", 1024)
    coeffs = rng.normal(size=n) + 1j * rng.normal(size=n)
    grid = synthesize(coeffs)
    back = fourier_coeffs(grid)
    err = float(np.max(np.abs(back - coeffs)) / np.max(np.abs(coeffs)))
    return CheckResult("fft-roundtrip", err <= 1e-12, f"relative error {err:.2e}")


def _check_riesz(space, rng):
    n = getattr(space, "n_grid", 1024)
    coeffs = rng.normal(size=n) + 1j * rng.normal(size=n)
    analytic, coanalytic = riesz_project(coeffs)
    exact = bool(np.all(analytic + coanalytic == coeffs))
    return CheckResult("riesz-split", exact, "parts sum to the input exactly")


def _check_kernel_normalization(space, rng):
    pts = _random_interior(rng, 20)
    worst = max(abs(space.kernel(z, 0.0) - 1.0) for z in pts)
    return CheckResult("kernel-normalization", worst <= 1e-14,
                       f"max |k(z,0) - 1| = {worst:.2e}")


def _check_gram_psd(space, rng):
    pts = _random_interior(rng, 50)
    g = space.gram(pts)
    low = float(np.linalg.eigvalsh(g)[0])
    floor = -1e-10 * float(np.trace(g).real)
    return CheckResult("gram-psd", low >= floor,
                       f"min eigenvalue {low:.2e} (floor {floor:.2e})")


def _check_defect_identity(space, rng):
    res = space.defect_identity_residual()
    return CheckResult("defect-identity", res <= 1e-8, f"sup residual {res:.2e}")


def _check_embed_constant(space, rng):
    pair = space.embed(np.array([1.0]))
    worst = max(pair.residual,
                float(np.max(np.abs(pair.companions))) if pair.companions.size else 0.0)
    return CheckResult("embed-constant", worst <= 1e-12,
                       f"companions of 1 bounded by {worst:.2e}")


def _check_isometry(space, rng):
    pts = _random_interior(rng, 6)
    coeff = rng.normal(size=6) + 1j * rng.normal(size=6)
    g = space.gram(pts)
    target = float(np.real(np.vdot(coeff, g @ coeff)))
    combo = np.zeros(space.degree + 1, dtype=complex)
    for c, lam in zip(coeff, pts):
        combo += c * space.kernel_taylor(lam)
    value = space.embed(combo).norm_sq
    rel = abs(value - target) / target
    return CheckResult("model-isometry", rel <= 1e-6, f"relative error {rel:.2e}")


def _check_contractivity(space, rng):
    worst = -np.inf
    for _ in range(20):
        c = rng.normal(size=9) + 1j * rng.normal(size=9)
        before = space.poly_norm_sq(c)
        after = space.poly_norm_sq(shift_down(c))
        worst = max(worst, after - before)
    return CheckResult("backward-contractivity", worst <= 1e-10,
                       f"max norm-sq increase {worst:.2e}")


def _check_roundtrip_shift(space, rng):
    c = rng.normal(size=7) + 1j * rng.normal(size=7)
    pair = space.embed(c)
    back = space.backward(space.forward(pair))
    err = float(np.max(np.abs(back.f[: c.size] - c)))
    if pair.companions.size:
        w = min(back.companions.shape[1], pair.companions.shape[1])
        err = max(err, float(np.max(np.abs(back.companions[:, :w] - pair.companions[:, :w]))))
    return CheckResult("shift-roundtrip", err <= 1e-10, f"max coefficient error {err:.2e}")


def _check_membership_constant(space, rng):
    report = space.membership(np.array([1.0]))
    return CheckResult("membership-constant", bool(report.member),
                       f"residual {report.residual:.2e}")


def _check_dirichlet_norms(space, rng):
    worst = 0.0
    for _ in range(10):
        c = rng.normal(size=7) + 1j * rng.normal(size=7)
        direct = dirichlet_norm(c, space.measure)
        embedded = space.norm(c)
        worst = max(worst, abs(direct - embedded) / embedded)
    return CheckResult("dirichlet-norm-agreement", worst <= 1e-6,
                       f"max relative gap {worst:.2e}")


def _check_dirichlet_rank(space, rng):
    got = estimate_rank(space.monomial_gram(48))
    return CheckResult("defect-rank", got == space.rank,
                       f"numerical rank {got}, declared {space.rank}")


def verify_space(space, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    checks = [_check_fft_roundtrip, _check_riesz, _check_kernel_normalization,
              _check_gram_psd]
    if isinstance(space, SpaceHandle):
        if space.mode == "analytic":
            checks += [_check_defect_identity, _check_embed_constant,
                       _check_isometry, _check_contractivity,
                       _check_roundtrip_shift, _check_membership_constant]
        else:
            checks += [_check_embed_constant, _check_membership_constant]
    elif isinstance(space, DirichletSpace):
        checks += [_check_contractivity, _check_dirichlet_norms,
                   _check_dirichlet_rank]
    return [fn(space, rng) for fn in checks]
