"""Model spaces of finite Blaschke products and backward-shift-invariant
intersections, polynomial density residuals, the nearly-invariant norm
formula, and the quotient membership test for forward-shift-invariant
subspaces."""

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cholesky, solve_triangular

from .errors import ConfigError, NumericalError
from .model import SpaceHandle
from .series import (
    as_coeffs,
    convolve,
    divided_difference,
    horner,
    series_divide,
    shift_down,
    shift_up,
    szego_taylor,
)


@dataclass
class BlaschkeProduct:
    """Finite Blaschke product with the standard positive normalization of
    each factor; zeros at the origin contribute plain factors of z."""

    zeros: list

    def __post_init__(self):
        self.zeros = [complex(a) for a in self.zeros]
        if not self.zeros:
            raise ValueError("need at least one zero")
        for a in self.zeros:
            if abs(a) >= 1.0:
                raise ValueError("Blaschke zeros must lie strictly inside the disk")

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.ones_like(z)
        for a in self.zeros:
            if a == 0:
                out = out * z
            else:
                out = out * (abs(a) / a) * (a - z) / (1.0 - np.conj(a) * z)
        return out if out.ndim else complex(out)

    def taylor(self, degree: int) -> np.ndarray:
        num = np.ones(1, dtype=complex)
        den = np.ones(1, dtype=complex)
        for a in self.zeros:
            if a == 0:
                num = convolve(num, np.array([0.0, 1.0]))
            else:
                num = convolve(num, (abs(a) / a) * np.array([a, -1.0]))
                den = convolve(den, np.array([1.0, -np.conj(a)]))
        return series_divide(num, den, degree)


def model_space_basis(theta: BlaschkeProduct, degree: int = 256) -> list[np.ndarray]:
    """A basis of H^2 (-) theta H^2: monomials for the zeros at the origin
    and a Szego kernel per nonzero zero (distinct nonzero zeros required)."""
    at_zero = sum(1 for a in theta.zeros if a == 0)
    others = [a for a in theta.zeros if a != 0]
    if np.unique(np.round(others, 14)).size != len(others):
        raise ValueError("nonzero Blaschke zeros must be distinct")
    basis = []
    for j in range(at_zero):
        e = np.zeros(j + 1, dtype=complex)
        e[j] = 1.0
        basis.append(e)
    for a in others:
        basis.append(szego_taylor(a, degree))
    return basis


@dataclass
class SubspaceBasis:
    """Orthonormalized members spanning a finite-dimensional subspace.

    ``gram`` is the Gram of the stored basis in the ambient norm (identity up
    to solver noise); ``raw_gram`` is the Gram of the pre-orthonormalization
    candidates that survived the membership filter."""

    pairs: list
    gram: np.ndarray
    coeffs: list = field(default_factory=list)
    raw_gram: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return len(self.pairs)


def _poly_inner(space, a, b) -> complex:
    """Ambient inner product of two polynomial members."""
    if hasattr(space, "inner") and isinstance(space, SpaceHandle):
        return space.inner(space.embed(a), space.embed(b))
    return space.inner(a, b)


def intersect_model_space(space, theta: BlaschkeProduct,
                          degree: int | None = None) -> SubspaceBasis:
    """Basis of (space) intersect K_theta, orthonormal in the space norm.

    Candidates come from the model-space basis; non-members are filtered out
    by the membership test and the rest Gram-Schmidted through a Cholesky of
    their Gram.
    """
    if not getattr(space, "mz_invariant", False):
        raise ConfigError("intersection machinery needs a forward-shift-invariant space")
    degree = degree if degree is not None else min(getattr(space, "degree", 256), 256)
    candidates = model_space_basis(theta, degree)
    members = []
    for c in candidates:
        if hasattr(space, "membership"):
            if space.membership(c).member:
                members.append(c)
        else:
            members.append(c)  # embedded Dirichlet spaces contain all polynomials
    if not members:
        return SubspaceBasis([], np.zeros((0, 0)))
    d = len(members)
    gm = np.empty((d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            gm[i, j] = _poly_inner(space, members[i], members[j])
    low = cholesky(0.5 * (gm + gm.conj().T), lower=True)
    width = max(m.size for m in members)
    rows = np.zeros((d, width), dtype=complex)
    for i, m in enumerate(members):
        rows[i, : m.size] = m
    ortho = solve_triangular(low, rows, lower=True)
    coeffs = [np.trim_zeros(row, "b") if np.any(row) else row[:1] for row in ortho]
    pairs = [space.embed(c) if hasattr(space, "embed") else c for c in coeffs]
    gram = np.empty((d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            gram[i, j] = _poly_inner(space, coeffs[i], coeffs[j])
    return SubspaceBasis(pairs, gram, coeffs=coeffs, raw_gram=gm)


def backward_invariance_residual(space, basis: SubspaceBasis) -> float:
    """Largest relative residual of projecting L(basis member) back onto the
    subspace; certifies backward-shift invariance of the intersection."""
    worst = 0.0
    for c in basis.coeffs:
        lc = shift_down(as_coeffs(c))
        total = space.poly_norm_sq(lc)
        if total <= 1e-24:
            continue
        proj = 0.0
        for b in basis.coeffs:
            coef = _poly_inner(space, lc, b)
            proj += abs(coef) ** 2
        rel = max(total - proj, 0.0) / total
        worst = max(worst, float(np.sqrt(rel)))
    return worst


@dataclass
class PolyDensityResult:
    degrees: list[int]
    residuals: np.ndarray
    truncated_solve: bool = False


def poly_density_residual(space, coeffs, degrees) -> PolyDensityResult:
    """Best polynomial-approximation residuals per degree in the space norm.

    Computed through one Cholesky of the monomial Gram, so the squared
    projections accumulate as partial sums of nonnegative terms and the
    residual sequence is exactly nonincreasing.
    """
    if not getattr(space, "mz_invariant", False):
        raise ConfigError("polynomial approximation needs a forward-shift-invariant space")
    degrees = sorted(int(d) for d in degrees)
    if not degrees or degrees[0] < 0:
        raise ConfigError("need a nonempty list of nonnegative degrees")
    c = as_coeffs(coeffs)
    dmax = degrees[-1]
    gm = np.empty((dmax + 1, dmax + 1), dtype=complex)
    mono = [np.eye(dmax + 1, dtype=complex)[k][: k + 1] for k in range(dmax + 1)]
    for i in range(dmax + 1):
        for j in range(i, dmax + 1):
            gm[i, j] = _poly_inner(space, mono[i], mono[j])
            gm[j, i] = np.conj(gm[i, j])
    b = np.array([_poly_inner(space, c, mono[i]) for i in range(dmax + 1)])
    norm_sq = float(np.real(_poly_inner(space, c, c)))
    truncated_solve = False
    try:
        low = cholesky(0.5 * (gm + gm.conj().T), lower=True)
        t = solve_triangular(low, b, lower=True)
        partial = 0.0
        partials = np.empty(dmax + 1)
        for k in range(dmax + 1):
            partial = partial + float(np.abs(t[k]) ** 2)
            partials[k] = partial
        proj_sq = partials[degrees]
    except np.linalg.LinAlgError:
        truncated_solve = True
        proj_sq = np.empty(len(degrees))
        kept = []
        for idx, d in enumerate(degrees):
            block = 0.5 * (gm[: d + 1, : d + 1] + gm[: d + 1, : d + 1].conj().T)
            vals, vecs = np.linalg.eigh(block)
            cut = vals > 1e-12 * max(vals[-1], 0.0)
            kept.append(int(cut.sum()))
            coords = vecs[:, cut].conj().T @ b[: d + 1]
            proj_sq[idx] = float(np.sum(np.abs(coords) ** 2 / vals[cut]))
        warnings.warn(f"Gram nearly singular; kept modes per degree: {kept}")
    residuals = np.sqrt(np.maximum(norm_sq - proj_sq, 0.0))
    return PolyDensityResult(degrees, residuals, truncated_solve)


@dataclass
class NearlyInvariantResult:
    rows: list[tuple[float, float]]
    final: float
    quotient_norm_sq: float
    skipped_fraction: float
    skip_log: list[tuple[float, int]] = field(default_factory=list)


def nearly_invariant_norm(space, phi, f, schedule=None,
                          n_quadrature: int = 4096) -> NearlyInvariantResult:
    """Estimate of the squared space norm of f through the nearly-invariant
    formula: ||f/phi||_2^2 plus the radial limit of the mean of
    ||z L^phi_{r lam} f||^2 - ||L^phi_{r lam} f||^2, where
    L^phi_lam f = L_lam (f - (f(lam)/phi(lam)) phi).

    Grid points where |phi| < 1e-6 are skipped and logged; more than 5%
    skipped aborts the estimate.
    """
    from .analysis import LimitSchedule  # local import to avoid a cycle

    phi = as_coeffs(phi)
    f = as_coeffs(f)
    schedule = schedule or LimitSchedule(k_min=4, k_max=8)
    zeta = np.exp(2j * np.pi * np.arange(n_quadrature) / n_quadrature)
    phi_b = horner(phi, zeta)
    f_b = horner(f, zeta)
    good = np.abs(phi_b) > 1e-9
    if np.mean(good) < 0.95:
        raise NumericalError("phi vanishes on too much of the boundary grid")
    quotient_norm_sq = float(np.mean(np.abs(f_b[good] / phi_b[good]) ** 2))
    width = max(phi.size, f.size)
    f_pad = np.zeros(width, dtype=complex)
    f_pad[: f.size] = f
    phi_pad = np.zeros(width, dtype=complex)
    phi_pad[: phi.size] = phi
    rows = []
    skip_log = []
    skipped = 0
    total = 0
    for r, m in schedule:
        lam = r * np.exp(2j * np.pi * np.arange(m) / m)
        phi_vals = horner(phi, lam)
        keep = np.abs(phi_vals) > 1e-6
        skip_log.append((r, int(np.sum(~keep))))
        skipped += int(np.sum(~keep))
        total += m
        vals = []
        for eta, pv in zip(lam[keep], phi_vals[keep]):
            ratio = horner(f, eta) / pv
            h = f_pad - ratio * phi_pad
            q = divided_difference(h, eta)
            vals.append(space.poly_norm_sq(shift_up(q)) - space.poly_norm_sq(q))
        if not vals:
            raise NumericalError("every quadrature node was skipped")
        rows.append((r, quotient_norm_sq + float(np.mean(vals))))
    frac = skipped / max(total, 1)
    if frac > 0.05:
        raise NumericalError(f"unreliable estimate: {frac:.1%} of nodes skipped")
    return NearlyInvariantResult(rows, rows[-1][1], quotient_norm_sq, frac, skip_log)


@dataclass
class QuotientMembershipReport:
    member: bool
    evidence: dict

    def __bool__(self):
        return self.member


def _tail_stable(coeffs: np.ndarray, label: str, evidence: dict) -> bool:
    """Square-summability heuristic: the last dyadic block of coefficients
    must not carry growing mass."""
    c = as_coeffs(coeffs)
    half = c.size // 2
    head = float(np.sum(np.abs(c[:half]) ** 2))
    tail = float(np.sum(np.abs(c[half:]) ** 2))
    evidence[label] = {"head": head, "tail": tail}
    return tail <= 0.05 * (head + tail) + 1e-20


def shift_subspace_membership(space, phi, f, degree: int = 2048) -> QuotientMembershipReport:
    """Membership of f in the shift-invariant subspace generated by phi.

    Criterion: f/phi belongs to the Hardy space and (f/phi) phi_1 belongs to
    the vector Hardy space, tested through power-series division (a pole
    inside the disk shows up as geometric coefficient growth)."""
    phi = as_coeffs(phi)
    f = as_coeffs(f)
    evidence = {}
    lead = 0
    while lead < phi.size and abs(phi[lead]) <= 1e-13:
        lead += 1
    if lead >= phi.size:
        raise ValueError("phi must be nonzero")
    if np.any(np.abs(f[:lead]) > 1e-13):
        evidence["pole"] = f"f/phi has a pole of order <= {lead} at the origin"
        return QuotientMembershipReport(False, evidence)
    q = series_divide(f[lead:] if lead else f, phi[lead:], degree)
    if not _tail_stable(q, "quotient", evidence):
        return QuotientMembershipReport(False, evidence)
    if isinstance(space, SpaceHandle) and space.mode == "analytic" and space.n:
        phi_pair = space.embed(phi)
        for i in range(space.n):
            prod = convolve(q, phi_pair.companions[i])[: degree + 1]
            if not _tail_stable(prod, f"companion_{i}", evidence):
                return QuotientMembershipReport(False, evidence)
    return QuotientMembershipReport(True, evidence)
