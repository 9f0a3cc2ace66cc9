"""Numerical verification of the structural identities of these spaces.

Everything here is phrased against a "space" object exposing
``poly_norm_sq``, ``norm``, ``companions_at``, ``kernel`` and
``mz_invariant`` (both the factored symbol handles and the embedded
Dirichlet-type spaces qualify).  The shift quantities are exact polynomial
coefficient operations; only the radial limits carry discretization.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .harmonic import log_diagnostic
from .series import (
    as_coeffs,
    divided_difference,
    h2_norm_sq,
    horner,
    shift_down,
    shift_up,
    szego_taylor,
)
from .symbols import MeasureSpec, RowSymbol


@dataclass
class LimitSchedule:
    """Radii r_k = 1 - 2**-k with per-radius quadrature grids.

    Grid sizes must satisfy M * (1 - r) >= 16 so that near-singular
    integrands stay resolved; the default M = 16 * 2**k sits exactly on the
    constraint.
    """

    k_min: int = 4
    k_max: int = 10
    grids: list[int] | None = None

    def __post_init__(self):
        if self.k_min < 1 or self.k_max < self.k_min:
            raise ConfigError("need 1 <= k_min <= k_max")
        if self.grids is None:
            self.grids = [16 * 2 ** k for k in self.levels]
        if len(self.grids) != len(self.levels):
            raise ConfigError("one grid size per radius required")
        for k, m in zip(self.levels, self.grids):
            if m * 2.0 ** (-k) < 16.0 - 1e-12:
                raise ConfigError(
                    f"grid {m} at radius 1 - 2**-{k} violates M * (1 - r) >= 16"
                )

    @property
    def levels(self) -> range:
        return range(self.k_min, self.k_max + 1)

    @property
    def radii(self) -> list[float]:
        return [1.0 - 2.0 ** (-k) for k in self.levels]

    def __iter__(self):
        return iter(zip(self.radii, self.grids))


def _divided_difference_all(c: np.ndarray, etas: np.ndarray) -> np.ndarray:
    """Columns are the coefficients of (f - f(eta)) / (z - eta), one per eta."""
    d = c.size - 1
    if d < 1:
        return np.zeros((1, etas.size), dtype=complex)
    q = np.empty((d, etas.size), dtype=complex)
    acc = np.zeros(etas.size, dtype=complex)
    for k in range(d, 0, -1):
        acc = c[k] + etas * acc
        q[k - 1] = acc
    return q


def _quadratic_form(space, mat: np.ndarray) -> np.ndarray:
    """Space norms squared of the polynomial columns of ``mat``."""
    g = space.monomial_gram(mat.shape[0] - 1)
    return np.einsum("am,ab,bm->m", np.conj(mat), g, mat).real


def _column_norms(space, mat: np.ndarray) -> np.ndarray:
    if hasattr(space, "monomial_gram") and getattr(space, "mode", "analytic") != "inner":
        return _quadratic_form(space, mat)
    return np.sum(np.abs(mat) ** 2, axis=0)


@dataclass
class LimitEstimate:
    rows: list[tuple[float, float]]
    final: float
    extrapolated: float | None

    @property
    def radii(self):
        return [r for r, _ in self.rows]

    @property
    def values(self):
        return [v for _, v in self.rows]


def _richardson(rows) -> float | None:
    if len(rows) < 2:
        return None
    (r1, v1), (r2, v2) = rows[-2], rows[-1]
    h1, h2 = 1.0 - r1, 1.0 - r2
    return float((h1 * v2 - h2 * v1) / (h1 - h2))


def norm_limit_estimate(space, coeffs, schedule: LimitSchedule | None = None) -> LimitEstimate:
    """Radial estimates of the squared space norm through the shift formula:
    ||f||_2^2 + mean over the circle of ||z L_{r lam} f||^2 - r^2 ||L_{r lam} f||^2.
    """
    c = as_coeffs(coeffs)
    schedule = schedule or LimitSchedule()
    base = h2_norm_sq(c)
    rows = []
    for r, m in schedule:
        lam = np.exp(2j * np.pi * np.arange(m) / m)
        q = _divided_difference_all(c, r * lam)
        zq = np.vstack([np.zeros((1, m), dtype=complex), q])
        vals = _column_norms(space, zq) - r ** 2 * _column_norms(space, q)
        rows.append((r, base + float(np.mean(vals))))
    return LimitEstimate(rows, rows[-1][1], _richardson(rows))


def pointwise_defect(space, coeffs, lam) -> tuple[float, float]:
    """Both sides of the pointwise identity
    ||z L_lam f||^2 - ||L_lam f||^2 = ||f_1(lam)||^2."""
    c = as_coeffs(coeffs)
    q = divided_difference(c, lam)
    lhs = space.poly_norm_sq(shift_up(q)) - space.poly_norm_sq(q)
    rhs = float(np.sum(np.abs(space.companions_at(c, lam)) ** 2))
    return float(lhs), rhs


def wandering_norm(space, coeffs, schedule: LimitSchedule | None = None) -> LimitEstimate:
    """Estimates of lim (1 - r^2) * mean ||L_{r lam} f||^2; zero exactly when
    the model has no unitary part."""
    c = as_coeffs(coeffs)
    schedule = schedule or LimitSchedule()
    rows = []
    for r, m in schedule:
        lam = np.exp(2j * np.pi * np.arange(m) / m)
        q = _divided_difference_all(c, r * lam)
        rows.append((r, (1.0 - r ** 2) * float(np.mean(_column_norms(space, q)))))
    return LimitEstimate(rows, rows[-1][1], _richardson(rows))


def backward_iterates(space, coeffs, n_max: int) -> np.ndarray:
    """Norms of successive backward shifts; nonincreasing by contractivity."""
    c = as_coeffs(coeffs)
    out = np.empty(n_max + 1)
    for k in range(n_max + 1):
        out[k] = float(np.sqrt(max(space.poly_norm_sq(c), 0.0)))
        c = shift_down(c)
    return out


def norm_identity_deviation(space, members) -> float:
    """max over the sample of | ||Lf||^2 - (||f||^2 - |f(0)|^2) |."""
    worst = 0.0
    for coeffs in members:
        c = as_coeffs(coeffs)
        lhs = space.poly_norm_sq(shift_down(c))
        rhs = space.poly_norm_sq(c) - abs(c[0]) ** 2
        worst = max(worst, abs(lhs - rhs))
    return worst


@dataclass
class MzReport:
    invariant: bool
    conclusive: bool
    log_estimate: float | None
    estimates: list[float]
    note: str = ""

    def __bool__(self):
        return self.invariant


def mz_test(symbol: RowSymbol, base_n: int = 4096, levels: int = 3,
            slack: float = 1.0) -> MzReport:
    """Forward-shift invariance test: integrability of log(1 - sum |b_i|^2)."""
    comps = [c.taylor for c in symbol.components]

    def defect(thetas):
        z = np.exp(1j * thetas)
        total = np.zeros_like(thetas)
        for c in comps:
            total += np.abs(horner(c, z)) ** 2
        return 1.0 - total

    verdict = log_diagnostic(defect, levels=levels, base_n=base_n, slack=slack)
    note = ""
    if symbol.truncated:
        note = "truncated symbol: verdict not conclusive for the full space"
    return MzReport(verdict.finite, not symbol.truncated, verdict.estimate,
                    verdict.estimates, note)


def cauchy_dual(gram: np.ndarray) -> np.ndarray:
    """Monomial Gram of the Cauchy dual space; diagonal Grams only.

    For a diagonal Gram diag(w) of a space with expansive backward structure
    (w nonincreasing, w_0 = 1) the dual Gram is diag(1/w), which again
    satisfies the normalized nondecreasing-weight axioms.
    """
    g = np.asarray(gram, dtype=complex)
    m = g.shape[0]
    off = g - np.diag(np.diagonal(g))
    if np.max(np.abs(off)) > 1e-10 * max(np.max(np.abs(g)), 1.0):
        raise NotImplementedError("Cauchy dual is supported for diagonal Grams only")
    w = np.diagonal(g).real
    if abs(w[0] - 1.0) > 1e-12:
        raise ValueError("normalization requires the constant to have norm 1")
    if np.any(np.diff(w) > 1e-12):
        raise ValueError("dualization requires nonincreasing diagonal weights")
    return np.diag(1.0 / w)


def bergman_dirichlet_unitary(coeffs) -> np.ndarray:
    """Coefficient action g_k -> g_k / (k + 1) of the averaging integral
    (1/z) int_0^z g; unitary from the Bergman space onto the Dirichlet space."""
    c = as_coeffs(coeffs)
    return c / np.arange(1, c.size + 1)


def shift_intertwine_residual(size: int = 64) -> float:
    """Operator-norm defect of U M_z^* U^{-1} = L on coefficient truncations,
    with M_z^* the Bergman-space adjoint of the forward shift."""
    k = np.arange(size)
    u = np.diag(1.0 / (k + 1.0))
    u_inv = np.diag(k + 1.0)
    mzstar = np.zeros((size, size))
    for j in range(1, size):
        mzstar[j - 1, j] = j / (j + 1.0)
    ell = np.eye(size, k=1)
    return float(np.linalg.norm(u @ mzstar @ u_inv - ell, ord=2))


@dataclass
class ReverseCarlesonReport:
    applicable: bool
    admits: bool | None
    sup_resolvent: float | None
    sup_kernel: float | None
    lam: np.ndarray
    h1: np.ndarray | None
    h2: np.ndarray | None
    g: np.ndarray | None
    radius_h1: float | None
    radius_h2: float | None
    note: str = ""


def _l1_growth(defect_sampler, base_n: int = 1024, levels: int = 3) -> bool:
    """True when 1/defect looks integrable: midpoint-grid quadrature means of
    the reciprocal must stabilize under genuine grid refinement (a boundary
    zero of the defect makes them grow without bound)."""
    floor = 1e-300
    means = []
    n = base_n
    for _ in range(levels):
        thetas = 2.0 * np.pi * (np.arange(n) + 0.5) / n
        vals = np.maximum(defect_sampler(thetas), floor)
        means.append(float(np.mean(1.0 / vals)))
        n *= 2
    return means[-1] <= 1.5 * means[-2]


def reverse_carleson(space, schedule: LimitSchedule | None = None,
                     lam_points: int = 64, deep_level: int = 16) -> ReverseCarlesonReport:
    """Reverse-Carleson diagnostics for a forward-shift-invariant space.

    h2(lam) = 1 / ((1 - r^2) k(r lam, r lam)) is formula-exact and evaluated
    at the deep radius 1 - 2**-deep_level; h1(lam) = (1 - r^2) ||k_{r lam}||^2
    needs the embedding and is capped at degree * (1 - r) >= 16, with both
    radii recorded.  For polynomial symbols the minimal boundary density
    g = 1 / (1 - sum |b_i|^2) is reported for comparison.
    """
    if not getattr(space, "mz_invariant", False):
        return ReverseCarlesonReport(False, None, None, None, np.zeros(0),
                                     None, None, None, None, None,
                                     note="criterion inapplicable: space is not "
                                          "forward-shift invariant")
    lam = np.exp(2j * np.pi * np.arange(lam_points) / lam_points)
    schedule = schedule or LimitSchedule(k_min=3, k_max=6)

    r_deep = 1.0 - 2.0 ** (-deep_level)
    h2 = np.array([1.0 / ((1.0 - r_deep ** 2) * space.kernel(r_deep * l, r_deep * l).real)
                   for l in lam])

    degree = getattr(space, "degree", None)
    sup_kernel = 0.0
    sup_resolvent = None
    h1 = None
    radius_h1 = None
    for r, _ in schedule:
        k_mean = float(np.mean([1.0 / ((1.0 - r ** 2) * space.kernel(r * l, r * l).real)
                                for l in lam]))
        sup_kernel = max(sup_kernel, k_mean)
        if degree is not None and degree * (1.0 - r) < 16.0:
            continue
        vals = np.array([space.norm(szego_taylor(r * l, degree or 256)) ** 2 for l in lam])
        h1 = (1.0 - r ** 2) * vals
        radius_h1 = r
        sup_resolvent = max(sup_resolvent or 0.0, float(np.mean(h1)))

    g = None
    admits = None
    symbol = getattr(space, "symbol", None)
    if symbol is not None:
        def defect_at(thetas):
            z = np.exp(1j * thetas)
            total = np.zeros_like(thetas)
            for c in symbol.components:
                total += np.abs(horner(c.taylor, z)) ** 2
            return 1.0 - total

        boundary_defect = np.maximum(defect_at(np.angle(lam)), 0.0)
        g = np.where(boundary_defect > 1e-14,
                     1.0 / np.maximum(boundary_defect, 1e-300), np.inf)
        admits = _l1_growth(defect_at)
    elif hasattr(space, "measure"):
        admits = dirichlet_reverse_carleson(space.measure, lam_points).admits
    return ReverseCarlesonReport(True, admits, sup_resolvent, sup_kernel, lam,
                                 h1, h2, g, radius_h1, r_deep)


@dataclass
class DirichletCarlesonReport:
    admits: bool
    integral: float
    lam: np.ndarray
    h: np.ndarray | None
    atoms: list = field(default_factory=list)

    def h_at(self, lam) -> float:
        total = 1.0
        for loc, weight in self.atoms:
            total += weight / abs(1.0 - np.conj(lam) * loc) ** 2
        return total


def dirichlet_reverse_carleson(measure: MeasureSpec, lam_points: int = 64) -> DirichletCarlesonReport:
    """Exact reverse-Carleson verdict for an atomic Dirichlet-type measure:
    it admits one iff sum c_i / (1 - |z_i|^2) is finite, and the minimal
    boundary density is h(lam) = 1 + sum c_i / |1 - conj(lam) z_i|^2."""
    if measure.ac_density is not None:
        raise NotImplementedError("atomic measures only")
    admits = True
    integral = 0.0
    for loc, weight in measure.atoms:
        gap = 1.0 - abs(loc) ** 2
        if gap <= 0.0:
            admits = False
            integral = np.inf
            break
        integral += weight / gap
    lam = np.exp(2j * np.pi * np.arange(lam_points) / lam_points)
    h = None
    if admits:
        h = np.ones(lam_points)
        for loc, weight in measure.atoms:
            h += weight / np.abs(1.0 - np.conj(lam) * loc) ** 2
    return DirichletCarlesonReport(admits, float(integral), lam, h,
                                   atoms=list(measure.atoms))
