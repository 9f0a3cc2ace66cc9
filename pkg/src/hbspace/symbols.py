"""Row symbols, reproducing kernels and the worked example spaces.

A row symbol is a tuple (b_1, ..., b_n) of analytic functions vanishing at
the origin with sum_i |b_i|^2 <= 1 on the disk; it determines the kernel

    k(z, lam) = (1 - sum_i b_i(z) conj(b_i(lam))) / (1 - conj(lam) z).

The empty symbol is the Hardy space; one inner component gives the classical
model spaces.  Point-mass Dirichlet-type spaces are handled through their
explicit isometric embedding instead of a symbol.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_factor, cho_solve, eigh, solve

from .errors import InvariantViolation, NumericalError
from .harmonic import DEFAULT_GRID, DiskFunction, boundary_from_taylor, grid_points
from .series import as_coeffs, divided_difference, h2_norm_sq, horner

_VALIDATION_SEED = 0x5EED
_CONTRACTION_SLOP = 1e-10
_INDEPENDENCE_TOL = 1e-10


@dataclass
class RowSymbol:
    """Validated row symbol; immutable after construction.

    ``truncated`` marks symbols standing in for an infinite-rank space, so
    that rank and invariance verdicts can be labeled as inconclusive.
    """

    components: list
    truncated: bool = False

    def __post_init__(self):
        comps = []
        for c in self.components:
            comps.append(c if isinstance(c, DiskFunction) else DiskFunction(c))
        self.components = comps
        self._validate()

    @property
    def rank_declared(self) -> int:
        return len(self.components)

    @property
    def n(self) -> int:
        return len(self.components)

    def coefficient_matrix(self) -> np.ndarray:
        if not self.components:
            return np.zeros((0, 1), dtype=complex)
        width = max(c.taylor.size for c in self.components)
        mat = np.zeros((len(self.components), width), dtype=complex)
        for i, c in enumerate(self.components):
            mat[i, : c.taylor.size] = c.taylor
        return mat

    def row_at(self, z) -> np.ndarray:
        """The row vector B(z) = (b_1(z), ..., b_n(z))."""
        return np.array([horner(c.taylor, z) for c in self.components])

    def boundary_rows(self, n_grid: int) -> np.ndarray:
        """Samples of the row on the circle grid, shape (n_grid, n)."""
        out = np.empty((n_grid, self.n), dtype=complex)
        for i, c in enumerate(self.components):
            out[:, i] = boundary_from_taylor(c.taylor, n_grid).samples
        return out

    def defect_samples(self, n_grid: int) -> np.ndarray:
        """1 - sum_i |b_i|^2 on the circle grid."""
        if self.n == 0:
            return np.ones(n_grid)
        rows = self.boundary_rows(n_grid)
        return 1.0 - np.sum(np.abs(rows) ** 2, axis=1)

    def _validate(self):
        for c in self.components:
            if abs(c.taylor[0]) > 1e-12:
                raise InvariantViolation("every symbol component must vanish at the origin")
        if not self.components:
            return
        mat = self.coefficient_matrix()
        sv = np.linalg.svd(mat, compute_uv=False)
        if sv[-1] <= _INDEPENDENCE_TOL:
            raise InvariantViolation(
                "symbol components are numerically linearly dependent "
                f"(smallest singular value {sv[-1]:.2e})"
            )
        bound = self.defect_samples(DEFAULT_GRID)
        if np.min(bound) < -_CONTRACTION_SLOP:
            raise InvariantViolation(
                "sum of squared component moduli exceeds 1 on the boundary "
                f"by {-np.min(bound):.2e}"
            )
        rng = np.random.default_rng(_VALIDATION_SEED)
        pts = rng.uniform(0, 0.999, 100) * np.exp(2j * np.pi * rng.uniform(0, 1, 100))
        interior = 1.0 - sum(np.abs(horner(c.taylor, pts)) ** 2 for c in self.components)
        if np.min(interior) < -_CONTRACTION_SLOP:
            raise InvariantViolation("sum of squared component moduli exceeds 1 inside the disk")


def _check_strict_interior(*points):
    for p in points:
        if abs(p) >= 1.0:
            raise ValueError(f"kernel arguments must satisfy |z| < 1, got |z| = {abs(p)}")


def kernel_eval(symbol: RowSymbol, z, lam) -> complex:
    """Reproducing kernel k(z, lam) of the space attached to the symbol."""
    _check_strict_interior(z, lam)
    num = 1.0 - complex(np.dot(symbol.row_at(z), np.conj(symbol.row_at(lam))))
    return num / (1.0 - np.conj(lam) * z)


def gram_matrix(symbol: RowSymbol, points) -> np.ndarray:
    """Hermitian Gram G[j, i] = k(lam_j, lam_i) of kernel functions."""
    pts = np.asarray(points, dtype=complex)
    _check_strict_interior(*pts)
    if np.unique(np.round(pts, 14)).size != pts.size:
        raise ValueError("Gram points must be distinct")
    if symbol.n:
        rows = np.array([symbol.row_at(p) for p in pts])  # (m, n)
        bb = rows @ rows.conj().T  # (j, i) -> B(lam_j) B(lam_i)*
    else:
        bb = np.zeros((pts.size, pts.size), dtype=complex)
    g = (1.0 - bb) / (1.0 - np.conj(pts)[None, :] * pts[:, None])
    return 0.5 * (g + g.conj().T)


def delta_boundary(symbol: RowSymbol, zeta) -> np.ndarray:
    """Defect matrix (I - B(zeta)* B(zeta))^(1/2) at a boundary point."""
    row = symbol.row_at(zeta)[None, :]  # 1 x n
    m = np.eye(symbol.n, dtype=complex) - row.conj().T @ row
    vals, vecs = eigh(0.5 * (m + m.conj().T))
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def weighted_space_symbol(weights, degree: int | None = None,
                          n_boundary: int = DEFAULT_GRID,
                          truncated: bool = False) -> RowSymbol:
    """Symbol of the weighted Hardy space with coefficient weights w_k.

    Requires w_0 = 1 and a nondecreasing sequence; component k is
    sqrt(1/w_{k-1} - 1/w_k) z^k, with identically-zero components dropped.
    Weights beyond the provided list are treated as constant; if ``degree``
    cuts off a still-increasing tail the symbol is marked truncated.
    """
    w = np.asarray(weights, dtype=float)
    if w.size == 0 or abs(w[0] - 1.0) > 1e-14:
        raise ValueError("weight sequence must start at w_0 = 1")
    if np.any(np.diff(w) < -1e-14) or np.any(w <= 0):
        raise ValueError("weights must be positive and nondecreasing")
    if degree is not None and w.size - 1 > degree:
        if np.any(np.diff(w[degree:]) > 0):
            truncated = True
        w = w[: degree + 1]
    comps = []
    for k in range(1, w.size):
        gap = 1.0 / w[k - 1] - 1.0 / w[k]
        if gap > 1e-15:
            c = np.zeros(k + 1, dtype=complex)
            c[k] = np.sqrt(gap)
            comps.append(DiskFunction(c, n_boundary=n_boundary))
    return RowSymbol(comps, truncated=truncated)


@dataclass
class MeasureSpec:
    """Finite positive Borel measure: point masses in the closed disk plus an
    optional absolutely continuous boundary density."""

    atoms: list = field(default_factory=list)
    ac_density: np.ndarray | None = None

    def __post_init__(self):
        cleaned = []
        for loc, weight in self.atoms:
            loc = complex(loc)
            weight = float(weight)
            if weight <= 0:
                raise ValueError("atom weights must be positive")
            if abs(loc) > 1.0 + 1e-12:
                raise ValueError("atom locations must lie in the closed disk")
            cleaned.append((loc, weight))
        self.atoms = cleaned

    @property
    def total_mass(self) -> float:
        mass = sum(w for _, w in self.atoms)
        if self.ac_density is not None:
            samples = getattr(self.ac_density, "samples", self.ac_density)
            mass += float(np.mean(np.real(samples)))
        return mass


class DirichletSpace:
    """Local Dirichlet space of a finitely supported measure, handled through
    its explicit isometric embedding f -> (f, sqrt(c_i) (f - f(z_i))/(z - z_i)).

    The embedding coordinates are exact polynomial operations, so norms and
    Grams here are exact up to roundoff; the reproducing kernel is recovered
    from the monomial Gram of the degree-truncated space.
    """

    mz_invariant = True
    truncated = False

    def __init__(self, measure: MeasureSpec, degree: int = 128):
        if measure.ac_density is not None:
            raise NotImplementedError(
                "Dirichlet-type spaces are supported for purely atomic measures"
            )
        if not measure.atoms:
            raise ValueError("measure must carry at least one atom")
        locs = [loc for loc, _ in measure.atoms]
        if np.unique(np.round(locs, 14)).size != len(locs):
            raise ValueError("atoms must be at distinct locations")
        self.measure = measure
        self.degree = degree
        self._gram_cache: dict[int, np.ndarray] = {}
        self._chol_cache: dict[int, tuple] = {}

    @property
    def rank(self) -> int:
        return len(self.measure.atoms)

    @property
    def n(self) -> int:
        return len(self.measure.atoms)

    def companions(self, coeffs) -> list[np.ndarray]:
        """Embedding coordinates sqrt(c_i) (f - f(z_i)) / (z - z_i)."""
        c = as_coeffs(coeffs)
        return [np.sqrt(w) * divided_difference(c, loc) for loc, w in self.measure.atoms]

    def companions_at(self, coeffs, lam) -> np.ndarray:
        return np.array([horner(q, lam) for q in self.companions(coeffs)])

    def poly_norm_sq(self, coeffs) -> float:
        c = as_coeffs(coeffs)
        return h2_norm_sq(c) + sum(h2_norm_sq(q) for q in self.companions(c))

    def norm(self, coeffs) -> float:
        return float(np.sqrt(max(self.poly_norm_sq(coeffs), 0.0)))

    def inner(self, a, b) -> complex:
        """Space inner product <a, b> through the embedding."""
        ca, cb = as_coeffs(a), as_coeffs(b)
        total = _h2_pair(ca, cb)
        for qa, qb in zip(self.companions(ca), self.companions(cb)):
            total += _h2_pair(qa, qb)
        return total

    def monomial_gram(self, degree: int) -> np.ndarray:
        """Gram G[j, k] = <z^k, z^j> of the monomials up to ``degree``."""
        if degree in self._gram_cache:
            return self._gram_cache[degree]
        m = degree + 1
        g = np.eye(m, dtype=complex)
        for loc, weight in self.measure.atoms:
            qm = np.zeros((m, degree), dtype=complex)
            for j in range(1, m):
                qm[j, :j] = loc ** np.arange(j - 1, -1, -1)
            g += weight * (qm.conj() @ qm.T)
        self._gram_cache[degree] = g
        return g

    def _kernel_solver(self, degree: int):
        if degree not in self._chol_cache:
            self._chol_cache[degree] = cho_factor(self.monomial_gram(degree))
        return self._chol_cache[degree]

    def kernel(self, z, lam, degree: int | None = None) -> complex:
        """Reproducing kernel of the degree-truncated space; converges
        geometrically to the kernel of the full space for |z|, |lam| < 1."""
        _check_strict_interior(z, lam)
        degree = self.degree if degree is None else degree
        solver = self._kernel_solver(degree)
        mono_lam = np.conj(lam) ** np.arange(degree + 1)
        alpha = cho_solve(solver, mono_lam)
        return complex(np.dot(z ** np.arange(degree + 1), alpha))

    def gram(self, points, degree: int | None = None) -> np.ndarray:
        """Gram of kernel functions at interior points; PSD by construction."""
        pts = np.asarray(points, dtype=complex)
        _check_strict_interior(*pts)
        degree = self.degree if degree is None else degree
        vand = pts[:, None] ** np.arange(degree + 1)[None, :]
        solver = self._kernel_solver(degree)
        k = vand @ cho_solve(solver, vand.conj().T)
        return 0.5 * (k + k.conj().T)

    def kernel_taylor(self, lam, degree: int | None = None) -> np.ndarray:
        degree = self.degree if degree is None else degree
        solver = self._kernel_solver(degree)
        mono_lam = np.conj(lam) ** np.arange(degree + 1)
        return cho_solve(solver, mono_lam)


def _h2_pair(a, b) -> complex:
    m = min(a.size, b.size)
    return complex(np.vdot(b[:m], a[:m]))


def dirichlet_point_mass_space(measure: MeasureSpec, degree: int = 128) -> DirichletSpace:
    """Construct the embedded Dirichlet-type space of an atomic measure."""
    return DirichletSpace(measure, degree=degree)


def dirichlet_norm(coeffs, measure: MeasureSpec, n_grid: int = DEFAULT_GRID) -> float:
    """Dirichlet-type norm by direct boundary quadrature (independent of the
    embedding): ||f||_2^2 plus one local-energy integral per atom."""
    if measure.ac_density is not None:
        raise NotImplementedError("quadrature oracle supports atomic measures only")
    c = as_coeffs(coeffs)
    f_samples = boundary_from_taylor(c, n_grid).samples
    zeta = grid_points(n_grid)
    total = float(np.mean(np.abs(f_samples) ** 2))
    dcoeffs = c[1:] * np.arange(1, c.size) if c.size > 1 else np.zeros(1)
    for loc, weight in measure.atoms:
        fz = horner(c, loc)
        gap = zeta - loc
        quotient = np.empty(n_grid, dtype=complex)
        regular = np.abs(gap) > 1e-9
        quotient[regular] = (f_samples[regular] - fz) / gap[regular]
        if np.any(~regular):
            quotient[~regular] = horner(dcoeffs, loc)
        total += weight * float(np.mean(np.abs(quotient) ** 2))
    return float(np.sqrt(total))


def estimate_rank(gram: np.ndarray, tol: float = 1e-6,
                  keep: int | None = None) -> int:
    """Numerical rank of I - L L* read off a monomial Gram matrix.

    The adjoint of the backward shift is compressed to the span of the
    monomials; only the leading ``keep`` block of the resulting quadratic
    form is trusted (the top corner carries pure truncation artifacts).
    """
    g = np.asarray(gram, dtype=complex)
    m = g.shape[0]
    if g.shape != (m, m):
        raise ValueError("Gram matrix must be square")
    evals = np.linalg.eigvalsh(0.5 * (g + g.conj().T))
    if evals[0] < -1e-10 * max(np.trace(g).real, 1.0):
        raise NumericalError("monomial Gram is not positive semidefinite")
    shift = np.eye(m, k=1)  # matrix of L on monomial coefficients
    adj = solve(g, shift.conj().T @ g)  # compression of L*
    q = g - g @ (shift @ adj)
    keep = m // 2 if keep is None else keep
    qk = q[:keep, :keep]
    spectrum = np.linalg.eigvalsh(0.5 * (qk + qk.conj().T))
    top = float(spectrum[-1]) if spectrum.size else 0.0
    if top <= 1e-12 * max(np.trace(g).real, 1.0):
        return 0
    return int(np.sum(spectrum > tol * top))
