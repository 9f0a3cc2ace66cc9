"""The isometric model embedding f -> (f, f_1).

A member f of the space attached to a row symbol B has a unique companion
vector f_1 in the Hardy space of C^n making B* f + A* f_1 strictly
co-analytic, where A is the outer defect factor with A*A + B*B = I.  The
squared space norm is ||f||_2^2 + ||f_1||_2^2.

The analytic-part condition is solved in one of two ways: by pointwise
division against A* on the grid followed by an analytic projection (fast,
for factors bounded away from zero) or by back-substitution on the
upper-triangular block-Toeplitz coefficient system (stable when A degenerates
on the boundary).  Either way the returned residual is measured directly on
the grid, so it certifies the solve.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ExtremeTypeError, NumericalError
from .harmonic import DEFAULT_GRID
from .series import (
    as_coeffs,
    geometric_divide,
    h2_norm_sq,
    horner,
    shift_down,
    shift_up,
)
from .spectral import MatrixSymbol, factor_residual, matrix_outer_factor
from .symbols import RowSymbol, gram_matrix, kernel_eval

_INNER_TOL = 1e-10
_FFT_PATH_FLOOR = 1e-2


@dataclass
class ModelPair:
    """A member together with its companion coefficients (n, deg+1)."""

    f: np.ndarray
    companions: np.ndarray
    residual: float

    def __post_init__(self):
        self.f = as_coeffs(self.f)
        self.companions = np.atleast_2d(np.asarray(self.companions, dtype=complex))

    @property
    def n(self) -> int:
        return self.companions.shape[0]

    @property
    def norm_sq(self) -> float:
        total = h2_norm_sq(self.f)
        if self.companions.size:
            total += float(np.sum(np.abs(self.companions) ** 2))
        return total

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq))

    def companion_at(self, lam) -> np.ndarray:
        if self.n == 0:
            return np.zeros(0, dtype=complex)
        return np.array([horner(row, lam) for row in self.companions])


@dataclass
class MembershipReport:
    member: bool
    residual: float
    norm: float | None
    evidence: dict

    def __bool__(self):
        return self.member


class SpaceHandle:
    """A ready-to-compute space: symbol, defect factor, caches.

    Modes: ``analytic`` (the defect factor exists; forward shift available)
    and ``inner`` (unimodular scalar symbol; the space sits isometrically in
    the Hardy space and only backward-shift operations apply).  Construction
    fails with ExtremeTypeError for symbols whose log-defect is not
    integrable and that are not inner.
    """

    def __init__(self, symbol: RowSymbol, n_grid: int = DEFAULT_GRID,
                 degree: int | None = None, tol_membership: float = 1e-7,
                 tol_solve: float = 1e-10):
        self.symbol = symbol
        self.n_grid = n_grid
        self.degree = n_grid // 4 if degree is None else degree
        self.tol_membership = tol_membership
        self.tol_solve = tol_solve
        self.factor: MatrixSymbol | None = None
        self.factorization = None
        self._gram: np.ndarray | None = None
        self._monomial_pairs: list[ModelPair] = []

        n = symbol.n
        if n == 0:
            self.mode = "analytic"
            self._rows = np.zeros((n_grid, 0), dtype=complex)
            self._a_samples = np.zeros((n_grid, 0, 0), dtype=complex)
            self._use_fft_path = True
            return
        self._rows = symbol.boundary_rows(n_grid)
        defect = 1.0 - np.sum(np.abs(self._rows) ** 2, axis=1)
        if n == 1 and float(np.max(np.abs(defect))) <= _INNER_TOL:
            self.mode = "inner"
            self._a_samples = None
            self._use_fft_path = False
            return
        eye = np.eye(n, dtype=complex)
        phi = eye[None] - self._rows.conj()[:, :, None] * self._rows[:, None, :]
        report = matrix_outer_factor(phi)
        self.mode = "analytic"
        self.factor = report.symbol
        self.factorization = report
        self._a_samples = report.symbol.samples(n_grid)
        smin = float(np.min(np.linalg.svd(self._a_samples, compute_uv=False)))
        self._use_fft_path = smin > _FFT_PATH_FLOOR

    # -- basic structure ---------------------------------------------------

    @property
    def n(self) -> int:
        return self.symbol.n

    @property
    def mz_invariant(self) -> bool:
        return self.mode == "analytic"

    @property
    def truncated(self) -> bool:
        return self.symbol.truncated

    def defect_identity_residual(self) -> float:
        """sup on the grid of || A*A + B*B - I ||."""
        if self.mode != "analytic" or self.n == 0:
            return 0.0
        eye = np.eye(self.n, dtype=complex)
        phi = eye[None] - self._rows.conj()[:, :, None] * self._rows[:, None, :]
        return factor_residual(self.factor, phi)

    def kernel(self, z, lam) -> complex:
        return kernel_eval(self.symbol, z, lam)

    def gram(self, points) -> np.ndarray:
        return gram_matrix(self.symbol, points)

    def kernel_taylor(self, lam, degree: int | None = None) -> np.ndarray:
        """Taylor coefficients of the kernel function at lam."""
        degree = self.degree if degree is None else degree
        width = max([c.taylor.size for c in self.symbol.components], default=1)
        num = np.zeros(width, dtype=complex)
        num[0] = 1.0
        if self.n:
            blam = np.conj(self.symbol.row_at(lam))
            for coef, comp in zip(blam, self.symbol.components):
                num[: comp.taylor.size] -= coef * comp.taylor
        return geometric_divide(num, np.conj(lam), degree)

    # -- the embedding -----------------------------------------------------

    def _boundary_values(self, coeffs) -> np.ndarray:
        c = as_coeffs(coeffs)
        if c.size > self.n_grid // 2:
            raise ValueError("degree exceeds what the grid resolves")
        padded = np.zeros(self.n_grid, dtype=complex)
        padded[: c.size] = c
        return np.fft.ifft(padded) * self.n_grid

    def _companion_boundary(self, companions: np.ndarray) -> np.ndarray:
        padded = np.zeros((self.n_grid, self.n), dtype=complex)
        width = companions.shape[1]
        padded[:width] = companions.T
        return np.fft.ifft(padded, axis=0) * self.n_grid

    def _residual_field(self, coeffs, companions: np.ndarray) -> tuple[float, np.ndarray]:
        """Grid residual of the co-analyticity condition.

        Returns (analytic-part norm, full order spectrum of B*f + A*f_1),
        the spectrum in FFT layout for later co-analytic reads.
        """
        if self.n == 0:
            return 0.0, np.zeros((self.n_grid, 0), dtype=complex)
        fsamp = self._boundary_values(coeffs)
        r = self._rows.conj() * fsamp[:, None]
        if self.mode == "analytic" and companions.size:
            f1samp = self._companion_boundary(companions)
            ah = np.conj(np.transpose(self._a_samples, (0, 2, 1)))
            r = r + np.einsum("jik,jk->ji", ah, f1samp)
        rhat = np.fft.fft(r, axis=0) / self.n_grid
        plus = rhat[: self.n_grid // 2]
        return float(np.sqrt(np.sum(np.abs(plus) ** 2))), rhat

    def _u_plus_coeffs(self, coeffs) -> np.ndarray:
        """Analytic-part coefficients of B* f, shape (N/2, n)."""
        fsamp = self._boundary_values(coeffs)
        u = self._rows.conj() * fsamp[:, None]
        uhat = np.fft.fft(u, axis=0) / self.n_grid
        return uhat[: self.n_grid // 2]

    def _solve_fft(self, u_plus: np.ndarray, degree: int) -> np.ndarray:
        full = np.zeros((self.n_grid, self.n), dtype=complex)
        full[: u_plus.shape[0]] = u_plus
        u_samp = np.fft.ifft(full, axis=0) * self.n_grid
        ah = np.conj(np.transpose(self._a_samples, (0, 2, 1)))
        w = np.linalg.solve(ah, u_samp[:, :, None])[:, :, 0]
        what = np.fft.fft(w, axis=0) / self.n_grid
        return -what[: degree + 1].T.copy()

    def _solve_triangular(self, u_plus: np.ndarray, degree: int) -> np.ndarray:
        blocks = self.factor.coeffs
        ah = [b.conj().T for b in blocks]
        a0_inv = np.linalg.inv(ah[0])
        p = len(ah) - 1
        x = np.zeros((degree + 1, self.n), dtype=complex)
        for k in range(degree, -1, -1):
            rhs = -u_plus[k] if k < u_plus.shape[0] else np.zeros(self.n, dtype=complex)
            for m in range(1, p + 1):
                if k + m <= degree:
                    rhs = rhs - ah[m] @ x[k + m]
            x[k] = a0_inv @ rhs
        return x.T.copy()

    def embed(self, coeffs) -> ModelPair:
        """Compute the model pair of f; the residual certifies the solve."""
        c = as_coeffs(coeffs)
        if c.size - 1 > self.degree:
            raise ValueError(
                f"input degree {c.size - 1} exceeds the handle's budget {self.degree}"
            )
        if self.n == 0:
            return ModelPair(c, np.zeros((0, c.size), dtype=complex), 0.0)
        if self.mode == "inner":
            residual, _ = self._residual_field(c, np.zeros((0, 0)))
            return ModelPair(c, np.zeros((0, c.size), dtype=complex), residual)
        u_plus = self._u_plus_coeffs(c)
        if self._use_fft_path:
            companions = self._solve_fft(u_plus, self.degree)
        else:
            companions = self._solve_triangular(u_plus, self.degree)
        residual, _ = self._residual_field(c, companions)
        return ModelPair(c, companions, residual)

    def pair_from_parts(self, coeffs, companions) -> ModelPair:
        """Assemble a pair from explicit parts, recertifying the residual."""
        c = as_coeffs(coeffs)
        comp = np.atleast_2d(np.asarray(companions, dtype=complex))
        if self.n == 0 or self.mode == "inner":
            comp = np.zeros((0, c.size), dtype=complex)
        residual, _ = self._residual_field(c, comp)
        return ModelPair(c, comp, residual)

    def norm(self, coeffs) -> float:
        return self.embed(coeffs).norm

    def inner(self, pair_a: ModelPair, pair_b: ModelPair) -> complex:
        """Space inner product through the embedding."""
        m = min(pair_a.f.size, pair_b.f.size)
        total = complex(np.vdot(pair_b.f[:m], pair_a.f[:m]))
        if pair_a.n and pair_b.n:
            w = min(pair_a.companions.shape[1], pair_b.companions.shape[1])
            total += complex(np.vdot(pair_b.companions[:, :w].ravel(),
                                     pair_a.companions[:, :w].ravel()))
        return total

    # -- fast polynomial norms via the monomial Gram ------------------------

    def monomial_gram(self, degree: int) -> np.ndarray:
        """Gram G[j, k] = <z^k, z^j> of monomials in the space norm."""
        if self.mode == "inner":
            raise NumericalError("monomial Gram undefined: monomials may not be members")
        while len(self._monomial_pairs) <= degree:
            k = len(self._monomial_pairs)
            e = np.zeros(k + 1, dtype=complex)
            e[k] = 1.0
            self._monomial_pairs.append(self.embed(e))
        if self._gram is None or self._gram.shape[0] <= degree:
            m = degree + 1
            g = np.empty((m, m), dtype=complex)
            for j in range(m):
                for k in range(j, m):
                    g[j, k] = self.inner(self._monomial_pairs[k], self._monomial_pairs[j])
                    g[k, j] = np.conj(g[j, k])
            self._gram = g
        return self._gram[: degree + 1, : degree + 1]

    def poly_norm_sq(self, coeffs) -> float:
        """Squared space norm of a polynomial member.

        Inner mode uses the Hardy norm (the space embeds isometrically);
        analytic mode uses the cached monomial Gram.
        """
        c = as_coeffs(coeffs)
        if self.mode == "inner" or self.n == 0:
            return h2_norm_sq(c)
        g = self.monomial_gram(c.size - 1)
        return float(np.real(np.vdot(c, g @ c)))

    def companions_at(self, coeffs, lam) -> np.ndarray:
        return self.embed(coeffs).companion_at(lam)

    # -- shift actions -------------------------------------------------------

    def backward(self, pair: ModelPair) -> ModelPair:
        """The backward shift acts coordinatewise on a model pair."""
        f = shift_down(pair.f)
        if pair.n:
            comp = np.array([shift_down(row) for row in pair.companions])
        else:
            comp = np.zeros((0, f.size), dtype=complex)
        return self.pair_from_parts(f, comp)

    def _coanalytic_spectrum(self, pair: ModelPair) -> np.ndarray:
        _, rhat = self._residual_field(pair.f, pair.companions)
        return rhat

    def forward_constant(self, pair: ModelPair) -> np.ndarray:
        """The constant companion correction of the forward shift."""
        if self.mode != "analytic":
            raise ExtremeTypeError("forward shift unsupported for inner-type spaces")
        if self.n == 0:
            return np.zeros(0, dtype=complex)
        rhat = self._coanalytic_spectrum(pair)
        v = rhat[-1]  # coefficient of zeta**(-1), the constant mode of zeta * u
        a0h = self.factor.at_zero().conj().T
        return -np.linalg.solve(a0h, v)

    def forward(self, pair: ModelPair) -> ModelPair:
        """Model pair of z f: companion is z f_1 plus a constant correction."""
        c = self.forward_constant(pair)
        f = shift_up(pair.f)
        if self.n:
            comp = np.zeros((self.n, pair.companions.shape[1] + 1), dtype=complex)
            comp[:, 0] = c
            comp[:, 1:] = pair.companions
        else:
            comp = np.zeros((0, f.size), dtype=complex)
        return self.pair_from_parts(f, comp)

    def resolvent_correction(self, pair: ModelPair, lam) -> np.ndarray:
        """The co-analytic correction vector at lam: solve A(lam)* c = u(lam)."""
        if self.mode != "analytic":
            raise ExtremeTypeError("resolvent correction needs the analytic model")
        if self.n == 0:
            return np.zeros(0, dtype=complex)
        if abs(lam) >= 1.0:
            raise ValueError("evaluation point must satisfy |lam| < 1")
        rhat = self._coanalytic_spectrum(pair)
        # u(lam) = sum_{m >= 1} rhat[N - m] conj(lam)**m, Horner from the deep tail
        lam_bar = np.conj(lam)
        u = np.zeros(self.n, dtype=complex)
        for m in range(self.n_grid // 2, 0, -1):
            u = u * lam_bar + rhat[self.n_grid - m]
        u = u * lam_bar
        a_lam_h = self.factor.at(lam).conj().T
        cond = np.linalg.cond(a_lam_h)
        if cond > 1e8:
            warnings.warn(f"defect factor nearly singular at lam={lam}: cond={cond:.2e}")
        return np.linalg.solve(a_lam_h, u)

    def resolvent_divide(self, pair: ModelPair, lam) -> ModelPair:
        """Model pair of f / (1 - conj(lam) z)."""
        if abs(lam) >= 1.0:
            raise ValueError("evaluation point must satisfy |lam| < 1")
        if self.mode != "analytic":
            raise ExtremeTypeError("resolvent division needs the analytic model")
        lam_bar = np.conj(lam)
        f = geometric_divide(pair.f, lam_bar, self.degree)
        if self.n:
            c = self.resolvent_correction(pair, lam)
            comp = []
            for i in range(self.n):
                num = pair.companions[i].copy()
                num[0] -= c[i]
                comp.append(geometric_divide(num, lam_bar, self.degree))
            comp = np.array(comp)
        else:
            comp = np.zeros((0, f.size), dtype=complex)
        return self.pair_from_parts(f, comp)

    # -- membership ----------------------------------------------------------

    def membership(self, coeffs) -> MembershipReport:
        """Membership verdict by residual size and stability under a degree
        doubling; the verdict (not an exception) is the result."""
        c = as_coeffs(coeffs)
        pair = self.embed(c)
        scale = 1.0 + pair.norm
        evidence = {"residual": pair.residual, "degree": self.degree}
        if self.n == 0:
            return MembershipReport(True, 0.0, pair.norm, evidence)
        if self.mode == "inner":
            member = pair.residual <= self.tol_membership * scale
            return MembershipReport(member, pair.residual,
                                    pair.norm if member else None, evidence)
        degree2 = min(2 * self.degree, self.n_grid // 2 - 1)
        u_plus = self._u_plus_coeffs(c)
        if self._use_fft_path:
            comp2 = self._solve_fft(u_plus, degree2)
        else:
            comp2 = self._solve_triangular(u_plus, degree2)
        res2, _ = self._residual_field(c, comp2)
        norm1 = pair.norm
        norm2 = float(np.sqrt(h2_norm_sq(c) + np.sum(np.abs(comp2) ** 2)))
        drift = abs(norm2 - norm1) / max(norm1, 1e-30)
        evidence.update({"residual_doubled": res2, "norm_drift": drift})
        member = (pair.residual <= self.tol_membership * scale
                  and res2 <= pair.residual * 1.5 + self.tol_solve
                  and drift < 0.01)
        return MembershipReport(member, pair.residual,
                                norm2 if member else None, evidence)
