"""Coefficient-level operations on truncated Taylor series.

All functions treat a 1-d complex ndarray ``c`` as the polynomial
``c[0] + c[1] z + ... + c[d] z**d``.  Everything here is exact coefficient
algebra; no grids are involved.
"""

import numpy as np


def as_coeffs(c) -> np.ndarray:
    a = np.atleast_1d(np.asarray(c, dtype=complex))
    if a.ndim != 1:
        raise ValueError("coefficient array must be one-dimensional")
    return a


def trim(c, tol=0.0) -> np.ndarray:
    """Drop trailing coefficients with magnitude <= tol (keeps at least one)."""
    a = as_coeffs(c)
    keep = np.nonzero(np.abs(a) > tol)[0]
    if keep.size == 0:
        return a[:1] * 0
    return a[: keep[-1] + 1]


def horner(c, z):
    """Evaluate the polynomial at scalar or array argument z."""
    a = as_coeffs(c)
    z = np.asarray(z, dtype=complex)
    out = np.zeros_like(z)
    for ck in a[::-1]:
        out = out * z + ck
    return out if out.ndim else complex(out)


def shift_up(c) -> np.ndarray:
    """Multiply by z."""
    a = as_coeffs(c)
    return np.concatenate([[0.0 + 0.0j], a])


def shift_down(c) -> np.ndarray:
    """Backward shift (f - f(0)) / z."""
    a = as_coeffs(c)
    if a.size <= 1:
        return np.zeros(1, dtype=complex)
    return a[1:].copy()


def divided_difference(c, lam) -> np.ndarray:
    """Coefficients of (f(z) - f(lam)) / (z - lam).

    This is the resolvent-type shift L applied at the point lam; for a
    degree-d input the output has degree d - 1.
    """
    a = as_coeffs(c)
    if a.size <= 1:
        return np.zeros(1, dtype=complex)
    q = np.empty(a.size - 1, dtype=complex)
    acc = 0.0 + 0.0j
    for k in range(a.size - 1, 0, -1):
        acc = a[k] + lam * acc
        q[k - 1] = acc
    return q


def geometric_divide(c, lam_bar, degree) -> np.ndarray:
    """Coefficients of f(z) / (1 - conj(lam) z) truncated at ``degree``.

    ``lam_bar`` is conj(lam) with |lam| < 1; the quotient series converges
    geometrically and the truncation error is O(|lam|**degree).
    """
    a = as_coeffs(c)
    q = np.zeros(degree + 1, dtype=complex)
    acc = 0.0 + 0.0j
    for k in range(degree + 1):
        fk = a[k] if k < a.size else 0.0
        acc = fk + lam_bar * acc
        q[k] = acc
    return q


def series_divide(num, den, degree) -> np.ndarray:
    """Power-series quotient num/den truncated at ``degree``; den[0] != 0."""
    a = as_coeffs(num)
    b = as_coeffs(den)
    if abs(b[0]) == 0.0:
        raise ZeroDivisionError("denominator vanishes at z = 0")
    q = np.zeros(degree + 1, dtype=complex)
    for k in range(degree + 1):
        acc = a[k] if k < a.size else 0.0
        for m in range(1, min(k, b.size - 1) + 1):
            acc -= b[m] * q[k - m]
        q[k] = acc / b[0]
    return q


def convolve(a, b) -> np.ndarray:
    """Product of two polynomials."""
    return np.convolve(as_coeffs(a), as_coeffs(b))


def h2_inner(a, b) -> complex:
    """Hardy-space inner product <a, b> = sum a_k conj(b_k)."""
    a = as_coeffs(a)
    b = as_coeffs(b)
    m = min(a.size, b.size)
    return complex(np.vdot(b[:m], a[:m]))


def h2_norm_sq(a) -> float:
    a = as_coeffs(a)
    return float(np.vdot(a, a).real)


def szego_taylor(lam, degree) -> np.ndarray:
    """Taylor coefficients of 1 / (1 - conj(lam) z) up to ``degree``."""
    return np.conj(lam) ** np.arange(degree + 1)
