"""Random matrix layer: channel sampling, decompositions, and the
eigenvalue densities that enter the average-rate integrals.

The minimum-eigenvalue law of a complex Wishart matrix is an
incomplete-gamma moment determinant.  Evaluating that determinant in
floating point collapses for dimensions beyond ten or so (the moment
matrix is numerically rank one in the tail), so the determinant is
expanded once per shape into an exact integer polynomial: the survival
function is K * exp(-n_e b) * P(b) with P of degree n_e (s - n_e), and
the density follows by differentiation.  Both polynomials come out
with nonnegative coefficients, which makes the log-domain evaluation
cancellation free at any point of the support.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy import special

from ._quad import integrate_refining

__all__ = [
    "SvdFactors",
    "sample_complex_gaussian",
    "svd",
    "min_eigenpair",
    "chi2_scaled_pdf",
    "wishart_min_eig_pdf",
    "wishart_min_eig_log_sf",
    "mean_min_eig",
]


def sample_complex_gaussian(rows: int, cols: int,
                            rng: np.random.Generator) -> np.ndarray:
    """Sample a rows x cols matrix of iid CN(0, 1) entries.

    Real and imaginary parts are independent N(0, 1/2), drawn in a
    single generator call so the stream layout is reproducible.
    """
    if rows < 1 or cols < 1:
        raise ValueError(f"matrix shape must be positive, got {rows}x{cols}")
    raw = rng.standard_normal((rows, cols, 2))
    return (raw[..., 0] + 1j * raw[..., 1]) / np.sqrt(2.0)


class SvdFactors(NamedTuple):
    u: np.ndarray
    singular_values: np.ndarray
    v: np.ndarray


def svd(m: np.ndarray) -> SvdFactors:
    """Full singular value decomposition m = u @ diag(s) @ v^H.

    Returns
    -------
    SvdFactors
        ``u`` and ``v`` are square unitary matrices, ``v`` holding the
        right singular vectors as columns; singular values are sorted
        in nonincreasing order.
    """
    m = np.asarray(m)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={m.ndim}")
    try:
        u, s, vh = np.linalg.svd(m, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"svd failed to converge: {exc}") from exc
    return SvdFactors(u, s, vh.conj().T)


def min_eigenpair(m: np.ndarray) -> tuple[float, np.ndarray]:
    """Smallest eigenvalue and unit eigenvector of a Hermitian PSD matrix."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.linalg.norm(m)))
    if np.linalg.norm(m - m.conj().T) > 1e-10 * scale:
        raise ValueError("matrix is not Hermitian")
    herm = (m + m.conj().T) / 2.0
    try:
        w, vecs = np.linalg.eigh(herm)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"eigendecomposition failed: {exc}") from exc
    if w[0] < -1e-10 * scale:
        raise ValueError(f"matrix is not positive semidefinite "
                         f"(min eigenvalue {w[0]:.3e})")
    return float(max(w[0], 0.0)), vecs[:, 0]


def chi2_scaled_pdf(a, n_b: int):
    """Density of half a chi-square with 2*n_b degrees of freedom.

    This is the Gamma(n_b, 1) density, the law of the squared norm of
    an n_b-dimensional iid CN(0, 1) vector.  Accepts scalars or arrays;
    points outside the support return 0.
    """
    if n_b < 1:
        raise ValueError(f"n_b must be >= 1, got {n_b}")
    arr = np.asarray(a, dtype=float)
    safe = np.where(arr > 0.0, arr, 1.0)
    with np.errstate(under="ignore"):
        vals = np.exp((n_b - 1) * np.log(safe) - safe - special.gammaln(n_b))
    vals = np.where(arr > 0.0, vals, 0.0)
    if n_b == 1:
        vals = np.where(arr == 0.0, 1.0, vals)
    return float(vals) if np.isscalar(a) else vals


def _validate_wishart_dims(n_a: int, n_b: int, n_e: int) -> int:
    if n_b < 1 or n_a <= n_b:
        raise ValueError(f"need n_a > n_b >= 1, got n_a={n_a}, n_b={n_b}")
    s = n_a - n_b
    if n_e < 1 or n_e > s:
        raise ValueError(
            f"minimum-eigenvalue law requires 1 <= n_e <= n_a - n_b = {s}, "
            f"got n_e={n_e}")
    return s


def _log_k(s: int, n_e: int) -> float:
    return -sum(special.gammaln(k) + special.gammaln(s - n_e + k)
                for k in range(1, n_e + 1))


def _bareiss_det(mat: list[list[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free Bareiss)."""
    n = len(mat)
    m = [row[:] for row in mat]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # division by the previous pivot is exact by construction
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def _poly_entry(order: int, b: int) -> int:
    # exp(b) * Gamma(order, b) at integer b, an integer for integer b
    fact = math.factorial(order - 1)
    return sum(fact // math.factorial(k) * b ** k for k in range(order))


@lru_cache(maxsize=64)
def _survival_poly(s: int, n_e: int) -> tuple[int, ...]:
    """Integer coefficients of P in SF(b) = K exp(-n_e b) P(b).

    P is the determinant of the moment matrix with the exponential
    factored out, recovered exactly by interpolating integer Bareiss
    determinants at integer points.  The degree n_e (s - n_e) is checked
    against three extra sample points.
    """
    deg = n_e * (s - n_e)
    orders = [[s - n_e + i + j + 1 for j in range(n_e)] for i in range(n_e)]
    samples = [_bareiss_det([[_poly_entry(a, b) for a in row]
                             for row in orders])
               for b in range(deg + 4)]
    work = samples[:deg + 1]
    deltas = []
    for _ in range(deg + 1):
        deltas.append(work[0])
        work = [work[i + 1] - work[i] for i in range(len(work) - 1)]
    coeffs = [Fraction(0)] * (deg + 1)
    falling = [Fraction(1)]  # coefficients of b (b-1) ... (b-d+1)
    for d in range(deg + 1):
        scale = Fraction(deltas[d], math.factorial(d))
        for power, c in enumerate(falling):
            coeffs[power] += scale * c
        grown = [Fraction(0)] * (len(falling) + 1)
        for power, c in enumerate(falling):
            grown[power + 1] += c
            grown[power] -= d * c
        falling = grown
    if any(c.denominator != 1 for c in coeffs):
        raise RuntimeError(f"non-integer moment determinant at s={s}, n_e={n_e}")
    ints = [int(c) for c in coeffs]
    for b in range(deg + 1, deg + 4):
        if sum(c * b ** d for d, c in enumerate(ints)) != samples[b]:
            raise RuntimeError(
                f"moment determinant degree exceeds n_e (s - n_e) "
                f"at s={s}, n_e={n_e}")
    return tuple(ints)


class _LogPoly(NamedTuple):
    pos_degs: np.ndarray
    pos_logs: np.ndarray
    neg_degs: np.ndarray
    neg_logs: np.ndarray


def _log_terms(coeffs) -> _LogPoly:
    pos = [(d, math.log(c)) for d, c in enumerate(coeffs) if c > 0]
    neg = [(d, math.log(-c)) for d, c in enumerate(coeffs) if c < 0]

    def arrays(pairs):
        if not pairs:
            return np.empty(0), np.empty(0)
        degs, logs = zip(*pairs)
        return np.asarray(degs, dtype=float), np.asarray(logs, dtype=float)

    return _LogPoly(*arrays(pos), *arrays(neg))


@lru_cache(maxsize=64)
def _min_eig_terms(s: int, n_e: int) -> tuple[float, _LogPoly, _LogPoly]:
    survival = _survival_poly(s, n_e)
    # density polynomial: -d/db [exp(-n_e b) P(b)] = exp(-n_e b) M(b)
    density = [n_e * c for c in survival]
    for d in range(len(survival) - 1):
        density[d] -= (d + 1) * survival[d + 1]
    return _log_k(s, n_e), _log_terms(survival), _log_terms(density)


def _log_poly_sum(degs: np.ndarray, logs: np.ndarray,
                  log_b: np.ndarray) -> np.ndarray:
    """log sum_d c_d b^d over positive terms, vectorized over log_b."""
    if degs.size == 0:
        return np.full(log_b.shape, -np.inf)
    t = logs[:, None] + degs[:, None] * log_b[None, :]
    peak = t.max(axis=0)
    with np.errstate(under="ignore"):
        return peak + np.log(np.exp(t - peak).sum(axis=0))


def _log_poly_abs(poly: _LogPoly, log_b: np.ndarray) -> np.ndarray:
    """log of a signed polynomial at exp(log_b), floored at -inf.

    Coefficients of both min-eigenvalue polynomials are nonnegative in
    every case seen, so the subtraction branch is a safety net only.
    """
    high = _log_poly_sum(poly.pos_degs, poly.pos_logs, log_b)
    if poly.neg_degs.size:
        low = _log_poly_sum(poly.neg_degs, poly.neg_logs, log_b)
        with np.errstate(invalid="ignore"):
            high = np.where(low >= high, -np.inf,
                            high + np.log1p(-np.exp(np.minimum(low - high,
                                                               0.0))))
    return high


def wishart_min_eig_log_sf(b: float, n_a: int, n_b: int, n_e: int) -> float:
    """Log survival function of the smallest eigenvalue.

    The matrix is an n_e x n_e complex Wishart with n_a - n_b degrees
    of freedom and identity scale, the law of G0 @ G0^H for an
    n_e x (n_a - n_b) iid CN(0, 1) matrix G0.
    """
    s = _validate_wishart_dims(n_a, n_b, n_e)
    b = float(b)
    if b < 0:
        raise ValueError(f"b must be >= 0, got {b}")
    if b == 0.0:
        return 0.0
    log_k, survival, _ = _min_eig_terms(s, n_e)
    log_poly = float(_log_poly_abs(survival, np.asarray([math.log(b)]))[0])
    return min(0.0, log_k - n_e * b + log_poly)


def wishart_min_eig_pdf(b, n_a: int, n_b: int, n_e: int):
    """Density of the smallest eigenvalue of the Wishart matrix above.

    Accepts scalar or array b; points outside the support return 0.
    Raises ValueError when n_e exceeds n_a - n_b, where the matrix is
    singular and no density exists.
    """
    s = _validate_wishart_dims(n_a, n_b, n_e)
    log_k, _, density = _min_eig_terms(s, n_e)
    arr = np.asarray(b, dtype=float)
    flat = np.atleast_1d(arr).astype(float).ravel()
    out = np.zeros(flat.shape)
    # density vanishes at 0 unless the matrix is square, where the
    # smallest eigenvalue is exactly exponential with rate n_e
    out[flat == 0.0] = float(n_e) if s == n_e else 0.0
    inside = flat > 0.0
    if inside.any():
        log_pdf = (log_k - n_e * flat[inside]
                   + _log_poly_abs(density, np.log(flat[inside])))
        with np.errstate(under="ignore"):
            out[inside] = np.exp(log_pdf)
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def support_cutoff(n_a: int, n_b: int, n_e: int, log_tail: float = -41.0) -> float:
    """Point beyond which the min-eigenvalue survival mass is negligible."""
    _validate_wishart_dims(n_a, n_b, n_e)
    hi = (n_a - n_b) + 10.0 * math.sqrt(n_a - n_b) + 10.0
    for _ in range(200):
        if wishart_min_eig_log_sf(hi, n_a, n_b, n_e) < log_tail:
            break
        hi *= 1.5
    else:
        raise RuntimeError("failed to bracket the eigenvalue tail")
    lo = 0.0
    for _ in range(50):
        mid = (lo + hi) / 2.0
        if wishart_min_eig_log_sf(mid, n_a, n_b, n_e) < log_tail:
            hi = mid
        else:
            lo = mid
    return 1.05 * hi


@lru_cache(maxsize=128)
def mean_min_eig(n_a: int, n_b: int, n_e: int) -> float:
    """Mean of the smallest Wishart eigenvalue, by adaptive quadrature."""
    _validate_wishart_dims(n_a, n_b, n_e)
    hi = support_cutoff(n_a, n_b, n_e)

    def integrand(xs: np.ndarray) -> np.ndarray:
        return xs * wishart_min_eig_pdf(xs, n_a, n_b, n_e)

    return integrate_refining(integrand, 0.0, hi, nodes=64,
                              rel_tol=1e-9, max_doublings=7)
