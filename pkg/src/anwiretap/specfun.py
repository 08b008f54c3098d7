"""Special functions backing the rate formulas.

Thin validated wrappers over scipy plus the exact integer-order paths
the average-rate expressions need.  Everything returns plain floats.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

__all__ = [
    "exp_integral",
    "upper_incomplete_gamma",
    "log_factorial",
    "binomial",
]

# exp() overflows above this, caller gets inf instead of an exception
_MAX_LOG = 709.0


def exp_integral(p: int, z: float) -> float:
    """Generalized exponential integral E_p(z).

    Parameters
    ----------
    p : int
        Order, an integer >= 1.
    z : float
        Argument, >= 0.  ``z = 0`` is only valid for ``p >= 2``, where
        the integral equals ``1 / (p - 1)``; E_1 diverges at the
        origin.

    Returns
    -------
    float
        The integral of ``exp(-z t) / t**p`` for t over [1, inf).
    """
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
        raise TypeError(f"order p must be an integer, got {p!r}")
    if p < 1:
        raise ValueError(f"order p must be >= 1, got {p}")
    z = float(z)
    if z < 0.0:
        raise ValueError(f"argument z must be >= 0, got {z}")
    if z == 0.0:
        if p == 1:
            raise ValueError("exp_integral(1, 0) diverges")
        return 1.0 / (p - 1)
    return float(special.expn(int(p), z))


def upper_incomplete_gamma(a: float, b: float) -> float:
    """Unregularized upper incomplete gamma function.

    Parameters
    ----------
    a : float
        Shape, > 0.  Integer values take an exact finite-sum path.
    b : float
        Lower limit of integration, >= 0.

    Returns
    -------
    float
        The integral of ``t**(a-1) exp(-t)`` for t over [b, inf).
    """
    a = float(a)
    b = float(b)
    if not a > 0.0:
        raise ValueError(f"shape a must be > 0, got {a}")
    if b < 0.0:
        raise ValueError(f"limit b must be >= 0, got {b}")
    if b == 0.0:
        logv = special.gammaln(a)
        return math.inf if logv > _MAX_LOG else float(math.exp(logv))
    if a.is_integer() and a < 1e6:
        # Gamma(n, b) = (n-1)! exp(-b) sum_{k<n} b^k / k!, in log domain
        n = int(a)
        logb = math.log(b)
        terms = [k * logb - special.gammaln(k + 1) for k in range(n)]
        peak = max(terms)
        logsum = peak + math.log(math.fsum(math.exp(t - peak) for t in terms))
        logv = special.gammaln(n) - b + logsum
        return math.inf if logv > _MAX_LOG else float(math.exp(logv))
    q = float(special.gammaincc(a, b))
    if q == 0.0:
        return 0.0
    logv = special.gammaln(a) + math.log(q)
    return math.inf if logv > _MAX_LOG else float(math.exp(logv))


def log_factorial(n: int) -> float:
    """Natural log of n! for integer n >= 0."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"n must be an integer, got {n!r}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return float(math.lgamma(n + 1))


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), exact.

    Returns 0 when k < 0 or k > n, matching the empty-selection
    convention the series coefficients rely on.
    """
    for name, v in (("n", n), ("k", k)):
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
            raise TypeError(f"{name} must be an integer, got {v!r}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(int(n), int(k))
