"""Composite Gauss-Legendre quadrature with panel-doubling refinement.

Internal helper shared by the eigenvalue-density moments and the
semi-analytic rate averages.  Integrands must accept a 1-d node array
and return values of the same shape.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=32)
def _base_rule(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(nodes)
    return x, w


def panel_rule(lo: float, hi: float, nodes: int, panels: int):
    """Nodes and weights of a composite rule on [lo, hi]."""
    if hi <= lo:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    x, w = _base_rule(nodes)
    edges = np.linspace(lo, hi, panels + 1)
    half = np.diff(edges) / 2.0
    mid = (edges[:-1] + edges[1:]) / 2.0
    xs = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    ws = (half[:, None] * w[None, :]).ravel()
    return xs, ws


def integrate_refining(fn, lo: float, hi: float, nodes: int,
                       rel_tol: float, max_doublings: int = 6) -> float:
    """Integrate fn over [lo, hi], doubling panels until converged.

    Convergence means successive estimates agree to rel_tol (relative
    to the larger magnitude, with an absolute floor so integrals near
    zero terminate).  Raises RuntimeError if refinement stalls.
    """
    panels = 1
    xs, ws = panel_rule(lo, hi, nodes, panels)
    prev = float(np.dot(ws, fn(xs)))
    for _ in range(max_doublings):
        panels *= 2
        xs, ws = panel_rule(lo, hi, nodes, panels)
        cur = float(np.dot(ws, fn(xs)))
        scale = max(abs(cur), abs(prev), 1e-12)
        if abs(cur - prev) <= rel_tol * scale:
            return cur
        prev = cur
    raise RuntimeError(
        f"quadrature did not converge to rel_tol={rel_tol} "
        f"after {max_doublings} panel doublings on [{lo}, {hi}]")
