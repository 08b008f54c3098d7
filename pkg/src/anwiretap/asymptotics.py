"""Large-system limits and the regime predicates built on them.

As all antenna counts grow with fixed ratios, per-antenna rates
converge to deterministic equivalents expressed through two functions
of a scale x and an aspect ratio y.  ``f_script`` is the square of the
gap between the edges of the limiting eigenvalue support (computed in
a rationalized form; the direct difference of square roots cancels
catastrophically for large x) and ``phi`` the limiting per-antenna
capacity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .wiretap_core import SystemConfig

__all__ = [
    "AsymptoticRatios",
    "PredicateRecord",
    "f_script",
    "phi",
    "normalized_secrecy_rate_an",
    "normalized_secrecy_rate_no_an",
    "evaluate_predicates",
]

_LOG2E = math.log2(math.e)


@dataclass(frozen=True)
class AsymptoticRatios:
    """Antenna ratios held fixed in the large-system limit.

    delta1 = n_e / n_b > 0 and delta2 = n_a / n_b > 1; delta3 is the
    derived clean-dimension ratio delta1 - delta2 + 1.
    """

    delta1: float
    delta2: float

    def __post_init__(self):
        if not self.delta1 > 0:
            raise ValueError(f"delta1 must be > 0, got {self.delta1}")
        if not self.delta2 > 1:
            raise ValueError(f"delta2 must be > 1, got {self.delta2}")

    @property
    def delta3(self) -> float:
        return self.delta1 - self.delta2 + 1.0

    @classmethod
    def from_config(cls, cfg: SystemConfig) -> "AsymptoticRatios":
        return cls(delta1=cfg.n_e / cfg.n_b, delta2=cfg.n_a / cfg.n_b)


def f_script(x: float, y: float) -> float:
    """Squared width of the limiting support, between 0 and 4x.

    Evaluates (sqrt(x (1 + sqrt(y))^2 + 1) - sqrt(x (1 - sqrt(y))^2 + 1))^2
    through the rationalized quotient so that large x or y do not
    cancel.
    """
    if x < 0 or y < 0:
        raise ValueError(f"arguments must be >= 0, got x={x}, y={y}")
    if x == 0.0 or y == 0.0:
        return 0.0
    ry = math.sqrt(y)
    hi = math.sqrt(x * (1.0 + ry) ** 2 + 1.0)
    lo = math.sqrt(x * (1.0 - ry) ** 2 + 1.0)
    return 16.0 * x * x * y / (hi + lo) ** 2


def phi(x: float, y: float) -> float:
    """Limiting per-antenna capacity at scale x and aspect ratio y.

    Satisfies phi(x, y) = y * phi(x * y, 1 / y), which extends the
    formula consistently to aspect ratios below 1.
    """
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    if not y > 0:
        raise ValueError(f"y must be > 0, got {y}")
    if x == 0.0:
        return 0.0
    f = f_script(x, y)
    return (y * math.log2(1.0 + x - f / 4.0)
            + math.log2(1.0 + x * y - f / 4.0)
            - f / (4.0 * x) * _LOG2E)


def normalized_secrecy_rate_an(ratios: AsymptoticRatios, n_b: float,
                               alpha: float, gamma: float) -> float:
    """Limit of the artificial-noise secrecy rate per receive antenna.

    With delta1 > delta2 - 1 the eavesdropper keeps a growing number
    of clean dimensions and its per-antenna rate survives the limit;
    otherwise its rate is o(n_b) and only the legitimate term remains.
    beta does not appear: either the noise is eliminated exactly, or
    its residual vanishes per antenna.
    """
    bob = phi(alpha * gamma * n_b, ratios.delta2)
    if ratios.delta1 > ratios.delta2 - 1.0:
        eve = phi(alpha * n_b, ratios.delta3)
        return max(bob - eve, 0.0)
    return bob


def normalized_secrecy_rate_no_an(ratios: AsymptoticRatios, n_b: float,
                                  alpha: float, beta: float,
                                  gamma: float) -> float:
    """Limit of the isotropic-baseline secrecy rate per receive antenna."""
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    eta = alpha * gamma * ratios.delta2 * n_b * (
        1.0 + beta * (ratios.delta2 - 1.0))
    bob = phi(eta / ratios.delta2, ratios.delta2)
    eve = ratios.delta1 * phi(eta * ratios.delta1 / (gamma * ratios.delta2),
                              ratios.delta2 / ratios.delta1)
    return max(bob - eve, 0.0)


@dataclass(frozen=True)
class PredicateRecord:
    """Which qualitative regime statements hold for a configuration.

    Pure threshold comparisons on the configuration; no rate is
    evaluated here.

    an_rate_vanishes
        Sufficient condition for the average artificial-noise secrecy
        rate to be exactly zero: the eavesdropper hears at least as
        well per antenna (gamma <= n_b / n_a) and has enough antennas
        to dominate after noise elimination (n_e >= 2 n_a - n_b).
    an_rate_vanishes_asymptotic
        Same statement for the large-system limit at gamma = 1, via
        delta1 >= 2 delta2 - 1.
    no_an_rate_vanishes
        The isotropic baseline's average secrecy rate is zero:
        gamma <= 1 and n_e >= n_b.
    an_strictly_outperforms_no_an
        The baseline rate is zero while artificial noise still secures
        a positive rate: n_b <= n_e < 2 n_a - n_b and
        n_b / n_a < gamma <= 1.
    no_an_rate_positive
        The baseline keeps a positive rate: n_e < n_b and gamma > 1.
    """

    an_rate_vanishes: bool
    an_rate_vanishes_asymptotic: bool
    no_an_rate_vanishes: bool
    an_strictly_outperforms_no_an: bool
    no_an_rate_positive: bool


def evaluate_predicates(cfg: SystemConfig) -> PredicateRecord:
    delta1 = cfg.n_e / cfg.n_b
    delta2 = cfg.n_a / cfg.n_b
    return PredicateRecord(
        an_rate_vanishes=(cfg.gamma <= cfg.n_b / cfg.n_a
                          and cfg.n_e >= 2 * cfg.n_a - cfg.n_b),
        an_rate_vanishes_asymptotic=(cfg.gamma == 1.0
                                     and delta1 >= 2.0 * delta2 - 1.0),
        no_an_rate_vanishes=(cfg.gamma <= 1.0 and cfg.n_e >= cfg.n_b),
        an_strictly_outperforms_no_an=(
            cfg.n_b <= cfg.n_e < 2 * cfg.n_a - cfg.n_b
            and cfg.n_b / cfg.n_a < cfg.gamma <= 1.0),
        no_an_rate_positive=(cfg.n_e < cfg.n_b and cfg.gamma > 1.0),
    )
