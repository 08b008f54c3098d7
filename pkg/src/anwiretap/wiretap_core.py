"""Wiretap channel model and instantaneous rates.

A transmitter with n_a antennas sends n_b data streams to a receiver
with n_b antennas and fills the remaining n_a - n_b spatial dimensions
with artificial noise, which lands in the receiver's null space but
not in the eavesdropper's.  The eavesdropper (n_e antennas) knows both
channels and applies the strongest linear noise-elimination step
available to it:

* with n_e > n_a - n_b antennas it can project onto the orthogonal
  complement of the noise subspace it observes and remove the noise
  completely, keeping n_e - (n_a - n_b) clean dimensions;
* with n_e <= n_a - n_b it cannot null the noise and instead combines
  its antennas to minimize the residual noise power, which leaves a
  single data dimension behind a nonzero interference floor.

Powers are expressed through three ratios: alpha is the ratio of
per-stream signal power to the eavesdropper's noise power, beta the
ratio of per-dimension artificial-noise power to signal power, and
gamma the ratio of the eavesdropper's noise power to the legitimate
receiver's.  The legitimate per-stream SNR is alpha * gamma.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import randmat

__all__ = [
    "Regime",
    "SystemConfig",
    "ChannelRealization",
    "AnPrecoder",
    "AneProjector",
    "build_precoder",
    "build_ane_projector",
    "rate_bob_an",
    "rate_eve_an_ane",
    "rates_no_an",
    "secrecy_rate",
]


class Regime(Enum):
    """Which noise-elimination option the eavesdropper has."""

    COMPLETE = "complete"
    RESIDUAL = "residual"


@dataclass(frozen=True)
class SystemConfig:
    """Antenna counts and power ratios of one wiretap configuration.

    Parameters
    ----------
    n_a, n_b, n_e : int
        Transmit, legitimate receive, and eavesdropper antenna counts;
        n_a > n_b >= 1 and n_e >= 1.
    alpha : float
        Signal-to-noise power ratio at the eavesdropper, > 0.
    beta : float
        Artificial-noise-to-signal power ratio, >= 0.
    gamma : float
        Eavesdropper-to-legitimate noise power ratio, > 0.
    """

    n_a: int
    n_b: int
    n_e: int
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name in ("n_a", "n_b", "n_e"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise TypeError(f"{name} must be an integer, got {v!r}")
        if self.n_b < 1:
            raise ValueError(f"n_b must be >= 1, got {self.n_b}")
        if self.n_a <= self.n_b:
            raise ValueError(
                f"need n_a > n_b for a noise null space, got "
                f"n_a={self.n_a}, n_b={self.n_b}")
        if self.n_e < 1:
            raise ValueError(f"n_e must be >= 1, got {self.n_e}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if self.beta < 0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")
        if not self.gamma > 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")

    def regime(self) -> Regime:
        # at n_e = n_a - n_b the noise matrix is square and almost
        # surely invertible, so no clean dimension exists: residual
        if self.n_e <= self.n_a - self.n_b:
            return Regime.RESIDUAL
        return Regime.COMPLETE

    def eta(self) -> float:
        """Total transmit SNR handle used by the no-noise baseline."""
        spread = self.beta * (self.n_a - self.n_b) / self.n_b
        return self.alpha * self.gamma * self.n_a * (1.0 + spread)

    @property
    def signal_power(self) -> float:
        return self.alpha * self.gamma * self.n_b

    @property
    def artificial_noise_power(self) -> float:
        return self.alpha * self.beta * self.gamma * (self.n_a - self.n_b)


@dataclass(frozen=True)
class ChannelRealization:
    """One draw of the legitimate channel h and eavesdropper channel g."""

    h: np.ndarray  # n_b x n_a
    g: np.ndarray  # n_e x n_a

    @classmethod
    def sample(cls, cfg: SystemConfig,
               rng: np.random.Generator) -> "ChannelRealization":
        h = randmat.sample_complex_gaussian(cfg.n_b, cfg.n_a, rng)
        g = randmat.sample_complex_gaussian(cfg.n_e, cfg.n_a, rng)
        return cls(h=h, g=g)


@dataclass(frozen=True)
class AnPrecoder:
    """Right singular basis of h split into signal and noise blocks.

    v1 spans the n_b dimensions seen by the legitimate receiver, v0 the
    n_a - n_b dimensions of its null space; singular_values are those
    of h in nonincreasing order.
    """

    v1: np.ndarray
    v0: np.ndarray
    singular_values: np.ndarray


@dataclass(frozen=True)
class AneProjector:
    """The eavesdropper's noise-elimination step.

    In the complete regime ``w_matrix`` has orthonormal rows spanning
    the left null space of g @ v0.  In the residual regime
    ``weight_vector`` is the unit combiner minimizing residual noise
    and ``lambda_min`` the corresponding smallest eigenvalue of
    (g @ v0)(g @ v0)^H.
    """

    regime: Regime
    w_matrix: np.ndarray | None = None
    weight_vector: np.ndarray | None = None
    lambda_min: float | None = None


def build_precoder(h: np.ndarray, cfg: SystemConfig) -> AnPrecoder:
    h = np.asarray(h)
    if h.shape != (cfg.n_b, cfg.n_a):
        raise ValueError(
            f"h must be {cfg.n_b}x{cfg.n_a}, got {h.shape}")
    factors = randmat.svd(h)
    return AnPrecoder(v1=factors.v[:, :cfg.n_b],
                      v0=factors.v[:, cfg.n_b:],
                      singular_values=factors.singular_values)


def build_ane_projector(g: np.ndarray, precoder: AnPrecoder,
                        cfg: SystemConfig) -> AneProjector:
    g = np.asarray(g)
    if g.shape != (cfg.n_e, cfg.n_a):
        raise ValueError(f"g must be {cfg.n_e}x{cfg.n_a}, got {g.shape}")
    noise_mix = g @ precoder.v0  # n_e x (n_a - n_b)
    if cfg.regime() is Regime.COMPLETE:
        basis = randmat.svd(noise_mix).u
        w = basis[:, cfg.n_a - cfg.n_b:].conj().T
        return AneProjector(regime=Regime.COMPLETE, w_matrix=w)
    lam, vec = randmat.min_eigenpair(noise_mix @ noise_mix.conj().T)
    return AneProjector(regime=Regime.RESIDUAL, weight_vector=vec,
                        lambda_min=lam)


def _gram_rate(rows: np.ndarray, snr: float) -> float:
    """log2 det(I + snr * rows @ rows^H) via eigenvalues."""
    ev = np.linalg.eigvalsh(rows @ rows.conj().T)
    return float(np.sum(np.log2(1.0 + snr * np.maximum(ev, 0.0))))


def rate_bob_an(precoder: AnPrecoder, cfg: SystemConfig) -> float:
    """Legitimate rate under artificial noise, in bits."""
    s2 = precoder.singular_values ** 2
    return float(np.sum(np.log2(1.0 + cfg.alpha * cfg.gamma * s2)))


def rate_eve_an_ane(g: np.ndarray, precoder: AnPrecoder,
                    projector: AneProjector, cfg: SystemConfig) -> float:
    """Eavesdropper rate after its noise-elimination step, in bits."""
    if projector.regime is not cfg.regime():
        raise ValueError(
            f"projector built for {projector.regime.value} regime but "
            f"config is in {cfg.regime().value} regime")
    g = np.asarray(g)
    if projector.regime is Regime.COMPLETE:
        # the projection removed all artificial noise, so beta plays
        # no role on this path
        g1 = projector.w_matrix @ g @ precoder.v1
        return _gram_rate(g1, cfg.alpha)
    gvec = projector.weight_vector.conj() @ g @ precoder.v1
    gain = float(np.real(np.vdot(gvec, gvec)))
    floor = cfg.alpha * cfg.beta * projector.lambda_min + 1.0
    return float(np.log2(1.0 + cfg.alpha * gain / floor))


def rates_no_an(h: np.ndarray, g: np.ndarray,
                cfg: SystemConfig) -> tuple[float, float]:
    """Both rates when the whole budget goes to an isotropic signal.

    The transmitter spreads the artificial-noise budget back into the
    signal and radiates it isotropically over all n_a dimensions, so
    both receivers see a full iid channel at per-dimension SNR eta/n_a
    (eavesdropper: eta / (gamma n_a))."""
    per_dim = cfg.eta() / cfg.n_a
    r_bob = _gram_rate(np.asarray(h), per_dim)
    r_eve = _gram_rate(np.asarray(g), per_dim / cfg.gamma)
    return r_bob, r_eve


def _rate_eve_no_an_beamformed(g: np.ndarray, precoder: AnPrecoder,
                               cfg: SystemConfig) -> float:
    """Eavesdropper rate if the no-noise signal kept the v1 beams.

    Not used by the shipped averages; retained to document how the two
    candidate baselines differ (see the cross-validation tests)."""
    per_dim = cfg.eta() / (cfg.gamma * cfg.n_a)
    return _gram_rate(np.asarray(g) @ precoder.v1, per_dim)


def secrecy_rate(rate_bob: float, rate_eve: float) -> float:
    """Nonnegative part of the rate advantage."""
    return max(rate_bob - rate_eve, 0.0)
