"""Monte Carlo estimation of average secrecy rates.

Each trial owns a counter-based random stream keyed by (seed, trial
index), so results are bit-identical for any worker count and any
execution order.  Workers only write to disjoint slices of
preallocated arrays; reductions happen once, in index order, on the
main thread.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from . import randmat, wiretap_core
from .wiretap_core import SystemConfig

__all__ = [
    "SimulationMode",
    "MonteCarloEstimate",
    "SweepPoint",
    "SWEEPABLE_FIELDS",
    "estimate",
    "sweep",
]

SWEEPABLE_FIELDS = ("n_e", "n_b", "alpha", "beta", "gamma")


class SimulationMode(Enum):
    AN_WITH_ANE = "an-ane"
    NO_AN = "no-an"


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Result of one simulation run.

    ``mean`` is the clamp of the averaged rate difference (average
    first, clamp second, matching the analytic averages).
    ``per_term_means`` carries the per-component averages: "bob",
    "eve", and "secrecy_clamped_per_trial", the mean of the per-trial
    clamped differences, which is never below ``mean``.
    """

    mean: float
    std_error: float
    trials: int
    seed: int
    per_term_means: dict[str, float]


@dataclass(frozen=True)
class SweepPoint:
    value: float
    estimate: MonteCarloEstimate | None = None
    error: str | None = None


def _trial_rates(cfg: SystemConfig, mode: SimulationMode,
                 seed: int, trial: int) -> tuple[float, float]:
    key = np.array([seed, trial], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key))
    h = randmat.sample_complex_gaussian(cfg.n_b, cfg.n_a, rng)
    g = randmat.sample_complex_gaussian(cfg.n_e, cfg.n_a, rng)
    if mode is SimulationMode.NO_AN:
        return wiretap_core.rates_no_an(h, g, cfg)
    precoder = wiretap_core.build_precoder(h, cfg)
    projector = wiretap_core.build_ane_projector(g, precoder, cfg)
    r_bob = wiretap_core.rate_bob_an(precoder, cfg)
    r_eve = wiretap_core.rate_eve_an_ane(g, precoder, projector, cfg)
    return r_bob, r_eve


def _resolve_workers(workers: int | None) -> int:
    if workers is not None:
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        return workers
    return min(8, os.cpu_count() or 1)


def estimate(cfg: SystemConfig, mode: SimulationMode, trials: int,
             seed: int, workers: int | None = None) -> MonteCarloEstimate:
    """Estimate the average secrecy rate over iid channel draws.

    Parameters
    ----------
    cfg : SystemConfig
        Antenna counts and power ratios.
    mode : SimulationMode
        Artificial noise with eavesdropper elimination, or the
        isotropic full-power baseline.
    trials : int
        Number of channel draws, >= 2.
    seed : int
        Base key of the per-trial random streams (64-bit).
    workers : int, optional
        Thread count; the result is identical for every choice.
    """
    if not isinstance(mode, SimulationMode):
        raise TypeError(f"mode must be a SimulationMode, got {mode!r}")
    if trials < 2:
        raise ValueError(f"trials must be >= 2, got {trials}")
    if not 0 <= seed < 2 ** 64:
        raise ValueError(f"seed must fit in 64 bits, got {seed}")
    nworkers = _resolve_workers(workers)

    r_bob = np.empty(trials)
    r_eve = np.empty(trials)

    def run_block(lo: int, hi: int) -> None:
        for t in range(lo, hi):
            r_bob[t], r_eve[t] = _trial_rates(cfg, mode, seed, t)

    if nworkers == 1:
        run_block(0, trials)
    else:
        edges = np.linspace(0, trials, nworkers * 4 + 1).astype(int)
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            futures = [pool.submit(run_block, lo, hi)
                       for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]
            for fut in futures:
                fut.result()

    mean_bob = float(np.mean(r_bob))
    mean_eve = float(np.mean(r_eve))
    diff = r_bob - r_eve
    return MonteCarloEstimate(
        mean=max(mean_bob - mean_eve, 0.0),
        std_error=float(np.std(diff, ddof=1) / np.sqrt(trials)),
        trials=trials,
        seed=seed,
        per_term_means={
            "bob": mean_bob,
            "eve": mean_eve,
            "secrecy_clamped_per_trial": float(
                np.mean(np.maximum(diff, 0.0))),
        },
    )


def sweep(cfg_template: SystemConfig, vary: str, values, mode: SimulationMode,
          trials: int, seed: int,
          workers: int | None = None) -> list[SweepPoint]:
    """Run ``estimate`` across one varied field.

    Invalid points (bad antenna count, failed decomposition, ...) are
    recorded on their row instead of aborting the remaining points.
    The same seed is reused at every point, so curves share channel
    randomness where shapes agree.
    """
    if vary not in SWEEPABLE_FIELDS:
        raise ValueError(
            f"vary must be one of {SWEEPABLE_FIELDS}, got {vary!r}")
    points: list[SweepPoint] = []
    for value in values:
        try:
            if vary in ("n_e", "n_b"):
                if float(value) != int(value):
                    raise ValueError(
                        f"{vary} must be an integer, got {value!r}")
                cfg = replace(cfg_template, **{vary: int(value)})
            else:
                cfg = replace(cfg_template, **{vary: float(value)})
            est = estimate(cfg, mode, trials, seed, workers)
            points.append(SweepPoint(value=float(value), estimate=est))
        except Exception as exc:  # recorded per row by contract
            points.append(SweepPoint(value=float(value), error=str(exc)))
    return points
