"""Reproduction recipes for the bundled figure datasets.

Each figure id maps to a builder that returns CSV rows in long format:
a leading ``curve`` label, the sweep value, and then only the value
columns that exist for that figure (Monte Carlo mean and standard
error, exact average, large-system approximation, deterministic
equivalent).  ``desk`` scale keeps every figure under about a minute;
``full`` scale runs the complete ranges and trial counts.

Per-point failures land in the ``error`` column instead of aborting
the figure.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import asymptotics, closed_form, montecarlo
from .asymptotics import AsymptoticRatios
from .closed_form import QuadratureSpec
from .montecarlo import SimulationMode
from .wiretap_core import SystemConfig

__all__ = ["FigureSpec", "FIGURES", "FIELD_ORDER"]

FIELD_ORDER = ("curve", "sweep_value", "mc_mean", "mc_stderr",
               "analytic", "approx", "asymptotic", "error")

_DB3 = 10.0 ** 0.3
_DB6 = 10.0 ** 0.6
_DB15 = 10.0 ** 1.5
_DB20 = 100.0


@dataclass(frozen=True)
class FigureSpec:
    fig_id: str
    description: str
    build: Callable[[str, int], list[dict]]


def _num(v: float):
    return int(v) if float(v).is_integer() else float(v)


def _point_cfg(template: SystemConfig, vary: str, value) -> SystemConfig:
    if vary in ("n_e", "n_b"):
        return replace(template, **{vary: int(value)})
    return replace(template, **{vary: float(value)})


def _rate_sweep(curve: str, template: SystemConfig, vary: str, values,
                mode: SimulationMode, trials: int, seed: int, *,
                analytic: bool = False, approx: bool = False,
                quad: QuadratureSpec = QuadratureSpec()) -> list[dict]:
    """Average-rate sweep rows: MC plus optional analytic columns."""
    rows = []
    for v in values:
        row = {"curve": curve, "sweep_value": _num(v)}
        errors = []
        try:
            cfg = _point_cfg(template, vary, v)
        except Exception as exc:
            row["error"] = f"config: {exc}"
            rows.append(row)
            continue
        try:
            est = montecarlo.estimate(cfg, mode, trials, seed)
            row["mc_mean"] = est.mean
            row["mc_stderr"] = est.std_error
        except Exception as exc:
            errors.append(f"trial stage: {exc}")
        for wanted, field, fn in (
                (analytic, "analytic", _analytic_fn(mode, quad)),
                (approx, "approx", _approx_fn(mode))):
            if wanted:
                try:
                    row[field] = fn(cfg)
                except Exception as exc:
                    errors.append(f"quadrature stage: {exc}")
        if errors:
            row["error"] = "; ".join(errors)
        rows.append(row)
    return rows


def _analytic_fn(mode: SimulationMode, quad: QuadratureSpec):
    if mode is SimulationMode.AN_WITH_ANE:
        return lambda cfg: closed_form.avg_secrecy_rate_an(cfg, quad)
    return closed_form.avg_secrecy_rate_no_an


def _approx_fn(mode: SimulationMode):
    if mode is SimulationMode.AN_WITH_ANE:
        return closed_form.approx_secrecy_rate_an
    return closed_form.approx_secrecy_rate_no_an


def _normalized_rows(curve: str, mode: SimulationMode, nb_values,
                     shape_fn, alpha: float, beta: float, gamma: float,
                     reps: int, seed: int) -> list[dict]:
    """Per-antenna convergence rows: finite-size MC against the
    deterministic equivalent, both normalized by n_b."""
    rows = []
    for n_b in nb_values:
        n_a, n_e = shape_fn(n_b)
        row = {"curve": curve, "sweep_value": int(n_b)}
        try:
            cfg = SystemConfig(n_a=n_a, n_b=n_b, n_e=n_e,
                               alpha=alpha, beta=beta, gamma=gamma)
            ratios = AsymptoticRatios.from_config(cfg)
            if mode is SimulationMode.AN_WITH_ANE:
                row["asymptotic"] = asymptotics.normalized_secrecy_rate_an(
                    ratios, n_b, alpha, gamma)
            else:
                row["asymptotic"] = asymptotics.normalized_secrecy_rate_no_an(
                    ratios, n_b, alpha, beta, gamma)
            est = montecarlo.estimate(cfg, mode, trials=reps, seed=seed)
            row["mc_mean"] = est.per_term_means["secrecy_clamped_per_trial"] / n_b
            row["mc_stderr"] = est.std_error / n_b
        except Exception as exc:
            row["error"] = f"trial stage: {exc}"
        rows.append(row)
    return rows


def _desk(scale: str, desk_value, full_value):
    return desk_value if scale == "desk" else full_value


# ---------------------------------------------------------------- fig2

def _fig2(scale: str, seed: int) -> list[dict]:
    trials = _desk(scale, 2000, 20000)
    quad = QuadratureSpec()
    rows = []
    for n_e in range(9, 24):
        cfg = SystemConfig(16, 8, n_e, _DB20, 1.0, 1.0)
        est = montecarlo.estimate(cfg, SimulationMode.AN_WITH_ANE,
                                  trials, seed)
        bob = closed_form.avg_capacity_bob(cfg)
        eve = closed_form.avg_rate_eve_an(cfg, quad)
        rows.append({"curve": "secrecy", "sweep_value": n_e,
                     "mc_mean": est.mean, "mc_stderr": est.std_error,
                     "analytic": max(bob - eve, 0.0)})
        rows.append({"curve": "bob", "sweep_value": n_e,
                     "mc_mean": est.per_term_means["bob"],
                     "analytic": bob})
        rows.append({"curve": "eve", "sweep_value": n_e,
                     "mc_mean": est.per_term_means["eve"],
                     "analytic": eve})
    return rows


# ---------------------------------------------------------------- fig3

def _fig3(scale: str, seed: int) -> list[dict]:
    trials = _desk(scale, 1500, 15000)
    rows = []
    for beta in (0.5, 1.0, 2.0):
        template = SystemConfig(16, 8, 1, _DB20, beta, 1.0)
        rows += _rate_sweep(f"beta={_num(beta)}", template, "n_e",
                            range(1, 9), SimulationMode.AN_WITH_ANE,
                            trials, seed, analytic=True)
    return rows


# ------------------------------------------------- fig4 / fig5 / fig14

def _fig4(scale: str, seed: int) -> list[dict]:
    nb = _desk(scale, (4, 8, 12, 16, 24, 32, 48, 64),
               (4, 8, 12, 16, 24, 32, 48, 64, 96, 128))
    reps = _desk(scale, 6, 20)
    return _normalized_rows(
        "d1=2.5,d2=2", SimulationMode.AN_WITH_ANE, nb,
        lambda n_b: (2 * n_b, (5 * n_b) // 2),
        alpha=_DB20, beta=1.0, gamma=5.0, reps=reps, seed=seed)


def _fig5(scale: str, seed: int) -> list[dict]:
    nb = _desk(scale, (4, 8, 16, 24, 32, 48, 64),
               (4, 8, 16, 24, 32, 48, 64, 96, 128))
    reps = _desk(scale, 6, 20)
    rows = _normalized_rows(
        "d1=0.5,d2=1.5,beta=10,gamma=5", SimulationMode.AN_WITH_ANE, nb,
        lambda n_b: ((3 * n_b) // 2, n_b // 2),
        alpha=_DB20, beta=10.0, gamma=5.0, reps=reps, seed=seed)
    rows += _normalized_rows(
        "d1=1,d2=3,beta=1,gamma=1", SimulationMode.AN_WITH_ANE, nb,
        lambda n_b: (3 * n_b, n_b),
        alpha=_DB20, beta=1.0, gamma=1.0, reps=reps, seed=seed)
    return rows


def _fig14(scale: str, seed: int) -> list[dict]:
    nb = _desk(scale, (4, 8, 16, 24, 32, 48, 64),
               (4, 8, 16, 24, 32, 48, 64, 96))
    reps = _desk(scale, 6, 20)
    return _normalized_rows(
        "d1=0.5,d2=1.5", SimulationMode.NO_AN, nb,
        lambda n_b: ((3 * n_b) // 2, n_b // 2),
        alpha=_DB20, beta=10.0, gamma=5.0, reps=reps, seed=seed)


# ---------------------------------------------------- fig6 and fig7

def _fig6(scale: str, seed: int) -> list[dict]:
    nb = _desk(scale, (2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64),
               (2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64, 96, 128))
    reps = _desk(scale, 6, 20)
    return _normalized_rows(
        "n_a=n_e=n_b+1", SimulationMode.AN_WITH_ANE, nb,
        lambda n_b: (n_b + 1, n_b + 1),
        alpha=_DB20, beta=1.0, gamma=1.0, reps=reps, seed=seed)


def _fig7(scale: str, seed: int) -> list[dict]:
    n_e_values = _desk(scale, range(2, 61, 2), range(1, 61))
    trials = _desk(scale, 200, 2000)
    rows = []
    for n_e in n_e_values:
        row = {"curve": "n_a=40,n_b=20", "sweep_value": n_e / 20.0}
        try:
            cfg = SystemConfig(40, 20, int(n_e), _DB20, 1.0, 1.0)
            est = montecarlo.estimate(cfg, SimulationMode.AN_WITH_ANE,
                                      trials, seed)
            row["mc_mean"] = est.mean / 20.0
            row["mc_stderr"] = est.std_error / 20.0
            row["asymptotic"] = asymptotics.normalized_secrecy_rate_an(
                AsymptoticRatios.from_config(cfg), 20, _DB20, 1.0)
        except Exception as exc:
            row["error"] = f"trial stage: {exc}"
        rows.append(row)
    return rows


# ---------------------------------------------------------------- fig8

def _fig8(scale: str, seed: int) -> list[dict]:
    trials = _desk(scale, 1500, 15000)
    rows = []
    for n_a in (14, 15, 16):
        template = SystemConfig(n_a, 8, 9, _DB20, 1.0, 0.5)
        rows += _rate_sweep(f"n_a={n_a}", template, "n_e", range(9, 27),
                            SimulationMode.AN_WITH_ANE, trials, seed,
                            analytic=True)
    return rows


# ---------------------------------------------------------------- fig9

def _fig9(scale: str, seed: int) -> list[dict]:
    d1_step = _desk(scale, 0.25, 0.1)
    rows = []
    for d2 in (1.2, 1.5, 2.0, 2.5, 3.0, 4.0):
        for d1 in np.arange(d1_step, 8.0 + d1_step / 2, d1_step):
            ratios = AsymptoticRatios(delta1=float(d1), delta2=d2)
            rows.append({
                "curve": f"d2={_num(d2)}",
                "sweep_value": round(float(d1), 10),
                "asymptotic": asymptotics.normalized_secrecy_rate_an(
                    ratios, 50, 10.0, 1.0),
            })
    return rows


# ------------------------------------------------------- fig10 / fig11

def _fig10(scale: str, seed: int) -> list[dict]:
    gammas = _desk(scale, np.arange(0.1, 1.01, 0.1),
                   np.arange(0.05, 1.01, 0.05))
    trials = _desk(scale, 600, 6000)
    template = SystemConfig(32, 16, 40, _DB20, 1.0, 1.0)
    return _rate_sweep("n_a=32,n_b=16,n_e=40", template, "gamma",
                       [round(float(g), 10) for g in gammas],
                       SimulationMode.AN_WITH_ANE, trials, seed,
                       analytic=True, approx=True)


def _fig11(scale: str, seed: int) -> list[dict]:
    alpha_dbs = _desk(scale, np.arange(-5.0, 30.1, 5.0),
                      np.arange(-5.0, 30.1, 2.5))
    trials = _desk(scale, 600, 6000)
    template = SystemConfig(32, 16, 12, 1.0, 1.0, 1.0)
    rows = []
    for a_db in alpha_dbs:
        alpha = 10.0 ** (a_db / 10.0)
        pts = _rate_sweep("n_a=32,n_b=16,n_e=12", template, "alpha",
                          [alpha], SimulationMode.AN_WITH_ANE, trials,
                          seed, analytic=True, approx=True)
        pts[0]["sweep_value"] = round(float(a_db), 10)
        rows += pts
    return rows


# --------------------------------------------------------------- fig12

def _fig12(scale: str, seed: int) -> list[dict]:
    beta_dbs = _desk(scale, np.arange(-10.0, 40.1, 5.0),
                     np.arange(-10.0, 40.1, 2.5))
    trials = _desk(scale, 1200, 12000)
    rows = []
    cap = None
    for b_db in beta_dbs:
        beta = 10.0 ** (b_db / 10.0)
        cfg = SystemConfig(16, 8, 4, _DB3, beta, 1.0)
        if cap is None:
            cap = closed_form.avg_capacity_bob(cfg)
        pts = _rate_sweep("secrecy", cfg, "beta", [beta],
                          SimulationMode.AN_WITH_ANE, trials, seed,
                          analytic=True)
        pts[0]["sweep_value"] = round(float(b_db), 10)
        rows += pts
        rows.append({"curve": "bob_avg_capacity",
                     "sweep_value": round(float(b_db), 10),
                     "analytic": cap})
    return rows


# --------------------------------------------------------------- fig13

def _fig13(scale: str, seed: int) -> list[dict]:
    nb = _desk(scale, (8, 16, 24, 32, 48, 64), (8, 16, 24, 32, 48, 64, 80, 96))
    trials = _desk(scale, 200, 2000)
    rows = []
    for n_b in nb:
        row = {"curve": "n_a=100,n_e=n_b-1", "sweep_value": int(n_b)}
        try:
            cfg = SystemConfig(100, int(n_b), int(n_b) - 1, _DB15, 1.0, 1.0)
            est = montecarlo.estimate(cfg, SimulationMode.NO_AN, trials, seed)
            row["mc_mean"] = est.mean / n_b
            row["mc_stderr"] = est.std_error / n_b
            row["approx"] = closed_form.approx_secrecy_rate_no_an(cfg) / n_b
        except Exception as exc:
            row["error"] = f"trial stage: {exc}"
        rows.append(row)
    return rows


# --------------------------------------------------------------- fig15

def _fig15(scale: str, seed: int) -> list[dict]:
    trials = _desk(scale, 1200, 12000)
    rows = []
    for n_b in (8, 9, 10):
        template = SystemConfig(16, n_b, 1, _DB3, 1.0, 1.0)
        rows += _rate_sweep(f"n_b={n_b}", template, "n_e", range(1, 17),
                            SimulationMode.NO_AN, trials, seed,
                            analytic=True)
    return rows


# --------------------------------------------------------------- fig16

def _fig16(scale: str, seed: int) -> list[dict]:
    nb = _desk(scale, range(2, 21, 2), range(2, 21))
    trials = _desk(scale, 800, 8000)
    template = SystemConfig(32, 2, 10, _DB3, 1.0, 2.0)
    return _rate_sweep("n_a=32,n_e=10", template, "n_b", nb,
                       SimulationMode.NO_AN, trials, seed,
                       analytic=True, approx=True)


# --------------------------------------------------------------- fig17

def _fig17(scale: str, seed: int) -> list[dict]:
    trials = _desk(scale, 1200, 12000)
    template = SystemConfig(16, 9, 9, _DB6, 1.0, 1.0)
    rows = _rate_sweep("an", template, "n_e", range(9, 23),
                       SimulationMode.AN_WITH_ANE, trials, seed,
                       analytic=True)
    rows += _rate_sweep("no_an", template, "n_e", range(9, 23),
                        SimulationMode.NO_AN, trials, seed,
                        analytic=True)
    return rows


FIGURES: dict[str, FigureSpec] = {
    spec.fig_id: spec for spec in (
        FigureSpec("fig2", "average rates versus n_e at 20 dB, "
                   "n_a=16, n_b=8, beta=1, gamma=1", _fig2),
        FigureSpec("fig3", "average secrecy rate versus n_e for "
                   "beta in {0.5, 1, 2}, residual regime", _fig3),
        FigureSpec("fig4", "normalized rate versus n_b at d1=2.5, d2=2, "
                   "gamma=5, against the deterministic equivalent", _fig4),
        FigureSpec("fig5", "normalized rate versus n_b, both bundled "
                   "parameter sets, eavesdropper term vanishing", _fig5),
        FigureSpec("fig6", "normalized rate versus n_b with "
                   "n_a = n_e = n_b + 1", _fig6),
        FigureSpec("fig7", "normalized rate versus d1 at n_a=40, n_b=20",
                   _fig7),
        FigureSpec("fig8", "average secrecy rate versus n_e at gamma=0.5 "
                   "for n_a in {14, 15, 16}", _fig8),
        FigureSpec("fig9", "normalized-rate map over (d1, d2) at 10 dB",
                   _fig9),
        FigureSpec("fig10", "average versus approximate rate over gamma, "
                   "complete regime (32, 16, 40)", _fig10),
        FigureSpec("fig11", "average versus approximate rate over alpha, "
                   "residual regime (32, 16, 12)", _fig11),
        FigureSpec("fig12", "average secrecy rate versus beta against the "
                   "legitimate capacity ceiling, (16, 8, 4)", _fig12),
        FigureSpec("fig13", "approximate normalized baseline rate versus "
                   "n_b at n_a=100, n_e=n_b-1", _fig13),
        FigureSpec("fig14", "normalized baseline rate versus n_b at "
                   "d1=0.5, d2=1.5, gamma=5", _fig14),
        FigureSpec("fig15", "average baseline secrecy rate versus n_e for "
                   "n_b in {8, 9, 10}, zero onset at n_e=n_b", _fig15),
        FigureSpec("fig16", "average baseline rate versus n_b at "
                   "n_a=32, n_e=10, gamma=2", _fig16),
        FigureSpec("fig17", "artificial noise versus baseline over n_e "
                   "at (16, 9), baseline pinned at zero", _fig17),
    )
}
