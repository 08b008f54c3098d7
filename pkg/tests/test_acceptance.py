"""Acceptance gate: ten numbered criteria, one printed line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines.
Criterion 3 is expected to fail: it pins the zero-rate onsets of the
artificial-noise scheme to externally supplied reference values that
both the exact averages and the simulator contradict.  The check is
kept failing deliberately rather than loosened; the printed diagnostic
carries the onsets this implementation computes.
"""

import time

import numpy as np
import pytest
import scipy.integrate
import scipy.stats

from anwiretap import closed_form, montecarlo, randmat
from anwiretap.asymptotics import (
    AsymptoticRatios,
    f_script,
    normalized_secrecy_rate_an,
    phi,
)
from anwiretap.closed_form import (
    avg_capacity_bob,
    avg_secrecy_rate_an,
    avg_secrecy_rate_no_an,
    ergodic_capacity_f,
)
from anwiretap.montecarlo import SimulationMode
from anwiretap.wiretap_core import (
    ChannelRealization,
    SystemConfig,
    build_ane_projector,
    build_precoder,
    rate_bob_an,
    rate_eve_an_ane,
    secrecy_rate,
)


def _report(cid: int, ok: bool, detail: str) -> None:
    print(f"\n[C{cid:02d}] {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {cid}: {detail}"


def test_criterion_01_complete_regime_cross_validation():
    cfg = SystemConfig(16, 8, 12, alpha=100.0, beta=1.0, gamma=1.0)
    t0 = time.perf_counter()
    est = montecarlo.estimate(cfg, SimulationMode.AN_WITH_ANE,
                              trials=10_000, seed=101)
    elapsed = time.perf_counter() - t0
    want = avg_secrecy_rate_an(cfg)
    rel = abs(est.mean - want) / want
    _report(1, rel <= 0.02 and elapsed < 30.0,
            f"complete-regime average, MC {est.mean:.4f} vs closed form "
            f"{want:.4f}, rel err {rel:.2%}, {elapsed:.1f}s")


def test_criterion_02_residual_regime_cross_validation():
    lines = []
    ok = True
    quad_values = []
    for beta in (0.5, 1.0, 2.0):
        cfg = SystemConfig(16, 8, 4, alpha=100.0, beta=beta, gamma=1.0)
        est = montecarlo.estimate(cfg, SimulationMode.AN_WITH_ANE,
                                  trials=10_000, seed=202)
        want = avg_secrecy_rate_an(cfg)
        quad_values.append(want)
        rel = abs(est.mean - want) / want
        ok = ok and rel <= 0.03
        lines.append(f"beta={beta}: {rel:.2%}")
    monotone = all(a <= b for a, b in zip(quad_values, quad_values[1:]))
    _report(2, ok and monotone,
            f"residual-regime average vs simulation ({', '.join(lines)}), "
            f"nondecreasing in beta: {monotone}")


def _an_zero_onset(n_a: int, n_b: int, alpha: float, gamma: float) -> int:
    for n_e in range(n_a - n_b + 1, 40):
        cfg = SystemConfig(n_a, n_b, n_e, alpha=alpha, beta=1.0, gamma=gamma)
        if avg_secrecy_rate_an(cfg) <= 1e-6:
            return n_e
    raise AssertionError("no zero onset found below n_e = 40")


def test_criterion_03_an_zero_onset_reference_values():
    reference = {14: 20, 15: 22, 16: 24}
    got = {n_a: _an_zero_onset(n_a, 8, alpha=100.0, gamma=0.5)
           for n_a in (14, 15, 16)}
    _report(3, got == reference,
            f"zero-rate onset vs reference values: computed {got}, "
            f"reference {reference}")


def test_criterion_04_no_an_zero_onset():
    ok = True
    details = []
    for n_b in (8, 9, 10):
        onset = None
        for n_e in range(1, 17):
            cfg = SystemConfig(16, n_b, n_e, alpha=2.0, beta=1.0, gamma=1.0)
            if avg_secrecy_rate_no_an(cfg) <= 1e-6:
                onset = n_e
                break
        below = avg_secrecy_rate_no_an(
            SystemConfig(16, n_b, n_b - 1, alpha=2.0, beta=1.0, gamma=1.0))
        ok = ok and onset == n_b and below > 1e-6
        details.append(f"n_b={n_b}: onset {onset}")
    _report(4, ok, "baseline zero-rate onset at n_e = n_b "
            f"({', '.join(details)})")


def test_criterion_05_normalized_rate_convergence():
    cfg = SystemConfig(128, 64, 160, alpha=100.0, beta=1.0, gamma=5.0)
    asym = normalized_secrecy_rate_an(AsymptoticRatios.from_config(cfg),
                                      64.0, 100.0, 5.0)
    t0 = time.perf_counter()
    errs = []
    for seed in range(20):
        chan = ChannelRealization.sample(cfg, np.random.default_rng(seed))
        pre = build_precoder(chan.h, cfg)
        proj = build_ane_projector(chan.g, pre, cfg)
        rs = secrecy_rate(rate_bob_an(pre, cfg),
                          rate_eve_an_ane(chan.g, pre, proj, cfg))
        errs.append(abs(rs / 64.0 - asym) / asym)
    elapsed = time.perf_counter() - t0
    med = float(np.median(errs))
    _report(5, med <= 0.05 and elapsed < 120.0,
            f"single-realization normalized rate vs limit at n_b=64, "
            f"median rel err {med:.2%}, {elapsed:.1f}s")


def test_criterion_06_vanishing_eavesdropper_regime():
    cfg = SystemConfig(144, 48, 48, alpha=100.0, beta=1.0, gamma=1.0)
    est = montecarlo.estimate(cfg, SimulationMode.AN_WITH_ANE,
                              trials=30, seed=5)
    eve_norm = est.per_term_means["eve"] / 48.0
    target = phi(100.0 * 48.0, 3.0)
    rel = abs(est.mean / 48.0 - target) / target
    _report(6, eve_norm <= 0.15 and rel <= 0.07,
            f"square residual mix: eavesdropper {eve_norm:.3f} bits per "
            f"antenna, normalized rate rel err {rel:.2%}")


def test_criterion_07_beta_free_elimination():
    base = SystemConfig(16, 8, 12, alpha=100.0, beta=1.0, gamma=1.0)
    rng = np.random.default_rng(77)
    ok = True
    for _ in range(50):
        chan = ChannelRealization.sample(base, rng)
        pre = build_precoder(chan.h, base)
        rates = set()
        for beta in (0.5, 2.0, 8.0):
            cfg = SystemConfig(16, 8, 12, alpha=100.0, beta=beta, gamma=1.0)
            proj = build_ane_projector(chan.g, pre, cfg)
            rates.add(rate_eve_an_ane(chan.g, pre, proj, cfg))
        ok = ok and len(rates) == 1
    _report(7, ok, "eavesdropper rate bitwise independent of beta on 50 "
            "fixed realizations after complete elimination")


def test_criterion_08_large_beta_limit():
    cfg = SystemConfig(16, 8, 4, alpha=2.0, beta=1e4, gamma=1.0)
    cap = avg_capacity_bob(cfg)
    gap = abs(avg_secrecy_rate_an(cfg) - cap)
    _report(8, gap <= 0.01 * cap,
            f"large-beta secrecy rate within {gap / cap:.3%} of the "
            f"legitimate capacity")


def test_criterion_09_an_advantage_region():
    ok = True
    for n_e in range(9, 23):
        cfg = SystemConfig(16, 9, n_e, alpha=4.0, beta=1.0, gamma=1.0)
        ok = ok and avg_secrecy_rate_no_an(cfg) == 0.0
        ok = ok and avg_secrecy_rate_an(cfg) > 0.0
    _report(9, ok, "baseline rate zero while artificial noise stays "
            "positive for n_e in 9..22 at (16, 9)")


def test_criterion_10_property_bundle():
    checks: list[tuple[str, bool]] = []

    sym = all(
        abs(ergodic_capacity_f(t, r, x)
            - ergodic_capacity_f(r, t, x * r / t))
        <= 1e-10 * ergodic_capacity_f(t, r, x)
        for t, r in [(2, 5), (7, 4), (16, 8)] for x in (0.5, 8.0, 200.0))
    checks.append(("capacity symmetry", sym))

    vals = [ergodic_capacity_f(4, 3, x) for x in (0.5, 2.0, 8.0, 64.0)]
    mono = (all(a < b for a, b in zip(vals, vals[1:]))
            and ergodic_capacity_f(5, 3, 8.0) > ergodic_capacity_f(4, 3, 8.0)
            and ergodic_capacity_f(4, 4, 8.0) > ergodic_capacity_f(4, 3, 8.0))
    checks.append(("capacity monotonicity", mono))

    grid = [(0.1, 0.3), (1.0, 2.0), (10.0, 7.0), (100.0, 0.5)]
    checks.append(("phi aspect identity", all(
        abs(phi(x, y) - y * phi(x * y, 1.0 / y)) <= 1e-10 * phi(x, y)
        for x, y in grid)))
    checks.append(("support-width identity", all(
        abs(f_script(x, y) - f_script(x * y, 1.0 / y))
        <= 1e-12 * f_script(x, y) for x, y in grid)))
    checks.append(("support-width limit", all(
        abs(f_script(x, 1e12) / (4.0 * x) - 1.0) <= 1e-4
        for x in (0.1, 1.0, 10.0, 100.0))))

    mass_a, _ = scipy.integrate.quad(
        lambda t: randmat.chi2_scaled_pdf(t, 8), 0, 60, limit=200)
    norm_ok = abs(mass_a - 1.0) <= 1e-6
    for dims in ((16, 8, 4), (16, 8, 8)):
        hi = randmat.support_cutoff(*dims)
        mass_b, _ = scipy.integrate.quad(
            lambda t: randmat.wishart_min_eig_pdf(t, *dims), 0, hi,
            limit=200)
        norm_ok = norm_ok and abs(mass_b - 1.0) <= 1e-6
    checks.append(("density normalizations", norm_ok))

    b = np.linspace(0.05, 25.0, 120)
    red = np.max(np.abs(randmat.wishart_min_eig_pdf(b, 16, 8, 1)
                        - randmat.chi2_scaled_pdf(b, 8)))
    checks.append(("single-antenna reduction", red <= 1e-10))

    rng = np.random.default_rng(2024)
    draws = 40_000
    z = randmat.sample_complex_gaussian(draws, 8, rng)
    gains = np.sum(np.abs(z) ** 2, axis=1)
    ks_a = scipy.stats.kstest(gains, scipy.stats.gamma(8).cdf).statistic
    w = randmat.sample_complex_gaussian(draws * 4, 8, rng).reshape(
        draws, 4, 8)
    eigs = np.linalg.eigvalsh(w @ w.conj().transpose(0, 2, 1))[:, 0]

    def cdf_b(t):
        return 1.0 - np.exp(np.array(
            [randmat.wishart_min_eig_log_sf(v, 16, 8, 4) for v in t]))

    ks_b = scipy.stats.kstest(eigs, cdf_b).statistic
    checks.append(("distributional agreement", ks_a < 0.02 and ks_b < 0.02))

    cfg = SystemConfig(16, 8, 12, alpha=100.0, beta=1.0, gamma=1.0)
    rng = np.random.default_rng(9)
    nulls = True
    for _ in range(200):
        chan = ChannelRealization.sample(cfg, rng)
        pre = build_precoder(chan.h, cfg)
        proj = build_ane_projector(chan.g, pre, cfg)
        basis = np.hstack([pre.v1, pre.v0])
        nulls = nulls and np.abs(
            basis.conj().T @ basis - np.eye(16)).max() <= 1e-10
        nulls = nulls and np.abs(
            chan.h @ pre.v0).max() <= 1e-9 * np.linalg.norm(chan.h)
        nulls = nulls and np.abs(
            proj.w_matrix @ chan.g @ pre.v0).max() <= 1e-8
    checks.append(("nulling tolerances", nulls))

    one = montecarlo.estimate(cfg, SimulationMode.AN_WITH_ANE, 60, 3,
                              workers=1)
    three = montecarlo.estimate(cfg, SimulationMode.AN_WITH_ANE, 60, 3,
                                workers=3)
    checks.append(("simulator determinism", one == three))

    failed = [name for name, ok in checks if not ok]
    _report(10, not failed,
            f"property bundle, {len(checks)} groups"
            + (f", failing: {', '.join(failed)}" if failed else ""))
