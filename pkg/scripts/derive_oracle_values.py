"""Derive reference values for the test suite from independent oracles.

Everything here is computed without importing the package: ergodic
capacities come from the unordered-eigenvalue density of a complex
Wishart matrix (Laguerre polynomial form) integrated with adaptive
quadrature, expectations over the minimum Wishart eigenvalue come from
an mpmath implementation of the density written directly against the
incomplete-gamma moment matrix, and everything is cross-checked by
Monte Carlo where feasible.

Run from the repository root:

    python scripts/derive_oracle_values.py

The printed literals are pasted into the tests, which reference this
script by name.  This script also settles which variant of the finite
capacity series is the correct one (the construction is ambiguous in
three factors); the winner is reported at the end and is the form
implemented in the package.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from fractions import Fraction

import mpmath as mp
import numpy as np
from scipy import integrate, special


# ----------------------------------------------------------------------
# Exponential integral E_p(z) = int_1^inf exp(-z t) t^(-p) dt
# ----------------------------------------------------------------------

def exp_integral_oracle(p: int, z: float) -> float:
    if z == 0:
        return 1.0 / (p - 1)
    with mp.workdps(40):
        val = mp.quad(lambda t: mp.e ** (-z * t) * t ** (-p), [1, mp.inf])
    return float(val)


# ----------------------------------------------------------------------
# Upper incomplete gamma(a, b) = int_b^inf t^(a-1) exp(-t) dt
# ----------------------------------------------------------------------

def upper_gamma_oracle(a: float, b: float) -> float:
    with mp.workdps(40):
        return float(mp.gammainc(a, b, mp.inf))


# ----------------------------------------------------------------------
# Ergodic capacity of an m x n iid complex Gaussian channel at per
# transmit dimension SNR rho, via the unordered eigenvalue density
#   p(lam) = (1/m) sum_{k<m} k!/(k+d)! [L_k^d(lam)]^2 lam^d e^(-lam)
# so  E log2 det(I + rho W) = m * int log2(1 + rho lam) p(lam) dlam.
# ----------------------------------------------------------------------

def capacity_quadrature(t: int, r: int, x: float) -> float:
    m, n = min(t, r), max(t, r)
    d = n - m
    rho = x / t

    def density_sum(lam: float) -> float:
        tot = 0.0
        for k in range(m):
            lag = special.eval_genlaguerre(k, d, lam)
            tot += math.exp(
                special.gammaln(k + 1) - special.gammaln(k + d + 1)
            ) * lag * lag
        return tot * lam ** d * math.exp(-lam)

    def integrand(lam: float) -> float:
        return math.log2(1.0 + rho * lam) * density_sum(lam)

    hi = n + 40.0 * math.sqrt(n) + 60.0
    val, err = integrate.quad(integrand, 0.0, hi, limit=400,
                              epsabs=1e-13, epsrel=1e-12)
    tail, _ = integrate.quad(integrand, hi, np.inf, limit=200)
    return val + tail


def capacity_mc(t: int, r: int, x: float, trials: int, seed: int) -> tuple[float, float]:
    rng = np.random.default_rng(seed)
    rho = x / t
    vals = np.empty(trials)
    for i in range(trials):
        raw = rng.standard_normal((r, t, 2))
        h = (raw[..., 0] + 1j * raw[..., 1]) / np.sqrt(2.0)
        ev = np.linalg.eigvalsh(h @ h.conj().T)
        vals[i] = np.sum(np.log2(1.0 + rho * np.maximum(ev, 0.0)))
    return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(trials))


# ----------------------------------------------------------------------
# Candidate closed-form series for the same capacity.  Three factors
# plus the argument convention are ambiguous in the construction, so
# every combination is evaluated and compared against the quadrature
# oracle.
# ----------------------------------------------------------------------

def series_coefficients(m: int, n: int, num_mode: str, den_mode: str):
    """Coefficient of E_{j+1} in the series, as exact Fractions."""
    d = n - m
    cum: dict[int, Fraction] = defaultdict(Fraction)
    for k in range(m):
        for l in range(k + 1):
            for i in range(2 * l + 1):
                num_arg = d + (i if num_mode == "i" else l)
                den_exp = {"i": 2 * k - i, "1": 2 * k - 1, "l": 2 * k - l}[den_mode]
                c = Fraction(
                    (-1) ** i * math.factorial(2 * l) * math.factorial(num_arg)
                    * math.comb(2 * (k - l), k - l)
                    * math.comb(2 * (l + d), 2 * l - i),
                    math.factorial(l) * math.factorial(i) * math.factorial(d + l),
                )
                c /= Fraction(2) ** den_exp
                cum[d + i] += c
    # each (k,l,i) term carries sum_{j=0}^{d+i} E_{j+1}; convert to a
    # per-j coefficient by suffix summation
    top = max(cum)
    coef = [Fraction(0)] * (top + 1)
    running = Fraction(0)
    for j in range(top, -1, -1):
        running += cum[j]
        coef[j] = running
    return coef


def series_value(t: int, r: int, x: float, exp_sign: int,
                 num_mode: str, den_mode: str, arg_mode: str) -> float:
    m, n = min(t, r), max(t, r)
    coef = series_coefficients(m, n, num_mode, den_mode)
    z = (t / x) if arg_mode == "t/x" else (1.0 / x)
    bits = max(max(abs(c.numerator), c.denominator).bit_length() for c in coef)
    dps = 40 + int(0.302 * bits)
    with mp.workdps(dps):
        zz = mp.mpf(z)
        s = mp.mpf(0)
        for j, c in enumerate(coef):
            if c:
                s += mp.mpf(c.numerator) / mp.mpf(c.denominator) * mp.expint(j + 1, zz)
        return float(mp.e ** (exp_sign * zz) * s / mp.log(2))


def run_variant_search():
    grid = [(2, 1, 0.5), (2, 1, 4.0), (3, 2, 1.0), (3, 2, 10.0),
            (2, 2, 1.0), (4, 3, 25.0), (5, 2, 100.0)]
    targets = {g: capacity_quadrature(*g) for g in grid}
    print("# quadrature targets for variant search")
    for g, v in targets.items():
        print(f"#   f{g} = {v!r}")
    survivors = []
    for exp_sign, num_mode, den_mode, arg_mode in itertools.product(
            (1, -1), ("i", "l"), ("i", "1", "l"), ("t/x", "1/x")):
        worst = 0.0
        for g, ref in targets.items():
            got = series_value(*g, exp_sign, num_mode, den_mode, arg_mode)
            worst = max(worst, abs(got - ref) / max(abs(ref), 1e-12))
            if worst > 1e-6:
                break
        tag = (exp_sign, num_mode, den_mode, arg_mode)
        if worst < 1e-9:
            survivors.append((tag, worst))
        print(f"# variant exp={exp_sign:+d} num=(n-m+{num_mode})! "
              f"den=2^(2k-{den_mode}) arg={arg_mode}: worst rel err {worst:.3e}")
    print("# surviving variants:", survivors)
    return survivors


# ----------------------------------------------------------------------
# Minimum eigenvalue of a complex Wishart matrix W(n_e, s) with
# s = n_a - n_b degrees of freedom: density from the incomplete-gamma
# moment matrix, implemented directly in mpmath.
# ----------------------------------------------------------------------

def _psi_matrix(b, s: int, n_e: int):
    return mp.matrix([[mp.gammainc(s - n_e + i + j - 1, b, mp.inf)
                       for j in range(1, n_e + 1)] for i in range(1, n_e + 1)])


def min_eig_pdf_oracle(b, n_a: int, n_b: int, n_e: int):
    s = n_a - n_b
    logk = -sum(mp.loggamma(k) + mp.loggamma(s - n_e + k) for k in range(1, n_e + 1))
    if b == 0:
        if s > n_e:
            return mp.mpf(0)
        psi = _psi_matrix(mp.mpf(0), s, n_e)
        minor = psi[1:, 1:]
        return mp.e ** logk * mp.det(minor)
    psi = _psi_matrix(b, s, n_e)
    v = mp.matrix([b ** p for p in range(1, n_e + 1)])
    quad_form = (v.T * mp.lu_solve(psi, v))[0]
    return mp.e ** logk * mp.det(psi) * mp.e ** (-b) * b ** (s - n_e - 2) * quad_form


def mean_min_eig_oracle(n_a: int, n_b: int, n_e: int) -> float:
    with mp.workdps(40):
        val = mp.quad(lambda b: b * min_eig_pdf_oracle(b, n_a, n_b, n_e),
                      [0, 1, 5, 20, 60, 160])
        return float(val)


def min_eig_norm_oracle(n_a: int, n_b: int, n_e: int) -> float:
    with mp.workdps(40):
        val = mp.quad(lambda b: min_eig_pdf_oracle(b, n_a, n_b, n_e),
                      [0, 1, 5, 20, 60, 160])
        return float(val)


def min_eig_mc(n_a: int, n_b: int, n_e: int, trials: int, seed: int):
    rng = np.random.default_rng(seed)
    s = n_a - n_b
    vals = np.empty(trials)
    for i in range(trials):
        raw = rng.standard_normal((n_e, s, 2))
        g = (raw[..., 0] + 1j * raw[..., 1]) / np.sqrt(2.0)
        vals[i] = np.linalg.eigvalsh(g @ g.conj().T)[0]
    return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(trials))


# ----------------------------------------------------------------------
# Average eavesdropper rate in the residual regime:
#   Ee = int int log2(1 + alpha a / (alpha beta b + 1)) f_A(a) f_B(b) da db
# with A ~ Gamma(n_b, 1).
# ----------------------------------------------------------------------

def residual_eve_oracle(n_a: int, n_b: int, n_e: int,
                        alpha: float, beta: float) -> float:
    # outer integral over the expensive eigenvalue density, inner over
    # the cheap gamma density, so the matrix determinant is evaluated
    # once per outer node only
    with mp.workdps(25):
        norm = mp.factorial(n_b - 1)

        def gamma_mean_log(c):
            return mp.quad(
                lambda a: mp.log(1 + c * a) / mp.log(2)
                * a ** (n_b - 1) * mp.e ** (-a) / norm,
                [0, n_b, 4 * n_b, 12 * n_b, 48 * n_b])

        def outer(b):
            fb = min_eig_pdf_oracle(b, n_a, n_b, n_e)
            if fb == 0:
                return mp.mpf(0)
            return fb * gamma_mean_log(alpha / (alpha * beta * b + 1))

        val = mp.quad(outer, [0, 1, 5, 20, 60])
        return float(val)


# ----------------------------------------------------------------------
# Large-system per-antenna capacity: settle the sign convention of the
# deterministic equivalent against a direct large-matrix realization.
# ----------------------------------------------------------------------

def fluct(x: float, y: float) -> float:
    a = x * (1 + math.sqrt(y)) ** 2 + 1
    b = x * (1 - math.sqrt(y)) ** 2 + 1
    return (math.sqrt(a) - math.sqrt(b)) ** 2


def phi_variant(x: float, y: float, second_sign: int) -> float:
    f = fluct(x, y)
    return (y * math.log2(1 + x - f / 4)
            + math.log2(1 + x * y + second_sign * f / 4)
            - f / (4 * x) * math.log2(math.e))


def check_phi_sign():
    rng = np.random.default_rng(7)
    print("# deterministic-equivalent sign check (m=512, 3 reps)")
    for x, y in [(1.0, 2.0), (0.5, 3.0), (8.0, 1.5)]:
        m = 512
        n = int(round(y * m))
        acc = 0.0
        reps = 3
        for _ in range(reps):
            raw = rng.standard_normal((m, n, 2))
            h = (raw[..., 0] + 1j * raw[..., 1]) / np.sqrt(2.0)
            ev = np.linalg.eigvalsh(h @ h.conj().T)
            acc += np.sum(np.log2(1.0 + (x / m) * np.maximum(ev, 0.0))) / m
        emp = acc / reps
        minus = phi_variant(x, y, -1)
        plus = phi_variant(x, y, +1)
        print(f"#   x={x} y={y}: empirical {emp:.6f}  "
              f"minus-form {minus:.6f}  plus-form {plus:.6f}")


def main():
    print("== exponential integral ==")
    for p, z in [(1, 0.5), (1, 1.0), (2, 1e-3), (3, 2.5), (5, 10.0),
                 (10, 0.1), (2, 0.0), (4, 0.0)]:
        print(f"exp_integral({p}, {z}) = {exp_integral_oracle(p, z)!r}")

    print("== upper incomplete gamma ==")
    for a, b in [(1.0, 0.0), (2.5, 3.7), (5.0, 0.5), (30.0, 50.0),
                 (7.0, 0.0), (1.0, 2.0), (12.0, 30.0)]:
        print(f"upper_incomplete_gamma({a}, {b}) = {upper_gamma_oracle(a, b)!r}")

    print("== ergodic capacity quadrature grid (frozen into tests) ==")
    freeze = [(1, 1, 1.0), (1, 1, 10.0), (2, 1, 4.0), (1, 2, 4.0),
              (2, 2, 1.0), (3, 2, 10.0), (4, 4, 0.5), (16, 8, 800.0),
              (8, 4, 800.0), (8, 15, 800.0), (16, 8, 1600.0), (12, 8, 96.0),
              (16, 12, 16.0), (9, 16, 36.0), (8, 12, 16.0), (16, 16, 64.0)]
    for g in freeze:
        print(f"capacity{g} = {capacity_quadrature(*g)!r}")

    print("== capacity MC cross-checks (3 s.e.) ==")
    for g in [(16, 8, 800.0), (8, 15, 800.0)]:
        mean, se = capacity_mc(*g, trials=4000, seed=11)
        quadv = capacity_quadrature(*g)
        print(f"# {g}: mc {mean:.4f} +- {se:.4f}, quad {quadv:.4f}, "
              f"|diff|/se = {abs(mean - quadv) / se:.2f}")

    print("== series variant search ==")
    run_variant_search()

    print("== minimum Wishart eigenvalue ==")
    for cfg in [(16, 8, 1), (16, 8, 2), (16, 8, 4), (12, 4, 6), (16, 8, 8)]:
        norm = min_eig_norm_oracle(*cfg)
        mean = mean_min_eig_oracle(*cfg)
        print(f"min_eig({cfg}): norm = {norm!r}, mean = {mean!r}")
    for cfg in [(16, 8, 2), (16, 8, 4), (12, 4, 6)]:
        mc_mean, mc_se = min_eig_mc(*cfg, trials=20000, seed=5)
        mean = mean_min_eig_oracle(*cfg)
        print(f"# {cfg}: mc mean {mc_mean:.5f} +- {mc_se:.5f}, "
              f"analytic {mean:.5f}, |diff|/se = {abs(mc_mean - mean) / mc_se:.2f}")

    print("== residual-regime eavesdropper expectation (16, 8, 4) ==")
    for alpha, beta in [(100.0, 0.5), (100.0, 1.0), (100.0, 2.0),
                        (2.0, 1.0), (2.0, 10000.0)]:
        print(f"residual_eve(16,8,4, alpha={alpha}, beta={beta}) = "
              f"{residual_eve_oracle(16, 8, 4, alpha, beta)!r}")

    print("== deterministic equivalent sign ==")
    check_phi_sign()


if __name__ == "__main__":
    main()
