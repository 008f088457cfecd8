"""Self-contained oracle suite behind the ``verify`` CLI subcommand.

Every closed form in the package is checked here against an independent
numerical route: bisection roots against the closed forms they certify,
grid searches against analytic maximizers, sampled convex combinations
against frontier domination, Monte Carlo SINRs against the rate formulas,
and the genie-channel limits against direct matrix evaluation.  Checks where
a published rendering of an expression disagrees with its defining relation
(threshold grouping, closed-form exponent, limit-matrix numerator) report
which reading the independent route confirms.

The suite is sized for interactive use; the pytest acceptance module runs
the same checks at full scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import CognitiveChannel, StandardChannel
from .errors import DegenerateSlope
from .link_sim import SimConfig, simulate
from .mimo_bc import AlignedChannel, CovariancePair, adbc_rates, limit_rates
from .protocol import run_csi_acquisition, run_ramping_controller
from .rates_high import a_threshold, rates_high, weighted_covariance_max
from .rates_low import (alpha_star, alpha_star_closed_form, cognitive_capacity,
                        primary_target_rate, rc_low, rp_low)
from .region import convexity_check, frontier_low, maximize_weighted, sum_capacity


@dataclass(frozen=True)
class VerifyRow:
    name: str
    passed: bool
    detail: str


def _draw_channels(rng, n, a_lo=0.05, a_hi=1.0):
    for _ in range(n):
        yield StandardChannel(a=float(rng.uniform(a_lo, a_hi)), b=0.0,
                              Pp=float(rng.uniform(1e-3, 100.0)),
                              Pc=float(rng.uniform(1e-3, 100.0)))


def check_alpha_star_root(n_draws: int = 200, seed: int = 0) -> VerifyRow:
    rng = np.random.default_rng(seed)
    worst_res, worst_gap = 0.0, 0.0
    for std in _draw_channels(rng, n_draws):
        split = alpha_star(std)
        worst_res = max(worst_res, abs(rp_low(std, split) - primary_target_rate(std)))
        worst_gap = max(worst_gap, abs(alpha_star_closed_form(std) - split.alpha))
    ok = worst_res < 1e-9 and worst_gap < 1e-9
    return VerifyRow("alpha-star root + closed form", ok,
                     f"max residual {worst_res:.2e}, max closed-form gap {worst_gap:.2e}")


def check_alpha_exponent() -> VerifyRow:
    std = StandardChannel(a=1.0, b=0.0, Pp=1.0, Pc=1.0)
    root = alpha_star(std).alpha
    bracket = math.sqrt(alpha_star_closed_form(std))  # the bracketed quantity itself
    gap_sq = abs(bracket ** 2 - root)
    gap_sqrt = abs(math.sqrt(bracket) - root)
    ok = gap_sq < 1e-9 and gap_sqrt > 1e-3
    return VerifyRow("no-interference root exponent", ok,
                     f"square of bracket matches root (gap {gap_sq:.1e}); "
                     f"square-root reading off by {gap_sqrt:.2e}")


def check_spot_values() -> VerifyRow:
    std = StandardChannel(a=1.0, b=0.0, Pp=1.0, Pc=1.0)
    split = alpha_star(std)
    cap = cognitive_capacity(std)
    exact = ((math.sqrt(3.0) - 1.0) / 2.0) ** 2
    ok = (abs(split.alpha - exact) < 1e-10
          and abs(cap.rp - 0.5 * math.log(2.0)) < 1e-12
          and abs(cap.rc - 0.5 * math.log(2.0 - exact)) < 1e-12)
    return VerifyRow("unit-channel spot values", ok,
                     f"alpha*={split.alpha:.9f}, rc*={cap.rc:.9f}")


def check_sum_capacity(n_draws: int = 20, seed: int = 1) -> VerifyRow:
    rng = np.random.default_rng(seed)
    worst = 0.0
    ok = True
    for _ in range(n_draws):
        std = StandardChannel(a=float(rng.uniform(1.0, 10.0)), b=0.0,
                              Pp=float(rng.uniform(0.1, 50.0)),
                              Pc=float(rng.uniform(0.1, 50.0)))
        al, val = maximize_weighted(std, 1.0)
        worst = max(worst, abs(val - sum_capacity(std)))
        ok = ok and al > 1.0 - 1e-3
    ok = ok and worst < 1e-8
    return VerifyRow("sum capacity vs grid maximizer", ok, f"max gap {worst:.2e}")


def check_weighted_lemma(n_draws: int = 20, seed: int = 2) -> VerifyRow:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_draws):
        std = StandardChannel(a=float(rng.uniform(1.0, 10.0)), b=0.0,
                              Pp=float(rng.uniform(0.1, 50.0)),
                              Pc=float(rng.uniform(0.1, 50.0)))
        mu = float(rng.uniform(1.0, 5.0))
        _, val = maximize_weighted(std, mu)
        worst = max(worst, abs(val - mu * sum_capacity(std)))
    return VerifyRow("weighted max at full relaying (a>=1, mu>=1)", worst < 1e-8,
                     f"max gap {worst:.2e}")


def check_convexity(n_channels: int = 5, n_trials: int = 2000, seed: int = 3) -> VerifyRow:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i, std in enumerate(_draw_channels(rng, n_channels)):
        curve = frontier_low(std, n_points=501)
        rep = convexity_check(curve, n_trials=n_trials, seed=seed + i, std=std)
        worst = min(worst, rep.worst_slack)
    return VerifyRow("region convexity by sampling", worst >= -1e-9,
                     f"worst domination slack {worst:.2e}")


def threshold_bisection_oracle(b: float, Pp: float, Pc: float, alpha: float,
                               a_hi: float = 1e6) -> float:
    """Independent root of the decode-order inequality, by bisection in a."""
    def holds(a: float) -> bool:
        lhs = (1.0 - alpha) * Pc / (1.0 + (b * math.sqrt(Pp) + math.sqrt(alpha * Pc)) ** 2)
        rhs = a * a * (1.0 - alpha) * Pc / (
            1.0 + (math.sqrt(Pp) + a * math.sqrt(alpha * Pc)) ** 2)
        return lhs <= rhs
    lo, hi = 0.0, a_hi
    if not holds(hi):
        return math.inf
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if holds(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def check_threshold(n_draws: int = 200, seed: int = 4) -> VerifyRow:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_draws):
        Pp = float(rng.uniform(0.1, 20.0))
        Pc = float(rng.uniform(0.1, 20.0))
        b = float(rng.uniform(0.0, 2.0))
        al = float(rng.uniform(0.0, 0.99))
        thr = a_threshold(b, Pp, Pc, al)
        worst = max(worst, abs(thr.a_min - threshold_bisection_oracle(b, Pp, Pc, al)))
    spot = a_threshold(1.0, 1.0, 1.0, 0.0)
    detail = (f"max |quadratic-root - bisection| {worst:.2e}; grouping report at "
              f"(b=1,Pp=1,alpha=0): root {spot.a_min:.6f} vs printed form "
              f"{spot.a_min_printed:.6f} (root matches the direct inequality)")
    ok = worst < 1e-8 and abs(spot.a_min - 1.0) < 1e-12 and abs(spot.a_min_printed - 2.0) < 1e-12
    return VerifyRow("decode-order threshold vs bisection", ok, detail)


def check_appendix_reduction(n_draws: int = 200, seed: int = 5) -> VerifyRow:
    """Covariance rates at full relaying reduce to the high-regime pair."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_draws):
        Pp, Pc = float(rng.uniform(0.1, 20.0)), float(rng.uniform(0.1, 20.0))
        a, b = float(rng.uniform(1.0, 8.0)), float(rng.uniform(0.0, 2.0))
        al = float(rng.uniform(0.0, 1.0))
        std = StandardChannel(a=a, b=b, Pp=Pp, Pc=Pc)
        kp = math.sqrt(al * Pp * Pc)
        rp_cov = 0.5 * math.log1p(Pp + 2.0 * a * kp + al * a * a * Pc)
        rc_cov = 0.5 * math.log1p((1.0 - al) * Pc / (1.0 + b * b * Pp + 2.0 * kp * b + al * Pc))
        r = rates_high(std, al)
        worst = max(worst, abs(rp_cov - r.rp), abs(rc_cov - r.rc))
    return VerifyRow("covariance rates reduce at full relaying", worst < 1e-12,
                     f"max gap {worst:.2e}")


def check_b0_optimality(n_draws: int = 10, seed: int = 6) -> VerifyRow:
    rng = np.random.default_rng(seed)
    ok = True
    worst_beta = 1.0
    for _ in range(n_draws):
        std = StandardChannel(a=float(rng.uniform(1.0, 8.0)), b=0.0,
                              Pp=float(rng.uniform(0.1, 10.0)),
                              Pc=float(rng.uniform(0.1, 10.0)))
        mu = float(rng.uniform(0.0, 1.0))
        res = weighted_covariance_max(std, mu, n_grid=41)
        k_target = math.sqrt(res.alpha * std.Pp * std.Pc)
        worst_beta = min(worst_beta, res.beta)
        ok = ok and res.beta >= 1.0 - 1e-6 and abs(res.k_p - k_target) <= 1e-6 * math.sqrt(
            std.Pp * std.Pc)
    return VerifyRow("b=0 keeps full relaying optimal", ok,
                     f"min returned beta {worst_beta:.8f}")


def check_mimo_limits(n_draws: int = 20, seed: int = 7) -> VerifyRow:
    rng = np.random.default_rng(seed)
    worst_dev, worst_opt = 0.0, 0.0
    for _ in range(n_draws):
        Pp, Pc = float(rng.uniform(0.1, 10.0)), float(rng.uniform(0.1, 10.0))
        a = float(rng.uniform(0.1, 1.0))
        std = StandardChannel(a=a, b=0.0, Pp=Pp, Pc=Pc)
        beta, al = float(rng.uniform(0.0, 1.0)), float(rng.uniform(0.0, 1.0))
        kp = float(rng.uniform(-1.0, 1.0)) * math.sqrt(al * beta * Pp * Pc)
        kc = float(rng.uniform(-1.0, 1.0)) * math.sqrt((1 - al) * (1 - beta) * Pp * Pc)
        cov = CovariancePair(Pp=Pp, Pc=Pc, beta=beta, alpha=al, k_p=kp, k_c=kc)
        r = adbc_rates(AlignedChannel(a=a, eps=1e-6, M=1e6), cov)
        lim = limit_rates(std, cov)
        worst_dev = max(worst_dev, abs(r.rp - lim.rp), abs(r.rc - lim.rc))
        opt = CovariancePair.optimal(Pp, Pc, al)
        lim_opt = limit_rates(std, opt)
        worst_opt = max(worst_opt, abs(lim_opt.rp - rp_low(std, al)),
                        abs(lim_opt.rc - rc_low(std, al)))
    # numerator reading of the inverse-limit matrix, checked numerically
    cov = CovariancePair(Pp=2.0, Pc=3.0, beta=0.25, alpha=0.4, k_p=0.1, k_c=0.5)
    a = 0.7
    hp = np.array([[1.0, a], [1.0, 0.0]])
    big = np.linalg.inv(np.eye(2) + np.diag([1.0, 1e-14]) @ hp @ cov.Sigma_c @ hp.T)
    denom = (1 - cov.beta) * cov.Pp + 2 * a * cov.k_c + a * a * (1 - cov.alpha) * cov.Pc + 1
    gap_pp = abs(big[0, 1] - (-((1 - cov.beta) * cov.Pp + a * cov.k_c) / denom))
    gap_pc = abs(big[0, 1] - (-((1 - cov.beta) * cov.Pc + a * cov.k_c) / denom))
    ok = worst_dev < 1e-3 and worst_opt < 1e-6 and gap_pp < 1e-9 and gap_pc > 1e-3
    return VerifyRow("genie-channel limits", ok,
                     f"max dev at (1e-6,1e6): {worst_dev:.2e}; optimal-signature gap "
                     f"{worst_opt:.2e}; inverse numerator matches (1-beta)Pp+a*kc "
                     f"(gap {gap_pp:.1e}), Pc reading off by {gap_pc:.1e}")


def check_mc_sinr(n: int = 1_000_000, seed: int = 12345) -> VerifyRow:
    std = StandardChannel(a=0.8, b=0.3, Pp=4.0, Pc=2.0)
    split = alpha_star(std)
    trace = simulate(SimConfig(scheme="superposition", channel=std,
                               n_symbols=n, seed=seed, alpha=split.alpha))
    err_p = abs(trace.implied_rp - primary_target_rate(std)) / primary_target_rate(std)
    err_s = abs(trace.sinr_s - (1.0 - split.alpha) * std.Pc) / ((1.0 - split.alpha) * std.Pc)
    ok = err_p < 0.01 and err_s < 0.01
    return VerifyRow("Monte Carlo SINR at the zero-loss split", ok,
                     f"primary-rate rel err {err_p:.2e}, genie SINR rel err {err_s:.2e}")


def check_two_tap(n: int = 200_000, seed: int = 54321) -> VerifyRow:
    ch = CognitiveChannel(p=1.2, f=0.7, g=0.4, c=1.0, Pp=3.0, Pc=2.0, Np=1.0, Ns=1.0,
                          phase_p=0.3, phase_f=-1.1, phase_g=0.0, phase_c=0.0)
    s = abs(ch.p) ** 2 * ch.Pp / ch.Np
    trace = simulate(SimConfig(scheme="two-tap-isi", channel=ch, n_symbols=n,
                               seed=seed, alpha=s / (1.0 + s), l_c=3))
    err = abs(trace.extras["snr_ratio_to_primary"] - 1.0)
    return VerifyRow("two-tap combining restores the primary SNR", err < 0.01,
                     f"post-combining SNR / primary SNR = {trace.extras['snr_ratio_to_primary']:.4f}")


def check_csi() -> VerifyRow:
    ch = CognitiveChannel(p=1.0, f=0.6, g=0.2, c=0.9, Pp=2.0, Pc=1.5, Np=0.5, Ns=0.5,
                          phase_p=0.4, phase_f=2.0, phase_g=0.0, phase_c=0.0)
    res = run_csi_acquisition(ch, n_probe=64, quantizer_bits=None, seed=0, noiseless=True)
    exact = abs(res.f_hat - ch.f_cx) < 1e-12

    # destructive probe: |p + f sqrt(Pc/Pp)| < |p| must raise exactly one ARQ
    ch2 = CognitiveChannel(p=1.0, f=0.5, g=0.2, c=0.9, Pp=1.0, Pc=1.0, Np=0.5, Ns=0.5,
                           phase_p=0.0, phase_f=math.pi, phase_g=0.0, phase_c=0.0)
    res2 = run_csi_acquisition(ch2, n_probe=64, quantizer_bits=8, seed=1)
    kinds = [e.kind for e in res2.events]
    one_arq = kinds.count("ARQ") == 1 and kinds.index("ARQ") < kinds.index("F_Computed")
    return VerifyRow("CSI acquisition", exact and one_arq,
                     f"noiseless estimate exact: {exact}; destructive probe ARQs: "
                     f"{kinds.count('ARQ')}")


def check_ramping() -> VerifyRow:
    ch = CognitiveChannel(p=1.0, f=0.6, g=0.4, c=1.0, Pp=2.0, Pc=1.5, Np=1.0, Ns=1.0)
    from .channel import to_standard
    std = to_standard(ch)
    res = run_ramping_controller(ch, dAlpha=0.01)
    split = alpha_star(std)
    gap = abs(res.state.alpha_current - split.alpha)
    full_power = abs(res.state.Pc_current - ch.Pc) < 1e-12
    ch0 = CognitiveChannel(p=1.0, f=0.0, g=0.4, c=1.0, Pp=2.0, Pc=1.5, Np=1.0, Ns=1.0)
    res0 = run_ramping_controller(ch0, dAlpha=0.01)
    quiet = (res0.state.arq_count == 0 and res0.state.alpha_current == 0.0
             and abs(res0.state.Pc_current - ch0.Pc) < 1e-12)
    ok = gap <= 0.02 + 1e-12 and full_power and quiet
    return VerifyRow("ramping controller", ok,
                     f"terminal alpha gap {gap:.4f} (<= 2*dAlpha), full power: {full_power}, "
                     f"zero-gain run quiet: {quiet}")


ALL_CHECKS = (
    check_alpha_star_root,
    check_alpha_exponent,
    check_spot_values,
    check_sum_capacity,
    check_weighted_lemma,
    check_convexity,
    check_threshold,
    check_appendix_reduction,
    check_b0_optimality,
    check_mimo_limits,
    check_mc_sinr,
    check_two_tap,
    check_csi,
    check_ramping,
)


def run_all(checks=ALL_CHECKS) -> list[VerifyRow]:
    rows = []
    for check in checks:
        try:
            row = check()
            rows.append(VerifyRow(row.name, bool(row.passed), str(row.detail)))
        except DegenerateSlope as exc:  # defensive: a check should not hit this
            rows.append(VerifyRow(check.__name__, False, f"degenerate slope: {exc}"))
    return rows
