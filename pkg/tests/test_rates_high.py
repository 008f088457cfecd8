import math

import numpy as np
import pytest

from cogcap import (DegenerateSlope, DomainError, EmptySet, StandardChannel,
                    a_threshold, b_max, boundary_point_high, mu_of_alpha,
                    rates_high, weighted_covariance_max)
from cogcap.rates_high import k_factor

# regression constant: first b_max(Pp=1, Pc=1, a=5, mu=1) with the default
# scan (grid step 1e-2, bisection 1e-4, 41-point inner grid)
B_MAX_REGRESSION = 0.63125


def threshold_bisection(b, Pp, Pc, alpha, a_hi=1e6, iters=200):
    """Bisection on the decode-order inequality (independent of the root)."""
    def holds(a):
        lhs = (1 - alpha) * Pc / (1 + (b * math.sqrt(Pp) + math.sqrt(alpha * Pc)) ** 2)
        rhs = a * a * (1 - alpha) * Pc / (1 + (math.sqrt(Pp) + a * math.sqrt(alpha * Pc)) ** 2)
        return lhs <= rhs
    if not holds(a_hi):
        return math.inf
    lo, hi = 0.0, a_hi
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if holds(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def analytic_mu(std, al):
    """Chain-rule slope oracle for the high-regime frontier."""
    Pp, Pc, a, b = std.Pp, std.Pc, std.a, std.b
    u = math.sqrt(Pp) + a * math.sqrt(al * Pc)
    drp = u * a * math.sqrt(Pc / al) / (2 * (1 + u * u))
    d = 1 + (b * math.sqrt(Pp) + math.sqrt(al * Pc)) ** 2
    nn = (1 - al) * Pc
    dd = (b * math.sqrt(Pp) + math.sqrt(al * Pc)) * math.sqrt(Pc / al)
    drc = 0.5 * ((dd - Pc) / (d + nn) - dd / d)
    return -drc / drp


def test_rates_high_spots():
    std = StandardChannel(a=3.0, b=1.0, Pp=1.0, Pc=1.0)
    r = rates_high(std, 0.25)
    assert r.rp == pytest.approx(0.5 * math.log(7.25), abs=1e-12)
    assert r.rc == pytest.approx(0.5 * math.log(1 + 0.75 / 3.25), abs=1e-12)
    r1 = rates_high(std, 1.0)
    assert r1.rp == pytest.approx(0.5 * math.log1p((1 + 3.0) ** 2), abs=1e-12)
    assert r1.rc == 0.0
    r0 = rates_high(StandardChannel(a=3.0, b=0.0, Pp=2.0, Pc=3.0), 0.0)
    assert r0.rp == pytest.approx(0.5 * math.log(3.0), abs=1e-12)
    assert r0.rc == pytest.approx(0.5 * math.log(4.0), abs=1e-12)


def test_a_threshold_spots():
    assert a_threshold(0.0, 1.0, 1.0, 0.0).a_min == pytest.approx(math.sqrt(2), abs=1e-12)
    thr = a_threshold(1.0, 1.0, 1.0, 0.0)
    assert thr.a_min == pytest.approx(1.0, abs=1e-12)
    # the alternative published grouping reads 2 at this spot
    assert thr.a_min_printed == pytest.approx(2.0, abs=1e-12)


def test_a_threshold_alpha1_vacuous():
    thr = a_threshold(0.5, 1.0, 1.0, 1.0)
    assert thr.vacuous and thr.a_min == 0.0


def test_a_threshold_continuity_at_1():
    b, Pp, Pc = 1.0, 1.0, 1.0
    k1 = k_factor(b, Pp, Pc, 1.0)
    limit = (math.sqrt(Pp * Pc) + math.sqrt(Pp * Pc + k1 * (1 + Pp))) / k1
    near = a_threshold(b, Pp, Pc, 1.0 - 1e-9).a_min
    assert near == pytest.approx(limit, abs=1e-6)
    assert limit == pytest.approx(1.0, abs=1e-12)


def test_a_threshold_matches_bisection():
    rng = np.random.default_rng(31)
    for _ in range(300):
        Pp, Pc = rng.uniform(0.1, 20.0, 2)
        b = float(rng.uniform(0.0, 2.0))
        al = float(rng.uniform(0.0, 0.99))
        thr = a_threshold(b, float(Pp), float(Pc), al)
        assert abs(thr.a_min - threshold_bisection(b, Pp, Pc, al)) < 1e-8


def test_a_threshold_negative_b_unsatisfiable():
    # K(alpha) <= 0: the decode-order inequality cannot hold for any a
    thr = a_threshold(-1.0, 1.0, 9.0, 0.9)
    assert k_factor(-1.0, 1.0, 9.0, 0.9) <= 0
    assert thr.a_min == math.inf
    assert threshold_bisection(-1.0, 1.0, 9.0, 0.9) == math.inf


def test_decode_order_consistency():
    # above threshold, decoding the cognitive message first is not limiting
    rng = np.random.default_rng(32)
    for _ in range(200):
        Pp, Pc = rng.uniform(0.1, 10.0, 2)
        b = float(rng.uniform(0.0, 1.5))
        al = float(rng.uniform(0.0, 0.99))
        a_min = a_threshold(b, float(Pp), float(Pc), al).a_min
        for a in (a_min, a_min * 1.5):
            std = StandardChannel(a=a, b=b, Pp=float(Pp), Pc=float(Pc))
            first_rate = 0.5 * math.log1p(
                a * a * (1 - al) * Pc / (1 + (math.sqrt(Pp) + a * math.sqrt(al * Pc)) ** 2))
            assert first_rate >= rates_high(std, al).rc - 1e-12


def test_mu_of_alpha_sign_and_oracle():
    std = StandardChannel(a=3.0, b=0.0, Pp=1.0, Pc=1.0)
    mu = mu_of_alpha(std, 0.5)
    assert mu > 0
    assert mu == pytest.approx(analytic_mu(std, 0.5), rel=1e-4)
    rng = np.random.default_rng(33)
    for _ in range(100):
        std = StandardChannel(a=float(rng.uniform(1.0, 8.0)),
                              b=float(rng.uniform(0.0, 1.5)),
                              Pp=float(rng.uniform(0.1, 10.0)),
                              Pc=float(rng.uniform(0.1, 10.0)))
        al = float(rng.uniform(0.05, 1.0))
        assert mu_of_alpha(std, al) == pytest.approx(analytic_mu(std, al), rel=1e-4)


def test_mu_of_alpha_degenerate():
    with pytest.raises(DegenerateSlope):
        mu_of_alpha(StandardChannel(a=2.0, b=0.0, Pp=1.0, Pc=0.0), 0.5)


def test_weighted_covariance_b0():
    rng = np.random.default_rng(34)
    for _ in range(10):
        std = StandardChannel(a=float(rng.uniform(1.0, 6.0)), b=0.0,
                              Pp=float(rng.uniform(0.1, 10.0)),
                              Pc=float(rng.uniform(0.1, 10.0)))
        mu = float(rng.uniform(0.0, 1.0))
        res = weighted_covariance_max(std, mu, n_grid=41)
        assert res.beta >= 1 - 1e-6
        assert abs(res.k_p - math.sqrt(res.alpha * std.Pp * std.Pc)) <= 1e-6 * math.sqrt(
            std.Pp * std.Pc)


def test_weighted_covariance_mu0():
    # only the cognitive rate matters: no relaying, unit-rank own covariance
    std = StandardChannel(a=3.0, b=0.5, Pp=1.0, Pc=1.0)
    res = weighted_covariance_max(std, 0.0, n_grid=41)
    assert res.beta == pytest.approx(0.0, abs=1e-6)
    assert res.alpha == pytest.approx(0.0, abs=1e-6)
    expect = 0.5 * math.log1p(
        (0.25 + 2 * math.sqrt(1.0) * 0.5 + 1.0) / 1.0)  # b^2 Pp + 2 kc b + Pc
    assert res.value == pytest.approx(expect, abs=1e-6)


def test_weighted_covariance_grid_oracle():
    # brute-force random search never beats the returned maximum
    std = StandardChannel(a=3.0, b=0.1, Pp=1.0, Pc=1.0)
    mu = 0.8
    res = weighted_covariance_max(std, mu)
    rng = np.random.default_rng(35)
    for _ in range(3000):
        beta, al, t = rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(-1, 1)
        kp = t * math.sqrt(al * beta * std.Pp * std.Pc)
        kc = math.sqrt((1 - beta) * (1 - al) * std.Pp * std.Pc)
        rp = 0.5 * math.log1p(beta * std.Pp + 2 * std.a * kp + al * std.a ** 2 * std.Pc)
        num = std.b ** 2 * (1 - beta) * std.Pp + 2 * kc * std.b + (1 - al) * std.Pc
        den = 1 + std.b ** 2 * beta * std.Pp + 2 * kp * std.b + al * std.Pc
        assert mu * rp + 0.5 * math.log1p(num / den) <= res.value + 1e-6


def test_weighted_covariance_mu_scope():
    with pytest.raises(DomainError):
        weighted_covariance_max(StandardChannel(a=2, b=0, Pp=1, Pc=1), 1.5)


def test_b_max_small_b_member_and_regression():
    val = b_max(1.0, 1.0, 5.0, 1.0)
    assert val > 0.0
    assert val == pytest.approx(B_MAX_REGRESSION, abs=2e-4)


def test_b_max_empty():
    # a barely above 1 with weight on the cognitive rate: full relaying is
    # never optimal on the scanned grid
    with pytest.raises(EmptySet):
        b_max(1.0, 1.0, 1.05, 0.0, b_stop=0.5, n_grid=21)


def test_boundary_point_high():
    std = StandardChannel(a=5.0, b=0.0, Pp=1.0, Pc=1.0)
    rep = boundary_point_high(std, 0.5)
    assert rep.on_boundary
    assert rep.conditions["gain_admissible"]["satisfied"]
    assert rep.conditions["slope_weight"]["mu_alpha"] <= 1.0
    assert rep.conditions["cross_gain"]["satisfied"]

    # alpha = 1: the sum-capacity corner, gain condition vacuous
    rep1 = boundary_point_high(std, 1.0)
    assert rep1.point.rc == 0.0
    assert rep1.conditions["gain_admissible"]["vacuous"]

    # a below the threshold fails the gain condition
    low = StandardChannel(a=1.2, b=0.0, Pp=1.0, Pc=1.0)
    rep2 = boundary_point_high(low, 0.5)
    assert not rep2.on_boundary
    assert not rep2.conditions["gain_admissible"]["satisfied"]


def test_boundary_propagates_degenerate_slope():
    with pytest.raises(DegenerateSlope):
        boundary_point_high(StandardChannel(a=5.0, b=0.0, Pp=1.0, Pc=0.0), 0.5)
