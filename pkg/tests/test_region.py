import math

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from cogcap import (DomainError, RegimeError, RegionCurve, StandardChannel,
                    Weight, alpha_star, convexity_check, frontier_low,
                    maximize_weighted, rc_low, rp_low, sum_capacity)

UNIT = StandardChannel(a=1.0, b=0.0, Pp=1.0, Pc=1.0)


def test_frontier_endpoints():
    std = StandardChannel(a=0.6, b=0.2, Pp=2.0, Pc=3.0)
    curve = frontier_low(std, n_points=11)
    rp0 = 0.5 * math.log1p(std.Pp / (1 + std.a ** 2 * std.Pc))
    rc0 = 0.5 * math.log1p(std.Pc)
    rp1 = 0.5 * math.log1p((math.sqrt(std.Pp) + std.a * math.sqrt(std.Pc)) ** 2)
    assert curve.rp[0] == pytest.approx(rp0, abs=1e-12)
    assert curve.rc[0] == pytest.approx(rc0, abs=1e-12)
    assert curve.rp[-1] == pytest.approx(rp1, abs=1e-12)
    assert curve.rc[-1] == 0.0


def test_frontier_a0_rectangle_corner():
    std = StandardChannel(a=0.0, b=0.0, Pp=1.0, Pc=1.0)
    curve = frontier_low(std, n_points=5)
    assert np.allclose(curve.rp, 0.5 * math.log(2))
    assert curve.rc[0] == pytest.approx(0.5 * math.log(2), abs=1e-12)


def test_frontier_passes_through_capacity_point():
    split = alpha_star(UNIT)
    assert abs(rp_low(UNIT, split) - 0.5 * math.log(2)) < 1e-9
    assert abs(rc_low(UNIT, split) - 0.3119053581824357) < 1e-9


def test_frontier_validation():
    with pytest.raises(RegimeError):
        frontier_low(StandardChannel(a=1.5, b=0.0, Pp=1, Pc=1), n_points=5)
    with pytest.raises(DomainError):
        frontier_low(UNIT, n_points=1)
    with pytest.raises(DomainError):
        RegionCurve(alphas=np.array([0.5, 0.2]), rp=np.zeros(2), rc=np.zeros(2))


def test_maximize_weighted_mu0():
    al, val = maximize_weighted(UNIT, 0.0)
    assert al == 0.0
    assert val == pytest.approx(0.5 * math.log(2), abs=1e-12)


def test_maximize_weighted_sum_point():
    # for a >= 1, mu = 1 the maximum sits at full relaying
    std = StandardChannel(a=2.0, b=0.0, Pp=1.0, Pc=1.0)
    al, val = maximize_weighted(std, 1.0)
    assert al == pytest.approx(1.0, abs=1e-9)
    assert val == pytest.approx(0.5 * math.log(10), abs=1e-10)


def test_maximize_weighted_lemma_value():
    std = StandardChannel(a=2.0, b=0.0, Pp=1.0, Pc=1.0)
    _, val = maximize_weighted(std, 1.5)
    assert val == pytest.approx(1.5 * 0.5 * math.log(10), abs=1e-8)


def test_maximize_weighted_scipy_cross_check():
    # independent continuous optimizer agrees with the grid+golden search
    rng = np.random.default_rng(21)
    for _ in range(25):
        std = StandardChannel(a=float(rng.uniform(0.05, 1.0)), b=0.0,
                              Pp=float(rng.uniform(0.1, 20.0)),
                              Pc=float(rng.uniform(0.1, 20.0)))
        mu = float(rng.uniform(0.0, 3.0))
        _, val = maximize_weighted(std, mu)
        ref = minimize_scalar(lambda al: -(mu * rp_low(std, al) + rc_low(std, al)),
                              bounds=(0.0, 1.0), method="bounded",
                              options={"xatol": 1e-12})
        assert val >= -ref.fun - 1e-8


def test_sum_capacity():
    assert sum_capacity(StandardChannel(a=2.0, b=0.0, Pp=1, Pc=1)) == pytest.approx(
        0.5 * math.log(10), abs=1e-12)
    assert sum_capacity(UNIT) == pytest.approx(0.5 * math.log(5), abs=1e-12)
    for a in (1.0, 3.0):
        std = StandardChannel(a=a, b=0.0, Pp=2.0, Pc=0.0)
        assert sum_capacity(std) == pytest.approx(0.5 * math.log(3), abs=1e-12)
    with pytest.raises(RegimeError):
        sum_capacity(StandardChannel(a=0.9, b=0.0, Pp=1, Pc=1))


def test_sum_capacity_grid_oracle():
    rng = np.random.default_rng(22)
    for _ in range(30):
        std = StandardChannel(a=float(rng.uniform(1.0, 10.0)), b=0.0,
                              Pp=float(rng.uniform(0.1, 50.0)),
                              Pc=float(rng.uniform(0.1, 50.0)))
        grid = np.linspace(0.0, 1.0, 2001)
        vals = np.array([rp_low(std, al) + rc_low(std, al) for al in grid])
        assert int(np.argmax(vals)) == len(grid) - 1
        assert abs(vals[-1] - sum_capacity(std)) < 1e-12


def test_convexity_identical_points():
    curve = frontier_low(UNIT, n_points=3)
    single = RegionCurve(alphas=np.array([0.5]), rp=np.array([curve.rp[1]]),
                         rc=np.array([curve.rc[1]]))
    rep = convexity_check(single, n_trials=50, seed=0)
    assert rep.passed and rep.worst_slack == 0.0


def test_convexity_sampled():
    rng = np.random.default_rng(23)
    for i in range(5):
        std = StandardChannel(a=float(rng.uniform(0.05, 1.0)), b=0.0,
                              Pp=float(rng.uniform(0.1, 80.0)),
                              Pc=float(rng.uniform(0.1, 80.0)))
        curve = frontier_low(std, n_points=301)
        rep = convexity_check(curve, n_trials=2000, seed=100 + i, std=std)
        assert rep.passed, f"worst slack {rep.worst_slack}"


def test_convexity_degenerate_pc0():
    std = StandardChannel(a=0.5, b=0.0, Pp=2.0, Pc=0.0)
    curve = frontier_low(std, n_points=5)
    rep = convexity_check(curve, n_trials=200, seed=3, std=std)
    assert rep.passed


def test_supporting_line_tangency():
    # every interior frontier point is touched by some supporting line:
    # using the local slope as the weight, the weighted max equals the
    # functional value at that point
    std = StandardChannel(a=0.7, b=0.0, Pp=4.0, Pc=2.0)
    h = 1e-7
    for al in (0.2, 0.4, 0.6, 0.8):
        drp = rp_low(std, al + h) - rp_low(std, al - h)
        drc = rc_low(std, al + h) - rc_low(std, al - h)
        mu = -drc / drp
        _, val = maximize_weighted(std, Weight(mu))
        here = mu * rp_low(std, al) + rc_low(std, al)
        assert val >= here - 1e-12
        assert val - here < 1e-6


def test_weight_validation():
    with pytest.raises(DomainError):
        Weight(-0.5)
    with pytest.raises(DomainError):
        Weight(float("inf"))
