"""Capacity-region frontier for the low-interference regime, and its oracles.

The achievable region is the union over alpha in [0, 1] of the rectangles
[0, rp_low(alpha)] x [0, rc_low(alpha)].  Sweeping alpha traces the Pareto
frontier; the region is convex, so every boundary point is also the maximizer
of some weighted functional mu*Rp + Rc.  For a >= 1 the sum rate is maximized
at alpha = 1, giving the closed-form sum capacity
C_sum(a) = 1/2 ln(1 + (sqrt(Pp) + a sqrt(Pc))^2).

The weighted maximization deliberately uses a dense grid plus golden-section
refinement rather than a stationarity condition: unimodality of the weighted
objective is not established, and the grid guards against local maxima.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import StandardChannel
from .errors import DomainError, RegimeError
from .rates_low import rc_low, rp_low

FRONTIER_POINTS_DEFAULT = 1001
WEIGHTED_GRID_DEFAULT = 10_000
DOMINATION_TOL = 1e-9


@dataclass(frozen=True)
class Weight:
    """Nonnegative weight on the primary rate in the functional mu*Rp + Rc."""

    mu: float

    def __post_init__(self):
        if not math.isfinite(self.mu) or self.mu < 0:
            raise DomainError(f"weight must be finite and >= 0, got {self.mu!r}")


@dataclass(frozen=True)
class RegionCurve:
    """Sampled frontier: parallel arrays of alpha, rp, rc plus a regime tag."""

    alphas: np.ndarray
    rp: np.ndarray
    rc: np.ndarray
    regime: str = "low"
    extras: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        alphas = np.asarray(self.alphas, dtype=float)
        rp = np.asarray(self.rp, dtype=float)
        rc = np.asarray(self.rc, dtype=float)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "rp", rp)
        object.__setattr__(self, "rc", rc)
        if not (alphas.shape == rp.shape == rc.shape):
            raise DomainError("curve arrays must have matching shapes")
        if alphas.size:
            if alphas.min() < 0.0 or alphas.max() > 1.0:
                raise DomainError("curve alphas must lie in [0, 1]")
            if np.any(np.diff(alphas) <= 0):
                raise DomainError("curve alphas must be strictly increasing")
        if self.regime not in ("low", "high"):
            raise DomainError(f"unknown regime tag {self.regime!r}")
        if self.regime == "low" and alphas.size:
            # parametric frontier: rp climbs, rc falls along the sweep
            if np.any(np.diff(rp) < -1e-12) or np.any(np.diff(rc) > 1e-12):
                raise DomainError("low-regime curve must have rp nondecreasing, rc nonincreasing")

    def __len__(self) -> int:
        return self.alphas.size

    def points(self):
        """Iterate (alpha, (rp, rc)) tuples in sweep order."""
        for al, p, c in zip(self.alphas, self.rp, self.rc):
            yield float(al), (float(p), float(c))


@dataclass(frozen=True)
class ConvexityReport:
    passed: bool
    worst_slack: float
    n_trials: int


def frontier_low(std: StandardChannel, n_points: int = FRONTIER_POINTS_DEFAULT) -> RegionCurve:
    """Sample the low-regime frontier on a uniform alpha grid."""
    if std.a > 1.0:
        raise RegimeError(f"low-regime frontier needs a <= 1, got a={std.a}")
    if n_points < 2:
        raise DomainError(f"need at least 2 grid points, got {n_points}")
    alphas = np.linspace(0.0, 1.0, n_points)
    rp = np.array([rp_low(std, al) for al in alphas])
    rc = np.array([rc_low(std, al) for al in alphas])
    return RegionCurve(alphas=alphas, rp=rp, rc=rc, regime="low")


def _golden_max(fn, lo: float, hi: float, tol: float = 1e-10, max_iter: int = 200):
    """Golden-section maximization on [lo, hi]; compares against endpoints."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = fn(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = fn(x1)
    candidates = [(fn(lo), lo), (f1, x1), (f2, x2), (fn(hi), hi)]
    best_val = max(v for v, _ in candidates)
    # ties resolve to the smallest argument for determinism
    best_x = min(x for v, x in candidates if v == best_val)
    return best_x, best_val


def maximize_weighted(std: StandardChannel, w: Weight | float,
                      n_grid: int = WEIGHTED_GRID_DEFAULT) -> tuple[float, float]:
    """Maximize mu*rp_low + rc_low over alpha in [0, 1].

    Dense grid scan followed by golden-section refinement around the best
    grid point; grid ties break toward the lowest alpha.  Returns
    ``(alpha_mu, value)``.
    """
    mu = w.mu if isinstance(w, Weight) else float(Weight(w).mu)
    alphas = np.linspace(0.0, 1.0, n_grid)
    sp = np.sqrt(std.Pp)
    rel = std.a * np.sqrt(alphas * std.Pc)
    vals = (0.5 * mu * np.log1p((sp + rel) ** 2 / (1.0 + std.a ** 2 * (1.0 - alphas) * std.Pc))
            + 0.5 * np.log1p((1.0 - alphas) * std.Pc))
    i = int(np.argmax(vals))  # first occurrence = lowest alpha on ties
    lo = alphas[max(i - 1, 0)]
    hi = alphas[min(i + 1, n_grid - 1)]
    fn = lambda al: mu * rp_low(std, al) + rc_low(std, al)
    alpha_ref, val_ref = _golden_max(fn, lo, hi)
    if val_ref >= vals[i]:
        return alpha_ref, val_ref
    return float(alphas[i]), float(vals[i])


def sum_capacity(std: StandardChannel) -> float:
    """Sum capacity for a >= 1: attained with full relaying (alpha = 1)."""
    if std.a < 1.0:
        raise RegimeError(f"sum capacity in closed form needs a >= 1, got a={std.a}")
    return 0.5 * math.log1p((math.sqrt(std.Pp) + std.a * math.sqrt(std.Pc)) ** 2)


def convexity_check(curve: RegionCurve, n_trials: int, seed: int = 0,
                    std: StandardChannel | None = None,
                    tol: float = DOMINATION_TOL) -> ConvexityReport:
    """Sample convex combinations of region points and test frontier domination.

    Each trial mixes two random frontier points with a random lambda and
    checks that some frontier point dominates the mixture componentwise with
    slack >= -tol.  With the generating channel supplied, the dominating
    point is taken on the continuous frontier at the parameter whose
    cognitive rate equals the mixture's (the analytic inverse of rc_low);
    without it, only the sampled grid points are candidates, which weakens
    the check by the grid resolution on steep frontiers.

    Returns the worst slack observed.
    """
    if len(curve) == 0:
        raise DomainError("cannot convexity-check an empty curve")
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, len(curve), size=(n_trials, 2))
    lam = rng.random(n_trials)
    mix_rp = lam * curve.rp[idx[:, 0]] + (1.0 - lam) * curve.rp[idx[:, 1]]
    mix_rc = lam * curve.rc[idx[:, 0]] + (1.0 - lam) * curve.rc[idx[:, 1]]

    if std is not None:
        if std.Pc > 0.0:
            alpha_dom = np.clip(1.0 - np.expm1(2.0 * mix_rc) / std.Pc, 0.0, 1.0)
        else:
            alpha_dom = np.ones_like(mix_rc)  # rc is identically 0: use the rp corner
        slack = np.empty(n_trials)
        for i in range(n_trials):
            al = float(alpha_dom[i])
            slack[i] = min(rp_low(std, al) - mix_rp[i], rc_low(std, al) - mix_rc[i])
    else:
        # best dominating sampled point, per trial
        slack_rp = curve.rp[None, :] - mix_rp[:, None]
        slack_rc = curve.rc[None, :] - mix_rc[:, None]
        slack = np.minimum(slack_rp, slack_rc).max(axis=1)
    worst = float(slack.min())
    return ConvexityReport(passed=bool(worst >= -tol), worst_slack=worst, n_trials=n_trials)
