"""High-interference-gain achievable rates and boundary machinery.

When the cross gain ``a`` into the primary receiver is large, the optimal
primary decoder strips the cognitive message first.  The resulting rate pair
at power split ``alpha`` is

    rp_hat(alpha) = 1/2 ln(1 + (sqrt(Pp) + a sqrt(alpha Pc))^2)
    rc_hat(alpha) = 1/2 ln(1 + (1-alpha) Pc / (1 + (b sqrt(Pp) + sqrt(alpha Pc))^2))

achievable whenever decoding the cognitive message at the primary receiver is
not the bottleneck.  That condition is a quadratic inequality in ``a``,

    a^2 K(alpha) - 2 a sqrt(alpha Pp Pc) - (1 + Pp) >= 0,
    K(alpha) = 1 + b^2 Pp + 2 b sqrt(alpha Pp Pc),

whose positive root is the admissibility threshold ``a_min``.  (A published
rendering of this threshold groups the division by K(alpha) around only part
of the sum; the quadratic root used here is the one that matches the defining
inequality, and the alternative grouping is reported alongside for
comparison.)

Boundary certification follows the genie-aided broadcast-channel converse:
a frontier point is on the region boundary if, additionally, the local slope
weight mu_alpha is at most one and the cross gain b does not exceed
b_max(mu_alpha, a), the largest b for which full relaying (beta = 1 with the
aligned cross-covariance) maximizes the weighted functional over the
two-antenna covariance parametrization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import StandardChannel
from .errors import DegenerateSlope, DomainError, EmptySet, ToleranceError
from .rates_low import RatePair, _alpha_value
from .region import Weight, _golden_max

COV_GRID_DEFAULT = 101
B_STEP_DEFAULT = 1e-2
B_STOP_DEFAULT = 4.0
B_BISECT_TOL = 1e-4
BETA_MEMBER_TOL = 1e-6
KP_MEMBER_TOL = 1e-6


def k_factor(b: float, Pp: float, Pc: float, alpha: float) -> float:
    """K(alpha) = 1 + b^2 Pp + 2 b sqrt(alpha Pp Pc)."""
    return 1.0 + b * b * Pp + 2.0 * b * math.sqrt(alpha * Pp * Pc)


def rates_high(std: StandardChannel, alpha) -> RatePair:
    """Achievable rate pair with cognitive-message-first decoding."""
    al = _alpha_value(alpha)
    rp = 0.5 * math.log1p((math.sqrt(std.Pp) + std.a * math.sqrt(al * std.Pc)) ** 2)
    den = 1.0 + (std.b * math.sqrt(std.Pp) + math.sqrt(al * std.Pc)) ** 2
    rc = 0.5 * math.log1p((1.0 - al) * std.Pc / den)
    return RatePair(rp=rp, rc=rc)


@dataclass(frozen=True)
class ThresholdResult:
    """Admissibility threshold on the cross gain a.

    ``a_min`` is the positive root of the decode-order quadratic (inf when the
    inequality cannot hold for any a, which requires b < 0).  ``vacuous`` is
    set at alpha = 1 where both sides of the defining inequality vanish.
    ``a_min_printed`` evaluates the alternative published grouping of the same
    expression, kept for the discrepancy report.
    """

    a_min: float
    vacuous: bool
    a_min_printed: float


def a_threshold(b: float, Pp: float, Pc: float, alpha) -> ThresholdResult:
    """Smallest cross gain a at which the high-regime pair is achievable."""
    al = _alpha_value(alpha)
    if al == 1.0:
        # both sides of the decode-order inequality are 0: condition vacuous
        k1 = k_factor(b, Pp, Pc, 1.0)
        printed = (math.sqrt(Pp * Pc) / k1
                   + math.sqrt(k1 + Pp * (1.0 + (b * math.sqrt(Pp) + math.sqrt(Pc)) ** 2)))
        return ThresholdResult(a_min=0.0, vacuous=True, a_min_printed=printed)
    k = k_factor(b, Pp, Pc, al)
    cross = math.sqrt(al * Pp * Pc)
    printed = float("nan")
    if k > 0.0:
        printed = (cross / k
                   + math.sqrt(k + Pp * (1.0 + (b * math.sqrt(Pp) + math.sqrt(al * Pc)) ** 2)))
        root = (cross + math.sqrt(cross * cross + k * (1.0 + Pp))) / k
        return ThresholdResult(a_min=root, vacuous=False, a_min_printed=printed)
    # K(alpha) <= 0 (possible only for b < 0): the quadratic is negative for
    # every a > 0, so no cross gain makes the pair achievable
    return ThresholdResult(a_min=math.inf, vacuous=False, a_min_printed=printed)


def mu_of_alpha(std: StandardChannel, alpha, h: float = 1e-6) -> float:
    """Local boundary weight: minus the left slope d rc_hat / d rp_hat at alpha.

    One-sided finite difference with step h, checked against the half-step
    estimate (they must agree to 1e-4 relative).

    Raises:
        DegenerateSlope: if rp_hat does not move over the step.
        ToleranceError: if the two step sizes disagree beyond 1e-4 relative.
    """
    al = _alpha_value(alpha)
    if al <= 0.0:
        raise DomainError("left derivative needs alpha > 0")
    if h <= 0.0:
        raise DomainError("step size must be positive")
    h = min(h, al)

    def quotient(step: float) -> float:
        r1 = rates_high(std, al)
        r0 = rates_high(std, al - step)
        dp = r1.rp - r0.rp
        if abs(dp) < 1e-14:
            raise DegenerateSlope(
                f"primary rate change {dp:.3e} over step {step:.1e} is degenerate"
            )
        return -(r1.rc - r0.rc) / dp

    mu_h = quotient(h)
    mu_h2 = quotient(h / 2.0)
    scale = max(abs(mu_h2), 1e-30)
    if abs(mu_h - mu_h2) > 1e-4 * scale:
        raise ToleranceError(
            f"slope estimates at h and h/2 disagree: {mu_h!r} vs {mu_h2!r}"
        )
    return mu_h


def _cov_objective(std: StandardChannel, mu: float, beta, alpha, k_p):
    """mu*Rp + Rc of the covariance-parametrized genie rates (vectorized).

    k_c is pinned at +sqrt((1-beta)(1-alpha) Pp Pc), which maximizes the
    cognitive term by making its covariance unit rank.
    """
    Pp, Pc, a, b = std.Pp, std.Pc, std.a, std.b
    k_c = np.sqrt((1.0 - beta) * (1.0 - alpha) * Pp * Pc)
    rp = 0.5 * np.log1p(beta * Pp + 2.0 * a * k_p + alpha * a * a * Pc)
    num = b * b * (1.0 - beta) * Pp + 2.0 * k_c * b + (1.0 - alpha) * Pc
    den = 1.0 + b * b * beta * Pp + 2.0 * k_p * b + alpha * Pc
    rc = 0.5 * np.log1p(num / den)
    return mu * rp + rc


@dataclass(frozen=True)
class CovarianceMax:
    beta: float
    alpha: float
    k_p: float
    value: float


def weighted_covariance_max(std: StandardChannel, w: Weight | float,
                            n_grid: int = COV_GRID_DEFAULT,
                            refine: bool = True) -> CovarianceMax:
    """Maximize mu*Rp + Rc over (beta, alpha, k_p) in the covariance box.

    Nested grid over beta, alpha and the normalized cross-covariance
    t = k_p / sqrt(alpha beta Pp Pc), followed by coordinate golden-section
    refinement.  Grid ties break to the lexicographically smallest
    (beta, alpha, k_p).  Scope: mu <= 1.
    """
    mu = w.mu if isinstance(w, Weight) else Weight(float(w)).mu
    if mu > 1.0:
        raise DomainError(f"covariance maximization is scoped to mu <= 1, got mu={mu}")
    Pp, Pc = std.Pp, std.Pc

    betas = np.linspace(0.0, 1.0, n_grid)[:, None, None]
    alphas = np.linspace(0.0, 1.0, n_grid)[None, :, None]
    ts = np.linspace(-1.0, 1.0, n_grid)[None, None, :]
    k_p = ts * np.sqrt(alphas * betas * Pp * Pc)
    vals = _cov_objective(std, mu, betas, alphas, k_p)
    flat = int(np.argmax(vals))  # first max in C order = lexicographic tie-break
    ib, ia, it = np.unravel_index(flat, vals.shape)
    beta, alpha, t = float(betas[ib, 0, 0]), float(alphas[0, ia, 0]), float(ts[0, 0, it])
    best = float(vals[ib, ia, it])

    if refine:
        spacing = 1.0 / (n_grid - 1)

        def fn(b_, a_, t_):
            kp = t_ * math.sqrt(a_ * b_ * Pp * Pc)
            return float(_cov_objective(std, mu, b_, a_, kp))

        for _ in range(3):
            beta, v = _golden_max(lambda x: fn(x, alpha, t),
                                  max(0.0, beta - spacing), min(1.0, beta + spacing))
            alpha, v = _golden_max(lambda x: fn(beta, x, t),
                                   max(0.0, alpha - spacing), min(1.0, alpha + spacing))
            t, v = _golden_max(lambda x: fn(beta, alpha, x),
                               max(-1.0, t - spacing), min(1.0, t + spacing))
        if v >= best:
            best = v
    return CovarianceMax(beta=beta, alpha=alpha,
                         k_p=t * math.sqrt(alpha * beta * Pp * Pc), value=best)


def _is_full_relay_member(std: StandardChannel, mu: float, n_grid: int) -> bool:
    """True when the weighted maximizer sits at beta = 1 with aligned k_p."""
    res = weighted_covariance_max(std, mu, n_grid=n_grid)
    k_scale = math.sqrt(std.Pp * std.Pc) if std.Pp * std.Pc > 0 else 1.0
    k_target = math.sqrt(res.alpha * std.Pp * std.Pc)
    return (res.beta >= 1.0 - BETA_MEMBER_TOL
            and abs(res.k_p - k_target) <= KP_MEMBER_TOL * k_scale)


def b_max(Pp: float, Pc: float, a: float, w: Weight | float,
          b_stop: float = B_STOP_DEFAULT, b_step: float = B_STEP_DEFAULT,
          n_grid: int = 41, bisect_tol: float = B_BISECT_TOL) -> float:
    """Largest cross gain b > 0 for which full relaying stays optimal.

    Membership of each grid b is evaluated (not assumed monotone in b): b is
    in the set iff the weighted covariance maximizer returns beta within 1e-6
    of 1 and k_p aligned to sqrt(alpha Pp Pc).  The largest member found is
    refined by bisection against the nearest non-member above it.

    Raises:
        EmptySet: if no grid point is a member.
    """
    mu = w.mu if isinstance(w, Weight) else Weight(float(w)).mu
    if mu > 1.0:
        raise DomainError(f"b_max is scoped to mu <= 1, got mu={mu}")
    grid = np.arange(b_step, b_stop + 0.5 * b_step, b_step)
    member = np.array([
        _is_full_relay_member(StandardChannel(a=a, b=float(b), Pp=Pp, Pc=Pc), mu, n_grid)
        for b in grid
    ])
    if not member.any():
        raise EmptySet(
            f"no b in ({b_step}, {b_stop}] keeps full relaying optimal at mu={mu}, a={a}"
        )
    i_last = int(np.where(member)[0].max())
    lo = float(grid[i_last])
    above = np.where(~member[i_last:])[0]
    if above.size == 0:
        return lo  # set extends to the end of the scanned grid
    hi = float(grid[i_last + int(above.min())])
    while hi - lo > bisect_tol:
        mid = 0.5 * (lo + hi)
        if _is_full_relay_member(StandardChannel(a=a, b=mid, Pp=Pp, Pc=Pc), mu, n_grid):
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class HighRegimePoint:
    """One alpha sample of the high-regime frontier with its admissibility data."""

    alpha: float
    rates: RatePair
    k_alpha: float
    a_min: float


def high_regime_point(std: StandardChannel, alpha) -> HighRegimePoint:
    al = _alpha_value(alpha)
    thr = a_threshold(std.b, std.Pp, std.Pc, al)
    return HighRegimePoint(
        alpha=al,
        rates=rates_high(std, al),
        k_alpha=k_factor(std.b, std.Pp, std.Pc, al),
        a_min=thr.a_min,
    )


@dataclass(frozen=True)
class BoundaryReport:
    point: RatePair
    on_boundary: bool
    conditions: dict


def boundary_point_high(std: StandardChannel, alpha, h: float = 1e-6,
                        n_grid: int = 41, b_stop: float = B_STOP_DEFAULT) -> BoundaryReport:
    """Evaluate the high-regime pair at alpha and certify boundary membership.

    Conditions, itemized in the report:
      * gain admissible: a >= a_min(alpha) (vacuous at alpha = 1);
      * slope weight: mu_alpha is well-defined with 0 <= mu_alpha <= 1
        (DegenerateSlope propagates to the caller);
      * cross gain: b <= b_max(mu_alpha, a).  A direct membership test of the
        channel's own b short-circuits the scan when it already lies in the
        full-relay set.
    """
    al = _alpha_value(alpha)
    point = rates_high(std, al)
    conditions: dict = {}

    thr = a_threshold(std.b, std.Pp, std.Pc, al)
    a_ok = thr.vacuous or std.a >= thr.a_min - 1e-12
    conditions["gain_admissible"] = {
        "satisfied": bool(a_ok), "a": std.a,
        "a_min": thr.a_min, "vacuous": thr.vacuous,
    }

    mu_ok = False
    mu_val = None
    if al > 0.0:
        mu_val = mu_of_alpha(std, al, h=h)
        mu_ok = 0.0 <= mu_val <= 1.0
    conditions["slope_weight"] = {"satisfied": bool(mu_ok), "mu_alpha": mu_val}

    b_ok = False
    b_max_val = None
    if mu_ok:
        if std.b <= 0.0:
            b_ok = True  # arbitrarily small positive b is always a member
        elif _is_full_relay_member(std, mu_val, n_grid):
            b_ok = True
        else:
            try:
                b_max_val = b_max(std.Pp, std.Pc, std.a, mu_val,
                                  b_stop=max(b_stop, 2.0 * std.b), n_grid=n_grid)
                b_ok = std.b <= b_max_val
            except EmptySet:
                b_ok = False
    conditions["cross_gain"] = {"satisfied": bool(b_ok), "b": std.b, "b_max": b_max_val}

    return BoundaryReport(point=point, on_boundary=bool(a_ok and mu_ok and b_ok),
                          conditions=conditions)
