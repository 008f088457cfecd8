"""Rate formulas for the low-interference-gain regime (a <= 1).

The cognitive transmitter splits its power: a fraction ``alpha`` coherently
relays the primary codeword, the rest carries its own message precoded
against the known interference.  The primary receiver then sees

    rp_low(alpha) = 1/2 ln(1 + (sqrt(Pp) + a sqrt(alpha Pc))^2
                               / (1 + a^2 (1 - alpha) Pc))

while the cognitive link supports rc_low(alpha) = 1/2 ln(1 + (1-alpha) Pc),
the interference-free value guaranteed by dirty-paper coding.  The power
split ``alpha_star`` is the unique root of rp_low(alpha) = 1/2 ln(1 + Pp)
in [0, 1]: with that split the primary user loses nothing, and the largest
rate the cognitive user can then achieve is rc_low(alpha_star).

Also implemented: the complex-baseband variant (transmit beamforming, rates
without the 1/2 factor) and the feedback-free power split used by the
delayed-relay scheme.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import CognitiveChannel, StandardChannel
from .errors import DomainError, RegimeError, ToleranceError

BISECTION_TOL = 1e-12
BISECTION_MAX_ITER = 200
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class PowerSplit:
    """Fraction of cognitive power spent relaying the primary codeword."""

    alpha: float

    def __post_init__(self):
        if not (0.0 <= self.alpha <= 1.0):
            raise DomainError(f"power split must lie in [0, 1], got {self.alpha!r}")


@dataclass(frozen=True)
class RatePair:
    """Primary/cognitive operating point in nats per channel use."""

    rp: float
    rc: float

    def __post_init__(self):
        for name in ("rp", "rc"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise DomainError(f"rate {name} must be finite and nonnegative, got {v!r}")


def _alpha_value(alpha) -> float:
    a = alpha.alpha if isinstance(alpha, PowerSplit) else float(alpha)
    if not (0.0 <= a <= 1.0):
        raise DomainError(f"power split must lie in [0, 1], got {a!r}")
    return a


def rp_low(std: StandardChannel, alpha) -> float:
    """Primary rate under the superposition scheme with split ``alpha``."""
    al = _alpha_value(alpha)
    num = (math.sqrt(std.Pp) + std.a * math.sqrt(al * std.Pc)) ** 2
    den = 1.0 + std.a ** 2 * (1.0 - al) * std.Pc
    return 0.5 * math.log1p(num / den)


def rc_low(std: StandardChannel, alpha) -> float:
    """Cognitive rate: dirty-paper coding over the unrelayed power share."""
    al = _alpha_value(alpha)
    return 0.5 * math.log1p((1.0 - al) * std.Pc)


def primary_target_rate(std: StandardChannel) -> float:
    """Interference-free primary rate 1/2 ln(1 + Pp)."""
    return 0.5 * math.log1p(std.Pp)


def no_interference_residual(std: StandardChannel, alpha) -> float:
    """G(alpha) = rp_low(alpha) - 1/2 ln(1 + Pp); zero at the optimal split."""
    return rp_low(std, alpha) - primary_target_rate(std)


def alpha_star(std: StandardChannel, tol: float = BISECTION_TOL,
               max_iter: int = BISECTION_MAX_ITER) -> PowerSplit:
    """Power split that restores the primary user's interference-free rate.

    Bisection on G(alpha) = rp_low(alpha) - 1/2 ln(1 + Pp), which is
    continuous with G(0) <= 0 <= G(1); this is the authoritative
    implementation, against which the closed form is cross-checked.

    Raises:
        RegimeError: if a > 1 (outside the low-interference regime).
        ToleranceError: if the residual exceeds 1e-10 after ``max_iter``.
    """
    if std.a > 1.0:
        raise RegimeError(
            f"optimal split is defined for the low-interference regime a <= 1, got a={std.a}"
        )
    if std.a == 0.0 or std.Pc == 0.0:
        # no cross gain (or no cognitive power): any split preserves the
        # primary rate; 0 maximizes the cognitive rate
        return PowerSplit(0.0)

    g = lambda al: no_interference_residual(std, al)
    lo, hi = 0.0, 1.0
    glo = g(lo)
    if glo >= 0.0:
        return PowerSplit(0.0)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol:
            break
    root = 0.5 * (lo + hi)
    if abs(g(root)) > RESIDUAL_TOL:
        raise ToleranceError(
            f"bisection residual {g(root):.3e} above {RESIDUAL_TOL} after {max_iter} iterations"
        )
    return PowerSplit(root)


def alpha_star_closed_form(std: StandardChannel) -> float:
    """Closed-form cross-check for alpha_star.

    Solving the no-interference condition as a quadratic in x = sqrt(alpha)
    gives x = sqrt(Pp) (sqrt(1 + a^2 Pc (1 + Pp)) - 1) / (a sqrt(Pc) (1+Pp));
    the optimal split is x^2.  (The square, not the square root, of the
    bracketed quantity matches the defining equation.)
    """
    if std.a > 1.0:
        raise RegimeError("closed form applies to the low-interference regime a <= 1")
    if std.a == 0.0 or std.Pc == 0.0:
        return 0.0
    x = (math.sqrt(std.Pp) * (math.sqrt(1.0 + std.a ** 2 * std.Pc * (1.0 + std.Pp)) - 1.0)
         / (std.a * math.sqrt(std.Pc) * (1.0 + std.Pp)))
    return x * x


def cognitive_capacity(std: StandardChannel) -> RatePair:
    """Capacity point under the coexistence constraints, for a <= 1.

    Returns (1/2 ln(1 + Pp), 1/2 ln(1 + (1 - alpha_star) Pc)).
    """
    if std.a > 1.0:
        raise RegimeError(
            f"cognitive capacity is characterized for a <= 1, got a={std.a}"
        )
    split = alpha_star(std)
    return RatePair(rp=primary_target_rate(std), rc=rc_low(std, split))


def rates_complex(ch: CognitiveChannel, alpha) -> RatePair:
    """Rate pair for the complex-baseband beamforming scheme.

    Complex signaling carries two real dimensions, so the rates use ln with
    no 1/2 factor:

        rp = ln(1 + (|p| sqrt(Pp) + |f| sqrt(alpha Pc))^2
                    / (Np + |f|^2 (1 - alpha) Pc))
        rc = ln(1 + |c|^2 (1 - alpha) Pc / Ns)
    """
    al = _alpha_value(alpha)
    num = (abs(ch.p) * math.sqrt(ch.Pp) + abs(ch.f) * math.sqrt(al * ch.Pc)) ** 2
    den = ch.Np + abs(ch.f) ** 2 * (1.0 - al) * ch.Pc
    rp = math.log1p(num / den)
    rc = math.log1p(abs(ch.c) ** 2 * (1.0 - al) * ch.Pc / ch.Ns)
    return RatePair(rp=rp, rc=rc)


def alpha_diversity(ch: CognitiveChannel) -> PowerSplit:
    """Feedback-free split for the delayed-relay scheme: S/(1+S).

    S = |p|^2 Pp / Np is the primary link SNR; with this split the
    post-combining SNR equals S for every relay gain magnitude, so the
    primary user is unaffected without the cognitive radio knowing |f|.
    """
    s = abs(ch.p) ** 2 * ch.Pp / ch.Np
    return PowerSplit(s / (1.0 + s))


def snr_from_rate(rp: float) -> float:
    """SNR implied by a capacity-achieving rate over a complex channel: e^rp - 1."""
    if rp < 0:
        raise DomainError(f"rate must be nonnegative, got {rp!r}")
    return math.expm1(rp)
