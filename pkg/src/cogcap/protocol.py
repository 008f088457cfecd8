"""Discrete-event simulation of channel-state acquisition and power ramping.

Two control loops let the cognitive radio enter the primary user's band:

* CSI acquisition.  The base station tracks its own link gain p (pilot-based
  least squares) and broadcasts the estimate.  The cognitive radio then
  relays the primary codeword at amplitude sqrt(Pc/Pp); the base station now
  measures the combined gain h = p + f sqrt(Pc/Pp), quantizes it, and
  broadcasts it; the difference of the two broadcasts, rescaled, estimates
  the cross gain f.  If the relayed probe happens to combine destructively
  (|h| < |p|), the primary link momentarily cannot carry its rate and one ARQ
  fires before the estimate is ready.

* Power ramping.  Without any estimate, the cognitive radio ramps its power
  up from zero and its relaying split down from one, backing off whenever the
  primary base station signals ARQ.  The environment decides ARQ from the
  exact achievable-rate expression, so the oracle is noiseless: ARQ fires iff
  the split is below the no-interference root at the current power.

Both loops are deterministic given (config, seed); event logs are replayable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import CognitiveChannel, StandardChannel, to_standard
from .errors import DomainError, NonConvergence, ZeroGain, ZeroPower
from .rates_low import primary_target_rate, rp_low
from .rng import make_rng, standard_complex_normal

PHASES = ("Silent", "AafProbe", "WaitEstimate", "ComputeF", "Transmit")
EVENT_KINDS = ("Broadcast_p_hat", "ProbeStart", "EstimateReady", "Broadcast_h_hat",
               "F_Computed", "ARQ", "RateOk", "PowerStep")

ARQ_RATE_TOL = 1e-9


@dataclass(frozen=True)
class ProtocolEvent:
    t: int
    kind: str
    payload: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise DomainError(f"unknown event kind {self.kind!r}")


@dataclass
class ProtocolState:
    phase: str = "Silent"
    p_hat: complex | None = None
    h_hat: complex | None = None
    f_hat: complex | None = None
    Pc_current: float = 0.0
    alpha_current: float = 1.0
    arq_count: int = 0


class _EventLog:
    """Append-only log enforcing nondecreasing event times."""

    def __init__(self):
        self.events: list[ProtocolEvent] = []

    def emit(self, t: int, kind: str, **payload):
        if self.events and t < self.events[-1].t:
            raise DomainError("event times must be nondecreasing")
        self.events.append(ProtocolEvent(t=t, kind=kind, payload=payload))


def quantize_uniform(x: float, bits: int, rng: float) -> float:
    """Uniform midrise quantizer with 2^bits levels over [-rng, rng]."""
    if bits < 1:
        raise DomainError("quantizer needs at least 1 bit")
    step = 2.0 * rng / (2 ** bits)
    q = (math.floor(x / step) + 0.5) * step
    return min(max(q, -rng + 0.5 * step), rng - 0.5 * step)


@dataclass(frozen=True)
class CsiResult:
    f_hat: complex
    p_hat: complex
    h_hat: complex
    events: tuple
    state: ProtocolState


def run_csi_acquisition(ch: CognitiveChannel, n_probe: int,
                        quantizer_bits: int | None = None, seed: int = 0,
                        noiseless: bool = False,
                        quant_range: float | None = None) -> CsiResult:
    """Estimate the cross gain f through base-station feedback.

    Pilot phases use constant-modulus pilots of power Pp; both gain estimates
    are least squares over ``n_probe`` symbols.  The combined-gain broadcast
    is quantized to ``quantizer_bits`` per real dimension over
    [-quant_range, quant_range] (default range: 4x the worst-case combined
    magnitude |p| + |f| sqrt(Pc/Pp)); ``None`` disables quantization.
    ``noiseless`` zeroes the estimation noise (the estimators are then exact).

    Raises:
        ZeroPower: if Pc = 0 (the probe carries nothing, f is unobservable).
        ZeroGain: if p = 0.
    """
    if n_probe < 1:
        raise DomainError("need at least one probe symbol")
    if ch.Pc <= 0.0:
        raise ZeroPower("cross-gain estimation needs Pc > 0")
    if ch.p == 0.0:
        raise ZeroGain("primary gain p must be nonzero")
    if ch.Pp <= 0.0:
        raise DomainError("pilot phases need Pp > 0")

    log = _EventLog()
    state = ProtocolState(phase="Silent")
    p_cx, f_cx = ch.p_cx, ch.f_cx
    noise_scale = 0.0 if noiseless else math.sqrt(ch.Np)
    pilot = math.sqrt(ch.Pp)

    def ls_estimate(gain: complex, stream: int) -> complex:
        z = noise_scale * standard_complex_normal(make_rng(seed, stream), n_probe)
        y = gain * pilot + z
        return complex(np.mean(y) / pilot)

    # 1) cognitive silent; base station tracks p and broadcasts the estimate
    p_hat = ls_estimate(p_cx, 0)
    state.p_hat = p_hat
    log.emit(n_probe, "Broadcast_p_hat", re=p_hat.real, im=p_hat.imag)

    # 2-3) amplify-and-forward probe; base station estimates the combined gain
    state.phase = "AafProbe"
    log.emit(n_probe, "ProbeStart", amplitude=math.sqrt(ch.Pc / ch.Pp))
    h_true = p_cx + f_cx * math.sqrt(ch.Pc / ch.Pp)
    h_hat = ls_estimate(h_true, 1)
    t_est = 2 * n_probe
    if abs(h_true) < abs(p_cx):
        # destructive probe: the primary link momentarily cannot carry its rate
        state.arq_count += 1
        log.emit(t_est, "ARQ", reason="combined gain below direct gain",
                 h_abs=abs(h_true), p_abs=abs(p_cx))
    state.phase = "WaitEstimate"
    log.emit(t_est, "EstimateReady", re=h_hat.real, im=h_hat.imag)

    # 4) quantized broadcast of the combined-gain estimate
    if quantizer_bits is not None:
        rng_q = quant_range if quant_range is not None else 4.0 * (
            abs(ch.p) + abs(ch.f) * math.sqrt(ch.Pc / ch.Pp))
        h_hat = complex(quantize_uniform(h_hat.real, quantizer_bits, rng_q),
                        quantize_uniform(h_hat.imag, quantizer_bits, rng_q))
    state.h_hat = h_hat
    log.emit(t_est, "Broadcast_h_hat", re=h_hat.real, im=h_hat.imag,
             bits=quantizer_bits)

    # 5-6) difference of the broadcasts, rescaled, estimates f
    state.phase = "ComputeF"
    f_hat = (h_hat - p_hat) * math.sqrt(ch.Pp / ch.Pc)
    state.f_hat = f_hat
    log.emit(t_est, "F_Computed", re=f_hat.real, im=f_hat.imag)
    state.phase = "Transmit"

    return CsiResult(f_hat=f_hat, p_hat=p_hat, h_hat=h_hat,
                     events=tuple(log.events), state=state)


def arq_oracle(std: StandardChannel, alpha) -> bool:
    """True iff the primary's rate at this operating point falls short.

    ARQ fires when rp_low(alpha) < 1/2 ln(1 + Pp) - 1e-9: the split is below
    the no-interference root for the current cognitive power.
    """
    return rp_low(std, alpha) < primary_target_rate(std) - ARQ_RATE_TOL


@dataclass(frozen=True)
class RampStep:
    epoch: int
    Pc: float
    alpha: float
    arq: bool
    action: str


@dataclass(frozen=True)
class RampResult:
    trajectory: tuple
    events: tuple
    state: ProtocolState
    settled: bool
    epochs: int


def run_ramping_controller(ch: CognitiveChannel, steps: int = 10_000,
                           dPc: float | None = None, dAlpha: float = 0.01,
                           seed: int = 0,
                           policy: str = "increase-alpha") -> RampResult:
    """Blind entry: ramp Pc up from 0 and alpha down from 1, listening for ARQ.

    Per epoch the environment evaluates the primary's achievable rate from the
    true gains (unknown to the controller) and signals ARQ when it falls below
    the interference-free target.  The controller never advances while an ARQ
    is pending: on ARQ it backs off one step (raise alpha or cut Pc, per
    ``policy``); otherwise it advances.  A bound learned from past ARQs pins
    the backed-off coordinate so the controller does not re-enter a violating
    state at the same power.  It settles when recovery completes with no
    advance direction left (full power for the alpha policy), or at a fixed
    point where advancing changes nothing.

    Raises:
        NonConvergence: if the epoch budget is exhausted before settling.
    """
    if policy not in ("increase-alpha", "decrease-pc"):
        raise DomainError(f"unknown back-off policy {policy!r}")
    if dAlpha <= 0:
        raise DomainError("dAlpha must be positive")
    if dPc is None:
        dPc = ch.Pc / 100.0
    if dPc <= 0:
        raise DomainError("dPc must be positive")

    std_full = to_standard(ch)
    pc_full = ch.Pc
    log = _EventLog()
    state = ProtocolState(phase="Transmit", Pc_current=0.0, alpha_current=1.0)
    trajectory: list[RampStep] = []
    alpha_lb = 0.0     # raised by ARQs under the alpha policy
    pc_ub = pc_full    # lowered by ARQs under the power policy
    in_recovery = False
    settled = False
    epoch = 0

    def std_at(pc: float) -> StandardChannel:
        scale = pc / pc_full if pc_full > 0 else 0.0
        return std_full.with_powers(Pc=std_full.Pc * scale)

    for epoch in range(steps):
        pc, al = state.Pc_current, state.alpha_current
        arq = arq_oracle(std_at(pc), al)
        if arq:
            state.arq_count += 1
            in_recovery = True
            log.emit(epoch, "ARQ", pc=pc, alpha=al)
            if policy == "increase-alpha":
                alpha_lb = min(1.0, al + dAlpha)
                state.alpha_current = alpha_lb
            else:
                pc_ub = max(0.0, pc - dPc)
                state.Pc_current = pc_ub
                log.emit(epoch, "PowerStep", pc=state.Pc_current)
            trajectory.append(RampStep(epoch, state.Pc_current, state.alpha_current,
                                       arq=True, action="backoff"))
            continue

        log.emit(epoch, "RateOk", pc=pc, alpha=al)
        recovered = in_recovery
        in_recovery = False
        if recovered and policy == "increase-alpha" and pc >= pc_full - 1e-12:
            settled = True  # at full power with alpha just above the boundary
        elif recovered and policy == "decrease-pc" and al <= 1e-12:
            settled = True  # alpha exhausted; pc sits just under its ceiling
        else:
            next_pc = min(pc_ub, pc_full, pc + dPc)
            next_al = max(alpha_lb, 0.0, al - dAlpha)
            if next_pc == pc and next_al == al:
                settled = True  # fixed point: nothing left to advance
            else:
                if next_pc != pc:
                    log.emit(epoch, "PowerStep", pc=next_pc)
                state.Pc_current, state.alpha_current = next_pc, next_al
        trajectory.append(RampStep(epoch, state.Pc_current, state.alpha_current,
                                   arq=False, action="advance"))
        if settled:
            break

    if not settled:
        raise NonConvergence(f"controller did not settle within {steps} epochs")
    return RampResult(trajectory=tuple(trajectory), events=tuple(log.events),
                      state=state, settled=settled, epochs=epoch + 1)
