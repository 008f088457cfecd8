"""Symbol-level Monte Carlo checks of the coding schemes' SINR identities.

No codebooks are built: dirty-paper coding is represented by its rate
guarantee, verified here by genie subtraction (remove the transmitter-known
interference at the secondary receiver exactly, then measure the residual
SINR).  Each scheme draws Gaussian codeword components from independent
Philox streams, scales them to meet the average power constraint exactly per
codeword, runs the channel, and accumulates second moments; the implied rates
are log(1 + SINR) with the 1/2 factor for real signaling and without it for
complex baseband.

Schemes:
  * ``superposition``       real standard-form channel, power split alpha;
  * ``beamforming-complex`` complex channel, phase-corrected relaying;
  * ``two-tap-isi``         delayed relaying without feedback, two-branch
                            maximal-ratio combining;
  * ``aaf-probe``           amplify-and-forward probe used for channel-gain
                            estimation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .channel import CognitiveChannel, StandardChannel, to_standard
from .errors import DomainError
from .rates_low import rates_complex, rc_low, rp_low
from .rng import make_rng, standard_complex_normal, standard_normal

SCHEMES = ("superposition", "beamforming-complex", "two-tap-isi", "aaf-probe")

# relative tolerance for the exact per-codeword power normalization
POWER_NORM_TOL = 1e-6


@dataclass(frozen=True)
class SimConfig:
    """One simulation run: scheme, channel, sample size, seed, split."""

    scheme: str
    channel: CognitiveChannel | StandardChannel
    n_symbols: int
    seed: int = 0
    alpha: float | None = None
    l_c: int = 1
    n_blocks: int = 1
    misaligned: bool = False  # beamforming control run: drop the phase factor

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise DomainError(f"unknown scheme {self.scheme!r}; expected one of {SCHEMES}")
        if self.n_symbols < 1:
            raise DomainError("n_symbols must be >= 1")
        if self.l_c < 0:
            raise DomainError("listening delay must be >= 0")
        if self.n_blocks < 1 or self.n_blocks > self.n_symbols:
            raise DomainError("n_blocks must be in [1, n_symbols]")
        if self.scheme != "aaf-probe":
            if self.alpha is None or not (0.0 <= self.alpha <= 1.0):
                raise DomainError(f"scheme {self.scheme} needs alpha in [0, 1]")


@dataclass
class SimTrace:
    """Empirical moments of one run and the rates they imply."""

    scheme: str
    n_symbols: int
    seed: int
    alpha: float | None
    powers: dict = field(default_factory=dict)
    cross: dict = field(default_factory=dict)
    sinr_p: float | None = None
    sinr_s: float | None = None
    implied_rp: float | None = None
    implied_rc: float | None = None
    target_rp: float | None = None
    target_rc: float | None = None
    rel_err_rp: float | None = None
    rel_err_rc: float | None = None
    flags: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)
    blocks: list | None = None

    @property
    def rel_err(self) -> float | None:
        errs = [e for e in (self.rel_err_rp, self.rel_err_rc) if e is not None]
        return max(errs) if errs else None


def _normalized(x: np.ndarray, power: float) -> np.ndarray:
    """Scale a codeword to the exact empirical average power ``power``."""
    if power <= 0.0:
        return np.zeros_like(x)
    p_emp = float(np.mean(np.abs(x) ** 2))
    if p_emp == 0.0:
        raise DomainError("cannot normalize an all-zero codeword")
    return x * math.sqrt(power / p_emp)


def _rel_err(value: float, target: float) -> float:
    return abs(value - target) / max(abs(target), 1e-30)


def _block_rows(n_blocks: int, **series) -> list:
    """Per-block mean powers of the given |.|^2 series."""
    rows = []
    names = list(series)
    splits = {k: np.array_split(np.abs(v) ** 2, n_blocks) for k, v in series.items()}
    for i in range(n_blocks):
        row = {"block": i}
        for k in names:
            row[f"power_{k}"] = float(np.mean(splits[k][i]))
        rows.append(row)
    return rows


def simulate(cfg: SimConfig) -> SimTrace:
    """Dispatch a simulation run by scheme."""
    fn = {
        "superposition": simulate_superposition,
        "beamforming-complex": simulate_beamforming_complex,
        "two-tap-isi": simulate_two_tap,
        "aaf-probe": simulate_aaf_probe,
    }[cfg.scheme]
    return fn(cfg)


def simulate_superposition(cfg: SimConfig) -> SimTrace:
    """Real superposition scheme on the standard-form channel.

    The primary SINR compares the coherently combined primary direction
    against the unrelayed cognitive power plus noise; the secondary SINR is
    measured after genie subtraction of the known interference
    (b + sqrt(alpha Pc / Pp)) X_p.
    """
    std = cfg.channel if isinstance(cfg.channel, StandardChannel) else to_standard(cfg.channel)
    al = float(cfg.alpha)
    n = cfg.n_symbols
    if std.Pp <= 0.0 and al > 0.0:
        raise DomainError("relaying a zero-power primary codeword is undefined (Pp = 0, alpha > 0)")

    xp = _normalized(standard_normal(make_rng(cfg.seed, 0), n), std.Pp)
    xc_hat = _normalized(standard_normal(make_rng(cfg.seed, 1), n), (1.0 - al) * std.Pc)
    zp = standard_normal(make_rng(cfg.seed, 2), n)
    zs = standard_normal(make_rng(cfg.seed, 3), n)

    relay = math.sqrt(al * std.Pc / std.Pp) if std.Pp > 0.0 else 0.0
    xc = xc_hat + relay * xp
    yp = xp + std.a * xc + zp
    ys = std.b * xp + xc + zs

    signal_p = (1.0 + std.a * relay) * xp
    noise_p = std.a * xc_hat + zp  # yp = signal_p + noise_p exactly
    resid_s = ys - (std.b + relay) * xp  # genie subtraction -> xc_hat + zs

    p = lambda v: float(np.mean(v ** 2))
    sinr_p = p(signal_p) / p(noise_p)
    sinr_s = p(xc_hat) / p(zs) if std.Pc > 0.0 and al < 1.0 else 0.0

    trace = SimTrace(scheme=cfg.scheme, n_symbols=n, seed=cfg.seed, alpha=al)
    trace.powers = {
        "xp": p(xp), "xc_hat": p(xc_hat), "xc": p(xc),
        "zp": p(zp), "zs": p(zs), "yp": p(yp),
        "signal_p": p(signal_p), "noise_p": p(noise_p), "resid_s": p(resid_s),
    }
    nrm = math.sqrt(max(p(xp) * p(xc_hat), 1e-300))
    trace.cross = {
        "xp_xc_hat": float(np.mean(xp * xc_hat)),
        "corr_xp_xc_hat": float(np.mean(xp * xc_hat)) / nrm,
    }
    trace.sinr_p = sinr_p
    trace.sinr_s = sinr_s
    trace.implied_rp = 0.5 * math.log1p(sinr_p)
    trace.implied_rc = 0.5 * math.log1p(sinr_s)
    trace.target_rp = rp_low(std, al)
    trace.target_rc = rc_low(std, al)
    trace.rel_err_rp = _rel_err(trace.implied_rp, trace.target_rp) if trace.target_rp > 0 else abs(trace.implied_rp)
    trace.rel_err_rc = _rel_err(trace.implied_rc, trace.target_rc) if trace.target_rc > 0 else abs(trace.implied_rc)
    if cfg.n_blocks > 1:
        trace.blocks = _block_rows(cfg.n_blocks, xp=xp, xc=xc, noise_p=noise_p, resid_s=resid_s)
    return trace


def simulate_beamforming_complex(cfg: SimConfig) -> SimTrace:
    """Complex-baseband relaying with the phase-correcting beamforming factor.

    With the factor (f*/|f|) e^{j theta_p} the relayed component arrives at the
    primary receiver aligned with the direct path, so the coherent amplitude
    is |p| sqrt(Pp) + |f| sqrt(alpha Pc).  The misaligned control run keeps
    the same power split but drops the factor, losing the cosine of the phase
    mismatch.
    """
    ch = cfg.channel
    if not isinstance(ch, CognitiveChannel):
        raise DomainError("beamforming scheme needs the physical (complex-gain) channel")
    al = float(cfg.alpha)
    n = cfg.n_symbols
    flags = {}
    if ch.f == 0.0 and al > 0.0:
        # beamforming phase undefined through a zero gain: waste no power on it
        flags["alpha_forced_zero"] = True
        al = 0.0
    if ch.Pp <= 0.0 and al > 0.0:
        raise DomainError("relaying a zero-power primary codeword is undefined (Pp = 0, alpha > 0)")

    xp = _normalized(standard_complex_normal(make_rng(cfg.seed, 0), n), ch.Pp)
    xc_hat = _normalized(standard_complex_normal(make_rng(cfg.seed, 1), n), (1.0 - al) * ch.Pc)
    zp = math.sqrt(ch.Np) * standard_complex_normal(make_rng(cfg.seed, 2), n)
    zs = math.sqrt(ch.Ns) * standard_complex_normal(make_rng(cfg.seed, 3), n)

    p_cx, f_cx, g_cx, c_cx = ch.p_cx, ch.f_cx, ch.g_cx, ch.c_cx
    split = math.sqrt(al * ch.Pc / ch.Pp) if al > 0.0 else 0.0
    if al == 0.0:
        w = 0.0
    elif cfg.misaligned:
        w = split
    else:
        w = (f_cx.conjugate() / abs(f_cx)) * cmath.exp(1j * (ch.phase_p or 0.0)) * split
    xc = xc_hat + w * xp

    yp = p_cx * xp + f_cx * xc + zp
    ys = g_cx * xp + c_cx * xc + zs

    coef_p = p_cx + f_cx * w  # combined gain on the primary direction
    signal_p = coef_p * xp
    noise_p = f_cx * xc_hat + zp
    resid_s = ys - (g_cx + c_cx * w) * xp  # genie subtraction -> c xc_hat + zs

    p = lambda v: float(np.mean(np.abs(v) ** 2))
    sinr_p = p(signal_p) / p(noise_p)
    sinr_s = p(c_cx * xc_hat) / p(zs) if ch.Pc > 0.0 and al < 1.0 else 0.0

    trace = SimTrace(scheme=cfg.scheme, n_symbols=n, seed=cfg.seed, alpha=al, flags=flags)
    trace.powers = {
        "xp": p(xp), "xc_hat": p(xc_hat), "xc": p(xc), "zp": p(zp), "zs": p(zs),
        "yp": p(yp), "signal_p": p(signal_p), "noise_p": p(noise_p), "resid_s": p(resid_s),
    }
    # LS projection of yp on xp: empirical coherent amplitude at the receiver
    h_emp = complex(np.sum(yp * np.conj(xp)) / np.sum(np.abs(xp) ** 2))
    amp_emp = abs(h_emp) * math.sqrt(p(xp))
    trace.extras = {
        "coherent_amplitude": amp_emp,
        "coherent_amplitude_target": abs(coef_p) * math.sqrt(ch.Pp),
        "aligned_amplitude": abs(p_cx) * math.sqrt(ch.Pp) + abs(f_cx) * math.sqrt(al * ch.Pc),
    }
    trace.cross = {
        "corr_xp_xc_hat": abs(complex(np.mean(xp * np.conj(xc_hat))))
        / math.sqrt(max(p(xp) * p(xc_hat), 1e-300)),
    }
    trace.sinr_p = sinr_p
    trace.sinr_s = sinr_s
    trace.implied_rp = math.log1p(sinr_p)
    trace.implied_rc = math.log1p(sinr_s)
    targets = rates_complex(ch, al)
    trace.target_rp = targets.rp if not cfg.misaligned else None
    trace.target_rc = targets.rc
    if trace.target_rp is not None:
        trace.rel_err_rp = _rel_err(trace.implied_rp, trace.target_rp)
    if trace.target_rc is not None and trace.target_rc > 0:
        trace.rel_err_rc = _rel_err(trace.implied_rc, trace.target_rc)
    if cfg.n_blocks > 1:
        trace.blocks = _block_rows(cfg.n_blocks, xp=xp, xc=xc, noise_p=noise_p, resid_s=resid_s)
    return trace


def simulate_two_tap(cfg: SimConfig) -> SimTrace:
    """Feedback-free delayed relaying over the induced two-tap channel.

    The cognitive radio re-sends the primary codeword delayed by its listening
    time l_c, turning the primary link into a two-tap channel.  The receiver
    combines the two taps (maximal-ratio, with genie separation of the other
    tap's symbol in each branch, as an OFDM/Rake front end would provide);
    the combined SNR target is

        (|p|^2 Pp + |f|^2 alpha Pc) / (Np + |f|^2 (1 - alpha) Pc).
    """
    ch = cfg.channel
    if not isinstance(ch, CognitiveChannel):
        raise DomainError("two-tap scheme needs the physical channel")
    if cfg.l_c < 1:
        raise DomainError("two-tap scheme needs listening delay l_c >= 1")
    al = float(cfg.alpha)
    n, l_c = cfg.n_symbols, cfg.l_c
    if ch.Pp <= 0.0:
        raise DomainError("two-tap scheme needs Pp > 0")

    total = n + 2 * l_c
    xp = _normalized(standard_complex_normal(make_rng(cfg.seed, 0), total), ch.Pp)
    xc_hat = _normalized(standard_complex_normal(make_rng(cfg.seed, 1), total), (1.0 - al) * ch.Pc)
    zp = math.sqrt(ch.Np) * standard_complex_normal(make_rng(cfg.seed, 2), total)

    p_cx, f_cx = ch.p_cx, ch.f_cx
    split = math.sqrt(al * ch.Pc / ch.Pp)
    # y[m] = p xp[m] + f*split*xp[m-l_c] + f*xc_hat[m-l_c] + zp[m], m >= l_c
    m = np.arange(l_c, total)
    y = p_cx * xp[m] + f_cx * split * xp[m - l_c] + f_cx * xc_hat[m - l_c] + zp[m]

    k = np.arange(l_c, l_c + n)  # measured symbols
    y_of = lambda idx: y[idx - l_c]
    branch1 = y_of(k) - f_cx * split * xp[k - l_c]           # p xp[k] + noise
    branch2 = y_of(k + l_c) - p_cx * xp[k + l_c]             # f*split xp[k] + noise
    w1, w2 = np.conj(p_cx), np.conj(f_cx * split)
    combined = w1 * branch1 + w2 * branch2
    gain = abs(p_cx) ** 2 + abs(f_cx * split) ** 2
    signal = gain * xp[k]
    noise = combined - signal

    p = lambda v: float(np.mean(np.abs(v) ** 2))
    snr = p(signal) / p(noise) if p(noise) > 0 else math.inf
    s_ratio = abs(p_cx) ** 2 * ch.Pp / ch.Np
    target_snr = (abs(p_cx) ** 2 * ch.Pp + abs(f_cx) ** 2 * al * ch.Pc) / (
        ch.Np + abs(f_cx) ** 2 * (1.0 - al) * ch.Pc)

    trace = SimTrace(scheme=cfg.scheme, n_symbols=n, seed=cfg.seed, alpha=al)
    trace.powers = {
        "xp": p(xp[k]), "tap1": abs(p_cx) ** 2 * p(xp[k]),
        "tap2": abs(f_cx * split) ** 2 * p(xp[k]),
        "combined_signal": p(signal), "combined_noise": p(noise),
    }
    trace.sinr_p = snr
    trace.implied_rp = math.log1p(snr)
    trace.target_rp = math.log1p(target_snr)
    trace.rel_err_rp = _rel_err(trace.implied_rp, trace.target_rp)
    trace.extras = {
        "snr_target": target_snr,
        "snr_ratio_to_primary": snr / s_ratio if s_ratio > 0 else math.inf,
        "primary_snr": s_ratio,
    }
    if cfg.n_blocks > 1:
        trace.blocks = _block_rows(cfg.n_blocks, signal=signal, noise=noise)
    return trace


def simulate_aaf_probe(cfg: SimConfig) -> SimTrace:
    """Amplify-and-forward probe: cognitive re-sends sqrt(Pc/Pp) X_p.

    The primary receiver sees (p + f sqrt(Pc/Pp)) X_p + Z_p; the trace records
    the least-squares estimate of that overall gain, which the feedback
    protocol quantizes and broadcasts.
    """
    ch = cfg.channel
    if not isinstance(ch, CognitiveChannel):
        raise DomainError("probe scheme needs the physical channel")
    if ch.Pp <= 0.0:
        raise DomainError("probe needs Pp > 0")
    n = cfg.n_symbols

    xp = _normalized(standard_complex_normal(make_rng(cfg.seed, 0), n), ch.Pp)
    zp = math.sqrt(ch.Np) * standard_complex_normal(make_rng(cfg.seed, 2), n)
    h_true = ch.p_cx + ch.f_cx * math.sqrt(ch.Pc / ch.Pp)
    y = h_true * xp + zp
    h_hat = complex(np.sum(y * np.conj(xp)) / np.sum(np.abs(xp) ** 2))

    p = lambda v: float(np.mean(np.abs(v) ** 2))
    snr = abs(h_true) ** 2 * ch.Pp / ch.Np
    trace = SimTrace(scheme=cfg.scheme, n_symbols=n, seed=cfg.seed, alpha=None)
    trace.powers = {"xp": p(xp), "y": p(y), "zp": p(zp)}
    trace.sinr_p = p(h_true * xp) / p(zp)
    trace.implied_rp = math.log1p(trace.sinr_p)
    trace.target_rp = math.log1p(snr)
    trace.rel_err_rp = _rel_err(trace.implied_rp, trace.target_rp)
    trace.extras = {
        "h_true_re": h_true.real, "h_true_im": h_true.imag,
        "h_hat_re": h_hat.real, "h_hat_im": h_hat.imag,
        "h_err": abs(h_hat - h_true),
    }
    return trace
