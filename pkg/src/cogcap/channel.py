"""Physical and standard-form models of the two-user cognitive radio channel.

The physical channel is

    Y_p = p*X_p + f*X_c + Z_p,   Z_p ~ N(0, Np)
    Y_s = g*X_p + c*X_c + Z_s,   Z_s ~ N(0, Ns)

with average power constraints (Pp, Pc) on the two transmitters.  Scaling the
inputs and outputs by the direct gains and noise standard deviations gives an
equivalent channel with unit direct gains and unit noise variances, described
only by the two cross gains

    a = |f| sqrt(Ns) / (|c| sqrt(Np)),   b = |g| sqrt(Np) / (|p| sqrt(Ns))

and the normalized powers Pp' = p^2 Pp / Np, Pc' = c^2 Pc / Ns.  All rates in
this package are in nats per channel use (natural logarithm).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, NonpositiveNoise, ZeroGain

#: Keys accepted in a flat channel config mapping, in canonical order.
CONFIG_KEYS = ("p", "f", "g", "c", "pp", "pc", "np", "ns")
PHASE_KEYS = ("phase_p", "phase_f", "phase_g", "phase_c")


@dataclass(frozen=True)
class CognitiveChannel:
    """Physical channel: four gains, two power constraints, two noise powers.

    In the real variant the gains may carry signs (they are absorbed into the
    codeword convention by the standard-form transform).  In the complex
    variant ``p, f, g, c`` are magnitudes and the ``phase_*`` fields carry the
    angles in radians.
    """

    p: float
    f: float
    g: float
    c: float
    Pp: float
    Pc: float
    Np: float
    Ns: float
    phase_p: float | None = None
    phase_f: float | None = None
    phase_g: float | None = None
    phase_c: float | None = None

    def __post_init__(self):
        for name in ("p", "f", "g", "c", "Pp", "Pc", "Np", "Ns"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"channel field {name!r} must be finite, got {v!r}")
        if self.Np <= 0 or self.Ns <= 0:
            raise NonpositiveNoise(
                f"noise variances must be positive, got Np={self.Np}, Ns={self.Ns}"
            )
        if self.Pp < 0 or self.Pc < 0:
            raise DomainError(
                f"power constraints must be nonnegative, got Pp={self.Pp}, Pc={self.Pc}"
            )
        if self.is_complex:
            for name in ("p", "f", "g", "c"):
                if getattr(self, name) < 0:
                    raise DomainError(
                        f"complex variant stores magnitudes; {name} must be >= 0"
                    )
            for name in PHASE_KEYS:
                v = getattr(self, name)
                if v is not None and not math.isfinite(v):
                    raise DomainError(f"{name} must be finite, got {v!r}")

    @property
    def is_complex(self) -> bool:
        return any(getattr(self, k) is not None for k in PHASE_KEYS)

    def _gain(self, mag: float, phase: float | None) -> complex:
        if phase is None:
            return complex(mag, 0.0)
        return mag * cmath.exp(1j * phase)

    @property
    def p_cx(self) -> complex:
        return self._gain(self.p, self.phase_p)

    @property
    def f_cx(self) -> complex:
        return self._gain(self.f, self.phase_f)

    @property
    def g_cx(self) -> complex:
        return self._gain(self.g, self.phase_g)

    @property
    def c_cx(self) -> complex:
        return self._gain(self.c, self.phase_c)

    def as_record(self) -> dict:
        """Canonical flat record of the channel (for CLI JSON output)."""
        rec = {
            "p": self.p, "f": self.f, "g": self.g, "c": self.c,
            "pp": self.Pp, "pc": self.Pc, "np": self.Np, "ns": self.Ns,
        }
        if self.is_complex:
            rec.update(
                phase_p=self.phase_p or 0.0, phase_f=self.phase_f or 0.0,
                phase_g=self.phase_g or 0.0, phase_c=self.phase_c or 0.0,
            )
        return rec


@dataclass(frozen=True)
class StandardChannel:
    """Normalized (1, a, b, 1) channel with unit noise at both receivers."""

    a: float
    b: float
    Pp: float
    Pc: float

    def __post_init__(self):
        for name in ("a", "b", "Pp", "Pc"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"standard channel field {name!r} must be finite")
        if self.a < 0:
            raise DomainError(f"canonical standard form requires a >= 0, got a={self.a}")
        if self.Pp < 0 or self.Pc < 0:
            raise DomainError("normalized powers must be nonnegative")

    @property
    def low_interference(self) -> bool:
        """True in the low-interference-gain regime a <= 1."""
        return self.a <= 1.0

    def with_powers(self, Pp: float | None = None, Pc: float | None = None) -> "StandardChannel":
        return StandardChannel(
            a=self.a, b=self.b,
            Pp=self.Pp if Pp is None else Pp,
            Pc=self.Pc if Pc is None else Pc,
        )

    def as_record(self) -> dict:
        return {"a": self.a, "b": self.b, "pp": self.Pp, "pc": self.Pc}


def to_standard(ch: CognitiveChannel) -> StandardChannel:
    """Convert a physical channel to its canonical (1, a, b, 1) standard form.

    Gain signs/phases are absorbed by the invertible input/output scalings, so
    only magnitudes enter; the original channel keeps the signed gains for
    simulation fidelity.

    Raises:
        ZeroGain: if a direct gain (p or c) is zero, making the scaling
            non-invertible.
        NonpositiveNoise: if a noise variance is not positive.
    """
    if ch.Np <= 0 or ch.Ns <= 0:
        raise NonpositiveNoise("standard-form transform needs Np > 0 and Ns > 0")
    if ch.p == 0 or ch.c == 0:
        raise ZeroGain("standard-form transform needs nonzero direct gains p and c")
    sNp, sNs = math.sqrt(ch.Np), math.sqrt(ch.Ns)
    return StandardChannel(
        a=abs(ch.f) * sNs / (abs(ch.c) * sNp),
        b=abs(ch.g) * sNp / (abs(ch.p) * sNs),
        Pp=ch.p ** 2 * ch.Pp / ch.Np,
        Pc=ch.c ** 2 * ch.Pc / ch.Ns,
    )


def received_snrs(ch: CognitiveChannel) -> tuple[float, float, float, float]:
    """Received SNRs and INRs at the two base stations.

    Returns ``(snr_p, snr_s, inr_p, inr_s)``: the desired-signal SNRs at the
    primary and secondary receivers followed by the interference-to-noise
    ratios of the cross links.
    """
    if ch.Np <= 0 or ch.Ns <= 0:
        raise NonpositiveNoise("received SNRs need Np > 0 and Ns > 0")
    return (
        ch.p ** 2 * ch.Pp / ch.Np,
        ch.c ** 2 * ch.Pc / ch.Ns,
        ch.f ** 2 * ch.Pc / ch.Np,
        ch.g ** 2 * ch.Pp / ch.Ns,
    )


def channel_from_mapping(values: dict) -> CognitiveChannel:
    """Build a CognitiveChannel from a flat key/value mapping.

    Expected keys: p, f, g, c, pp, pc, np, ns; the complex variant adds
    phase_p, phase_f, phase_g, phase_c (radians).  Extra keys are rejected by
    the config reader, not here.
    """
    missing = [k for k in CONFIG_KEYS if k not in values]
    if missing:
        raise DomainError(f"channel mapping missing keys: {', '.join(missing)}")
    phases = {k: values.get(k) for k in PHASE_KEYS}
    return CognitiveChannel(
        p=float(values["p"]), f=float(values["f"]),
        g=float(values["g"]), c=float(values["c"]),
        Pp=float(values["pp"]), Pc=float(values["pc"]),
        Np=float(values["np"]), Ns=float(values["ns"]),
        phase_p=None if phases["phase_p"] is None else float(phases["phase_p"]),
        phase_f=None if phases["phase_f"] is None else float(phases["phase_f"]),
        phase_g=None if phases["phase_g"] is None else float(phases["phase_g"]),
        phase_c=None if phases["phase_c"] is None else float(phases["phase_c"]),
    )
