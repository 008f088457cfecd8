import math

import numpy as np
import pytest

from cogcap import (CognitiveChannel, DomainError, NonpositiveNoise,
                    StandardChannel, ZeroGain, received_snrs, to_standard)
from cogcap.channel import channel_from_mapping
from cogcap.rng import make_rng, standard_normal


def test_to_standard_worked_example():
    # direct evaluation of the gain/power transform
    ch = CognitiveChannel(p=2, f=1, g=1, c=1, Pp=1, Pc=1, Np=1, Ns=4)
    std = to_standard(ch)
    assert std.a == pytest.approx(2.0, abs=1e-15)
    assert std.b == pytest.approx(0.25, abs=1e-15)
    assert std.Pp == pytest.approx(4.0, abs=1e-15)
    assert std.Pc == pytest.approx(0.25, abs=1e-15)


def test_to_standard_identity():
    ch = CognitiveChannel(p=1, f=1, g=1, c=1, Pp=3.0, Pc=7.0, Np=1, Ns=1)
    std = to_standard(ch)
    assert (std.a, std.b, std.Pp, std.Pc) == (1.0, 1.0, 3.0, 7.0)


def test_to_standard_no_interference():
    ch = CognitiveChannel(p=1, f=0, g=0, c=1, Pp=2.5, Pc=4.0, Np=1, Ns=1)
    std = to_standard(ch)
    assert (std.a, std.b) == (0.0, 0.0)
    assert (std.Pp, std.Pc) == (2.5, 4.0)


def test_to_standard_errors():
    with pytest.raises(ZeroGain):
        to_standard(CognitiveChannel(p=0, f=1, g=1, c=1, Pp=1, Pc=1, Np=1, Ns=1))
    with pytest.raises(ZeroGain):
        to_standard(CognitiveChannel(p=1, f=1, g=1, c=0, Pp=1, Pc=1, Np=1, Ns=1))
    with pytest.raises(NonpositiveNoise):
        CognitiveChannel(p=1, f=1, g=1, c=1, Pp=1, Pc=1, Np=0, Ns=1)
    with pytest.raises(NonpositiveNoise):
        CognitiveChannel(p=1, f=1, g=1, c=1, Pp=1, Pc=1, Np=1, Ns=-2)


def test_negative_gains_absorbed():
    # capacity-relevant quantities depend only on gain magnitudes
    ch_pos = CognitiveChannel(p=2, f=1, g=1, c=1, Pp=1, Pc=1, Np=1, Ns=4)
    ch_neg = CognitiveChannel(p=-2, f=-1, g=1, c=-1, Pp=1, Pc=1, Np=1, Ns=4)
    assert to_standard(ch_neg) == to_standard(ch_pos)
    assert to_standard(ch_neg).a >= 0


def test_received_snrs():
    ch = CognitiveChannel(p=1, f=1, g=1, c=1, Pp=1, Pc=1, Np=1, Ns=1)
    assert received_snrs(ch) == (1.0, 1.0, 1.0, 1.0)
    ch2 = CognitiveChannel(p=2, f=1, g=1, c=1, Pp=1, Pc=1, Np=1, Ns=4)
    assert received_snrs(ch2) == pytest.approx((4.0, 0.25, 1.0, 0.25))
    ch3 = CognitiveChannel(p=2, f=0, g=1, c=1, Pp=1, Pc=1, Np=1, Ns=4)
    assert received_snrs(ch3)[2] == 0.0


def test_scale_invariance_of_a():
    # scaling (f, c) by t and Pc by 1/t^2 leaves the standard form unchanged
    rng = np.random.default_rng(7)
    for _ in range(300):
        p, f, g, c = rng.uniform(0.1, 5.0, 4)
        Pp, Pc = rng.uniform(0.01, 50.0, 2)
        Np, Ns = rng.uniform(0.1, 10.0, 2)
        t = rng.uniform(0.1, 10.0)
        ch = CognitiveChannel(p=p, f=f, g=g, c=c, Pp=Pp, Pc=Pc, Np=Np, Ns=Ns)
        ch_scaled = CognitiveChannel(p=p, f=t * f, g=g, c=t * c, Pp=Pp,
                                     Pc=Pc / t ** 2, Np=Np, Ns=Ns)
        std, std_s = to_standard(ch), to_standard(ch_scaled)
        assert std_s.a == pytest.approx(std.a, rel=1e-12)
        assert std_s.Pc == pytest.approx(std.Pc, rel=1e-12)


def test_low_interference_predicate():
    rng = np.random.default_rng(8)
    for _ in range(300):
        p, f, g, c = rng.uniform(0.1, 5.0, 4)
        Np, Ns = rng.uniform(0.1, 10.0, 2)
        ch = CognitiveChannel(p=p, f=f, g=g, c=c, Pp=1, Pc=1, Np=Np, Ns=Ns)
        assert to_standard(ch).low_interference == (
            f * math.sqrt(Ns) <= c * math.sqrt(Np))


def test_standard_channel_invariants():
    with pytest.raises(DomainError):
        StandardChannel(a=-0.1, b=0.0, Pp=1, Pc=1)
    with pytest.raises(DomainError):
        StandardChannel(a=1.0, b=0.0, Pp=-1, Pc=1)
    StandardChannel(a=1.0, b=-0.5, Pp=1, Pc=1)  # b may carry any sign


def test_complex_variant_fields():
    ch = CognitiveChannel(p=1, f=0.5, g=0.2, c=1, Pp=1, Pc=1, Np=1, Ns=1,
                          phase_p=0.3, phase_f=1.0, phase_g=0.0, phase_c=0.0)
    assert ch.is_complex
    assert abs(ch.p_cx) == pytest.approx(1.0)
    assert ch.p_cx == pytest.approx(complex(math.cos(0.3), math.sin(0.3)))
    with pytest.raises(DomainError):
        CognitiveChannel(p=-1, f=0.5, g=0.2, c=1, Pp=1, Pc=1, Np=1, Ns=1,
                         phase_p=0.3)


def test_channel_from_mapping():
    ch = channel_from_mapping({"p": 2, "f": 1, "g": 1, "c": 1,
                               "pp": 1, "pc": 1, "np": 1, "ns": 4})
    assert to_standard(ch).a == pytest.approx(2.0)
    with pytest.raises(DomainError):
        channel_from_mapping({"p": 1, "f": 1})


def test_round_trip_second_moments():
    """Original channel and its standard form agree in distribution.

    Simulate each channel independently, map the original receiver outputs
    through the normalizing scalings, and compare the empirical second
    moments at 3 sigma of the estimator.
    """
    ch = CognitiveChannel(p=2, f=1, g=1, c=1, Pp=1, Pc=1, Np=1, Ns=4)
    std = to_standard(ch)
    n = 1_000_000

    # original channel (arbitrary relay-free inputs at full power)
    xp_t = math.sqrt(ch.Pp) * standard_normal(make_rng(1, 0), n)
    xc_t = math.sqrt(ch.Pc) * standard_normal(make_rng(1, 1), n)
    zp_t = math.sqrt(ch.Np) * standard_normal(make_rng(1, 2), n)
    zs_t = math.sqrt(ch.Ns) * standard_normal(make_rng(1, 3), n)
    yp_scaled = (ch.p * xp_t + ch.f * xc_t + zp_t) / math.sqrt(ch.Np)
    ys_scaled = (ch.g * xp_t + ch.c * xc_t + zs_t) / math.sqrt(ch.Ns)

    # standard-form channel, independent draws
    xp = math.sqrt(std.Pp) * standard_normal(make_rng(2, 0), n)
    xc = math.sqrt(std.Pc) * standard_normal(make_rng(2, 1), n)
    zp = standard_normal(make_rng(2, 2), n)
    zs = standard_normal(make_rng(2, 3), n)
    yp = xp + std.a * xc + zp
    ys = std.b * xp + xc + zs

    for lhs, rhs in ((yp_scaled, yp), (ys_scaled, ys)):
        m1, m2 = float(np.mean(lhs ** 2)), float(np.mean(rhs ** 2))
        sigma_diff = 2.0 * m2 / math.sqrt(n)  # var of each estimator ~ 2 m^2 / n
        assert abs(m1 - m2) < 3.0 * sigma_diff
