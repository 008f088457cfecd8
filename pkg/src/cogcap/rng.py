"""Reproducible random streams for the simulators.

Streams are numpy Philox (counter-based) generators keyed by a 64-bit seed
and a stream index, so independent signal components draw from independent,
individually reproducible streams.  Gaussian variates are produced by the
Box-Muller transform applied to Philox uniforms rather than by
``Generator.standard_normal``: the variate algorithm is pinned here, making
traces bit-identical for a given (seed, stream) regardless of numpy's
internal normal sampler.
"""

from __future__ import annotations

import numpy as np


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Philox generator for (seed, stream); distinct streams are independent."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(stream),))
    return np.random.Generator(np.random.Philox(ss))


def standard_normal(rng: np.random.Generator, n: int) -> np.ndarray:
    """n standard normal variates via Box-Muller over Philox uniforms."""
    if n <= 0:
        return np.zeros(0)
    m = (n + 1) // 2
    u1 = 1.0 - rng.random(m)  # (0, 1]: keeps the log finite
    u2 = rng.random(m)
    r = np.sqrt(-2.0 * np.log(u1))
    theta = 2.0 * np.pi * u2
    z = np.empty(2 * m)
    z[0::2] = r * np.cos(theta)
    z[1::2] = r * np.sin(theta)
    return z[:n]


def standard_complex_normal(rng: np.random.Generator, n: int) -> np.ndarray:
    """n unit-variance circularly symmetric complex Gaussians."""
    re = standard_normal(rng, n)
    im = standard_normal(rng, n)
    return (re + 1j * im) / np.sqrt(2.0)
