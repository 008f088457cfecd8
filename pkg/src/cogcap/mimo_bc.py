"""Two-antenna genie broadcast-channel construction and its limits.

The converse argument embeds the one-dimensional channel in a 2x2 broadcast
channel: a second antenna is added at each receiver with channel matrices

    Hp = [[1, a], [1, 0]],    Hs = [[eps, 1], [0, 1]],

noise covariance Sigma_z = diag(1, M), and per-antenna power constraints met
with equality.  Transmit covariances are parametrized as

    Sigma_p = [[beta Pp, k_p], [k_p, alpha Pc]],
    Sigma_c = [[(1-beta) Pp, k_c], [k_c, (1-alpha) Pc]],

with |k_p| <= sqrt(alpha beta Pp Pc) and |k_c| <= sqrt((1-alpha)(1-beta) Pp Pc)
(the box bounds are exactly the PSD boundary).  Costa precoding against the
primary signal gives the rates

    Rp = 1/2 ln det(I + (I + Sz^-1 Hp Sigma_c Hp^T)^-1 Sz^-1 Hp Sigma_p Hp^T)
    Rc = 1/2 ln det(I + Sz^-1 Hs Sigma_c Hs^T)

whose iterated limit (eps -> 0 first, then M -> inf) collapses to scalar
expressions that, at the optimal signatures beta = 1, k_p = sqrt(alpha Pp Pc),
k_c = 0, reproduce the low-regime superposition rates.  All 2x2 linear
algebra is done in closed form (explicit adjugate) with a condition guard.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import StandardChannel
from .errors import DomainError, NonPSD, SingularMatrix
from .rates_low import RatePair

COND_GUARD = 1e12
PSD_EIG_TOL = -1e-12


def _det2(m: np.ndarray) -> float:
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def _inv2(m: np.ndarray) -> np.ndarray:
    """Closed-form 2x2 inverse via the adjugate, with a condition guard."""
    det = _det2(m)
    adj = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=float)
    norm = float(np.abs(m).sum())
    if det == 0.0 or norm * float(np.abs(adj).sum()) / abs(det) > COND_GUARD:
        raise SingularMatrix(f"2x2 system too ill-conditioned (det={det:.3e})")
    return adj / det


@dataclass(frozen=True)
class AlignedChannel:
    """Genie broadcast channel: cross gain a, alignment eps, second-antenna noise M."""

    a: float
    eps: float
    M: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.eps) and math.isfinite(self.M)):
            raise DomainError("aligned channel parameters must be finite")
        if self.eps <= 0:
            raise DomainError(f"alignment parameter must be positive, got eps={self.eps}")
        if self.M <= 0:
            raise DomainError(f"second-antenna noise must be positive, got M={self.M}")

    @property
    def Hp(self) -> np.ndarray:
        return np.array([[1.0, self.a], [1.0, 0.0]])

    @property
    def Hs(self) -> np.ndarray:
        return np.array([[self.eps, 1.0], [0.0, 1.0]])

    @property
    def Sigma_z(self) -> np.ndarray:
        return np.diag([1.0, self.M])


@dataclass(frozen=True)
class CovariancePair:
    """(beta, alpha, k_p, k_c) parametrization of the two transmit covariances."""

    Pp: float
    Pc: float
    beta: float
    alpha: float
    k_p: float
    k_c: float

    def __post_init__(self):
        if self.Pp < 0 or self.Pc < 0:
            raise DomainError("powers must be nonnegative")
        if not (0.0 <= self.beta <= 1.0) or not (0.0 <= self.alpha <= 1.0):
            raise DomainError("beta and alpha must lie in [0, 1]")
        kp_bound = math.sqrt(self.alpha * self.beta * self.Pp * self.Pc)
        kc_bound = math.sqrt((1.0 - self.alpha) * (1.0 - self.beta) * self.Pp * self.Pc)
        if abs(self.k_p) > kp_bound + 1e-12 or abs(self.k_c) > kc_bound + 1e-12:
            raise DomainError(
                f"cross covariances out of range: |k_p| <= {kp_bound:.6g}, |k_c| <= {kc_bound:.6g}"
            )
        for sigma, name in ((self.Sigma_p, "Sigma_p"), (self.Sigma_c, "Sigma_c")):
            if float(np.linalg.eigvalsh(sigma).min()) < PSD_EIG_TOL:
                raise NonPSD(f"{name} is not positive semidefinite")

    @property
    def Sigma_p(self) -> np.ndarray:
        return np.array([[self.beta * self.Pp, self.k_p],
                         [self.k_p, self.alpha * self.Pc]])

    @property
    def Sigma_c(self) -> np.ndarray:
        return np.array([[(1.0 - self.beta) * self.Pp, self.k_c],
                         [self.k_c, (1.0 - self.alpha) * self.Pc]])

    @classmethod
    def optimal(cls, Pp: float, Pc: float, alpha: float) -> "CovariancePair":
        """Rate-maximizing signatures: full relaying with aligned cross term."""
        return cls(Pp=Pp, Pc=Pc, beta=1.0, alpha=alpha,
                   k_p=math.sqrt(alpha * Pp * Pc), k_c=0.0)


def optimal_signatures(Pp: float, Pc: float, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Rank-one signature vectors realizing the optimal covariances."""
    u_p1 = np.array([math.sqrt(Pp), math.sqrt(alpha * Pc)])
    u_c1 = np.array([0.0, math.sqrt((1.0 - alpha) * Pc)])
    return u_p1, u_c1


def adbc_rates(ach: AlignedChannel, cov: CovariancePair) -> RatePair:
    """Costa-precoding rate pair on the aligned genie channel.

    Raises:
        SingularMatrix: if a = 0 (the embedding matrices degenerate).
    """
    if ach.a == 0.0:
        raise SingularMatrix("aligned construction needs a != 0")
    Hp, Hs = ach.Hp, ach.Hs
    sz_inv = np.diag([1.0, 1.0 / ach.M])
    eye = np.eye(2)

    az_c = sz_inv @ Hp @ cov.Sigma_c @ Hp.T
    az_p = sz_inv @ Hp @ cov.Sigma_p @ Hp.T
    rp_det = _det2(eye + _inv2(eye + az_c) @ az_p)
    rc_det = _det2(eye + sz_inv @ Hs @ cov.Sigma_c @ Hs.T)
    if rp_det <= 0.0 or rc_det <= 0.0:
        raise SingularMatrix("nonpositive determinant in rate evaluation")
    # dets are >= 1 up to rounding; clamp stray -1e-16 logs to zero
    return RatePair(rp=max(0.0, 0.5 * math.log(rp_det)),
                    rc=max(0.0, 0.5 * math.log(rc_det)))


def limit_covariance_terms(ach: AlignedChannel, cov: CovariancePair):
    """Analytic (eps -> 0, then M -> inf) limits of the three rate factors.

    Returns ``(lim Sz^-1 Hs Sigma_c Hs^T, lim (I + Sz^-1 Hp Sigma_c Hp^T)^-1,
    lim Sz^-1 Hp Sigma_p Hp^T)``, each derived by symbolic 2x2 inversion of
    the parametrized matrices.  (The inverse's off-diagonal numerator is
    -((1-beta) Pp + a k_c); renderings with Pc in that slot do not match the
    direct inversion.)
    """
    a = ach.a
    beta, alpha, k_p, k_c = cov.beta, cov.alpha, cov.k_p, cov.k_c
    Pp, Pc = cov.Pp, cov.Pc

    m1 = np.array([[(1.0 - alpha) * Pc, (1.0 - alpha) * Pc],
                   [0.0, 0.0]])
    denom = (1.0 - beta) * Pp + 2.0 * a * k_c + a * a * (1.0 - alpha) * Pc + 1.0
    m2 = np.array([[1.0 / denom, -((1.0 - beta) * Pp + a * k_c) / denom],
                   [0.0, 1.0]])
    m3 = np.array([[beta * Pp + 2.0 * a * k_p + a * a * alpha * Pc, beta * Pp + a * k_p],
                   [0.0, 0.0]])
    return m1, m2, m3


def limit_rates(std: StandardChannel, cov: CovariancePair) -> RatePair:
    """Scalar limit of the genie rates as eps -> 0 and M -> inf.

    Rc depends only on alpha; Rp keeps the full (beta, k_p, k_c) dependence
    and is maximized by the optimal signatures.
    """
    a = std.a
    rc = 0.5 * math.log1p((1.0 - cov.alpha) * cov.Pc)
    num = cov.beta * cov.Pp + 2.0 * a * cov.k_p + a * a * cov.alpha * cov.Pc
    den = (1.0 - cov.beta) * cov.Pp + 2.0 * a * cov.k_c + a * a * (1.0 - cov.alpha) * cov.Pc + 1.0
    return RatePair(rp=max(0.0, 0.5 * math.log1p(num / den)), rc=rc)


@dataclass(frozen=True)
class SweepRow:
    eps: float
    M: float
    rp: float
    rc: float
    rp_limit: float
    rc_limit: float
    dev: float


@dataclass(frozen=True)
class SweepResult:
    rows: tuple
    max_dev: float
    final_dev: float

    def worst_row(self) -> SweepRow:
        return max(self.rows, key=lambda r: r.dev)


def convergence_sweep(std: StandardChannel, cov: CovariancePair,
                      eps_seq, M_seq) -> SweepResult:
    """Evaluate the genie rates on the (eps, M) product grid against the limit.

    ``eps_seq`` must decrease toward 0 and ``M_seq`` increase; the deviation
    of each grid point from the analytic limit is reported per row, and
    ``final_dev`` is the deviation at (min eps, max M).
    """
    eps_seq = [float(e) for e in eps_seq]
    M_seq = [float(m) for m in M_seq]
    if not eps_seq or not M_seq:
        raise DomainError("need at least one eps and one M")
    if any(e2 >= e1 for e1, e2 in zip(eps_seq, eps_seq[1:])) or eps_seq[-1] <= 0:
        raise DomainError("eps_seq must be strictly decreasing and positive")
    if any(m2 <= m1 for m1, m2 in zip(M_seq, M_seq[1:])):
        raise DomainError("M_seq must be strictly increasing")

    lim = limit_rates(std, cov)
    rows = []
    for eps in eps_seq:
        for M in M_seq:
            r = adbc_rates(AlignedChannel(a=std.a, eps=eps, M=M), cov)
            dev = max(abs(r.rp - lim.rp), abs(r.rc - lim.rc))
            rows.append(SweepRow(eps=eps, M=M, rp=r.rp, rc=r.rc,
                                 rp_limit=lim.rp, rc_limit=lim.rc, dev=dev))
    final = next(r for r in rows if r.eps == eps_seq[-1] and r.M == M_seq[-1])
    return SweepResult(rows=tuple(rows), max_dev=max(r.dev for r in rows),
                       final_dev=final.dev)
