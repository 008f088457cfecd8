"""cogcap: capacity analysis and link simulation for the Gaussian cognitive
radio channel.

A cognitive (secondary) transmitter that knows the primary user's codeword
can split its power between relaying that codeword and sending its own
dirty-paper-coded message.  This package computes the optimal split and the
resulting rates, sweeps capacity-region frontiers in both interference
regimes, validates every closed form against independent numerical oracles,
and simulates the transmission and channel-state-acquisition protocols at
the symbol level.  All rates are in nats per channel use.
"""

__version__ = "0.1.0"

from .channel import (CognitiveChannel, StandardChannel, channel_from_mapping,
                      received_snrs, to_standard)
from .errors import (CogcapError, ConfigError, DegenerateSlope, DomainError,
                     EmptySet, NonConvergence, NonPSD, NonpositiveNoise,
                     RegimeError, SingularMatrix, ToleranceError, ZeroGain,
                     ZeroPower)
from .link_sim import SimConfig, SimTrace, simulate
from .mimo_bc import (AlignedChannel, CovariancePair, adbc_rates,
                      convergence_sweep, limit_covariance_terms, limit_rates)
from .protocol import (ProtocolEvent, ProtocolState, arq_oracle,
                       run_csi_acquisition, run_ramping_controller)
from .rates_high import (BoundaryReport, CovarianceMax, HighRegimePoint,
                         ThresholdResult, a_threshold, b_max,
                         boundary_point_high, mu_of_alpha, rates_high,
                         weighted_covariance_max)
from .rates_low import (PowerSplit, RatePair, alpha_diversity, alpha_star,
                        alpha_star_closed_form, cognitive_capacity,
                        rates_complex, rc_low, rp_low, snr_from_rate)
from .region import (ConvexityReport, RegionCurve, Weight, convexity_check,
                     frontier_low, maximize_weighted, sum_capacity)

__all__ = [
    "AlignedChannel", "BoundaryReport", "CogcapError", "CognitiveChannel",
    "ConfigError", "ConvexityReport", "CovarianceMax", "CovariancePair",
    "DegenerateSlope", "DomainError", "EmptySet", "HighRegimePoint",
    "NonConvergence", "NonPSD", "NonpositiveNoise", "PowerSplit",
    "ProtocolEvent", "ProtocolState", "RatePair", "RegimeError",
    "RegionCurve", "SimConfig", "SimTrace", "SingularMatrix",
    "StandardChannel", "ThresholdResult", "ToleranceError", "Weight",
    "ZeroGain", "ZeroPower", "a_threshold", "adbc_rates", "alpha_diversity",
    "alpha_star", "alpha_star_closed_form", "arq_oracle", "b_max",
    "boundary_point_high", "channel_from_mapping", "cognitive_capacity",
    "convergence_sweep", "convexity_check", "frontier_low",
    "limit_covariance_terms", "limit_rates", "maximize_weighted",
    "mu_of_alpha", "rates_complex", "rates_high", "rc_low", "received_snrs",
    "rp_low", "run_csi_acquisition", "run_ramping_controller", "simulate",
    "snr_from_rate", "sum_capacity", "to_standard",
    "weighted_covariance_max",
]
