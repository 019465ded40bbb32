"""CoopMAC cooperative-relaying analysis for Poisson wireless networks.

Nodes form a homogeneous 2-D Poisson point process and links suffer
log-normal shadowing on top of log-distance path loss.  The package
provides:

- ``channel_model``: dB-domain link budget, Gaussian Q-function, direct and
  two-hop success probabilities.
- ``stochastic_geometry``: PPP sampling, circle-lens areas, helper-tier
  region geometry, nearest-neighbor distance laws.
- ``protocol``: link classification, cooperative rates, tier-priority
  helper selection and the random-selection baseline.
- ``analytic_bounds``: closed-form lower/upper throughput bounds per tier,
  per link distance, and averaged over a link class.
- ``monte_carlo``: seeded vectorized simulation of both selection schemes,
  contour grids, and figure-style sweep tables.
- ``cli``: command-line front end emitting CSV/JSON datasets.
"""

from .channel_model import ChannelParams, g_joint, p_success_direct, q_function, shadowing_sample
from .stochastic_geometry import (
    NetworkRealization,
    RegionAreas,
    classify_helper_tier,
    lens_area,
    nn_distance_pdf,
    sample_ppp,
    tier_region_areas,
)
from .protocol import (
    HelperCandidate,
    LinkClass,
    SelectionOutcome,
    TierSpec,
    classify_link,
    coop_rate,
    enumerate_candidates,
    run_exchange,
    select_helper_conventional,
    select_helper_proposed,
)
from .analytic_bounds import (
    BoundPair,
    TierProbabilityVector,
    averaged_bounds,
    h_integral,
    link_bounds_at_distance,
    tier_bound_pair,
    tier_probabilities,
    total_throughput_bounds,
    type_ab_throughput,
)
from .monte_carlo import ExperimentConfig, SimEstimate, contour_grid, estimate_throughput, reproduce_figure

__all__ = [
    "ChannelParams",
    "q_function",
    "p_success_direct",
    "g_joint",
    "shadowing_sample",
    "NetworkRealization",
    "RegionAreas",
    "sample_ppp",
    "lens_area",
    "tier_region_areas",
    "classify_helper_tier",
    "nn_distance_pdf",
    "LinkClass",
    "TierSpec",
    "HelperCandidate",
    "SelectionOutcome",
    "classify_link",
    "coop_rate",
    "enumerate_candidates",
    "select_helper_proposed",
    "select_helper_conventional",
    "run_exchange",
    "BoundPair",
    "TierProbabilityVector",
    "h_integral",
    "type_ab_throughput",
    "tier_probabilities",
    "tier_bound_pair",
    "link_bounds_at_distance",
    "averaged_bounds",
    "total_throughput_bounds",
    "ExperimentConfig",
    "SimEstimate",
    "estimate_throughput",
    "contour_grid",
    "reproduce_figure",
]

__version__ = "0.1.0"
