"""Downlink cellular Monte Carlo simulator.

Compares four serving schemes on common random topologies: plain per-BS OMA,
cluster joint transmission for low-SINR users, per-BS NOMA pairing, and the
combined scheme that groups users before pairing (CoMP users per cluster,
the rest per BS).
"""

from .config import SCHEMES, ScenarioConfig
from .deployment import Area, Cluster, associate_users, cluster_bs, sample_ppp
from .errors import ConfigError, TopologyError
from .grouping import (
    NomaPair,
    PairingOutcome,
    ServingPlan,
    UserGroups,
    build_serving_plan,
    classify_comp,
    pair_group,
    solve_power_fraction,
    solve_power_fractions,
)
from .link import FrameParams, McsTable, efficiency, link_rate, user_throughput
from .radio import (
    LinkBudget,
    NoisePower,
    RadioContext,
    SubchannelPlan,
    channel_gain,
    path_loss_db,
    sinr_comp,
    sinr_noma_comp,
    sinr_noma_noncomp,
    sinr_oma,
)
from .scheduler import TimeAllocation, airtime, beta_fractions, theta_split
from .sim import (
    MetricsReport,
    NetworkRealization,
    PointStats,
    SweepPoint,
    run_iteration,
    run_sweep,
    sample_realization,
)

__version__ = "0.1.0"

__all__ = [
    "Area",
    "Cluster",
    "ConfigError",
    "FrameParams",
    "LinkBudget",
    "McsTable",
    "MetricsReport",
    "NetworkRealization",
    "NoisePower",
    "NomaPair",
    "PairingOutcome",
    "PointStats",
    "RadioContext",
    "SCHEMES",
    "ScenarioConfig",
    "ServingPlan",
    "SubchannelPlan",
    "SweepPoint",
    "TimeAllocation",
    "TopologyError",
    "UserGroups",
    "airtime",
    "associate_users",
    "beta_fractions",
    "build_serving_plan",
    "channel_gain",
    "classify_comp",
    "cluster_bs",
    "efficiency",
    "link_rate",
    "pair_group",
    "path_loss_db",
    "run_iteration",
    "run_sweep",
    "sample_ppp",
    "sample_realization",
    "sinr_comp",
    "sinr_noma_comp",
    "sinr_noma_noncomp",
    "sinr_oma",
    "solve_power_fraction",
    "solve_power_fractions",
    "theta_split",
    "user_throughput",
]
