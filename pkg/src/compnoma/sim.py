"""Monte Carlo engine: realizations, the four serving schemes, aggregation.

Every scheme at one (parameter point, iteration) is evaluated on the same
realization (common random numbers), and the random streams are keyed by
purpose + iteration + the parameters that actually affect the draw, so sweep
points share randomness wherever that is meaningful. Results are a pure
function of (config, point, iteration): thread count and completion order
cannot change any output bit.
"""

from __future__ import annotations

import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import grouping, radio, scheduler
from .config import SCHEMES, ScenarioConfig
from .deployment import Area, Cluster, associate_users, cluster_bs, sample_ppp
from .errors import TopologyError
from .grouping import ServingPlan, UserGroups
from .link import FrameParams, McsTable, efficiency
from .radio import LinkBudget, NoisePower, RadioContext, SubchannelPlan

# (enable CoMP classification, enable NOMA pairing)
_SCHEME_SWITCHES = {
    "benchmark_oma": (False, False),
    "comp_only": (True, False),
    "noma_only": (False, True),
    "comp_noma_proposed": (True, True),
}

# substream tags; never reuse numbers
_BS, _USER_COUNT, _USER_POS, _SHADOWING, _KMEANS, _FADING = range(1, 7)


def _float_bits(x: float) -> int:
    return struct.unpack("<Q", struct.pack("<d", float(x)))[0]


def substream(master_seed: int, tag: int, *parts) -> np.random.Generator:
    """Deterministic named stream: (seed, tag, parts) -> independent Generator."""
    entropy = [int(master_seed), int(tag)]
    for p in parts:
        entropy.append(_float_bits(p) if isinstance(p, float) else int(p))
    return np.random.default_rng(np.random.SeedSequence(entropy))


@dataclass(frozen=True)
class SweepPoint:
    bs_density: float
    user_density: float
    comp_threshold_db: float


@dataclass
class NetworkRealization:
    """One sampled topology with its per-link channel table."""

    bs_pos: np.ndarray            # (B, 2) km
    user_pos: np.ndarray          # (N, 2) km
    clusters: list[Cluster]
    bs_cluster: np.ndarray        # (B,) cluster id per BS
    mean_gains: np.ndarray        # (N, B) association gains (no fast fading)
    gains: np.ndarray             # (N, B) gains the SINRs use
    serving: np.ndarray           # (N,) serving BS per user
    warnings: dict[str, int] = field(default_factory=dict)

    @property
    def n_users(self) -> int:
        return len(self.user_pos)

    @property
    def user_cluster(self) -> np.ndarray:
        return self.bs_cluster[self.serving]


def sample_realization(cfg: ScenarioConfig, point: SweepPoint, iteration: int) -> NetworkRealization:
    """Sample topology + channels for one iteration.

    BS layout and clustering are keyed by (iteration, bs_density); user count,
    positions and shadowing by iteration alone, so sweeps over the serving
    threshold reuse identical realizations and user-density sweeps stay
    strongly coupled (shared position/shadowing streams).
    """
    area = Area.from_km2(cfg.area_km2)
    budget = LinkBudget(
        pl_intercept_db=cfg.pl_intercept_db,
        pl_slope_db=cfg.pl_slope_db,
        tx_gain_db=cfg.tx_gain_db,
        rx_gain_db=cfg.rx_gain_db,
        penetration_loss_db=cfg.penetration_loss_db,
        shadowing_sigma_db=cfg.shadowing_sigma_db,
        d_min_km=cfg.d_min_km,
    )
    seed = cfg.master_seed
    warnings: dict[str, int] = {}

    bs_pos = sample_ppp(point.bs_density, area, substream(seed, _BS, iteration, point.bs_density))
    if len(bs_pos) == 0:
        raise TopologyError(
            f"realization {iteration} drew zero base stations (density {point.bs_density}/km2)"
        )

    if cfg.num_clusters > len(bs_pos):
        warnings["cluster_count_clamped"] = 1
    clusters = cluster_bs(bs_pos, cfg.num_clusters, substream(seed, _KMEANS, iteration, point.bs_density))
    bs_cluster = np.empty(len(bs_pos), dtype=int)
    for cluster in clusters:
        bs_cluster[cluster.member_bs] = cluster.id

    n_users = int(substream(seed, _USER_COUNT, iteration).poisson(point.user_density * area.km2))
    user_pos = substream(seed, _USER_POS, iteration).uniform(0.0, area.side_km, size=(n_users, 2))

    shadowing = substream(seed, _SHADOWING, iteration).normal(
        0.0, cfg.shadowing_sigma_db, size=(n_users, len(bs_pos))
    )
    distances = np.linalg.norm(user_pos[:, None, :] - bs_pos[None, :, :], axis=2)
    clamped = int(np.count_nonzero(distances < budget.d_min_km))
    if clamped:
        warnings["distance_clamped_links"] = clamped
    mean_gains = radio.channel_gain(distances, budget, shadowing)

    if cfg.fading == "rayleigh":
        fading = substream(seed, _FADING, iteration).exponential(1.0, size=mean_gains.shape)
        gains = mean_gains * fading
    else:
        gains = mean_gains

    serving = associate_users(mean_gains, radio.dbm_to_mw(cfg.tx_power_dbm))
    idle_bs = len(bs_pos) - len(np.unique(serving))
    if idle_bs:
        warnings["bs_without_users"] = idle_bs
    return NetworkRealization(
        bs_pos=bs_pos,
        user_pos=user_pos,
        clusters=clusters,
        bs_cluster=bs_cluster,
        mean_gains=mean_gains,
        gains=gains,
        serving=serving,
        warnings=warnings,
    )


def radio_context(cfg: ScenarioConfig, real: NetworkRealization) -> RadioContext:
    plan = SubchannelPlan(total_power_dbm=cfg.tx_power_dbm, num_subchannels=cfg.num_subchannels)
    noise = NoisePower(psd_dbm_hz=cfg.noise_psd_dbm_hz, subchannel_bw_hz=cfg.subchannel_bw_khz * 1e3)
    return RadioContext(rx_mw=real.gains * plan.per_subchannel_mw, noise_mw=noise.sigma2_mw)


@dataclass
class SchemeIterationResult:
    """Per-user metrics of one scheme on one realization."""

    throughput_bps: np.ndarray   # (N,)
    covered: np.ndarray          # (N,) bool
    operating_sinr: np.ndarray   # (N,) linear, post-pairing where paired
    airtime: np.ndarray          # (N,) effective time fraction
    theta: np.ndarray            # (K,) CoMP-phase share per cluster
    groups: UserGroups | None = None
    plan: ServingPlan | None = None
    allocation: scheduler.TimeAllocation | None = None


def _pair_arrays(pairs_by_key: dict[int, list[grouping.NomaPair]]):
    """Flatten {key: [pairs]} into id/zeta/key arrays for vectorized assembly."""
    strong, weak, zeta, key = [], [], [], []
    for k, pairs in pairs_by_key.items():
        for p in pairs:
            strong.append(p.strong)
            weak.append(p.weak)
            zeta.append(p.zeta_strong)
            key.append(k)
    return (
        np.asarray(strong, dtype=int),
        np.asarray(weak, dtype=int),
        np.asarray(zeta, dtype=float),
        np.asarray(key, dtype=int),
    )


def evaluate_scheme(
    cfg: ScenarioConfig,
    real: NetworkRealization,
    mcs: McsTable,
    frame: FrameParams,
    scheme: str,
    comp_threshold_db: float,
    oma_sinr: np.ndarray,
    comp_sinr: np.ndarray | None,
    collect: bool = False,
) -> SchemeIterationResult:
    """Run one scheme's grouping/pairing/scheduling pipeline on a realization."""
    enable_comp, enable_pairing = _SCHEME_SWITCHES[scheme]
    eff_threshold = comp_threshold_db if enable_comp else float("-inf")
    if np.isneginf(eff_threshold):
        comp_sinr = None

    groups = grouping.classify_comp(oma_sinr, comp_sinr, real.serving, real.bs_cluster, eff_threshold)
    plan = grouping.build_serving_plan(
        groups,
        oma_sinr,
        comp_sinr,
        pairing_enabled=enable_pairing,
        admission=cfg.msd_mode,
        min_gap_db=cfg.msd_gap_db,
    )

    # time allocation per cluster / per BS
    n_clusters = len(real.clusters)
    n_bs = len(real.bs_pos)
    theta_by_cluster = np.zeros(n_clusters)
    beta_comp_by_cluster = np.zeros(n_clusters)
    beta_noncomp_by_bs = np.zeros(n_bs)
    alloc = scheduler.TimeAllocation()
    for cluster in real.clusters:
        e_b = [plan.noncomp_entities(int(b)) for b in cluster.member_bs]
        theta = scheduler.theta_split(plan.comp_entities(cluster.id), e_b)
        beta = scheduler.beta_fractions(
            len(plan.comp_pairs.get(cluster.id, ())), len(plan.comp_leftovers.get(cluster.id, ()))
        )
        theta_by_cluster[cluster.id] = theta
        beta_comp_by_cluster[cluster.id] = beta
        if collect:
            alloc.theta_c[cluster.id] = theta
            if beta:
                alloc.beta_comp[cluster.id] = beta
            for b in cluster.member_bs:
                alloc.bs_cluster[int(b)] = cluster.id
    for b in groups.noncomp_by_bs:
        beta = scheduler.beta_fractions(len(plan.noncomp_pairs[b]), len(plan.noncomp_leftovers[b]))
        beta_noncomp_by_bs[b] = beta
        if collect and beta:
            alloc.beta_noncomp[b] = beta

    n = real.n_users
    op_sinr = np.full(n, np.nan)
    air = np.zeros(n)
    theta_by_bs = theta_by_cluster[real.bs_cluster]

    # non-CoMP phase: leftovers at OMA SINR, pair members at split SINR
    nc_left = [ids for ids in plan.noncomp_leftovers.values() if len(ids)]
    if nc_left:
        ids = np.concatenate(nc_left)
        srv = real.serving[ids]
        op_sinr[ids] = oma_sinr[ids]
        air[ids] = (1.0 - theta_by_bs[srv]) * beta_noncomp_by_bs[srv]
    strong, weak, zeta, _ = _pair_arrays(plan.noncomp_pairs)
    if len(strong):
        for ids, role, z in ((strong, "strong", zeta), (weak, "weak", zeta)):
            srv = real.serving[ids]
            op_sinr[ids] = radio.post_pairing_sinr(oma_sinr[ids], z, role)
            air[ids] = (1.0 - theta_by_bs[srv]) * beta_noncomp_by_bs[srv]

    # CoMP phase: joint transmission, shared cluster airtime
    c_left = [ids for ids in plan.comp_leftovers.values() if len(ids)]
    if c_left:
        ids = np.concatenate(c_left)
        cl = real.user_cluster[ids]
        op_sinr[ids] = np.asarray(comp_sinr)[ids]
        air[ids] = theta_by_cluster[cl] * beta_comp_by_cluster[cl]
    strong, weak, zeta, _ = _pair_arrays(plan.comp_pairs)
    if len(strong):
        for ids, role, z in ((strong, "strong", zeta), (weak, "weak", zeta)):
            cl = real.user_cluster[ids]
            op_sinr[ids] = radio.post_pairing_sinr(np.asarray(comp_sinr)[ids], z, role)
            air[ids] = theta_by_cluster[cl] * beta_comp_by_cluster[cl]

    eta = efficiency(op_sinr, mcs) if n else np.zeros(0)
    throughput = eta * frame.symbol_rate * air
    if cfg.coverage_mode == "sinr_threshold":
        covered = op_sinr >= radio.db_to_linear(cfg.coverage_threshold_db)
    else:
        covered = eta > 0

    return SchemeIterationResult(
        throughput_bps=throughput,
        covered=covered,
        operating_sinr=op_sinr,
        airtime=air,
        theta=theta_by_cluster,
        groups=groups if collect else None,
        plan=plan if collect else None,
        allocation=alloc if collect else None,
    )


def _iteration_core(
    cfg: ScenarioConfig,
    point: SweepPoint,
    iteration: int,
    mcs: McsTable,
    collect: bool,
) -> tuple[NetworkRealization, dict[str, SchemeIterationResult]]:
    frame = FrameParams(
        subcarriers_per_subchannel=cfg.subcarriers_per_subchannel,
        symbols_per_subcarrier=cfg.symbols_per_subcarrier,
        subframe_s=cfg.subframe_s,
        num_subchannels=cfg.num_subchannels,
    )
    real = sample_realization(cfg, point, iteration)
    ctx = radio_context(cfg, real)
    oma_sinr = radio.sinr_oma(ctx, real.serving)

    comp_sinr = None
    needs_comp = any(_SCHEME_SWITCHES[s][0] for s in cfg.selected_schemes())
    if needs_comp and not np.isneginf(point.comp_threshold_db):
        comp_sinr = radio.sinr_comp_per_user(ctx, real.clusters, real.user_cluster)

    results = {
        scheme: evaluate_scheme(
            cfg, real, mcs, frame, scheme, point.comp_threshold_db, oma_sinr, comp_sinr, collect
        )
        for scheme in cfg.selected_schemes()
    }
    return real, results


def run_iteration(
    cfg: ScenarioConfig,
    point: SweepPoint,
    iteration: int,
    mcs: McsTable | None = None,
    collect: bool = False,
) -> dict[str, SchemeIterationResult]:
    """Evaluate every selected scheme on one shared realization."""
    mcs = mcs if mcs is not None else load_mcs(cfg)
    _, results = _iteration_core(cfg, point, iteration, mcs, collect)
    return results


def load_mcs(cfg: ScenarioConfig) -> McsTable:
    return McsTable.load(cfg.mcs_table) if cfg.mcs_table else McsTable.default()


# --- sweep aggregation -----------------------------------------------------


@dataclass
class IterationSummary:
    n_users: int
    tput_sum: float
    covered: int
    theta_sum: float
    n_clusters: int


@dataclass
class PointStats:
    """Aggregated metrics of one scheme at one sweep point."""

    scheme: str
    bs_density: float
    user_density: float
    comp_threshold_db: float
    mean_tput_bps: float
    tput_ci95_bps: float
    coverage: float
    coverage_ci95: float
    iterations: int
    n_users: int
    mean_theta: float
    iter_mean_tput: np.ndarray
    iter_coverage: np.ndarray
    iter_theta: np.ndarray
    iter_n_users: np.ndarray


CSV_HEADER = (
    "scheme,lambda_b,lambda_u,gamma_th_db,mean_tput_bps,tput_ci95_bps,"
    "coverage,coverage_ci95,iterations,seed"
)


def _fmt(x) -> str:
    return format(x, ".10g")


@dataclass
class MetricsReport:
    rows: list[PointStats]
    master_seed: int
    warnings: dict[str, int]

    def row(self, scheme: str, point: SweepPoint) -> PointStats:
        for r in self.rows:
            if (
                r.scheme == scheme
                and r.bs_density == point.bs_density
                and r.user_density == point.user_density
                and r.comp_threshold_db == point.comp_threshold_db
            ):
                return r
        raise KeyError(f"no row for {scheme} at {point}")

    def csv_text(self) -> str:
        lines = [CSV_HEADER]
        for r in self.rows:
            lines.append(
                ",".join(
                    [
                        r.scheme,
                        _fmt(r.bs_density),
                        _fmt(r.user_density),
                        _fmt(r.comp_threshold_db),
                        _fmt(r.mean_tput_bps),
                        _fmt(r.tput_ci95_bps),
                        _fmt(r.coverage),
                        _fmt(r.coverage_ci95),
                        str(r.iterations),
                        str(self.master_seed),
                    ]
                )
            )
        return "\n".join(lines) + "\n"

    def iteration_csv_text(self) -> str:
        lines = [CSV_HEADER + ",iteration"]
        for r in self.rows:
            for i in range(len(r.iter_mean_tput)):
                lines.append(
                    ",".join(
                        [
                            r.scheme,
                            _fmt(r.bs_density),
                            _fmt(r.user_density),
                            _fmt(r.comp_threshold_db),
                            _fmt(r.iter_mean_tput[i]),
                            _fmt(0.0),
                            _fmt(r.iter_coverage[i]),
                            _fmt(0.0),
                            "1",
                            str(self.master_seed),
                            str(i),
                        ]
                    )
                )
        return "\n".join(lines) + "\n"

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.csv_text())

    def to_iteration_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.iteration_csv_text())


def _summarize(results: dict[str, SchemeIterationResult]) -> dict[str, IterationSummary]:
    out = {}
    for scheme, res in results.items():
        out[scheme] = IterationSummary(
            n_users=len(res.throughput_bps),
            tput_sum=float(res.throughput_bps.sum()),
            covered=int(np.count_nonzero(res.covered)),
            theta_sum=float(res.theta.sum()),
            n_clusters=len(res.theta),
        )
    return out


def _run_task(args):
    cfg, point, iteration, mcs = args
    real, results = _iteration_core(cfg, point, iteration, mcs, collect=False)
    return _summarize(results), real.warnings


def _ci95(samples: np.ndarray) -> float:
    if len(samples) < 2:
        return 0.0
    return 1.96 * float(np.std(samples, ddof=1)) / np.sqrt(len(samples))


def run_sweep(cfg: ScenarioConfig, mcs: McsTable | None = None) -> MetricsReport:
    """Full Cartesian sweep: points x iterations, aggregated with 95% CIs."""
    mcs = mcs if mcs is not None else load_mcs(cfg)
    points = [SweepPoint(*p) for p in cfg.points()]
    schemes = cfg.selected_schemes()
    tasks = [(cfg, point, it, mcs) for point in points for it in range(cfg.iterations)]

    if cfg.threads > 1 and len(tasks) > 1:
        chunk = max(1, len(tasks) // (cfg.threads * 8))
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            outputs = list(pool.map(_run_task, tasks, chunksize=chunk))
    else:
        outputs = [_run_task(t) for t in tasks]

    summaries = [out[0] for out in outputs]
    warnings: dict[str, int] = {}
    for _, task_warnings in outputs:
        for key, count in task_warnings.items():
            warnings[key] = warnings.get(key, 0) + count

    rows: list[PointStats] = []
    for p_idx, point in enumerate(points):
        point_summaries = summaries[p_idx * cfg.iterations : (p_idx + 1) * cfg.iterations]
        for scheme in schemes:
            per_iter = [s[scheme] for s in point_summaries]
            n_users = np.array([s.n_users for s in per_iter], dtype=int)
            tput_sums = np.array([s.tput_sum for s in per_iter])
            covered = np.array([s.covered for s in per_iter], dtype=int)
            theta_sums = np.array([s.theta_sum for s in per_iter])
            n_clusters = np.array([s.n_clusters for s in per_iter], dtype=int)

            valid = n_users > 0
            iter_mean = np.where(valid, tput_sums / np.maximum(n_users, 1), np.nan)
            iter_cov = np.where(valid, covered / np.maximum(n_users, 1), np.nan)
            iter_theta = np.where(n_clusters > 0, theta_sums / np.maximum(n_clusters, 1), np.nan)

            total_users = int(n_users.sum())
            rows.append(
                PointStats(
                    scheme=scheme,
                    bs_density=point.bs_density,
                    user_density=point.user_density,
                    comp_threshold_db=point.comp_threshold_db,
                    mean_tput_bps=float(tput_sums.sum() / total_users) if total_users else 0.0,
                    tput_ci95_bps=_ci95(iter_mean[valid]),
                    coverage=float(covered.sum() / total_users) if total_users else 0.0,
                    coverage_ci95=_ci95(iter_cov[valid]),
                    iterations=cfg.iterations,
                    n_users=total_users,
                    mean_theta=float(theta_sums.sum() / n_clusters.sum()) if n_clusters.sum() else 0.0,
                    iter_mean_tput=iter_mean,
                    iter_coverage=iter_cov,
                    iter_theta=iter_theta,
                    iter_n_users=n_users,
                )
            )

    return MetricsReport(rows=rows, master_seed=cfg.master_seed, warnings=warnings)
