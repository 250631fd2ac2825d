"""Self-checks: independent oracles and per-iteration invariants.

Shared by the `validate` CLI subcommand and the acceptance tests. The oracles
here are deliberately written as plain Python loops / grid scans, independent
of the vectorized production code they check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import grouping, radio, sim
from .config import ScenarioConfig
from .link import McsTable, efficiency
from .radio import RadioContext


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


# --- independent oracles ----------------------------------------------------


def oracle_sinr_oma(rx, serving, sigma2, user):
    num = rx[user][serving[user]]
    den = sigma2
    for b in range(len(rx[user])):
        if b != serving[user]:
            den += rx[user][b]
    return num / den


def oracle_sinr_comp(rx, members, sigma2, user):
    num = sum(rx[user][b] for b in members)
    den = sigma2
    for b in range(len(rx[user])):
        if b not in members:
            den += rx[user][b]
    return num / den


def oracle_sinr_noma(rx, serving, sigma2, user, zeta, role):
    p = rx[user][serving[user]]
    inter = sum(rx[user][b] for b in range(len(rx[user])) if b != serving[user])
    if role == "strong":
        return zeta * p / (inter + sigma2)
    return (1 - zeta) * p / (zeta * p + inter + sigma2)


def oracle_sinr_noma_comp(rx, members, sigma2, user, zeta, role):
    s = sum(rx[user][b] for b in members)
    out = sum(rx[user][b] for b in range(len(rx[user])) if b not in members)
    if role == "strong":
        return zeta * s / (out + sigma2)
    return (1 - zeta) * s / (zeta * s + out + sigma2)


def grid_power_fraction(gamma_s, gamma_w, step=1e-4):
    """Brute-force admission/argmax: scan zeta over (0, 0.5) directly.

    Feasibility and rates evaluated from first principles; returns
    (best_zeta or None).
    """
    half_rate_s = 0.5 * math.log2(1 + gamma_s)
    half_rate_w = 0.5 * math.log2(1 + gamma_w)
    best, best_rate = None, -1.0
    n = int(round(0.5 / step))
    for i in range(1, n):
        z = i * step
        rate_s = math.log2(1 + z * gamma_s)
        rate_w = math.log2(1 + (1 - z) * gamma_w / (z * gamma_w + 1))
        if rate_s >= half_rate_s and rate_w >= half_rate_w:
            total = rate_s + rate_w
            if total > best_rate:
                best, best_rate = z, total
    return best


def _random_small_context(rng):
    n_bs = int(rng.integers(1, 6))
    n_users = int(rng.integers(1, 11))
    rx = rng.uniform(1e-12, 1e-6, size=(n_users, n_bs))
    sigma2 = float(rng.uniform(1e-13, 1e-9))
    serving = np.argmax(rx, axis=1)
    return RadioContext(rx_mw=rx, noise_mw=sigma2), serving


def check_sinr_oracles(n_topologies=25, seed=7, rtol=1e-9) -> CheckResult:
    """Vectorized SINR ops vs direct-sum loops on random small topologies."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_topologies):
        ctx, serving = _random_small_context(rng)
        n_users, n_bs = ctx.rx_mw.shape
        members = np.unique(rng.integers(0, n_bs, size=max(1, n_bs // 2)))
        zeta = float(rng.uniform(0.05, 0.45))

        got = {
            "oma": radio.sinr_oma(ctx, serving),
            "comp": radio.sinr_comp(ctx, members),
            "noma_s": radio.sinr_noma_noncomp(ctx, serving, zeta, "strong"),
            "noma_w": radio.sinr_noma_noncomp(ctx, serving, zeta, "weak"),
            "jt_s": radio.sinr_noma_comp(ctx, members, zeta, "strong"),
            "jt_w": radio.sinr_noma_comp(ctx, members, zeta, "weak"),
        }
        rx, s2 = ctx.rx_mw, ctx.noise_mw
        mem = set(int(m) for m in members)
        for u in range(n_users):
            want = {
                "oma": oracle_sinr_oma(rx, serving, s2, u),
                "comp": oracle_sinr_comp(rx, mem, s2, u),
                "noma_s": oracle_sinr_noma(rx, serving, s2, u, zeta, "strong"),
                "noma_w": oracle_sinr_noma(rx, serving, s2, u, zeta, "weak"),
                "jt_s": oracle_sinr_noma_comp(rx, mem, s2, u, zeta, "strong"),
                "jt_w": oracle_sinr_noma_comp(rx, mem, s2, u, zeta, "weak"),
            }
            for key, val in want.items():
                rel = abs(got[key][u] - val) / abs(val)
                worst = max(worst, rel)
                if rel > rtol:
                    return CheckResult(
                        "sinr_direct_sum_oracles", False,
                        f"{key} mismatch rel={rel:.2e} (user {u})",
                    )
    return CheckResult("sinr_direct_sum_oracles", True, f"worst rel err {worst:.2e}")


def check_degeneracy_chain(n_topologies=20, seed=11, rtol=1e-12) -> CheckResult:
    """Singleton-cluster identities: JT collapses to single-BS forms."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_topologies):
        ctx, serving = _random_small_context(rng)
        zeta = float(rng.uniform(0.05, 0.45))
        for u in range(ctx.rx_mw.shape[0]):
            only = np.array([serving[u]])
            pairs = [
                (radio.sinr_comp(ctx, only)[u], radio.sinr_oma(ctx, serving)[u]),
                (
                    radio.sinr_noma_comp(ctx, only, zeta, "strong")[u],
                    radio.sinr_noma_noncomp(ctx, serving, zeta, "strong")[u],
                ),
                (
                    radio.sinr_noma_comp(ctx, only, zeta, "weak")[u],
                    radio.sinr_noma_noncomp(ctx, serving, zeta, "weak")[u],
                ),
            ]
            for got, want in pairs:
                rel = abs(got - want) / abs(want)
                worst = max(worst, rel)
                if rel > rtol:
                    return CheckResult("degeneracy_chain", False, f"rel={rel:.2e}")
    return CheckResult("degeneracy_chain", True, f"worst rel err {worst:.2e}")


def check_power_fraction_grid(n_cases=60, seed=13, tol=1e-3) -> CheckResult:
    """Solver vs grid scan: same admissions, argmax within tolerance."""
    rng = np.random.default_rng(seed)
    gammas_w = 10 ** rng.uniform(-2, 2, size=n_cases)
    ratios = 10 ** rng.uniform(0, 2.5, size=n_cases)
    worst = 0.0
    for gw, ratio in zip(gammas_w, ratios):
        gs = gw * ratio
        got = grouping.solve_power_fraction(gs, gw)
        want = grid_power_fraction(gs, gw)
        if (got is None) != (want is None):
            return CheckResult(
                "power_fraction_grid", False,
                f"admission mismatch at gs={gs:.4g} gw={gw:.4g}: solver={got} grid={want}",
            )
        if got is not None:
            err = abs(got - want)
            worst = max(worst, err)
            if err > tol:
                return CheckResult(
                    "power_fraction_grid", False,
                    f"zeta mismatch {err:.2e} at gs={gs:.4g} gw={gw:.4g}",
                )
    # boundary behavior: an exact SINR tie rejects, a wide gap admits
    if grouping.solve_power_fraction(5.0, 5.0) is not None:
        return CheckResult("power_fraction_grid", False, "equal-SINR pair was admitted")
    if grouping.solve_power_fraction(100.0, 1.0) is None:
        return CheckResult("power_fraction_grid", False, "20 dB gap pair was rejected")
    return CheckResult("power_fraction_grid", True, f"worst |dzeta| {worst:.2e}")


def check_mcs_lookup(n=100_000, seed=17) -> CheckResult:
    """Table lookup vs a linear scan oracle."""
    table = McsTable.default()
    rng = np.random.default_rng(seed)
    sinr_db = rng.uniform(-20, 40, size=n)
    got = efficiency(radio.db_to_linear(sinr_db), table)
    for idx in rng.integers(0, n, size=2000):  # spot-check subset with the scan
        want = 0.0
        for th, eff in zip(table.min_sinr_db, table.efficiency):
            if sinr_db[idx] >= th:
                want = eff
        if got[idx] != want:
            return CheckResult("mcs_lookup_scan", False, f"mismatch at {sinr_db[idx]:.3f} dB")
    exact = efficiency(radio.db_to_linear(np.array(table.min_sinr_db)), table)
    if not np.array_equal(exact, table.efficiency):
        return CheckResult("mcs_lookup_scan", False, "threshold boundary not closed")
    return CheckResult("mcs_lookup_scan", True, f"{n} lookups, 2000 scanned")


# --- per-iteration invariants ------------------------------------------------


def check_scheme_invariants(res: sim.SchemeIterationResult, n_users: int) -> list[str]:
    """Partition, normalization, pairing contracts for one evaluated scheme."""
    problems = []
    plan, groups, alloc = res.plan, res.groups, res.allocation
    seen = []
    for pairs in (plan.comp_pairs, plan.noncomp_pairs):
        for key, plist in pairs.items():
            for p in plist:
                seen.extend((p.strong, p.weak))
                if not 0.0 < p.zeta_strong < 0.5:
                    problems.append(f"zeta {p.zeta_strong} outside (0, 0.5)")
    for leftovers in (plan.comp_leftovers, plan.noncomp_leftovers):
        for ids in leftovers.values():
            seen.extend(int(i) for i in ids)
    if sorted(seen) != list(range(n_users)):
        problems.append("users are not partitioned into pairs + leftovers exactly once")

    for c, beta in alloc.beta_comp.items():
        n_entities = len(plan.comp_pairs.get(c, ())) + len(plan.comp_leftovers.get(c, ()))
        if abs(beta * n_entities - 1.0) > 1e-12:
            problems.append(f"CoMP beta not normalized in cluster {c}")
    for b, beta in alloc.beta_noncomp.items():
        n_entities = len(plan.noncomp_pairs.get(b, ())) + len(plan.noncomp_leftovers.get(b, ()))
        if abs(beta * n_entities - 1.0) > 1e-12:
            problems.append(f"non-CoMP beta not normalized at BS {b}")
    for theta in alloc.theta_c.values():
        if not 0.0 <= theta <= 1.0:
            problems.append(f"theta {theta} outside [0, 1]")
    return problems


def check_invariant_run(cfg: ScenarioConfig | None = None) -> CheckResult:
    """Run a full sweep-point's iterations with invariant checking enabled."""
    if cfg is None:
        cfg = ScenarioConfig(
            user_density=(50.0,), comp_threshold_db=(-6.5,), iterations=100, master_seed=3
        )
    point = sim.SweepPoint(cfg.bs_density[0], cfg.user_density[0], cfg.comp_threshold_db[0])
    mcs = sim.load_mcs(cfg)
    checked = 0
    for it in range(cfg.iterations):
        results = sim.run_iteration(cfg, point, it, mcs=mcs, collect=True)
        for scheme, res in results.items():
            problems = check_scheme_invariants(res, len(res.throughput_bps))
            # role consistency: strong member's raw SINR >= weak member's
            for key, plist in res.plan.comp_pairs.items():
                order = {int(u): i for i, u in enumerate(res.groups.comp_by_cluster[key])}
                for p in plist:
                    if order[p.strong] > order[p.weak]:
                        problems.append(f"comp pair role inversion in cluster {key}")
            for key, plist in res.plan.noncomp_pairs.items():
                order = {int(u): i for i, u in enumerate(res.groups.noncomp_by_bs[key])}
                for p in plist:
                    if order[p.strong] > order[p.weak]:
                        problems.append(f"noncomp pair role inversion at BS {key}")
            if problems:
                return CheckResult(
                    "pairing_scheduler_invariants", False,
                    f"iteration {it} {scheme}: " + "; ".join(problems[:3]),
                )
            checked += 1
    return CheckResult(
        "pairing_scheduler_invariants", True, f"{checked} scheme-iterations clean"
    )


def check_determinism() -> CheckResult:
    """Two tiny runs with the same seed must agree bit-for-bit."""
    cfg = ScenarioConfig(
        user_density=(40.0,), comp_threshold_db=(-6.5,), iterations=3, master_seed=5
    )
    a = sim.run_sweep(cfg).csv_text()
    b = sim.run_sweep(cfg).csv_text()
    if a != b:
        return CheckResult("determinism_small", False, "CSV text differs between runs")
    return CheckResult("determinism_small", True, "identical CSVs")


def run_all(fast: bool = False) -> list[CheckResult]:
    """The whole battery; `fast` shrinks the invariant run for quick smoke tests."""
    results = [
        check_sinr_oracles(),
        check_degeneracy_chain(),
        check_power_fraction_grid(),
        check_mcs_lookup(),
    ]
    if fast:
        cfg = ScenarioConfig(
            user_density=(40.0,), comp_threshold_db=(-6.5,), iterations=5, master_seed=3
        )
        results.append(check_invariant_run(cfg))
    else:
        results.append(check_invariant_run())
    results.append(check_determinism())
    return results
