"""User classification, group formation and adaptive NOMA pairing.

Users below the serving-link SINR threshold become CoMP users, grouped per
cluster (G1); the rest stay per BS (G2). Pairing matches the strong half of a
group against the weak half and admits a candidate pair only if some strong
power fraction gives both members at least the rate they would get from half
an OMA slot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .radio import db_to_linear

COMP_PAIR = "comp_comp"
NONCOMP_PAIR = "noncomp_noncomp"

# interval width below which the feasible zeta set is treated as empty
# (an exact SINR tie collapses it to a single point)
_MIN_FEASIBLE_WIDTH = 1e-9

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
# 0.5 * r^n <= 1e-6 needs n >= 28; a few extra halvings cost nothing
_GOLDEN_STEPS = 34


@dataclass
class UserGroups:
    """Pairing pools: CoMP users per cluster, non-CoMP users per BS.

    Each list is sorted by the SINR the group will be served with (joint
    transmission for G1, single-BS OMA for G2), descending, ties broken by
    user id.
    """

    comp_by_cluster: dict[int, np.ndarray] = field(default_factory=dict)
    noncomp_by_bs: dict[int, np.ndarray] = field(default_factory=dict)
    is_comp: np.ndarray | None = None


@dataclass(frozen=True)
class NomaPair:
    strong: int
    weak: int
    zeta_strong: float
    pair_kind: str


@dataclass
class PairingOutcome:
    """Vertex-disjoint pairs plus everyone the pairing left in plain OMA."""

    pairs: list[NomaPair]
    oma_leftovers: np.ndarray


def classify_comp(oma_sinr, comp_sinr, serving, bs_cluster, gamma_th_db) -> UserGroups:
    """Split users at the threshold and build the sorted pairing pools.

    A user is CoMP iff its serving-BS OMA SINR is strictly below the
    threshold; it then joins the group of the cluster containing its serving
    BS. comp_sinr may be None when the threshold is -inf (no CoMP users).
    """
    oma_sinr = np.asarray(oma_sinr)
    serving = np.asarray(serving)
    is_comp = oma_sinr < db_to_linear(gamma_th_db)

    groups = UserGroups(is_comp=is_comp)
    user_ids = np.arange(len(oma_sinr))

    if is_comp.any():
        user_cluster = np.asarray(bs_cluster)[serving]
        for c in np.unique(user_cluster[is_comp]):
            members = user_ids[is_comp & (user_cluster == c)]
            order = np.lexsort((members, -np.asarray(comp_sinr)[members]))
            groups.comp_by_cluster[int(c)] = members[order]

    noncomp = ~is_comp
    for b in np.unique(serving[noncomp]):
        members = user_ids[noncomp & (serving == b)]
        order = np.lexsort((members, -oma_sinr[members]))
        groups.noncomp_by_bs[int(b)] = members[order]
    return groups


def _half_rate_bounds(gamma_strong, gamma_weak):
    """Closed-form feasible interval of the strong power fraction.

    Each member must keep at least half its solo Shannon rate:
      strong:  zeta * g_s >= sqrt(1+g_s) - 1          ->  zeta >= lo
      weak:    (1-zeta) g_w / (zeta g_w + 1) >= sqrt(1+g_w) - 1  ->  zeta <= hi
    hi < 0.5 holds for every g_w > 0, so the solver domain (0, 0.5) never
    needs an explicit clamp.
    """
    gs = np.asarray(gamma_strong, dtype=float)
    gw = np.asarray(gamma_weak, dtype=float)
    lo = (np.sqrt(1.0 + gs) - 1.0) / gs
    cw = np.sqrt(1.0 + gw) - 1.0
    hi = (gw - cw) / (gw * (1.0 + cw))
    return lo, hi


def _pair_sum_rate(zeta, gs, gw):
    # log2(1 + zeta*gs) + log2(1 + (1-zeta)gw/(zeta*gw + 1))
    strong = np.log1p(zeta * gs)
    weak = np.log1p((1.0 - zeta) * gw / (zeta * gw + 1.0))
    return (strong + weak) / math.log(2.0)


def solve_power_fractions(gamma_strong, gamma_weak, *, admission="rate_feasibility", min_gap_db=10.0):
    """Vectorized pair admission and power split.

    Returns (zeta, feasible); zeta is NaN where infeasible. The power split is
    the sum-rate argmax over the feasible interval, located by golden-section
    search to 1e-6. With admission="fixed_gap" a candidate additionally needs
    a raw-SINR gap of at least min_gap_db.
    """
    gs = np.atleast_1d(np.asarray(gamma_strong, dtype=float))
    gw = np.atleast_1d(np.asarray(gamma_weak, dtype=float))
    if np.any(gw <= 0) or np.any(gs < gw):
        raise ValueError("need gamma_strong >= gamma_weak > 0")

    lo, hi = _half_rate_bounds(gs, gw)
    feasible = (hi - lo) > _MIN_FEASIBLE_WIDTH
    if admission == "fixed_gap":
        feasible &= gs >= gw * db_to_linear(min_gap_db)
    elif admission != "rate_feasibility":
        raise ValueError(f"unknown admission mode {admission!r}")

    a = lo.copy()
    b = np.maximum(hi, lo)  # zero-width search for infeasible entries
    for _ in range(_GOLDEN_STEPS):
        span = b - a
        x1 = b - _INV_GOLDEN * span
        x2 = a + _INV_GOLDEN * span
        better_right = _pair_sum_rate(x2, gs, gw) >= _pair_sum_rate(x1, gs, gw)
        a = np.where(better_right, x1, a)
        b = np.where(better_right, b, x2)
    zeta = np.where(feasible, 0.5 * (a + b), np.nan)
    return zeta, feasible


def solve_power_fraction(gamma_strong, gamma_weak, **kw):
    """Scalar form: the optimal strong fraction, or None when the pair is rejected."""
    zeta, feasible = solve_power_fractions(gamma_strong, gamma_weak, **kw)
    return float(zeta[0]) if feasible[0] else None


def pair_group(user_ids, sinrs, kind, *, admission="rate_feasibility", min_gap_db=10.0) -> PairingOutcome:
    """Pair a sorted group head-to-head: strong half i against weak half i.

    `user_ids` must come sorted by `sinrs` descending. The middle user of an
    odd group and both members of every rejected candidate stay OMA.
    """
    user_ids = np.asarray(user_ids)
    sinrs = np.asarray(sinrs, dtype=float)
    if np.any(np.diff(sinrs) > 0):
        raise ValueError("group must be sorted by SINR descending")

    n = len(user_ids)
    half = n // 2
    if half == 0:
        return PairingOutcome(pairs=[], oma_leftovers=user_ids.copy())

    strong_ids, weak_ids = user_ids[:half], user_ids[n - half:]
    zeta, feasible = solve_power_fractions(
        sinrs[:half], sinrs[n - half:], admission=admission, min_gap_db=min_gap_db
    )

    pairs = [
        NomaPair(int(strong_ids[i]), int(weak_ids[i]), float(zeta[i]), kind)
        for i in np.flatnonzero(feasible)
    ]
    leftover = np.ones(n, dtype=bool)
    leftover[:half] = ~feasible
    leftover[n - half:] = ~feasible
    return PairingOutcome(pairs=pairs, oma_leftovers=user_ids[leftover])


@dataclass
class ServingPlan:
    """Per-scheme pairing result: what each cluster and BS will schedule."""

    comp_pairs: dict[int, list[NomaPair]] = field(default_factory=dict)
    comp_leftovers: dict[int, np.ndarray] = field(default_factory=dict)
    noncomp_pairs: dict[int, list[NomaPair]] = field(default_factory=dict)
    noncomp_leftovers: dict[int, np.ndarray] = field(default_factory=dict)

    def comp_entities(self, cluster_id: int) -> int:
        return len(self.comp_pairs.get(cluster_id, ())) + len(self.comp_leftovers.get(cluster_id, ()))

    def noncomp_entities(self, bs_id: int) -> int:
        return len(self.noncomp_pairs.get(bs_id, ())) + len(self.noncomp_leftovers.get(bs_id, ()))


def build_serving_plan(
    groups: UserGroups,
    oma_sinr,
    comp_sinr,
    *,
    pairing_enabled=True,
    admission="rate_feasibility",
    min_gap_db=10.0,
) -> ServingPlan:
    """Run pairing over every G1 cluster list and every G2 BS list.

    With pairing disabled every group member is an OMA leftover, which is how
    the pure-OMA and CoMP-only schemes reuse the same plan structure. All
    groups' candidates are solved in one vectorized call (elementwise math, so
    results are identical to per-group pair_group calls).
    """
    plan = ServingPlan()
    oma_sinr = np.asarray(oma_sinr)
    group_list = [(COMP_PAIR, c, members, np.asarray(comp_sinr)) for c, members in groups.comp_by_cluster.items()]
    group_list += [(NONCOMP_PAIR, b, members, oma_sinr) for b, members in groups.noncomp_by_bs.items()]

    if not pairing_enabled:
        for kind, key, members, _ in group_list:
            pairs_dict = plan.comp_pairs if kind == COMP_PAIR else plan.noncomp_pairs
            left_dict = plan.comp_leftovers if kind == COMP_PAIR else plan.noncomp_leftovers
            pairs_dict[key] = []
            left_dict[key] = members
        return plan

    # gather every group's head-to-head candidates into flat arrays
    slices, gs_all, gw_all = [], [], []
    offset = 0
    for kind, key, members, sinr in group_list:
        half = len(members) // 2
        slices.append((kind, key, members, half, offset))
        if half:
            gs_all.append(sinr[members[:half]])
            gw_all.append(sinr[members[len(members) - half:]])
            offset += half
    if offset:
        zeta_all, feas_all = solve_power_fractions(
            np.concatenate(gs_all), np.concatenate(gw_all),
            admission=admission, min_gap_db=min_gap_db,
        )

    for kind, key, members, half, start in slices:
        n = len(members)
        pairs_dict = plan.comp_pairs if kind == COMP_PAIR else plan.noncomp_pairs
        left_dict = plan.comp_leftovers if kind == COMP_PAIR else plan.noncomp_leftovers
        if half == 0:
            pairs_dict[key] = []
            left_dict[key] = members
            continue
        zeta = zeta_all[start : start + half]
        feas = feas_all[start : start + half]
        pairs_dict[key] = [
            NomaPair(int(members[i]), int(members[n - half + i]), float(zeta[i]), kind)
            for i in np.flatnonzero(feas)
        ]
        leftover = np.ones(n, dtype=bool)
        leftover[:half] = ~feas
        leftover[n - half:] = ~feas
        left_dict[key] = members[leftover]
    return plan
