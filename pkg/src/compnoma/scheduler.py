"""Time allocation: CoMP/non-CoMP split per cluster, equal shares inside a phase.

A NOMA pair is one schedulable entity; so is an unpaired OMA user. At
fairness parameter 1 every entity of a phase gets the same share.
"""

from __future__ import annotations

from dataclasses import dataclass, field


def beta_fractions(num_pairs: int, num_oma: int) -> float:
    """Share per entity inside one phase; 0.0 for an empty phase."""
    if num_pairs < 0 or num_oma < 0:
        raise ValueError("entity counts must be non-negative")
    n = num_pairs + num_oma
    return 1.0 / n if n else 0.0


def theta_split(comp_entities: int, noncomp_entities_per_bs) -> float:
    """CoMP-phase share of the frame for one cluster.

    Entity-proportional rule: theta = E_c / (E_c + max_b E_b). No CoMP
    entities means no CoMP phase; CoMP entities with idle BSs take the whole
    frame.
    """
    if comp_entities < 0:
        raise ValueError("comp entity count must be non-negative")
    counts = list(noncomp_entities_per_bs)
    if any(c < 0 for c in counts):
        raise ValueError("non-CoMP entity counts must be non-negative")
    if comp_entities == 0:
        return 0.0
    peak = max(counts, default=0)
    return comp_entities / (comp_entities + peak)


@dataclass
class TimeAllocation:
    """Resolved fractions for one realization and scheme."""

    theta_c: dict[int, float] = field(default_factory=dict)       # cluster -> CoMP share
    beta_comp: dict[int, float] = field(default_factory=dict)     # cluster -> share per CoMP entity
    beta_noncomp: dict[int, float] = field(default_factory=dict)  # bs -> share per non-CoMP entity
    bs_cluster: dict[int, int] = field(default_factory=dict)      # bs -> owning cluster


def airtime(alloc: TimeAllocation, phase: str, key: int) -> float:
    """Effective time fraction of one entity.

    CoMP entities of cluster c get theta_c * beta; non-CoMP entities at BS b
    get (1 - theta_of_b's_cluster) * beta_b.
    """
    if phase == "comp":
        if key not in alloc.beta_comp:
            raise ValueError(f"no CoMP entity scheduled in cluster {key}")
        return alloc.theta_c[key] * alloc.beta_comp[key]
    if phase == "noncomp":
        if key not in alloc.beta_noncomp:
            raise ValueError(f"no non-CoMP entity scheduled at BS {key}")
        theta = alloc.theta_c.get(alloc.bs_cluster[key], 0.0)
        return (1.0 - theta) * alloc.beta_noncomp[key]
    raise ValueError(f"phase must be 'comp' or 'noncomp', got {phase!r}")
