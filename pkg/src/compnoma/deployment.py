"""Random topology sampling: PPP draws, base-station clustering, user association.

Everything here is a pure function of an explicit numpy Generator, so Monte
Carlo workers can run concurrently as long as each owns its own stream.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, TopologyError

log = logging.getLogger(__name__)

# Lloyd's algorithm iteration cap; convergence = assignment fixed point.
KMEANS_MAX_ITER = 100


@dataclass(frozen=True)
class Area:
    """Square deployment region, side in km."""

    side_km: float

    def __post_init__(self):
        if not (self.side_km > 0 and math.isfinite(self.side_km)):
            raise ConfigError(f"area side must be positive and finite, got {self.side_km}")

    @classmethod
    def from_km2(cls, area_km2: float) -> "Area":
        if not area_km2 > 0:
            raise ConfigError(f"area_km2 must be positive, got {area_km2}")
        return cls(math.sqrt(area_km2))

    @property
    def km2(self) -> float:
        return self.side_km * self.side_km


@dataclass(frozen=True)
class Cluster:
    """One base-station cluster: member indices and their centroid."""

    id: int
    member_bs: np.ndarray  # sorted BS indices
    centroid: np.ndarray   # (2,) km


def sample_ppp(density: float, area: Area, rng: np.random.Generator) -> np.ndarray:
    """Homogeneous PPP on the square: Poisson(density*area) count, uniform positions.

    Returns an (n, 2) array of points in km.
    """
    if density < 0:
        raise ConfigError(f"point density must be non-negative, got {density}")
    count = int(rng.poisson(density * area.km2))
    return rng.uniform(0.0, area.side_km, size=(count, 2))


def _kmeans_pp_init(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ seeding: first centroid uniform, then D^2-weighted picks."""
    n = len(points)
    centroids = np.empty((k, 2))
    centroids[0] = points[rng.integers(n)]
    d2 = ((points - centroids[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total > 0:
            idx = rng.choice(n, p=d2 / total)
        else:
            # all remaining points coincide with a chosen centroid
            idx = rng.integers(n)
        centroids[j] = points[idx]
        d2 = np.minimum(d2, ((points - centroids[j]) ** 2).sum(axis=1))
    return centroids


def _assign(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    # ties resolve to the lowest centroid index via argmin
    d2 = ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    return np.argmin(d2, axis=1)


def cluster_bs(positions: np.ndarray, k: int, rng: np.random.Generator) -> list[Cluster]:
    """Partition BS positions into k clusters with Lloyd's algorithm.

    k-means++ seeded from `rng`, at most KMEANS_MAX_ITER sweeps, converged when
    the assignment stops changing. k larger than the number of BSs is clamped
    (with a warning in the run log). Deterministic for a fixed stream.
    """
    n = len(positions)
    if n == 0:
        raise TopologyError("cannot cluster an empty base-station set")
    if k < 1:
        raise ConfigError(f"cluster count must be >= 1, got {k}")
    if k > n:
        log.warning("cluster count %d exceeds %d base stations; clamping", k, n)
        k = n

    centroids = _kmeans_pp_init(positions, k, rng)
    assignment = _assign(positions, centroids)
    for _ in range(KMEANS_MAX_ITER):
        for j in range(k):
            members = assignment == j
            if members.any():
                centroids[j] = positions[members].mean(axis=0)
            else:
                # steal the point farthest from its current centroid so no
                # cluster goes empty (deterministic repair)
                d2 = ((positions - centroids[assignment]) ** 2).sum(axis=1)
                far = int(np.argmax(d2))
                assignment[far] = j
                centroids[j] = positions[far]
        new_assignment = _assign(positions, centroids)
        if np.array_equal(new_assignment, assignment):
            break
        assignment = new_assignment

    return [
        Cluster(id=j, member_bs=np.flatnonzero(assignment == j), centroid=centroids[j].copy())
        for j in range(k)
    ]


def associate_users(gains: np.ndarray, tx_power_mw: np.ndarray | float) -> np.ndarray:
    """Serving-BS index per user: argmax of linear received power P_b * g.

    `gains` is the (n_users, n_bs) mean channel gain table (path loss plus
    shadowing, no fast fading, so the association is stable within one
    realization). Ties break to the lowest BS index.
    """
    if gains.ndim != 2 or gains.shape[1] == 0:
        raise TopologyError("no base stations to associate with")
    rx = gains * np.asarray(tx_power_mw)
    return np.argmax(rx, axis=1)
