"""Sample one network realization and look at its pieces.

Draws base stations and users from their point processes, clusters the BSs,
associates every user with its max-received-power BS, and prints summary
statistics. With matplotlib installed it also saves a scatter plot of the
deployment colored by cluster.
"""

import numpy as np

from compnoma import ScenarioConfig, SweepPoint, sample_realization

cfg = ScenarioConfig(user_density=(50.0,), master_seed=42)
point = SweepPoint(bs_density=16.0, user_density=50.0, comp_threshold_db=-6.5)
real = sample_realization(cfg, point, iteration=0)

print(f"area: {cfg.area_km2} km2, side {np.sqrt(cfg.area_km2):.1f} km")
print(f"base stations: {len(real.bs_pos)} (density {point.bs_density}/km2)")
print(f"users:         {real.n_users} (density {point.user_density}/km2)")
print(f"clusters:      {len(real.clusters)}")

sizes = sorted(len(c.member_bs) for c in real.clusters)
print(f"cluster sizes: min {sizes[0]}, median {sizes[len(sizes)//2]}, max {sizes[-1]}")

per_bs = np.bincount(real.serving, minlength=len(real.bs_pos))
print(f"users per BS:  mean {per_bs.mean():.2f}, max {per_bs.max()}")
print(f"distance clamps this draw: {real.warnings.get('distance_clamped_links', 0)}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 7))
    colors = plt.cm.tab10(np.linspace(0, 1, len(real.clusters)))
    for cluster, color in zip(real.clusters, colors):
        pos = real.bs_pos[cluster.member_bs]
        ax.scatter(pos[:, 0], pos[:, 1], color=color, marker="^", s=60, zorder=3)
        ax.scatter(*cluster.centroid, color=color, marker="x", s=120, zorder=4)
    ax.scatter(real.user_pos[:, 0], real.user_pos[:, 1], s=4, color="gray", alpha=0.4, zorder=2)
    ax.set_xlabel("km")
    ax.set_ylabel("km")
    ax.set_title("BS clusters (triangles) and users (dots)")
    fig.savefig("demo_topology.png", dpi=130, bbox_inches="tight")
    print("wrote demo_topology.png")
except ImportError:
    print("matplotlib not installed; skipping the scatter plot")
