"""From channel gains to SINR to spectral efficiency.

Computes the serving-link SINR of every user in one realization, the
joint-transmission SINR it would get from its whole cluster, and the MCS
efficiency both map to. Prints the distributions side by side: joint
transmission is exactly the low-SINR repair the serving threshold selects for.
"""

import numpy as np

from compnoma import McsTable, ScenarioConfig, SweepPoint, efficiency, sample_realization
from compnoma.radio import linear_to_db, sinr_comp_per_user, sinr_oma
from compnoma.sim import radio_context

cfg = ScenarioConfig(user_density=(50.0,), master_seed=7)
point = SweepPoint(16.0, 50.0, -6.5)
real = sample_realization(cfg, point, 0)
ctx = radio_context(cfg, real)

oma = sinr_oma(ctx, real.serving)
jt = sinr_comp_per_user(ctx, real.clusters, real.user_cluster)

q = [5, 25, 50, 75, 95]
print("percentile          ", "  ".join(f"{p:>6d}%" for p in q))
print("serving SINR (dB)   ", "  ".join(f"{x:7.2f}" for x in np.percentile(linear_to_db(oma), q)))
print("cluster JT SINR (dB)", "  ".join(f"{x:7.2f}" for x in np.percentile(linear_to_db(jt), q)))

gain = linear_to_db(jt) - linear_to_db(oma)
print(f"\nJT gain: median {np.median(gain):.1f} dB, p95 {np.percentile(gain, 95):.1f} dB")

below = linear_to_db(oma) < -6.5
print(f"users below the -6.5 dB serving threshold: {below.sum()} of {len(oma)}")

table = McsTable.default()
eta_oma = efficiency(oma, table)
eta_jt = efficiency(jt, table)
print(f"\nMCS efficiency, all users:      OMA mean {eta_oma.mean():.3f}, JT mean {eta_jt.mean():.3f} bit/sym")
print(f"MCS efficiency, threshold set:  OMA mean {eta_oma[below].mean():.3f}, JT mean {eta_jt[below].mean():.3f} bit/sym")
print(f"threshold set out of coverage under OMA: {(eta_oma[below] == 0).sum()} users, under JT: {(eta_jt[below] == 0).sum()}")
