# %% [markdown]
# Closed-form overlap bounds
#
# Write omega for the fraction of |<phi|psi>|^2 that an ontological model
# explains through shared ontic states. For the d-dimensional family the
# basis overlaps and the (m|p) overlap compete:
# 1 - mean(omega_basis) - omega_mp (1 - 2/d)^2 >= 0.

# %%
from __future__ import annotations

import numpy as np

from psi_overlap import bounds

profile = bounds.OmegaProfile.uniform(3, 8 / 9, 1.0)
print("slack at basis 8/9, omega_mp = 1:", bounds.tradeoff_slack(profile))
print("slack at full overlap:", bounds.uniform_slack(3, 1.0))

# %% [markdown]
# Setting every omega equal gives the largest uniform value.

# %%
for d in (3, 4, 5, 10, 100, 10**6):
    print(f"d={d:>7}  omega <= {bounds.omega_bound(d):.6f}   basis cost for omega_mp=1: "
          f"{bounds.symmetric_full_overlap_cost(d):.6f}")

# %%
grid = np.linspace(0, 1, 11)
d = 3
print("\nomega_basis  max omega_mp")
for w in grid:
    # slack is linear in omega_mp; solve for the root and clip to [0, 1]
    mp = (1 - w) / (1 - 2 / d) ** 2
    print(f"  {w:4.1f}        {min(mp, 1.0):.3f}")
