# %% [markdown]
# Robustness to noise: where the min-overlap bound bites
#
# L(d) is the most shared mass p and m can keep once every (p, a_i) pair is
# maximally epistemic; R(d) is what maximal overlap of (p, m) would need.
# When L < R the models are forced strictly below the target.

# %%
from __future__ import annotations

import numpy as np

from psi_overlap import bounds

scan = bounds.noise_crossover_scan(3, 40)
print("first strict dimension:", scan.first_strict)
for row in scan.rows:
    if row.d in (3, 5, 10, 13, 14, 15, 16, 20, 40):
        flag = "*" if row.strict else " "
        print(f"{flag} d={row.d:>3}  L={row.ceiling:.6f}  R={row.target:.6f}  ratio={bounds.ratio_report(row.d):.4f}")

# %%
ds = np.arange(3, 2001)
gap = np.array([bounds.noise_target(d) - bounds.noise_ceiling(d) for d in ds])
print("\nlargest d with L >= R:", ds[gap <= 0].max())
print(f"gap at d=2000: {gap[-1]:.4f}  (R tends to 1, L to 1/2)")
