# %% [markdown]
# Born statistics of the d=3 family
#
# Five preparations (a, b, c, p, m) and three measurements. Each measurement
# shares one or two outcomes with another, which is what makes certainty
# and impossibility constraints propagate between them.

# %%
from __future__ import annotations

import numpy as np

from psi_overlap import quantum

fam = quantum.build_family(3)
for meas in fam.measurements:
    print(meas.label, meas.labels)

# %%
tables = quantum.table1()
np.set_printoptions(precision=4, suppress=True)
for meas, cols in quantum.TABLE1_COLUMNS.items():
    print(f"\n{meas}   " + "  ".join(f"{c:>6}" for c in cols))
    for prep, row in zip(quantum.TABLE1_ROWS, tables[meas]):
        print(f"  {prep}   " + "  ".join(f"{x:6.4f}" for x in row))

# %% [markdown]
# p and m are each orthogonal to one of a+ / a-, so a model has to place
# them on ontic states that never answer that outcome.

# %%
for x in ("a", "b", "c", "m"):
    q = quantum.overlap(fam.preparation("p"), fam.preparation(x))
    print(f"|<{x}|p>|^2 = {q:.4f}   trace distance = {quantum.quantum_trace_distance(fam.preparation('p'), fam.preparation(x)):.4f}")
