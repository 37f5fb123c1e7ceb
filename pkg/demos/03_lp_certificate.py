# %% [markdown]
# Certifying the bound with a linear program
#
# Restricting ontic states to deterministic outcome assignments loses no
# generality for overlap bounds: any model can be refined into one whose
# states fix every outcome. The assignment polytope is small enough at d=3
# to solve exactly with the bundled simplex.

# %%
from __future__ import annotations

import time

from psi_overlap import bounds, ontic, vertexlp

start = time.perf_counter()
res = vertexlp.max_uniform_omega(3)
print(f"t* = {res.bound:.12f}  (closed form {bounds.omega_bound(3)})  "
      f"pivots={res.lp.iterations}  {time.perf_counter() - start:.2f}s")

# %%
model = res.model
print("witness ontic states:", len(model.space.labels))
print("validate:", ontic.validate_model(model, 1e-9))
print("support violations:", ontic.check_support_constraints(model, 1e-9))

# %% [markdown]
# Pairwise min-overlap of p and m against the maximally epistemic target.

# %%
value, witness = vertexlp.max_pairwise_min_overlap("p", "m", 3)
print(f"max min-overlap(p, m) = {value:.10f}   target = {bounds.max_epistemic_target(1 / 9):.10f}")
mu_p, mu_m = witness.mu("p"), witness.mu("m")
print("classical distance:", ontic.classical_trace_distance(mu_p, mu_m))

# %%
for d in (3, 4, 5):
    print(d, dict(vertexlp.triple_intersection_report(d)))
