"""Bounds on how much of the overlap between quantum states an ontological model can explain."""

from .bounds import (
    OmegaProfile,
    max_epistemic_target,
    noise_crossover_scan,
    omega_bound,
    ratio_report,
    symmetric_full_overlap_cost,
    tradeoff_slack,
)
from .modelio import load_model, save_model
from .ontic import (
    EpistemicState,
    ModelError,
    OnticSpace,
    OntologicalModel,
    check_support_constraints,
    classical_trace_distance,
    epistemic_degree,
    guess_probability,
    min_overlap,
    support,
    support_overlap,
    validate_model,
)
from .quantum import (
    ProjectiveMeasurement,
    PureState,
    born,
    build_family,
    overlap,
    quantum_trace_distance,
    table1,
)
from .simplex import LinearProgram, solve_lp
from .vertexlp import (
    Assignment,
    AssignmentCapError,
    certainty_set,
    enumerate_assignments,
    max_pairwise_min_overlap,
    max_uniform_omega,
    reproduction_constraints,
    triple_intersection_report,
)

__version__ = "0.1.0"
