"""Ontological models over finite ontic spaces.

A model assigns every preparation a distribution ``mu`` over ontic states and
every measurement a response table ``xi[lambda][outcome]``. Integrals over the
ontic space are plain sums here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .quantum import ATOL, PureState, ProjectiveMeasurement, born, orthogonal, overlap, same_ray

WEIGHT_CLAMP = 1e-15
DEFAULT_TOL = 1e-9


class ModelError(ValueError):
    """Malformed ontological model (unknown labels, negative weights, bad normalization)."""


@dataclass(frozen=True)
class OnticSpace:
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(str(x) for x in self.labels)
        if not labels:
            raise ModelError("ontic space is empty")
        if len(set(labels)) != len(labels):
            raise ModelError("ontic state labels are not unique")
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, item: object) -> bool:
        return item in set(self.labels)


@dataclass(frozen=True, eq=False)
class EpistemicState:
    """Distribution ``mu_psi`` over the ontic space (one weight per ontic state)."""

    preparation: str
    weights: Mapping[str, float]

    def __post_init__(self) -> None:
        w = {}
        for lam, x in dict(self.weights).items():
            x = float(x)
            if x < -WEIGHT_CLAMP:
                raise ModelError(f"mu_{self.preparation}({lam}) = {x} is negative")
            w[str(lam)] = 0.0 if abs(x) < WEIGHT_CLAMP else x
        total = sum(w.values())
        if abs(total - 1.0) > DEFAULT_TOL:
            raise ModelError(f"mu_{self.preparation} sums to {total!r}, not 1")
        object.__setattr__(self, "weights", MappingProxyType(w))

    @classmethod
    def point(cls, preparation: str, space: OnticSpace, lam: str) -> EpistemicState:
        return cls(preparation, {x: float(x == lam) for x in space})

    def vector(self, space: OnticSpace | Sequence[str]) -> np.ndarray:
        return np.array([self.weights[lam] for lam in space])

    @property
    def space(self) -> frozenset[str]:
        return frozenset(self.weights)


# measurement label -> ontic state -> outcome -> probability
ResponseSchema = Mapping[str, Mapping[str, Mapping[str, float]]]


class ValidityReport(NamedTuple):
    max_deviation: float
    worst: tuple[str, str, str] | None
    passed: bool


class SupportViolation(NamedTuple):
    preparation: str
    ontic_state: str
    measurement: str
    outcome: str
    response: float
    required: float


@dataclass(frozen=True, eq=False)
class OntologicalModel:
    space: OnticSpace
    preparations: tuple[EpistemicState, ...]
    responses: ResponseSchema
    states: tuple[PureState, ...]
    measurements: tuple[ProjectiveMeasurement, ...]
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "preparations", tuple(self.preparations))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "measurements", tuple(self.measurements))
        _check_well_formed(self)

    def mu(self, label: str) -> EpistemicState:
        for ep in self.preparations:
            if ep.preparation == label:
                return ep
        raise ModelError(f"unknown preparation {label!r}")

    def state(self, label: str) -> PureState:
        for s in self.states:
            if s.label == label:
                return s
        raise ModelError(f"no quantum state for preparation {label!r}")

    def xi(self, meas: str, lam: str, outcome: str) -> float:
        return float(self.responses[meas][lam][outcome])

    def response_matrix(self, meas: ProjectiveMeasurement) -> np.ndarray:
        """``xi`` as an array of shape ``(n_ontic, n_outcomes)``."""
        table = self.responses[meas.label]
        return np.array([[table[lam][q] for q in meas.labels] for lam in self.space])

    def mu_matrix(self) -> np.ndarray:
        """Rows are preparations (model order), columns ontic states."""
        return np.array([ep.vector(self.space) for ep in self.preparations])


def _check_well_formed(model: OntologicalModel) -> None:
    space = set(model.space.labels)
    state_labels = {s.label for s in model.states}
    for ep in model.preparations:
        if ep.space != space:
            extra = sorted(ep.space - space)
            missing = sorted(space - ep.space)
            raise ModelError(f"mu_{ep.preparation} does not match the ontic space "
                             f"(unknown {extra}, missing {missing})")
        if ep.preparation not in state_labels:
            raise ModelError(f"preparation {ep.preparation!r} has no quantum state")
        if any(w < 0 for w in ep.weights.values()):
            raise ModelError(f"mu_{ep.preparation} has negative weights")
    meas_labels = {m.label for m in model.measurements}
    if set(model.responses) != meas_labels:
        raise ModelError(f"response tables {sorted(model.responses)} do not match "
                         f"measurements {sorted(meas_labels)}")
    for meas in model.measurements:
        table = model.responses[meas.label]
        if set(table) != space:
            raise ModelError(f"xi_{meas.label} does not cover the ontic space exactly")
        for lam, row in table.items():
            if set(row) != set(meas.labels):
                raise ModelError(f"xi_{meas.label}(.|{lam}) has outcomes {sorted(row)}, "
                                 f"expected {sorted(meas.labels)}")
            vals = np.array(list(row.values()), dtype=float)
            if np.any(vals < -DEFAULT_TOL) or np.any(vals > 1 + DEFAULT_TOL):
                raise ModelError(f"xi_{meas.label}(.|{lam}) leaves [0, 1]")
            if abs(vals.sum() - 1.0) > DEFAULT_TOL:
                raise ModelError(f"xi_{meas.label}(.|{lam}) sums to {vals.sum()!r}")


def validate_model(model: OntologicalModel, tol: float = DEFAULT_TOL) -> ValidityReport:
    """Largest deviation between model statistics and the Born rule.

    The model passes when ``max |sum_lam mu(lam) xi(Q|lam) - |<Q|psi>|^2| <= tol``
    over all preparations, measurements and outcomes.
    """
    _check_well_formed(model)
    mu = model.mu_matrix()
    worst, worst_at = 0.0, None
    for meas in model.measurements:
        predicted = mu @ model.response_matrix(meas)
        for i, ep in enumerate(model.preparations):
            dev = np.abs(predicted[i] - born(model.state(ep.preparation), meas))
            k = int(np.argmax(dev))
            if worst_at is None or dev[k] > worst:
                worst, worst_at = float(dev[k]), (ep.preparation, meas.label, meas.labels[k])
    return ValidityReport(worst, worst_at, worst <= tol)


def support(mu: EpistemicState, cutoff: float = 0.0) -> frozenset[str]:
    """Ontic states with weight strictly above ``cutoff``."""
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    return frozenset(lam for lam, w in mu.weights.items() if w > cutoff)


def check_support_constraints(model: OntologicalModel, tol: float = DEFAULT_TOL) -> list[SupportViolation]:
    """Certainty and impossibility conditions on every support.

    For each preparation ``phi`` and each ``lam`` in its support, an outcome
    equal to ``phi`` must fire with certainty and an outcome orthogonal to
    ``phi`` must never fire.
    """
    out = []
    for ep in model.preparations:
        phi = model.state(ep.preparation)
        supp = sorted(support(ep))
        for meas in model.measurements:
            for q, vec in meas.outcomes:
                if same_ray(phi, vec):
                    required = 1.0
                elif orthogonal(phi, vec, ATOL):
                    required = 0.0
                else:
                    continue
                for lam in supp:
                    val = model.xi(meas.label, lam, q)
                    if abs(val - required) > tol:
                        out.append(SupportViolation(ep.preparation, lam, meas.label, q, val, required))
    return out


def support_overlap(mu_psi: EpistemicState, region: Iterable[str]) -> float:
    """Mass ``mu_psi`` puts on ``region``."""
    region = set(region)
    unknown = region - mu_psi.space
    if unknown:
        raise ModelError(f"unknown ontic states {sorted(unknown)}")
    return float(sum(mu_psi.weights[lam] for lam in region))


def epistemic_degree(model: OntologicalModel, phi: str, psi: str) -> float | None:
    """Degree of epistemic overlap of ``psi`` onto the support of ``phi``.

    ``mu_psi(support(mu_phi)) / |<phi|psi>|^2``; ``None`` for orthogonal states,
    where the ratio is unconstrained.
    """
    mu_phi, mu_psi = model.mu(phi), model.mu(psi)
    q = overlap(model.state(phi), model.state(psi))
    if q <= ATOL:
        return None
    return support_overlap(mu_psi, support(mu_phi)) / q


def _aligned(mu_phi: EpistemicState, mu_psi: EpistemicState) -> tuple[np.ndarray, np.ndarray]:
    if mu_phi.space != mu_psi.space:
        raise ModelError("distributions live on different ontic spaces")
    keys = sorted(mu_phi.space)
    return mu_phi.vector(keys), mu_psi.vector(keys)


def min_overlap(mu_phi: EpistemicState, mu_psi: EpistemicState) -> float:
    """``sum_lam min(mu_phi, mu_psi)``."""
    p, q = _aligned(mu_phi, mu_psi)
    return float(np.minimum(p, q).sum())


def classical_trace_distance(mu_phi: EpistemicState, mu_psi: EpistemicState) -> float:
    """Total variation distance ``1/2 sum |mu_phi - mu_psi|``."""
    p, q = _aligned(mu_phi, mu_psi)
    return float(0.5 * np.abs(p - q).sum())


def guess_probability(distance: float) -> float:
    """Optimal success probability for guessing between two equiprobable sources."""
    if not 0.0 <= distance <= 1.0:
        raise ValueError(f"trace distance must lie in [0, 1], got {distance!r}")
    return 0.5 * (1.0 + distance)


def born_model(states: Sequence[PureState], measurements: Sequence[ProjectiveMeasurement]) -> OntologicalModel:
    """One ontic state per preparation whose responses are the Born probabilities.

    Supports are pairwise disjoint, so every distinct pair has zero epistemic overlap.
    """
    space = OnticSpace(tuple(f"lam_{s.label}" for s in states))
    preps = tuple(EpistemicState.point(s.label, space, f"lam_{s.label}") for s in states)
    responses = {
        meas.label: {f"lam_{s.label}": dict(zip(meas.labels, map(float, born(s, meas)))) for s in states}
        for meas in measurements
    }
    return OntologicalModel(space, preps, responses, tuple(states), tuple(measurements))
