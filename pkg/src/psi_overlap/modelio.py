"""JSON model files.

Layout::

    {
      "format": "psi-overlap-model/1",
      "dimension": 3,
      "basis": ["a", "b", "c"],
      "preparations": {"p": [[re, im], ...], ...},
      "measurements": {"M1": {"a+": [[re, im], ...], ...}, ...},
      "ontic_states": ["lam0", ...],
      "mu": {"p": {"lam0": 0.25, ...}, ...},
      "xi": {"M1": {"lam0": {"a+": 1.0, ...}, ...}, ...}
    }

Floats are written with Python's shortest round-trip representation, so a
load/dump cycle is lossless.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .ontic import WEIGHT_CLAMP, EpistemicState, ModelError, OnticSpace, OntologicalModel
from .quantum import ProjectiveMeasurement, PureState

FORMAT = "psi-overlap-model/1"


def _vec(state: PureState) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in state.amplitudes]


def model_to_dict(model: OntologicalModel, basis: list[str] | None = None) -> dict[str, Any]:
    dim = model.states[0].dim
    return {
        "format": FORMAT,
        "dimension": dim,
        "basis": list(basis or model.meta.get("basis") or [f"e{i + 1}" for i in range(dim)]),
        "preparations": {s.label: _vec(s) for s in model.states},
        "measurements": {m.label: {q: _vec(v) for q, v in m.outcomes} for m in model.measurements},
        "ontic_states": list(model.space.labels),
        "mu": {ep.preparation: {lam: ep.weights[lam] for lam in model.space} for ep in model.preparations},
        "xi": {
            m.label: {lam: {q: model.xi(m.label, lam, q) for q in m.labels} for lam in model.space}
            for m in model.measurements
        },
    }


def _state(label: str, pairs: Any, dim: int) -> PureState:
    try:
        amps = [complex(float(re), float(im)) for re, im in pairs]
    except (TypeError, ValueError) as exc:
        raise ModelError(f"amplitudes of {label!r} must be [re, im] pairs") from exc
    if len(amps) != dim:
        raise ModelError(f"{label!r} has {len(amps)} amplitudes, dimension is {dim}")
    try:
        return PureState(label, amps)
    except ValueError as exc:
        raise ModelError(str(exc)) from exc


def model_from_dict(data: dict[str, Any]) -> OntologicalModel:
    """Rebuild a model; ontic states with zero weight under every preparation are dropped."""
    missing = [k for k in ("dimension", "preparations", "measurements", "ontic_states", "mu", "xi") if k not in data]
    if missing:
        raise ModelError(f"model file lacks fields {missing}")
    dim = int(data["dimension"])
    states = tuple(_state(lab, amps, dim) for lab, amps in data["preparations"].items())
    try:
        measurements = tuple(
            ProjectiveMeasurement(lab, tuple((q, _state(q, amps, dim)) for q, amps in outs.items()))
            for lab, outs in data["measurements"].items()
        )
    except ValueError as exc:
        raise ModelError(str(exc)) from exc
    mu = data["mu"]
    for prep, weights in mu.items():
        unknown = set(weights) - set(data["ontic_states"])
        if unknown:
            raise ModelError(f"mu_{prep} refers to unknown ontic states {sorted(unknown)}")
    occupied = [
        lam for lam in data["ontic_states"]
        if any(abs(float(mu[p].get(lam, 0.0))) >= WEIGHT_CLAMP for p in mu)
    ]
    space = OnticSpace(tuple(occupied))
    preps = tuple(EpistemicState(p, {lam: float(w.get(lam, 0.0)) for lam in occupied}) for p, w in mu.items())
    xi = data["xi"]
    try:
        responses = {m: {lam: {q: float(v) for q, v in xi[m][lam].items()} for lam in occupied} for m in xi}
    except KeyError as exc:
        raise ModelError(f"xi table has no entry for ontic state {exc}") from exc
    return OntologicalModel(space, preps, responses, states, measurements,
                            meta={"basis": list(data.get("basis", []))})


def dumps_model(model: OntologicalModel) -> str:
    return json.dumps(model_to_dict(model), indent=1) + "\n"


def loads_model(text: str) -> OntologicalModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"model file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ModelError("model file must hold a JSON object")
    return model_from_dict(data)


def save_model(model: OntologicalModel, path: str | Path) -> None:
    Path(path).write_text(dumps_model(model))


def load_model(path: str | Path) -> OntologicalModel:
    return loads_model(Path(path).read_text())
