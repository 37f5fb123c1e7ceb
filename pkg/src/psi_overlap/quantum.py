"""Pure states, rank-1 projective measurements and the overlap-bound state families."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

ATOL = 1e-12


class DimensionError(ValueError):
    """Raised when objects living in different Hilbert spaces are combined."""


@dataclass(frozen=True, eq=False)
class PureState:
    """A normalized state vector with a label.

    Amplitudes are stored as a read-only complex array. Two states are not
    compared by amplitude; use :func:`overlap` (global phases are kept).
    """

    label: str
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size < 2:
            raise ValueError(f"state {self.label!r}: dimension must be >= 2, got {amps.size}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > ATOL:
            raise ValueError(f"state {self.label!r} is not normalized (|psi|^2 = {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def __repr__(self) -> str:
        return f"PureState({self.label!r}, dim={self.dim})"


def state(label: str, coefficients: Sequence[complex]) -> PureState:
    """Build a state from unnormalized coefficients."""
    vec = np.asarray(coefficients, dtype=complex)
    return PureState(label, vec / np.linalg.norm(vec))


@dataclass(frozen=True, eq=False)
class ProjectiveMeasurement:
    """Complete family of orthogonal rank-1 projectors, one per outcome."""

    label: str
    outcomes: tuple[tuple[str, PureState], ...]

    def __post_init__(self) -> None:
        outcomes = tuple((str(q), vec) for q, vec in self.outcomes)
        object.__setattr__(self, "outcomes", outcomes)
        if not outcomes:
            raise ValueError(f"measurement {self.label!r} has no outcomes")
        names = [q for q, _ in outcomes]
        if len(set(names)) != len(names):
            raise ValueError(f"measurement {self.label!r} has repeated outcome labels")
        dims = {vec.dim for _, vec in outcomes}
        if len(dims) != 1:
            raise DimensionError(f"measurement {self.label!r} mixes dimensions {sorted(dims)}")
        basis = self.matrix
        gram = basis.conj() @ basis.T
        if not np.allclose(gram, np.eye(len(outcomes)), atol=ATOL, rtol=0):
            raise ValueError(f"outcome vectors of {self.label!r} are not orthonormal")
        if not np.allclose(basis.T @ basis.conj(), np.eye(self.dim), atol=ATOL, rtol=0):
            raise ValueError(f"projectors of {self.label!r} do not sum to the identity")

    @property
    def dim(self) -> int:
        return self.outcomes[0][1].dim

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(q for q, _ in self.outcomes)

    @property
    def matrix(self) -> np.ndarray:
        """Outcome vectors stacked as rows, shape ``(n_outcomes, d)``."""
        return np.stack([vec.amplitudes for _, vec in self.outcomes])

    def vector(self, outcome: str) -> PureState:
        for q, vec in self.outcomes:
            if q == outcome:
                return vec
        raise KeyError(f"{self.label!r} has no outcome {outcome!r}")

    def __len__(self) -> int:
        return len(self.outcomes)

    def __repr__(self) -> str:
        return f"ProjectiveMeasurement({self.label!r}, outcomes={list(self.labels)})"


def measurement(label: str, vectors: Sequence[PureState]) -> ProjectiveMeasurement:
    """Measurement whose outcome labels are the labels of its vectors."""
    return ProjectiveMeasurement(label, tuple((v.label, v) for v in vectors))


def _check_dims(*dims: int) -> None:
    if len(set(dims)) != 1:
        raise DimensionError(f"dimension mismatch: {dims}")


def inner(phi: PureState, psi: PureState) -> complex:
    """<phi|psi>."""
    _check_dims(phi.dim, psi.dim)
    return complex(np.vdot(phi.amplitudes, psi.amplitudes))


def overlap(phi: PureState, psi: PureState) -> float:
    """Quantum state overlap ``|<phi|psi>|^2``."""
    return abs(inner(phi, psi)) ** 2


def born(psi: PureState, meas: ProjectiveMeasurement) -> np.ndarray:
    """Outcome probabilities of ``meas`` on ``psi``, in the measurement's outcome order."""
    _check_dims(psi.dim, meas.dim)
    return np.abs(meas.matrix.conj() @ psi.amplitudes) ** 2


def quantum_trace_distance(phi: PureState, psi: PureState) -> float:
    """Trace distance between two pure states, ``sqrt(1 - |<phi|psi>|^2)``."""
    return float(np.sqrt(max(0.0, 1.0 - overlap(phi, psi))))


def same_ray(phi: PureState, psi: PureState, atol: float = ATOL) -> bool:
    return abs(overlap(phi, psi) - 1.0) <= atol


def orthogonal(phi: PureState, psi: PureState, atol: float = ATOL) -> bool:
    return abs(inner(phi, psi)) <= atol


@dataclass(frozen=True)
class Family:
    """Preparations and measurements of one construction."""

    dim: int
    preparations: tuple[PureState, ...]
    measurements: tuple[ProjectiveMeasurement, ...]

    def preparation(self, label: str) -> PureState:
        for s in self.preparations:
            if s.label == label:
                return s
        raise KeyError(f"no preparation {label!r}")

    def measurement(self, label: str) -> ProjectiveMeasurement:
        for m in self.measurements:
            if m.label == label:
                return m
        raise KeyError(f"no measurement {label!r}")

    def __iter__(self):
        # allows ``preps, meas = build_family(d)``
        return iter((self.preparations, self.measurements))


def _three_dim_family() -> Family:
    r2, r3 = np.sqrt(2.0), np.sqrt(3.0)
    a = PureState("a", [1, 0, 0])
    b = PureState("b", [0, 1, 0])
    c = PureState("c", [0, 0, 1])
    p = PureState("p", np.array([1, 1, 1]) / r3)
    m = PureState("m", np.array([1, 1, -1]) / r3)
    a_plus = PureState("a+", np.array([1, 0, 1]) / r2)
    a_minus = PureState("a-", np.array([1, 0, -1]) / r2)
    b_plus = PureState("b+", np.array([0, 1, 1]) / r2)
    b_minus = PureState("b-", np.array([0, 1, -1]) / r2)
    measurements = (
        measurement("M1", [a_plus, a_minus, b]),
        measurement("M2", [b_plus, b_minus, a]),
        measurement("M3", [a, b, c]),
    )
    return Family(3, (a, b, c, p, m), measurements)


def _general_family(d: int) -> Family:
    basis = [PureState(f"a_{i}", np.eye(d)[i - 1]) for i in range(1, d + 1)]
    last = np.eye(d)[d - 1]
    measurements = []
    for i in range(1, d):
        e_i = np.eye(d)[i - 1]
        plus = PureState(f"a_{i}+", (e_i + last) / np.sqrt(2.0))
        minus = PureState(f"a_{i}-", (e_i - last) / np.sqrt(2.0))
        kept = [basis[j - 1] for j in range(1, d) if j != i]
        measurements.append(measurement(f"M{i}", kept + [plus, minus]))
    measurements.append(measurement(f"M{d}", basis))
    signs = np.ones(d)
    signs[-1] = -1.0
    p = PureState("p", np.ones(d) / np.sqrt(d))
    m = PureState("m", signs / np.sqrt(d))
    return Family(d, tuple(basis) + (p, m), tuple(measurements))


def basis_labels(d: int) -> list[str]:
    """Names of the computational basis vectors used by :func:`build_family`."""
    return ["a", "b", "c"] if d == 3 else [f"a_{i}" for i in range(1, d + 1)]


def build_family(d: int) -> Family:
    """The state/measurement construction used by the overlap no-go argument.

    For ``d == 3`` the preparations are ``a, b, c, p, m`` with measurements
    ``M1: a+, a-, b``, ``M2: b+, b-, a`` and ``M3: a, b, c``. For ``d > 3``
    the preparations are ``a_1 .. a_d, p, m`` and ``M_i`` (``i < d``) swaps
    ``a_i, a_d`` for ``a_i+, a_i-`` while ``M_d`` is the computational basis.
    """
    if int(d) != d or d < 3:
        raise ValueError(f"family needs an integer dimension d >= 3, got {d!r}")
    return _three_dim_family() if d == 3 else _general_family(int(d))


# Measurement outcome tables for the d=3 construction: column order per table,
# then rows a, b, c, p, m.
TABLE1_COLUMNS: dict[str, tuple[str, ...]] = {
    "M1": ("b", "a+", "a-"),
    "M2": ("a", "b+", "b-"),
    "M3": ("a", "b", "c"),
}
TABLE1_ROWS = ("a", "b", "c", "p", "m")

def table1() -> dict[str, np.ndarray]:
    """Born-rule tables for the d=3 family, shape ``(5, 3)`` per measurement.

    Rows follow :data:`TABLE1_ROWS`, columns :data:`TABLE1_COLUMNS`.
    """
    fam = build_family(3)
    tables = {}
    for meas in fam.measurements:
        cols = [meas.labels.index(q) for q in TABLE1_COLUMNS[meas.label]]
        rows = [born(fam.preparation(r), meas)[cols] for r in TABLE1_ROWS]
        tables[meas.label] = np.array(rows)
    return tables


def helstrom_measurement(phi: PureState, psi: PureState, label: str | None = None) -> ProjectiveMeasurement:
    """Optimal measurement for telling ``phi`` from ``psi``.

    Outcomes ``+`` and ``-`` are the eigenvectors of ``|phi><phi| - |psi><psi|``
    with positive and negative eigenvalue; the remaining outcomes ``k1, k2, ..``
    span the orthogonal complement of ``span{phi, psi}``.
    """
    _check_dims(phi.dim, psi.dim)
    if same_ray(phi, psi):
        raise ValueError("states coincide; no distinguishing measurement")
    u, v = phi.amplitudes, psi.amplitudes
    delta = np.outer(u, u.conj()) - np.outer(v, v.conj())
    evals, evecs = np.linalg.eigh(delta)
    order = np.argsort(evals)
    plus, minus = evecs[:, order[-1]], evecs[:, order[0]]
    # complement: orthonormalize the rest of the eigenbasis against the pair
    span = np.stack([plus, minus], axis=1)
    rest = evecs[:, order[1:-1]]
    rest = rest - span @ (span.conj().T @ rest)
    q, _ = np.linalg.qr(rest) if rest.shape[1] else (rest, None)
    vectors = [("+", plus), ("-", minus)] + [(f"k{j + 1}", q[:, j]) for j in range(q.shape[1])]
    outcomes = tuple((name, PureState(name, vec / np.linalg.norm(vec))) for name, vec in vectors)
    return ProjectiveMeasurement(label or f"H[{phi.label},{psi.label}]", outcomes)


def distinguishing_measurements(preparations: Sequence[PureState]) -> list[ProjectiveMeasurement]:
    """One optimal distinguishing measurement per unordered non-orthogonal pair."""
    out = []
    for i, phi in enumerate(preparations):
        for psi in preparations[i + 1:]:
            if not orthogonal(phi, psi) and not same_ray(phi, psi):
                out.append(helstrom_measurement(phi, psi))
    return out
