"""Linear programs over deterministic outcome assignments.

Every response function ``xi(.|lam)`` is a point of the product of outcome
simplices, hence a mixture of deterministic assignments (one outcome per
measurement). Pushing ``mu`` through that decomposition gives a model whose
ontic states *are* assignments and whose statistics are unchanged. Two
consequences are used below:

* an ontic state in the support of ``phi`` decomposes only into assignments in
  the certainty set ``S_phi``; so ``sum_{v in S_phi} mu_psi(v)`` bounds the
  support overlap of any model from above, and maximizing a uniform lower
  bound on it gives a certified *upper* bound on uniform epistemic overlap;
* the decomposition is a stochastic post-processing, which cannot lower
  ``sum min(mu_phi, mu_psi)``, and assignment models are models themselves;
  so the min-overlap program is exact over all models of the family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np
from scipy import sparse

from .ontic import EpistemicState, OnticSpace, OntologicalModel
from .quantum import (
    ATOL,
    Family,
    ProjectiveMeasurement,
    PureState,
    build_family,
    distinguishing_measurements,
    orthogonal,
    overlap,
    same_ray,
)
from .simplex import OPTIMAL, LinearProgram, solve_lp

DEFAULT_CAP = 10**7


class AssignmentCapError(RuntimeError):
    """The joint assignment count exceeds the enumeration cap."""


class InfeasibleFamilyError(RuntimeError):
    """No assignment model reproduces the family's statistics."""


@dataclass(frozen=True)
class Assignment:
    """One outcome per measurement."""

    choices: Mapping[str, str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "choices", MappingProxyType(dict(self.choices)))

    def __getitem__(self, meas: str) -> str:
        return self.choices[meas]

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.choices.items())))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Assignment) and dict(self.choices) == dict(other.choices)

    @property
    def label(self) -> str:
        return ",".join(f"{m}={q}" for m, q in self.choices.items())


class AssignmentTable:
    """All joint assignments of a family, as an integer array.

    Measurements are sorted by label and each measurement's outcomes by label;
    row ``i`` of :attr:`index` holds outcome positions in that order, rows in
    lexicographic order.
    """

    def __init__(self, measurements: Sequence[ProjectiveMeasurement], cap: int = DEFAULT_CAP):
        if not measurements:
            raise ValueError("measurement family is empty")
        self.measurements = tuple(sorted(measurements, key=lambda m: m.label))
        if len({m.label for m in self.measurements}) != len(self.measurements):
            raise ValueError("measurement labels are not unique")
        self.outcomes = tuple(tuple(sorted(m.labels)) for m in self.measurements)
        sizes = [len(o) for o in self.outcomes]
        count = math.prod(sizes)
        if count > cap:
            raise AssignmentCapError(
                f"{count} joint assignments exceed the cap of {cap}; use the closed-form bounds instead"
            )
        grids = np.indices(sizes, dtype=np.int16 if max(sizes) < 2**15 else np.int32)
        self.index = grids.reshape(len(sizes), -1).T
        self.index.setflags(write=False)

    def __len__(self) -> int:
        return self.index.shape[0]

    def assignment(self, row: int) -> Assignment:
        return Assignment({m.label: outs[k] for m, outs, k in zip(self.measurements, self.outcomes, self.index[row])})

    def label(self, row: int) -> str:
        return ",".join(f"{m.label}={outs[k]}" for m, outs, k in zip(self.measurements, self.outcomes, self.index[row]))

    def allowed(self, phi: PureState) -> list[frozenset[str]]:
        """Outcomes each measurement may show on an ontic state prepared by ``phi``."""
        out = []
        for meas in self.measurements:
            certain = [q for q, v in meas.outcomes if same_ray(phi, v)]
            if certain:
                out.append(frozenset(certain))
            else:
                out.append(frozenset(q for q, v in meas.outcomes if not orthogonal(phi, v, ATOL)))
        return out

    def mask(self, allowed: Sequence[Iterable[str]]) -> np.ndarray:
        keep = np.ones(len(self), dtype=bool)
        for col, (outs, ok) in enumerate(zip(self.outcomes, allowed)):
            ok = set(ok)
            good = np.array([q in ok for q in outs])
            keep &= good[self.index[:, col]]
        return keep

    def hits(self, meas_pos: int, outcome: str) -> np.ndarray:
        k = self.outcomes[meas_pos].index(outcome)
        return self.index[:, meas_pos] == k


def enumerate_assignments(measurements: Sequence[ProjectiveMeasurement], cap: int = DEFAULT_CAP) -> list[Assignment]:
    """All joint assignments, lexicographic in measurement label then outcome label."""
    table = AssignmentTable(measurements, cap)
    return [table.assignment(i) for i in range(len(table))]


@dataclass(frozen=True)
class CertaintySet:
    """Assignments compatible with certainty/impossibility for one preparation."""

    preparation: str
    allowed: Mapping[str, frozenset[str]]
    members: frozenset[Assignment]

    def __contains__(self, v: object) -> bool:
        return v in self.members

    def __len__(self) -> int:
        return len(self.members)


def certainty_set(phi: PureState, measurements: Sequence[ProjectiveMeasurement],
                  cap: int = DEFAULT_CAP) -> CertaintySet:
    """Assignments ``v`` with ``v(M) = phi`` when ``M`` contains ``phi`` and ``v(M)`` never orthogonal to ``phi``."""
    table = AssignmentTable(measurements, cap)
    allowed = table.allowed(phi)
    rows = np.flatnonzero(table.mask(allowed))
    return CertaintySet(
        phi.label,
        MappingProxyType({m.label: a for m, a in zip(table.measurements, allowed)}),
        frozenset(table.assignment(int(i)) for i in rows),
    )


def triple_intersection_report(d: int, cap: int = DEFAULT_CAP) -> list[tuple[str, bool]]:
    """Emptiness of ``S_x & S_p & S_m`` for every basis state ``x``, plus the union.

    Entries are ``(label, is_empty)``; the last entry is labeled ``"union"``.
    """
    fam = build_family(d)
    table = AssignmentTable(fam.measurements, cap)
    p_and_m = table.mask(table.allowed(fam.preparation("p"))) & table.mask(table.allowed(fam.preparation("m")))
    report = []
    union = np.zeros(len(table), dtype=bool)
    for x in fam.preparations:
        if x.label in ("p", "m"):
            continue
        s_x = table.mask(table.allowed(x))
        union |= s_x
        report.append((x.label, not np.any(s_x & p_and_m)))
    report.append(("union", not np.any(union & p_and_m)))
    return report


@dataclass(frozen=True, eq=False)
class VertexLayout:
    """Column bookkeeping of an assignment-model program.

    ``columns[label]`` lists the assignment rows carrying a ``mu_label`` variable,
    ``offsets[label]`` the position of the first one.
    """

    table: AssignmentTable
    preparations: tuple[PureState, ...]
    columns: Mapping[str, np.ndarray]
    offsets: Mapping[str, int]

    @property
    def n_mu(self) -> int:
        return sum(len(c) for c in self.columns.values())

    def block(self, label: str) -> slice:
        start = self.offsets[label]
        return slice(start, start + len(self.columns[label]))


def _layout(preparations: Sequence[PureState], table: AssignmentTable, restrict: bool) -> VertexLayout:
    columns, offsets, pos = {}, {}, 0
    for psi in preparations:
        if restrict:
            rows = np.flatnonzero(table.mask(table.allowed(psi)))
        else:
            rows = np.arange(len(table))
        columns[psi.label] = rows
        offsets[psi.label] = pos
        pos += len(rows)
    return VertexLayout(table, tuple(preparations), MappingProxyType(columns), MappingProxyType(offsets))


def reproduction_constraints(
    preparations: Sequence[PureState],
    measurements: Sequence[ProjectiveMeasurement],
    assignments: AssignmentTable | None = None,
    *,
    restrict: bool = False,
    cap: int = DEFAULT_CAP,
) -> LinearProgram:
    """Born-rule equalities for assignment models.

    One variable ``mu[psi|v] >= 0`` per preparation and assignment, one row
    ``sum_{v(M)=Q} mu[psi|v] = |<Q|psi>|^2`` per ``(psi, M, Q)``. Normalization
    follows from any single measurement's rows. With ``restrict`` only
    assignments in ``S_psi`` get a variable; the others are forced to zero
    anyway. The layout is stored in ``meta["layout"]``.
    """
    table = assignments if assignments is not None else AssignmentTable(measurements, cap)
    layout = _layout(preparations, table, restrict)
    names = []
    for psi in preparations:
        names += [f"mu[{psi.label}|{table.label(int(r))}]" for r in layout.columns[psi.label]]
    r_idx, c_idx, rhs = [], [], []
    row = 0
    for psi in preparations:
        cols = layout.columns[psi.label]
        start = layout.offsets[psi.label]
        for k, meas in enumerate(table.measurements):
            picked = table.index[cols, k]
            for q, vec in meas.outcomes:
                hit = np.flatnonzero(picked == table.outcomes[k].index(q))
                r_idx.append(np.full(hit.size, row))
                c_idx.append(start + hit)
                rhs.append(overlap(vec, psi))
                row += 1
    n = layout.n_mu
    r_idx, c_idx = np.concatenate(r_idx), np.concatenate(c_idx)
    eq = sparse.csr_matrix((np.ones(r_idx.size), (r_idx, c_idx)), shape=(row, n))
    return LinearProgram(tuple(names), np.zeros(n), eq, np.array(rhs), sparse.csr_matrix((0, n)), np.zeros(0),
                         meta={"layout": layout})


def _extend(lp: LinearProgram, extra: Sequence[str]) -> LinearProgram:
    """Append zero columns for new variables."""
    k = len(extra)
    pad = lambda a: sparse.hstack([a, sparse.csr_matrix((a.shape[0], k))], format="csr")  # noqa: E731
    return LinearProgram(
        lp.variables + tuple(extra),
        np.concatenate([lp.objective, np.zeros(k)]),
        pad(lp.eq_matrix), lp.eq_rhs, pad(lp.ineq_matrix), lp.ineq_rhs, lp.ineq_sense,
        meta=dict(lp.meta),
    )


def vertex_model(lp: LinearProgram) -> OntologicalModel:
    """Turn a solved reproduction program into a model on its occupied assignments."""
    if lp.status != OPTIMAL:
        raise ValueError(f"program status is {lp.status!r}, no witness to convert")
    layout: VertexLayout = lp.meta["layout"]
    table = layout.table
    x = lp.witness[:layout.n_mu].copy()
    if "nu" in lp.meta:
        nu = lp.witness[layout.n_mu:]
        for pos in lp.meta["nu"]:
            x[pos] += nu
    weights = {}
    for psi in layout.preparations:
        vals = x[layout.block(psi.label)]
        weights[psi.label] = {int(r): float(w) for r, w in zip(layout.columns[psi.label], vals) if w > 0}
    rows = sorted(set().union(*[w.keys() for w in weights.values()]))
    labels = tuple(table.label(r) for r in rows)
    space = OnticSpace(labels)
    preps = []
    for psi in layout.preparations:
        w = weights[psi.label]
        total = sum(w.values())
        # absorb round-off so the distribution is exactly normalized
        preps.append(EpistemicState(psi.label, {lab: w.get(r, 0.0) / total for r, lab in zip(rows, labels)}))
    responses = {}
    for k, meas in enumerate(table.measurements):
        outs = table.outcomes[k]
        responses[meas.label] = {
            lab: {q: float(q == outs[table.index[r, k]]) for q in meas.labels} for r, lab in zip(rows, labels)
        }
    return OntologicalModel(space, tuple(preps), responses, layout.preparations, table.measurements,
                            meta={"source": "assignment-lp"})


def lp_family(d: int, distinguishing: bool | None = None, cap: int = DEFAULT_CAP) -> Family:
    """The construction for dimension ``d``, optionally with distinguishing measurements.

    A model of quantum theory has to reproduce every measurement, including the
    optimal one for each pair of preparations; adding those measurements only
    removes models, so all bounds stay valid and the extra measurements enforce
    ``classical distance >= quantum distance`` on every pair. ``None`` adds them
    whenever the joint assignment count stays under ``cap``.
    """
    fam = build_family(d)
    if distinguishing is False:
        return fam
    extra = distinguishing_measurements(fam.preparations)
    measurements = fam.measurements + tuple(extra)
    if distinguishing is None and math.prod(len(m) for m in measurements) > cap:
        return fam
    return Family(fam.dim, fam.preparations, measurements)


class OmegaResult(NamedTuple):
    bound: float
    model: OntologicalModel
    lp: LinearProgram


def uniform_omega_program(
    preparations: Sequence[PureState],
    measurements: Sequence[ProjectiveMeasurement],
    pairs: Iterable[tuple[str, str]] | None = None,
    *,
    cap: int = DEFAULT_CAP,
) -> LinearProgram:
    """Maximize ``t`` with ``mu_psi(S_phi) >= t |<phi|psi>|^2`` for the given ordered pairs.

    ``pairs`` defaults to every ordered pair of distinct non-orthogonal preparations.
    ``t`` is capped at 1.
    """
    table = AssignmentTable(measurements, cap)
    base = reproduction_constraints(preparations, measurements, table, restrict=True)
    layout: VertexLayout = base.meta["layout"]
    lp = _extend(base, ["t"])
    by_label = {s.label: s for s in preparations}
    if pairs is None:
        pairs = [(a.label, b.label) for a in preparations for b in preparations
                 if a.label != b.label and not orthogonal(a, b) and not same_ray(a, b)]
    n = lp.n_variables
    r_idx, c_idx, vals, rhs, sense = [], [], [], [], []
    for i, (phi_l, psi_l) in enumerate(pairs):
        phi, psi = by_label[phi_l], by_label[psi_l]
        in_s_phi = np.flatnonzero(table.mask(table.allowed(phi))[layout.columns[psi_l]])
        r_idx += [i] * (in_s_phi.size + 1)
        c_idx += list(layout.offsets[psi_l] + in_s_phi) + [n - 1]
        vals += [1.0] * in_s_phi.size + [-overlap(phi, psi)]
        rhs.append(0.0)
        sense.append(">=")
    r_idx.append(len(rhs))
    c_idx.append(n - 1)
    vals.append(1.0)
    rhs.append(1.0)
    sense.append("<=")
    ineq = sparse.csr_matrix((vals, (r_idx, c_idx)), shape=(len(rhs), n))
    objective = np.zeros(n)
    objective[-1] = 1.0
    return LinearProgram(lp.variables, objective, lp.eq_matrix, lp.eq_rhs, ineq, np.array(rhs), tuple(sense),
                         meta={"layout": layout, "pairs": list(pairs)})


def _solve_checked(lp: LinearProgram) -> LinearProgram:
    solved = solve_lp(lp)
    if solved.status == "infeasible":
        raise InfeasibleFamilyError("no assignment model reproduces the family")
    if solved.status != OPTIMAL:
        raise RuntimeError(f"simplex finished with status {solved.status!r}")
    return solved


def max_uniform_omega(d: int, *, distinguishing: bool | None = None, cap: int = DEFAULT_CAP) -> OmegaResult:
    """Certified upper bound on uniform epistemic overlap for the dimension-``d`` family.

    Returns the optimum ``t*``, the assignment model attaining it and the solved
    program. ``t*`` bounds the overlap of every model from above; it is not
    claimed to be achieved by actual supports.
    """
    fam = lp_family(d, distinguishing, cap)
    solved = _solve_checked(uniform_omega_program(fam.preparations, fam.measurements, cap=cap))
    return OmegaResult(solved.optimum, vertex_model(solved), solved)


def min_overlap_program(
    phi: str,
    psi: str,
    preparations: Sequence[PureState],
    measurements: Sequence[ProjectiveMeasurement],
    *,
    cap: int = DEFAULT_CAP,
) -> LinearProgram:
    """Maximize ``sum_v nu_v`` over ``0 <= nu_v <= min(mu_phi(v), mu_psi(v))``.

    The bounds are written by substitution: on shared assignments
    ``mu_phi = nu + alpha`` and ``mu_psi = nu + beta`` with ``alpha, beta >= 0``,
    so the ``mu`` columns of ``phi`` and ``psi`` hold the excesses and each
    ``nu`` column enters both preparations' Born rows. This keeps the program
    free of inequality rows; :func:`vertex_model` adds ``nu`` back.
    """
    labels = [s.label for s in preparations]
    for lab in (phi, psi):
        if lab not in labels:
            raise KeyError(f"unknown preparation {lab!r}")
    if phi == psi:
        raise ValueError("pair must consist of two different preparations")
    table = AssignmentTable(measurements, cap)
    base = reproduction_constraints(preparations, measurements, table, restrict=True)
    layout: VertexLayout = base.meta["layout"]
    shared = np.intersect1d(layout.columns[phi], layout.columns[psi])
    pos_phi = layout.offsets[phi] + np.searchsorted(layout.columns[phi], shared)
    pos_psi = layout.offsets[psi] + np.searchsorted(layout.columns[psi], shared)
    eq = base.eq_matrix.tocsc()
    nu_cols = eq[:, pos_phi] + eq[:, pos_psi]
    n_mu = layout.n_mu
    names = base.variables + tuple(f"nu[{table.label(int(r))}]" for r in shared)
    objective = np.concatenate([np.zeros(n_mu), np.ones(shared.size)])
    n = len(names)
    return LinearProgram(
        names, objective, sparse.hstack([eq, nu_cols], format="csr"), base.eq_rhs,
        sparse.csr_matrix((0, n)), np.zeros(0),
        meta={"layout": layout, "pair": (phi, psi), "nu": (pos_phi, pos_psi)},
    )


def max_pairwise_min_overlap(phi: str, psi: str, d: int, *, distinguishing: bool | None = None,
                             cap: int = DEFAULT_CAP) -> tuple[float, OntologicalModel]:
    """Largest ``sum min(mu_phi, mu_psi)`` over all models of the dimension-``d`` family."""
    fam = lp_family(d, distinguishing, cap)
    solved = _solve_checked(min_overlap_program(phi, psi, fam.preparations, fam.measurements, cap=cap))
    return solved.optimum, vertex_model(solved)
