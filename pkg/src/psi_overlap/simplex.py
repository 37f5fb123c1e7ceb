"""Two-phase primal simplex with Bland's pivoting rule (dense tableau or revised form).

Problems are stated as::

    maximize    c @ x
    subject to  A_eq @ x == b_eq
                A_ineq[i] @ x  (<= or >=)  b_ineq[i]
                x >= 0
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
from scipy import sparse

PIVOT_TOL = 1e-10
FEAS_TOL = 1e-9
ZERO_CLAMP = 1e-12
MAX_PIVOTS = 10**6

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
STALLED = "stalled"


def _as_rows(a, n: int) -> sparse.csr_matrix:
    """Constraint block as CSR with ``n`` columns (dense input accepted)."""
    if sparse.issparse(a):
        a = sparse.csr_matrix(a, dtype=float)
    else:
        a = sparse.csr_matrix(np.asarray(a, dtype=float).reshape(-1, n))
    if a.shape[1] != n:
        raise ValueError(f"constraint rows have {a.shape[1]} columns for {n} variables")
    return a


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """Maximization program over non-negative variables; constraint blocks are stored as CSR."""

    variables: tuple[str, ...]
    objective: np.ndarray
    eq_matrix: np.ndarray
    eq_rhs: np.ndarray
    ineq_matrix: np.ndarray
    ineq_rhs: np.ndarray
    ineq_sense: tuple[str, ...] = ()
    status: str | None = None
    optimum: float | None = None
    witness: np.ndarray | None = None
    iterations: int = 0
    residual: float | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        n = len(self.variables)
        obj = np.asarray(self.objective, dtype=float).reshape(-1)
        a_eq = _as_rows(self.eq_matrix, n)
        a_in = _as_rows(self.ineq_matrix, n)
        b_eq = np.asarray(self.eq_rhs, dtype=float).reshape(-1)
        b_in = np.asarray(self.ineq_rhs, dtype=float).reshape(-1)
        sense = tuple(self.ineq_sense) or ("<=",) * a_in.shape[0]
        if obj.size != n:
            raise ValueError(f"objective has {obj.size} coefficients for {n} variables")
        if a_eq.shape[0] != b_eq.size or a_in.shape[0] != b_in.size:
            raise ValueError("constraint rows and right-hand sides disagree")
        if len(sense) != a_in.shape[0] or not set(sense) <= {"<=", ">="}:
            raise ValueError("each inequality needs a sense of '<=' or '>='")
        for name, val in [("objective", obj), ("eq_matrix", a_eq), ("eq_rhs", b_eq),
                          ("ineq_matrix", a_in), ("ineq_rhs", b_in)]:
            object.__setattr__(self, name, val)
        object.__setattr__(self, "ineq_sense", sense)
        object.__setattr__(self, "variables", tuple(self.variables))

    @property
    def n_variables(self) -> int:
        return len(self.variables)

    def residuals(self, x: np.ndarray) -> float:
        """Largest constraint violation of ``x`` (bounds included)."""
        worst = max(0.0, float(-np.min(x, initial=0.0)))
        if self.eq_rhs.size:
            worst = max(worst, float(np.max(np.abs(self.eq_matrix @ x - self.eq_rhs))))
        if self.ineq_rhs.size:
            lhs = self.ineq_matrix @ x - self.ineq_rhs
            sign = np.where(np.array(self.ineq_sense) == "<=", 1.0, -1.0)
            worst = max(worst, float(np.max(sign * lhs, initial=0.0)))
        return worst

    def value(self, name: str) -> float:
        if self.witness is None:
            raise ValueError("program has not been solved to optimality")
        return float(self.witness[self.variables.index(name)])

    def report(self) -> dict:
        return {
            "status": self.status,
            "optimum": self.optimum,
            "iterations": self.iterations,
            "residual": self.residual,
            "variables": self.n_variables,
            "equalities": int(self.eq_rhs.size),
            "inequalities": int(self.ineq_rhs.size),
        }


def combine(parts: Sequence[LinearProgram], objective: np.ndarray | None = None) -> LinearProgram:
    """Stack constraint blocks of programs that share the same variables."""
    first = parts[0]
    for p in parts[1:]:
        if p.variables != first.variables:
            raise ValueError("programs do not share variables")
    return LinearProgram(
        first.variables,
        first.objective if objective is None else objective,
        sparse.vstack([p.eq_matrix for p in parts], format="csr"),
        np.concatenate([p.eq_rhs for p in parts]),
        sparse.vstack([p.ineq_matrix for p in parts], format="csr"),
        np.concatenate([p.ineq_rhs for p in parts]),
        sum((p.ineq_sense for p in parts), ()),
    )


class _Tableau:
    """Rows ``0..m-1`` are constraints, the last row holds reduced costs (minimization)."""

    def __init__(self, a: np.ndarray, b: np.ndarray, basis: list[int]):
        m, n = a.shape
        self.t = np.zeros((m + 1, n + 1))
        self.t[:m, :n] = a
        self.t[:m, n] = b
        self.basis = list(basis)
        self.pivots = 0

    @property
    def m(self) -> int:
        return self.t.shape[0] - 1

    def set_cost(self, cost: np.ndarray) -> None:
        n = self.t.shape[1] - 1
        row = np.zeros(n + 1)
        row[:n] = cost
        for r, j in enumerate(self.basis):
            if cost[j] != 0.0:
                row -= cost[j] * self.t[r]
        self.t[-1] = row

    def pivot(self, r: int, j: int) -> None:
        t = self.t
        t[r] /= t[r, j]
        col = t[:, j].copy()
        col[r] = 0.0
        nz = np.flatnonzero(col)
        if nz.size:
            t[nz] -= np.outer(col[nz], t[r])
        t[:, j] = 0.0
        t[r, j] = 1.0
        self.basis[r] = j
        self.pivots += 1

    def run(self, allowed: np.ndarray, max_pivots: int) -> str:
        """Minimize the current cost row over columns where ``allowed`` is true."""
        t = self.t
        n = t.shape[1] - 1
        while True:
            if self.pivots >= max_pivots:
                return STALLED
            reduced = t[-1, :n]
            # Bland: lowest-index improving column
            candidates = np.flatnonzero((reduced < -PIVOT_TOL) & allowed)
            if candidates.size == 0:
                return OPTIMAL
            j = int(candidates[0])
            col = t[:-1, j]
            rows = np.flatnonzero(col > PIVOT_TOL)
            if rows.size == 0:
                return UNBOUNDED
            ratios = t[rows, n] / col[rows]
            best = ratios.min()
            tied = rows[ratios <= best + PIVOT_TOL * max(1.0, abs(best))]
            # Bland: among tied rows leave the basic variable of lowest index
            r = int(min(tied, key=lambda i: self.basis[i]))
            self.pivot(r, j)


def _standard_form(lp: LinearProgram):
    """Rows ``A x = b`` with ``b >= 0``, slacks appended, plus a starting basis.

    Returns ``None`` when a constant row is violated (infeasible program).
    """
    n = lp.n_variables
    a = sparse.vstack([lp.eq_matrix, lp.ineq_matrix], format="csr")
    b = np.concatenate([lp.eq_rhs, lp.ineq_rhs])
    slack = np.concatenate([np.zeros(lp.eq_rhs.size),
                            np.where(np.array(lp.ineq_sense) == "<=", 1.0, -1.0)])
    nonzero = np.asarray(abs(a).sum(axis=1)).ravel() > 0
    for b_i, s_i in zip(b[~nonzero], slack[~nonzero]):
        if (s_i == 0.0 and abs(b_i) > FEAS_TOL) or (s_i > 0 and b_i < -FEAS_TOL) or (s_i < 0 and b_i > FEAS_TOL):
            return None
    a, b, slack = a[nonzero], b[nonzero], slack[nonzero]
    flip = np.where(b < 0, -1.0, 1.0)
    a = sparse.diags(flip) @ a
    b = b * flip
    slack = slack * flip

    m = b.size
    slack_rows = np.flatnonzero(slack != 0.0)
    n_std = n + slack_rows.size
    slack_cols = np.arange(n, n_std)
    unit = np.full(m, -1)
    unit[slack_rows[slack[slack_rows] == 1.0]] = slack_cols[slack[slack_rows] == 1.0]
    need_art = np.flatnonzero(unit < 0)
    art_cols = np.arange(n_std, n_std + need_art.size)
    extra = sparse.csr_matrix(
        (np.concatenate([slack[slack_rows], np.ones(need_art.size)]),
         (np.concatenate([slack_rows, need_art]), np.concatenate([slack_cols, art_cols]) - n)),
        shape=(m, n_std + need_art.size - n),
    )
    a_full = sparse.hstack([a, extra], format="csc")
    basis = unit.copy()
    basis[need_art] = art_cols
    return a_full, b, [int(j) for j in basis], n_std


class _Revised:
    """Revised simplex: explicit basis inverse, sparse pricing, same pivot rule."""

    REFACTOR_EVERY = 64

    def __init__(self, a: np.ndarray, b: np.ndarray, basis: list[int]):
        self.a = sparse.csc_matrix(a)
        self.a.sort_indices()
        self.at = self.a.T.tocsr()
        self.b = b
        self.basis = list(basis)
        self.pivots = 0
        self.cost = np.zeros(a.shape[1])
        self._refactor()

    @property
    def m(self) -> int:
        return self.b.size

    def _refactor(self) -> None:
        bmat = self.a[:, self.basis].toarray()
        self.binv = np.linalg.inv(bmat)
        self.xb = self.binv @ self.b

    def set_cost(self, cost: np.ndarray) -> None:
        self.cost = np.asarray(cost, dtype=float)

    def column(self, j: int) -> np.ndarray:
        a = self.a
        lo, hi = a.indptr[j], a.indptr[j + 1]
        return self.binv[:, a.indices[lo:hi]] @ a.data[lo:hi]

    def row(self, r: int) -> np.ndarray:
        return self.at @ self.binv[r]

    def objective(self) -> float:
        return float(self.cost[self.basis] @ self.xb)

    def pivot(self, r: int, j: int, col: np.ndarray | None = None) -> None:
        col = self.column(j) if col is None else col
        piv = col[r]
        self.binv[r] /= piv
        other = col.copy()
        other[r] = 0.0
        self.binv -= np.outer(other, self.binv[r])
        theta = self.xb[r] / piv
        self.xb -= theta * other
        self.xb[r] = theta
        self.basis[r] = j
        self.pivots += 1
        if self.pivots % self.REFACTOR_EVERY == 0:
            self._refactor()

    def run(self, allowed: np.ndarray, max_pivots: int) -> str:
        while True:
            if self.pivots >= max_pivots:
                return STALLED
            y = self.cost[self.basis] @ self.binv
            reduced = self.cost - self.at @ y
            reduced[self.basis] = 0.0
            # Bland: lowest-index improving column
            candidates = np.flatnonzero((reduced < -PIVOT_TOL) & allowed)
            if candidates.size == 0:
                return OPTIMAL
            j = int(candidates[0])
            col = self.column(j)
            rows = np.flatnonzero(col > PIVOT_TOL)
            if rows.size == 0:
                return UNBOUNDED
            ratios = np.maximum(self.xb[rows], 0.0) / col[rows]
            best = ratios.min()
            tied = rows[ratios <= best + PIVOT_TOL * max(1.0, abs(best))]
            r = int(min(tied, key=lambda i: self.basis[i]))
            self.pivot(r, j, col)

    def values(self) -> np.ndarray:
        x = np.zeros(self.a.shape[1])
        x[self.basis] = self.xb
        return x


class _Dense(_Tableau):
    def __init__(self, a: np.ndarray, b: np.ndarray, basis: list[int]):
        super().__init__(a.toarray(), b, basis)
        self.n_cols = a.shape[1]

    def objective(self) -> float:
        return float(-self.t[-1, -1])

    def row(self, r: int) -> np.ndarray:
        return self.t[r, :-1]

    def values(self) -> np.ndarray:
        x = np.zeros(self.n_cols)
        for r, j in enumerate(self.basis):
            x[j] = self.t[r, -1]
        return x


METHODS = ("revised", "tableau")


def solve_lp(lp: LinearProgram, max_pivots: int = MAX_PIVOTS, method: str = "revised") -> LinearProgram:
    """Solve ``lp`` and return a copy carrying status, optimum and witness.

    ``method="tableau"`` pivots an explicit dense tableau; ``"revised"`` keeps
    the tableau implicit through the basis inverse. Both use Bland's rule, so
    they follow the same pivot sequence up to round-off. A run that hits
    ``max_pivots`` returns status ``"stalled"`` and no witness rather than a
    possibly wrong optimum.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    n = lp.n_variables
    std = _standard_form(lp)
    if std is None:
        return replace(lp, status=INFEASIBLE, optimum=None, witness=None, iterations=0)
    a_full, b_std, basis, n_std = std
    m, n_total = a_full.shape
    engine = (_Revised if method == "revised" else _Dense)(a_full, b_std, basis)
    is_art = np.zeros(n_total, dtype=bool)
    is_art[n_std:] = True

    if n_total > n_std:
        engine.set_cost(is_art.astype(float))
        status = engine.run(np.ones(n_total, dtype=bool), max_pivots)
        if status == STALLED:
            return replace(lp, status=STALLED, optimum=None, witness=None, iterations=engine.pivots)
        if engine.objective() > FEAS_TOL * max(1.0, float(np.abs(b_std).max(initial=0.0))):
            return replace(lp, status=INFEASIBLE, optimum=None, witness=None, iterations=engine.pivots)
        # drive zero-level artificials out of the basis; a row where that is
        # impossible is redundant and its artificial stays basic at zero
        for r in range(engine.m):
            if not is_art[engine.basis[r]]:
                continue
            nz = np.flatnonzero(np.abs(engine.row(r)[:n_std]) > PIVOT_TOL)
            if nz.size:
                engine.pivot(r, int(nz[0]))

    cost = np.zeros(n_total)
    cost[:n] = -lp.objective
    engine.set_cost(cost)
    status = engine.run(~is_art, max_pivots)
    if status != OPTIMAL:
        return replace(lp, status=status, optimum=None, witness=None, iterations=engine.pivots)

    x = engine.values()[:n]
    x[np.abs(x) < ZERO_CLAMP] = 0.0
    x = np.maximum(x, 0.0)
    return replace(
        lp,
        status=OPTIMAL,
        optimum=float(lp.objective @ x),
        witness=x,
        iterations=engine.pivots,
        residual=lp.residuals(x),
    )
