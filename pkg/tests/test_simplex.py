import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from psi_overlap.simplex import LinearProgram, combine, solve_lp

METHODS = ["revised", "tableau"]
EMPTY = (np.zeros((0, 0)), np.zeros(0))


def lp(names, c, a_eq=None, b_eq=(), a_in=None, b_in=(), sense=()):
    n = len(names)
    a_eq = np.zeros((0, n)) if a_eq is None else a_eq
    a_in = np.zeros((0, n)) if a_in is None else a_in
    return LinearProgram(tuple(names), c, a_eq, b_eq, a_in, b_in, tuple(sense))


@pytest.mark.parametrize("method", METHODS)
def test_single_variable_bound(method):
    out = solve_lp(lp(["x"], [1.0], a_in=[[1.0]], b_in=[0.5]), method=method)
    assert out.status == "optimal"
    assert out.optimum == pytest.approx(0.5, abs=1e-12)
    assert out.value("x") == pytest.approx(0.5)
    assert out.residual <= 1e-9


@pytest.mark.parametrize("method", METHODS)
def test_textbook_bounded(method):
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
    prog = lp(["x", "y"], [3, 5], a_in=[[1, 0], [0, 2], [3, 2]], b_in=[4, 12, 18])
    out = solve_lp(prog, method=method)
    assert out.status == "optimal"
    assert out.optimum == pytest.approx(36)
    assert out.witness == pytest.approx([2, 6])
    assert out.residual <= 1e-9


@pytest.mark.parametrize("method", METHODS)
def test_equalities_and_ge_rows(method):
    # min x + y  s.t. x + 2y = 4, x >= 1
    prog = lp(["x", "y"], [-1, -1], a_eq=[[1, 2]], b_eq=[4], a_in=[[1, 0]], b_in=[1], sense=[">="])
    out = solve_lp(prog, method=method)
    assert out.status == "optimal"
    assert out.optimum == pytest.approx(-2.5)
    assert out.residual <= 1e-9


@pytest.mark.parametrize("method", METHODS)
def test_infeasible(method):
    prog = lp(["x"], [1.0], a_in=[[1.0], [1.0]], b_in=[1.0, 2.0], sense=["<=", ">="])
    out = solve_lp(prog, method=method)
    assert out.status == "infeasible"
    assert out.witness is None and out.optimum is None


@pytest.mark.parametrize("method", METHODS)
def test_infeasible_equalities(method):
    prog = lp(["x", "y"], [0, 0], a_eq=[[1, 1], [1, 1]], b_eq=[1, 2])
    assert solve_lp(prog, method=method).status == "infeasible"


@pytest.mark.parametrize("method", METHODS)
def test_unbounded(method):
    prog = lp(["x", "y"], [1, 1], a_in=[[1, -1]], b_in=[1])
    assert solve_lp(prog, method=method).status == "unbounded"


def beale():
    # cycles under the textbook largest-coefficient rule; optimum 1/20
    c = [0.75, -150, 0.02, -6]
    a = [[0.25, -60, -0.04, 9], [0.5, -90, -0.02, 3], [0, 0, 1, 0]]
    return lp(["x4", "x5", "x6", "x7"], c, a_in=a, b_in=[0, 0, 1])


@pytest.mark.parametrize("method", METHODS)
def test_degenerate_beale(method):
    out = solve_lp(beale(), method=method)
    assert out.status == "optimal"
    assert out.optimum == pytest.approx(0.05, abs=1e-12)
    assert out.residual <= 1e-9


@pytest.mark.parametrize("method", METHODS)
def test_degenerate_chvatal(method):
    # degenerate start at the origin; optimum 1 at x1 = x3 = 1
    prog = lp(["x1", "x2", "x3", "x4"], [10, -57, -9, -24],
              a_in=[[0.5, -5.5, -2.5, 9], [0.5, -1.5, -0.5, 1], [1, 0, 0, 0]], b_in=[0, 0, 1])
    out = solve_lp(prog, method=method)
    assert out.status == "optimal"
    assert out.optimum == pytest.approx(1, abs=1e-12)
    assert out.residual <= 1e-9


@pytest.mark.parametrize("method", METHODS)
def test_redundant_equalities(method):
    prog = lp(["x", "y", "z"], [1, 2, 0], a_eq=[[1, 1, 1], [2, 2, 2], [1, 0, 0]], b_eq=[1, 2, 0.25])
    out = solve_lp(prog, method=method)
    assert out.status == "optimal"
    assert out.optimum == pytest.approx(1.75)
    assert out.residual <= 1e-9


def test_pivot_limit_reports_stalled():
    prog = lp(["x", "y"], [3, 5], a_in=[[1, 0], [0, 2], [3, 2]], b_in=[4, 12, 18])
    out = solve_lp(prog, max_pivots=1)
    assert out.status == "stalled"
    assert out.witness is None


def test_bad_inputs():
    with pytest.raises(ValueError):
        lp(["x"], [1, 2])
    with pytest.raises(ValueError):
        lp(["x"], [1], a_in=[[1]], b_in=[1], sense=["=="])
    with pytest.raises(ValueError):
        solve_lp(beale(), method="interior")
    with pytest.raises(ValueError):
        beale().value("x4")


def test_combine_stacks_rows():
    a = lp(["x", "y"], [1, 1], a_in=[[1, 0]], b_in=[1])
    b = lp(["x", "y"], [0, 0], a_in=[[0, 1]], b_in=[2])
    out = solve_lp(combine([a, b]))
    assert out.optimum == pytest.approx(3)
    with pytest.raises(ValueError):
        combine([a, lp(["u", "v"], [0, 0])])


@st.composite
def random_lps(draw):
    n = draw(st.integers(1, 6))
    m_in = draw(st.integers(0, 5))
    m_eq = draw(st.integers(0, 2))
    ints = st.integers(-4, 4).map(float)
    c = draw(st.lists(ints, min_size=n, max_size=n))
    a_in = np.array(draw(st.lists(st.lists(ints, min_size=n, max_size=n), min_size=m_in, max_size=m_in))).reshape(m_in, n)
    b_in = draw(st.lists(ints, min_size=m_in, max_size=m_in))
    sense = draw(st.lists(st.sampled_from(["<=", ">="]), min_size=m_in, max_size=m_in))
    a_eq = np.array(draw(st.lists(st.lists(ints, min_size=n, max_size=n), min_size=m_eq, max_size=m_eq))).reshape(m_eq, n)
    b_eq = draw(st.lists(ints, min_size=m_eq, max_size=m_eq))
    return lp([f"x{i}" for i in range(n)], c, a_eq, b_eq, a_in, b_in, sense)


def highs(prog: LinearProgram):
    sign = np.where(np.array(prog.ineq_sense) == "<=", 1.0, -1.0)
    a_ub = prog.ineq_matrix.toarray() * sign[:, None] if prog.ineq_rhs.size else None
    b_ub = prog.ineq_rhs * sign if prog.ineq_rhs.size else None
    a_eq = prog.eq_matrix.toarray() if prog.eq_rhs.size else None
    b_eq = prog.eq_rhs if prog.eq_rhs.size else None
    res = linprog(-prog.objective, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq, bounds=(0, None),
                  method="highs", options={"presolve": False})
    return {0: "optimal", 2: "infeasible", 3: "unbounded"}[res.status], (-res.fun if res.status == 0 else None)


@settings(max_examples=150, deadline=None)
@given(random_lps())
def test_agrees_with_highs(prog):
    want_status, want = highs(prog)
    for method in METHODS:
        got = solve_lp(prog, method=method)
        assert got.status == want_status
        if want_status == "optimal":
            assert got.optimum == pytest.approx(want, abs=1e-7)
            assert got.residual <= 1e-9
