from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from psi_overlap.quantum import (
    DimensionError,
    ProjectiveMeasurement,
    PureState,
    TABLE1_COLUMNS,
    TABLE1_ROWS,
    born,
    build_family,
    helstrom_measurement,
    measurement,
    overlap,
    quantum_trace_distance,
    state,
    table1,
)

h, t, tt = Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)
# reference Born tables, rows a, b, c, p, m
TABLE1 = {
    "M1": [(0, h, h), (1, 0, 0), (0, h, h), (t, tt, 0), (t, 0, tt)],
    "M2": [(1, 0, 0), (0, h, h), (0, h, h), (t, tt, 0), (t, 0, tt)],
    "M3": [(1, 0, 0), (0, 1, 0), (0, 0, 1), (t, t, t), (t, t, t)],
}


@pytest.fixture(scope="module")
def fam3():
    return build_family(3)


def probs(fam, prep, meas):
    m = fam.measurement(meas)
    return dict(zip(m.labels, born(fam.preparation(prep), m)))


def test_born_p_on_m1(fam3):
    got = probs(fam3, "p", "M1")
    assert got["b"] == pytest.approx(1 / 3, abs=1e-12)
    assert got["a+"] == pytest.approx(2 / 3, abs=1e-12)
    assert got["a-"] == pytest.approx(0, abs=1e-12)


def test_born_b_on_m1(fam3):
    got = probs(fam3, "b", "M1")
    assert (got["b"], got["a+"], got["a-"]) == pytest.approx((1, 0, 0), abs=1e-12)


def test_born_basis_state_in_own_basis(fam3):
    got = probs(fam3, "a", "M3")
    assert (got["a"], got["b"], got["c"]) == pytest.approx((1, 0, 0), abs=1e-12)


def test_born_dimension_mismatch(fam3):
    with pytest.raises(DimensionError):
        born(build_family(4).preparation("p"), fam3.measurement("M1"))


def test_born_permutation_covariant(fam3):
    m1 = fam3.measurement("M1")
    base = born(fam3.preparation("p"), m1)
    for perm in permutations(range(3)):
        shuffled = ProjectiveMeasurement("M1'", tuple(m1.outcomes[i] for i in perm))
        np.testing.assert_allclose(born(fam3.preparation("p"), shuffled), base[list(perm)], atol=1e-15)


def test_overlap_values(fam3):
    assert overlap(fam3.preparation("m"), fam3.preparation("p")) == pytest.approx(1 / 9, abs=1e-12)
    assert overlap(fam3.preparation("p"), fam3.preparation("p")) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("d", [3, 4, 5, 10, 17])
def test_overlap_m_p_general(d):
    fam = build_family(d)
    # <m|p> = ((d-1) - 1)/d
    expected = Fraction(d - 2, d) ** 2
    assert overlap(fam.preparation("m"), fam.preparation("p")) == pytest.approx(float(expected), abs=1e-12)


def test_overlap_m_p_d10():
    fam = build_family(10)
    assert overlap(fam.preparation("m"), fam.preparation("p")) == pytest.approx(0.64, abs=1e-12)


def test_family_d3_measurements(fam3):
    assert [m.label for m in fam3.measurements] == ["M1", "M2", "M3"]
    assert fam3.measurement("M1").labels == ("a+", "a-", "b")
    assert fam3.measurement("M2").labels == ("b+", "b-", "a")
    assert [s.label for s in fam3.preparations] == ["a", "b", "c", "p", "m"]


def test_a_minus_orthogonal_to_p(fam3):
    a_minus = fam3.measurement("M1").vector("a-")
    assert abs(np.vdot(a_minus.amplitudes, fam3.preparation("p").amplitudes)) < 1e-15


def test_family_d4_template():
    fam = build_family(4)
    assert fam.measurement("M1").labels == ("a_2", "a_3", "a_1+", "a_1-")
    assert [m.label for m in fam.measurements] == ["M1", "M2", "M3", "M4"]
    assert all(len(m) == 4 for m in fam.measurements)
    assert [s.label for s in fam.preparations] == ["a_1", "a_2", "a_3", "a_4", "p", "m"]


def test_general_template_matches_d3_construction(fam3):
    # the d>3 template evaluated at d=3 reproduces M1, M2 with a=a_1, b=a_2, c=a_3
    from psi_overlap.quantum import _general_family

    gen = _general_family(3)
    rename = {"a_1": "a", "a_2": "b", "a_3": "c", "a_1+": "a+", "a_1-": "a-", "a_2+": "b+", "a_2-": "b-"}
    for i in (1, 2, 3):
        g, f = gen.measurement(f"M{i}"), fam3.measurement(f"M{i}")
        assert {rename[q] for q in g.labels} == set(f.labels)
        for q in g.labels:
            assert overlap(g.vector(q), f.vector(rename[q])) == pytest.approx(1, abs=1e-12)


def test_family_rejects_small_d():
    with pytest.raises(ValueError):
        build_family(2)


@pytest.mark.parametrize("d", range(3, 12))
def test_family_invariants(d):
    fam = build_family(d)
    for s in fam.preparations:
        assert abs(np.linalg.norm(s.amplitudes) - 1) < 1e-12
    p, m = fam.preparation("p"), fam.preparation("m")
    for i in range(1, d + 1):
        assert overlap(fam.preparation(f"a_{i}" if d > 3 else "abc"[i - 1]), p) == pytest.approx(1 / d, abs=1e-12)
    for meas in fam.measurements[:-1]:
        minus = [v for q, v in meas.outcomes if q.endswith("-")][0]
        plus = [v for q, v in meas.outcomes if q.endswith("+")][0]
        assert overlap(minus, p) < 1e-12
        assert overlap(plus, m) < 1e-12


def test_table1_matches_reference():
    tables = table1()
    assert set(tables) == set(TABLE1)
    for meas, ref in TABLE1.items():
        np.testing.assert_allclose(tables[meas], np.array(ref, dtype=float), atol=1e-12, rtol=0)
    assert TABLE1_ROWS == ("a", "b", "c", "p", "m")


def test_table1_selected_entries():
    tables = table1()
    m_row = TABLE1_ROWS.index("m")
    assert tables["M2"][m_row, TABLE1_COLUMNS["M2"].index("b-")] == pytest.approx(2 / 3, abs=1e-12)
    assert tables["M3"][TABLE1_ROWS.index("c"), TABLE1_COLUMNS["M3"].index("c")] == pytest.approx(1, abs=1e-12)
    for tab in tables.values():
        np.testing.assert_allclose(tab.sum(axis=1), 1, atol=1e-12)


def test_trace_distance(fam3):
    a, b, p, m = (fam3.preparation(x) for x in "abpm")
    assert quantum_trace_distance(a, b) == pytest.approx(1, abs=1e-12)
    assert quantum_trace_distance(m, p) == pytest.approx(np.sqrt(8) / 3, abs=1e-12)
    assert quantum_trace_distance(p, p) == pytest.approx(0, abs=1e-7)


def test_state_validation():
    with pytest.raises(ValueError):
        PureState("x", [1, 1])
    with pytest.raises(ValueError):
        PureState("x", [1])
    with pytest.raises(ValueError):
        measurement("bad", [state("u", [1, 0]), state("v", [1, 1])])
    with pytest.raises(ValueError):
        measurement("short", [state("u", [1, 0, 0]), state("v", [0, 1, 0])])


def _trace_norm_distance(u, v):
    rho = np.outer(u, u.conj()) - np.outer(v, v.conj())
    return 0.5 * np.abs(np.linalg.eigvalsh(rho)).sum()


complex_vec = st.lists(st.tuples(st.floats(-1, 1), st.floats(-1, 1)), min_size=3, max_size=3).filter(
    lambda xs: sum(a * a + b * b for a, b in xs) > 1e-3
)


@given(complex_vec, complex_vec)
def test_pure_trace_distance_matches_trace_norm(x, y):
    u = state("u", [complex(a, b) for a, b in x])
    v = state("v", [complex(a, b) for a, b in y])
    assert quantum_trace_distance(u, v) == pytest.approx(_trace_norm_distance(u.amplitudes, v.amplitudes), abs=1e-7)


@given(complex_vec, complex_vec)
def test_helstrom_measurement_is_optimal(x, y):
    u = state("u", [complex(a, b) for a, b in x])
    v = state("v", [complex(a, b) for a, b in y])
    if overlap(u, v) > 1 - 1e-6:
        return
    h_meas = helstrom_measurement(u, v)
    pu, pv = born(u, h_meas), born(v, h_meas)
    # guessing u on "+" and v otherwise attains (1 + delta)/2
    success = 0.5 * (pu[0] + pv[1:].sum())
    assert success == pytest.approx(0.5 * (1 + quantum_trace_distance(u, v)), abs=1e-9)
