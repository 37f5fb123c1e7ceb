import time
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from psi_overlap.bounds import (
    OmegaProfile,
    max_epistemic_target,
    noise_ceiling,
    noise_crossover_scan,
    noise_target,
    omega_bound,
    ratio_report,
    symmetric_full_overlap_cost,
    tradeoff_slack,
    uniform_slack,
)

mpmath.mp.dps = 40


def exact_slack(d, basis, mp):
    return 1 - sum(Fraction(w) for w in basis) / d - Fraction(mp) * (1 - Fraction(2, d)) ** 2


def test_zero_slack_examples():
    assert abs(tradeoff_slack(OmegaProfile(3, (1, 1, 2 / 3), 1))) <= 1e-12
    assert abs(tradeoff_slack(OmegaProfile.uniform(3, 8 / 9, 1))) <= 1e-12
    for d in range(3, 101):
        assert abs(tradeoff_slack(OmegaProfile.uniform(d, symmetric_full_overlap_cost(d), 1))) <= 1e-12


def test_slack_against_fractions():
    for d in range(3, 30):
        w = Fraction(4 * (d - 1), d * d)
        assert exact_slack(d, [w] * d, 1) == 0
        assert float(exact_slack(d, [w] * d, 1)) == pytest.approx(
            tradeoff_slack(OmegaProfile.uniform(d, float(w), 1)), abs=1e-15)


def test_slack_sign():
    assert tradeoff_slack(OmegaProfile.uniform(3, 1, 1)) < 0
    assert tradeoff_slack(OmegaProfile.uniform(3, 0, 0)) == 1


def test_profile_checks():
    with pytest.raises(ValueError):
        OmegaProfile(3, (1, 1), 1)
    with pytest.raises(ValueError):
        OmegaProfile(2, (1, 1), 1)


def test_omega_bound_values():
    assert omega_bound(3) == 0.9
    assert omega_bound(4) == pytest.approx(0.8)
    assert abs(omega_bound(10**6) - 0.5) < 1e-5
    values = [omega_bound(d) for d in range(3, 500)]
    assert all(x > y for x, y in zip(values, values[1:]))
    with pytest.raises(ValueError):
        omega_bound(2)
    with pytest.raises(ValueError):
        omega_bound(3.5)


def test_omega_bound_is_slack_root():
    for d in range(3, 60):
        assert abs(uniform_slack(d, omega_bound(d))) <= 1e-12
        assert uniform_slack(d, omega_bound(d) + 1e-6) < 0
        assert uniform_slack(d, omega_bound(d) - 1e-6) > 0


@given(st.integers(3, 10**4))
def test_omega_bound_exact(d):
    want = Fraction(d * d, 2 * d * d - 4 * d + 4)
    assert omega_bound(d) == pytest.approx(float(want), rel=1e-15)


def test_full_overlap_cost_values():
    assert symmetric_full_overlap_cost(3) == pytest.approx(8 / 9)
    assert symmetric_full_overlap_cost(4) == pytest.approx(0.75)


def test_max_epistemic_target():
    assert max_epistemic_target(0) == 0
    assert max_epistemic_target(1) == 1
    assert max_epistemic_target(1 / 9) == pytest.approx(1 - (8 / 9) ** 0.5)
    with pytest.raises(ValueError):
        max_epistemic_target(1.1)


@given(st.floats(0, 1))
def test_target_envelope(b):
    # 1 - sqrt(1-B) lies between B/2 and B
    t = max_epistemic_target(b)
    assert b / 2 - 1e-15 <= t <= b + 1e-15


def test_noise_scan_crossover():
    start = time.perf_counter()
    scan = noise_crossover_scan(3, 100)
    assert time.perf_counter() - start < 0.1
    assert scan.first_strict == 15
    assert [r.d for r in scan.rows] == list(range(3, 101))
    assert noise_ceiling(14) - noise_target(14) > 1e-3
    assert noise_target(15) - noise_ceiling(15) > 1e-3


def test_strict_stays_strict():
    scan = noise_crossover_scan(3, 10**4)
    strict = [r.strict for r in scan.rows]
    k = strict.index(True)
    assert not any(strict[:k]) and all(strict[k:])


def test_noise_values_high_precision():
    for d in (3, 14, 15, 100):
        lo = 1 - d * (1 - mpmath.sqrt(1 - mpmath.mpf(1) / d))
        hi = 1 - mpmath.sqrt(1 - (1 - mpmath.mpf(2) / d) ** 2)
        assert noise_ceiling(d) == pytest.approx(float(lo), abs=1e-14)
        assert noise_target(d) == pytest.approx(float(hi), abs=1e-14)
    assert noise_ceiling(14) == pytest.approx(0.4907375632, abs=1e-10)
    assert noise_target(15) == pytest.approx(0.5011123484, abs=1e-10)


def test_scan_bad_range():
    with pytest.raises(ValueError):
        noise_crossover_scan(10, 5)
    with pytest.raises(ValueError):
        noise_crossover_scan(2, 5)


def test_ratio_report():
    assert ratio_report(3) == 1
    assert ratio_report(14) == 1
    assert ratio_report(15) < 1
