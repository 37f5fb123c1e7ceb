"""Closed-form overlap bounds and the noise-robust min-overlap scan."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

STRICT_MARGIN = 1e-12


def _check_dim(d: int) -> None:
    if int(d) != d or d < 3:
        raise ValueError(f"dimension must be an integer >= 3, got {d!r}")


@dataclass(frozen=True)
class OmegaProfile:
    """Epistemic-overlap degrees of ``p`` with each basis state and with ``m``."""

    d: int
    omega_basis: tuple[float, ...]
    omega_mp: float

    def __post_init__(self) -> None:
        _check_dim(self.d)
        basis = tuple(float(w) for w in self.omega_basis)
        if len(basis) != self.d:
            raise ValueError(f"expected {self.d} basis overlaps, got {len(basis)}")
        object.__setattr__(self, "omega_basis", basis)

    @classmethod
    def uniform(cls, d: int, omega_basis: float, omega_mp: float) -> OmegaProfile:
        return cls(d, (omega_basis,) * d, omega_mp)


def tradeoff_slack(profile: OmegaProfile) -> float:
    """``1 - mean(omega_basis) - omega_mp (1 - 2/d)^2``; negative means no model exists."""
    d = profile.d
    return 1.0 - sum(profile.omega_basis) / d - profile.omega_mp * (1.0 - 2.0 / d) ** 2


def omega_bound(d: int) -> float:
    """Largest uniform epistemic overlap compatible with the dimension-``d`` family."""
    _check_dim(d)
    return d * d / (2 * d * d - 4 * d + 4)


def symmetric_full_overlap_cost(d: int) -> float:
    """Uniform basis overlap that still leaves room for ``omega(m|p) = 1``: ``4(d-1)/d^2``."""
    _check_dim(d)
    return 4.0 * (d - 1) / d**2


def max_epistemic_target(overlap: float) -> float:
    """``1 - sqrt(1 - overlap)``: the min-overlap a maximally epistemic model must reach."""
    if not 0.0 <= overlap <= 1.0:
        raise ValueError(f"overlap must lie in [0, 1], got {overlap!r}")
    return 1.0 - math.sqrt(1.0 - overlap)


def noise_ceiling(d: int) -> float:
    """Largest ``sum min(mu_p, mu_m)`` left once every ``(p, a_i)`` pair is maximally epistemic.

    Reconstruction of the min-overlap argument. The shared region of ``p`` and
    ``m`` avoids every basis support, and each ``a_i`` support must carry at least
    ``1 - sqrt(1 - 1/d)`` of ``mu_p``; whatever remains bounds the shared mass:
    ``1 - d (1 - sqrt(1 - 1/d))``.
    """
    _check_dim(d)
    return 1.0 - d * (1.0 - math.sqrt(1.0 - 1.0 / d))


def noise_target(d: int) -> float:
    """Min-overlap of ``(p, m)`` demanded by full epistemic overlap, ``1 - sqrt(1 - (1-2/d)^2)``."""
    _check_dim(d)
    return max_epistemic_target((1.0 - 2.0 / d) ** 2)


class NoiseRow(NamedTuple):
    d: int
    ceiling: float
    target: float
    strict: bool


class NoiseScan(NamedTuple):
    rows: list[NoiseRow]
    first_strict: int | None


def noise_crossover_scan(d_min: int, d_max: int) -> NoiseScan:
    """Compare the reachable min-overlap with the maximally-epistemic target for each ``d``.

    ``strict`` marks dimensions where the ceiling falls below the target, i.e.
    the min-overlap inequality cannot be saturated for ``(p, m)``.
    """
    if int(d_min) != d_min or int(d_max) != d_max or not 3 <= d_min <= d_max:
        raise ValueError(f"need integers 3 <= d_min <= d_max, got {d_min!r}, {d_max!r}")
    rows = []
    for d in range(int(d_min), int(d_max) + 1):
        lo, hi = noise_ceiling(d), noise_target(d)
        rows.append(NoiseRow(d, lo, hi, lo < hi - STRICT_MARGIN))
    first = next((r.d for r in rows if r.strict), None)
    return NoiseScan(rows, first)


def ratio_report(d: int) -> float:
    """Certified ceiling on ``min-overlap / target`` for ``(p, m)``; below 1 only when strict."""
    lo, hi = noise_ceiling(d), noise_target(d)
    return min(lo, hi) / hi


def uniform_slack(d: int, omega: float) -> float:
    """Slack when every overlap degree equals ``omega``."""
    return tradeoff_slack(OmegaProfile.uniform(d, omega, omega))

