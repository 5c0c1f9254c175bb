"""Performance metrics and the per-snapshot operation-count model.

``complexity_counts`` evaluates closed-form complex addition and
multiplication counts for one run of each algorithm family. Counts for the
selective-update (``sm-``) variants and the data-selective CG depend on the
fraction of accepted snapshots ``update_fraction``; the affine-projection
variant and the data-selective CG also depend on a projection order
``projection_order``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arrays import Scenario, desired_covariance, interference_covariance

SINR_FLOOR_DB = -200.0
_SINR_FLOOR_LINEAR = 1e-20


def sinr_linear(w: np.ndarray, desired_cov: np.ndarray, intnoise_cov: np.ndarray) -> float:
    """Ratio of desired to interference-plus-noise output power, floored.

    The floor keeps weight vectors orthogonal to the desired response from
    producing a zero (or negative rounding) numerator downstream.
    """
    num = np.vdot(w, desired_cov @ w).real
    den = np.vdot(w, intnoise_cov @ w).real
    if not den > 0.0:
        raise ValueError("interference-plus-noise output power must be positive")
    ratio = num / den
    return ratio if ratio > _SINR_FLOOR_LINEAR else _SINR_FLOOR_LINEAR


def output_sinr(w: np.ndarray, scenario: Scenario, i: int) -> float:
    """Analytic output SINR in dB at snapshot ``i`` for weights ``w``."""
    ratio = sinr_linear(
        w, desired_covariance(scenario, i), interference_covariance(scenario, i)
    )
    return 10.0 * np.log10(ratio)


@dataclass
class RunTrace:
    """Per-snapshot history of one algorithm over one simulation run."""

    label: str
    sinr_db: np.ndarray
    y_abs_sq: np.ndarray
    delta: np.ndarray
    lambda1: np.ndarray
    updated: np.ndarray
    max_constraint_error: float

    @property
    def n(self) -> int:
        return self.sinr_db.size

    @property
    def update_count(self) -> int:
        return int(self.updated.sum())

    @property
    def final_sinr_db(self) -> float:
        return float(self.sinr_db[-1])


def update_rate(trace: RunTrace) -> float:
    """Fraction of snapshots that triggered a state update."""
    return trace.update_count / trace.n


COMPLEXITY_ALGORITHMS = (
    "sg", "sm-sg", "rls", "sm-rls", "sm-ap", "cg", "ds-cg", "sm-cg",
)

_NEEDS_FRACTION = {"sm-sg", "sm-rls", "sm-ap", "ds-cg", "sm-cg"}
_NEEDS_ORDER = {"sm-ap", "ds-cg"}


def complexity_counts(
    algorithm: str,
    m: int,
    n_snapshots: int,
    update_fraction: float | None = None,
    projection_order: int | None = None,
) -> tuple[float, float]:
    """Complex additions and multiplications for a full run.

    Parameters
    ----------
    algorithm : str
        One of ``COMPLEXITY_ALGORITHMS``.
    m : int
        Number of sensors.
    n_snapshots : int
        Run length.
    update_fraction : float, optional
        Accepted-snapshot fraction in [0, 1]; required by the selective
        algorithms and ignored by the rest.
    projection_order : int, optional
        Data-reuse/projection order; required by ``sm-ap`` and ``ds-cg``.

    Returns
    -------
    (float, float)
        ``(additions, multiplications)``.
    """
    if algorithm not in COMPLEXITY_ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if m < 1:
        raise ValueError("m must be at least 1")
    if n_snapshots < 1:
        raise ValueError("n_snapshots must be at least 1")
    if algorithm in _NEEDS_FRACTION:
        if update_fraction is None:
            raise ValueError(f"{algorithm} requires update_fraction")
        if not 0.0 <= update_fraction <= 1.0:
            raise ValueError("update_fraction must lie in [0, 1]")
    if algorithm in _NEEDS_ORDER:
        if projection_order is None:
            raise ValueError(f"{algorithm} requires projection_order")
        if projection_order < 1:
            raise ValueError("projection_order must be at least 1")

    n = n_snapshots
    tn = update_fraction * n if update_fraction is not None else 0.0
    L = projection_order if projection_order is not None else 0

    if algorithm == "sg":
        return n * (3 * m - 1), n * (4 * m + 1)
    if algorithm == "sm-sg":
        return 2 * n * m + 3 * tn * m, n * (2 * m + 5) + tn * (4 * m + 3)
    if algorithm == "rls":
        return n * (4 * m * m - m - 1), n * (5 * m * m + 5 * m - 1)
    if algorithm == "sm-rls":
        return (
            2 * n * m + tn * (4 * m * m - 1),
            n * (2 * m + 5) + tn * (5 * m * m + 6 * m + 2),
        )
    if algorithm == "sm-ap":
        return (
            n * (2 * m + 1) + tn * ((m - 1) * L * L + m * L + 1),
            n * (2 * m + 5) + tn * (L ** 3 + m * L * L + (m + 1) * L + m + 2),
        )
    if algorithm == "cg":
        return n * (2 * m * m + 7 * m + 1), n * (2 * m * m + 11 * m + 5)
    if algorithm == "ds-cg":
        return (
            tn * (2 * m * m + 8 * m - 2) + L * n * (m - 1),
            tn * (2 * m * m + 9 * m + 3) + L * n * m,
        )
    # sm-cg
    return (
        2 * n * m + tn * (2 * m * m + 8 * m + 6),
        n * (2 * m + 5) + tn * (2 * m * m + 9 * m + 22),
    )
