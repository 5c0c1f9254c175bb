"""Error-bound policies driving the set-membership innovation gate.

A policy exposes the current bound through ``.delta`` and is refreshed once
per snapshot, before the gate is tested, using quantities available at that
point: the incoming snapshot, the pre-update beamformer output and weights,
and the (assumed known) noise power.

``FixedBound`` keeps a constant bound. ``PdbBound`` tracks a noise floor
scaled by the current weight norm. ``PidbBound`` adds a smoothed estimate
of the interference power seen at the protected direction, obtained by
differencing the steering-vector output against the beamformer output.
"""

from __future__ import annotations

import math

import numpy as np


def desired_direction_output(steering: np.ndarray, r: np.ndarray) -> complex:
    """Snapshot as seen through the protected steering vector, ``a0^H r``."""
    return complex(np.vdot(steering, r))


def _weighted_noise_floor(varsigma: float, w: np.ndarray, noise_power: float) -> float:
    # shared by both adaptive policies so they agree bit-for-bit when the
    # interference term is switched off
    return math.sqrt(varsigma * np.vdot(w, w).real * noise_power)


class FixedBound:
    """Constant bound."""

    def __init__(self, delta: float) -> None:
        if not delta > 0.0:
            raise ValueError("delta must be positive")
        self.delta = float(delta)

    def update(self, steering, r, y, w, noise_power) -> None:
        pass


class PdbBound:
    """Parameter-dependent bound: smoothed weight-scaled noise floor.

    delta <- rho * delta + (1 - rho) * sqrt(varsigma * ||w||^2 * noise_power)
    """

    def __init__(
        self,
        w0: np.ndarray,
        noise_power: float,
        varsigma: float = 21.0,
        rho: float = 0.9,
    ) -> None:
        if not 0.0 < rho < 1.0:
            raise ValueError("rho must lie in (0, 1)")
        if not varsigma > 0.0:
            raise ValueError("varsigma must be positive")
        if not noise_power > 0.0:
            raise ValueError("noise_power must be positive")
        self.rho = float(rho)
        self.varsigma = float(varsigma)
        self.delta = _weighted_noise_floor(varsigma, w0, noise_power)

    def update(self, steering, r, y, w, noise_power) -> None:
        target = _weighted_noise_floor(self.varsigma, w, noise_power)
        self.delta = self.rho * self.delta + (1.0 - self.rho) * target


class PidbBound:
    """Parameter- and interference-dependent bound.

    Tracks ``nu``, a smoothed power estimate of the difference between the
    steering-vector output and the beamformer output, and folds a small
    fraction of it into the bound on top of the weight-scaled noise floor:

    nu    <- rho * nu    + (1 - rho) * |a0^H r - y|^2
    delta <- rho * delta + (1 - rho) * (sqrt(epsilon * nu) + noise floor)

    With ``epsilon = 0`` the sequence reduces bit-for-bit to ``PdbBound``
    run with the same coefficients.
    """

    def __init__(
        self,
        w0: np.ndarray,
        noise_power: float,
        rho: float = 0.98,
        varsigma: float = 19.0,
        epsilon: float = 1e-3,
    ) -> None:
        if not 0.0 < rho < 1.0:
            raise ValueError("rho must lie in (0, 1)")
        if not varsigma > 0.0:
            raise ValueError("varsigma must be positive")
        if epsilon < 0.0:
            raise ValueError("epsilon must be non-negative")
        if not noise_power > 0.0:
            raise ValueError("noise_power must be positive")
        self.rho = float(rho)
        self.varsigma = float(varsigma)
        self.epsilon = float(epsilon)
        self.nu = 0.0
        self.delta = _weighted_noise_floor(varsigma, w0, noise_power)

    def update(self, steering, r, y, w, noise_power) -> None:
        e0 = desired_direction_output(steering, r) - y
        self.nu = self.rho * self.nu + (1.0 - self.rho) * abs(e0) ** 2
        target = math.sqrt(self.epsilon * self.nu) + _weighted_noise_floor(
            self.varsigma, w, noise_power
        )
        self.delta = self.rho * self.delta + (1.0 - self.rho) * target
