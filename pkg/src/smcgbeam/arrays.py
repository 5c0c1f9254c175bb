"""Uniform linear array model and narrowband snapshot generation.

Conventions used throughout the package:

* arrival angles are measured in degrees against the array axis, so the
  angular field of view is [0, 180] and broadside sits at 90 degrees;
* the sensor phase reference is element 0, giving unit-modulus steering
  entries exp(-2j*pi*k*spacing*cos(theta)) for k = 0 .. m-1;
* sources transmit independent equiprobable BPSK symbols (+1/-1) and the
  first source of every epoch is the protected (desired) one;
* sensor noise is circular complex Gaussian with ``noise_power`` variance
  per element (half in the real part, half in the imaginary part).
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform linear array of isotropic elements.

    Parameters
    ----------
    n_sensors : int
        Number of array elements, at least 1.
    spacing_wavelengths : float
        Element separation in carrier wavelengths. Half-wavelength by
        default, which keeps the array free of grating lobes.
    """

    n_sensors: int
    spacing_wavelengths: float = 0.5

    def __post_init__(self) -> None:
        if self.n_sensors < 1:
            raise ValueError("n_sensors must be at least 1")
        if not self.spacing_wavelengths > 0.0:
            raise ValueError("spacing_wavelengths must be positive")


@dataclass(frozen=True)
class Source:
    """A narrowband far-field emitter with a fixed arrival angle and power."""

    doa_deg: float
    power: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.doa_deg <= 180.0:
            raise ValueError("doa_deg must lie in [0, 180]")
        if not self.power > 0.0:
            raise ValueError("power must be positive")


@dataclass(frozen=True)
class Scenario:
    """A piecewise-stationary simulation scenario.

    ``epochs`` is an ordered tuple of ``(start_snapshot, sources)`` pairs.
    Epoch k is active from its start index (1-based, inclusive) until the
    next epoch begins. The first source of every epoch is the desired one
    and must keep the same arrival angle across epochs; the remaining
    sources are interferers.

    Parameters
    ----------
    geometry : ArrayGeometry
    epochs : tuple of (int, tuple of Source)
    noise_power : float
        Per-element complex noise variance.
    n_snapshots : int
        Total number of snapshots the scenario spans.
    gamma : float
        Distortionless-response gain protected by the beamformers.
    """

    geometry: ArrayGeometry
    epochs: tuple[tuple[int, tuple[Source, ...]], ...]
    noise_power: float
    n_snapshots: int
    gamma: float = 1.0

    def __post_init__(self) -> None:
        if not self.noise_power > 0.0:
            raise ValueError("noise_power must be positive")
        if self.n_snapshots < 1:
            raise ValueError("n_snapshots must be at least 1")
        if not self.epochs:
            raise ValueError("at least one epoch is required")
        starts = [start for start, _ in self.epochs]
        if starts[0] != 1:
            raise ValueError("the first epoch must start at snapshot 1")
        if any(b <= a for a, b in zip(starts, starts[1:])):
            raise ValueError("epoch start indices must be strictly increasing")
        if starts[-1] > self.n_snapshots:
            raise ValueError("epoch start index beyond n_snapshots")
        doa0 = self.epochs[0][1][0].doa_deg
        for start, sources in self.epochs:
            if not sources:
                raise ValueError(f"epoch at {start} has no sources")
            if len(sources) > self.geometry.n_sensors:
                raise ValueError(
                    f"epoch at {start} has more sources than sensors"
                )
            if sources[0].doa_deg != doa0:
                raise ValueError("desired arrival angle must not change")

    @property
    def desired_doa_deg(self) -> float:
        return self.epochs[0][1][0].doa_deg


@dataclass(frozen=True)
class Snapshot:
    """One array observation: received vector plus generation bookkeeping."""

    index: int
    r: np.ndarray
    desired_symbol: complex


def steering_vector(geometry: ArrayGeometry, theta_deg: float) -> np.ndarray:
    """Array response for a plane wave arriving from ``theta_deg``.

    Parameters
    ----------
    geometry : ArrayGeometry
    theta_deg : float
        Arrival angle in degrees, within [0, 180].

    Returns
    -------
    numpy.ndarray
        Complex vector of length ``geometry.n_sensors`` with unit-modulus
        entries and squared norm equal to the sensor count.
    """
    if not 0.0 <= theta_deg <= 180.0:
        raise ValueError(f"theta_deg={theta_deg!r} outside [0, 180]")
    k = np.arange(geometry.n_sensors)
    phase = -2.0 * np.pi * geometry.spacing_wavelengths * np.cos(np.radians(theta_deg))
    return np.exp(1j * phase * k)


def epoch_index(scenario: Scenario, i: int) -> int:
    """Index into ``scenario.epochs`` of the epoch active at snapshot ``i``."""
    if not 1 <= i <= scenario.n_snapshots:
        raise ValueError(f"snapshot index {i} outside [1, {scenario.n_snapshots}]")
    starts = [start for start, _ in scenario.epochs]
    return bisect_right(starts, i) - 1


def active_sources(scenario: Scenario, i: int) -> tuple[Source, ...]:
    """Sources transmitting at snapshot ``i`` (desired one first)."""
    return scenario.epochs[epoch_index(scenario, i)][1]


@lru_cache(maxsize=256)
def _epoch_steering(scenario: Scenario, k: int) -> np.ndarray:
    sources = scenario.epochs[k][1]
    return np.column_stack(
        [steering_vector(scenario.geometry, s.doa_deg) for s in sources]
    )


@lru_cache(maxsize=256)
def _epoch_amplitudes(scenario: Scenario, k: int) -> np.ndarray:
    return np.sqrt([s.power for s in scenario.epochs[k][1]])


def generate_snapshot(scenario: Scenario, i: int, rng: np.random.Generator) -> Snapshot:
    """Draw one received vector ``r = A s + n`` at snapshot ``i``.

    Symbols are drawn first (one per active source, desired source first),
    then the noise vector, so a generator with a fixed seed reproduces the
    identical snapshot.
    """
    k = epoch_index(scenario, i)
    mat = _epoch_steering(scenario, k)
    amps = _epoch_amplitudes(scenario, k)
    symbols = 2.0 * rng.integers(0, 2, size=mat.shape[1]) - 1.0
    m = scenario.geometry.n_sensors
    scale = np.sqrt(scenario.noise_power / 2.0)
    noise = scale * (rng.standard_normal(m) + 1j * rng.standard_normal(m))
    r = mat @ (amps * symbols) + noise
    return Snapshot(index=i, r=r, desired_symbol=complex(symbols[0]))


@lru_cache(maxsize=256)
def _epoch_covariances(scenario: Scenario, k: int) -> tuple[np.ndarray, np.ndarray]:
    mat = _epoch_steering(scenario, k)
    powers = np.array([s.power for s in scenario.epochs[k][1]])
    a0 = mat[:, 0]
    desired = powers[0] * np.outer(a0, a0.conj())
    m = scenario.geometry.n_sensors
    rest = mat[:, 1:]
    interference = (rest * powers[1:]) @ rest.conj().T if rest.size else np.zeros((m, m))
    return desired, interference + scenario.noise_power * np.eye(m)


def desired_covariance(scenario: Scenario, i: int) -> np.ndarray:
    """Analytic desired-signal covariance of the epoch active at ``i``."""
    return _epoch_covariances(scenario, epoch_index(scenario, i))[0]


def interference_covariance(scenario: Scenario, i: int) -> np.ndarray:
    """Analytic interference-plus-noise covariance at snapshot ``i``."""
    return _epoch_covariances(scenario, epoch_index(scenario, i))[1]


def total_covariance(scenario: Scenario, i: int) -> np.ndarray:
    """Analytic full received covariance at snapshot ``i``."""
    desired, rest = _epoch_covariances(scenario, epoch_index(scenario, i))
    return desired + rest
