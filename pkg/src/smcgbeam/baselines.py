"""Classical constrained beamformers used as references.

All of them protect the same distortionless response ``w^H a0 = gamma`` and
update on every snapshot (no innovation gate). ``mvdr_weights`` gives the
closed-form optimum for a known covariance and serves as the oracle the
adaptive filters are measured against.
"""

from __future__ import annotations

import numpy as np

from .smcg import SmCgState, StepResult


def mvdr_weights(covariance: np.ndarray, steering: np.ndarray, gamma: float = 1.0) -> np.ndarray:
    """Minimum-variance weights for a known received covariance.

    Parameters
    ----------
    covariance : numpy.ndarray
        Hermitian positive-definite received covariance.
    steering : numpy.ndarray
        Array response of the protected direction.
    gamma : float
        Constrained gain.

    Returns
    -------
    numpy.ndarray
        ``gamma * R^-1 a0 / (a0^H R^-1 a0)``.

    Raises
    ------
    numpy.linalg.LinAlgError
        If the covariance is singular.
    """
    x = np.linalg.solve(covariance, steering)
    return gamma * x / np.vdot(steering, x)


class FrostSg:
    """Stochastic-gradient beamformer with constraint re-projection.

    Every snapshot takes one gradient step on the instantaneous output
    power and projects back onto the constraint plane, so feasibility never
    drifts. The step is normalised by the instantaneous input power by
    default, which keeps one ``step_size`` usable across interference
    levels.
    """

    def __init__(
        self,
        steering: np.ndarray,
        gamma: float = 1.0,
        step_size: float = 0.05,
        normalized: bool = True,
    ) -> None:
        if not step_size > 0.0:
            raise ValueError("step_size must be positive")
        steering = np.asarray(steering, dtype=complex)
        m = steering.size
        norm_sq = np.vdot(steering, steering).real
        self.steering = steering
        self.gamma = float(gamma)
        self.step_size = float(step_size)
        self.normalized = bool(normalized)
        self._projector = np.eye(m) - np.outer(steering, steering.conj()) / norm_sq
        self._quiescent = self.gamma * steering / norm_sq
        self.w = self._quiescent.copy()

    def step(self, r: np.ndarray) -> complex:
        y = np.vdot(self.w, r)
        mu = self.step_size
        if self.normalized:
            mu = mu / (np.vdot(r, r).real + 1e-12)
        self.w = self._projector @ (self.w - mu * np.conj(y) * r) + self._quiescent
        return complex(y)


class ConstrainedRls:
    """Exponentially-weighted least-squares beamformer.

    Maintains the inverse covariance estimate directly; the weight vector
    is the constrained solution ``gamma * Q a0 / (a0^H Q a0)`` after every
    rank-one update.
    """

    def __init__(
        self,
        steering: np.ndarray,
        gamma: float = 1.0,
        forgetting: float = 0.998,
        inv_init: float = 1e-2,
    ) -> None:
        if not 0.0 < forgetting <= 1.0:
            raise ValueError("forgetting must lie in (0, 1]")
        if not inv_init > 0.0:
            raise ValueError("inv_init must be positive")
        steering = np.asarray(steering, dtype=complex)
        self.steering = steering
        self.gamma = float(gamma)
        self.forgetting = float(forgetting)
        self._inv = np.eye(steering.size, dtype=complex) / inv_init
        self.w = self.gamma * steering / np.vdot(steering, steering).real

    def step(self, r: np.ndarray) -> complex:
        y = np.vdot(self.w, r)
        qr = self._inv @ r
        gain = qr / (self.forgetting + np.vdot(r, qr).real)
        inv = (self._inv - np.outer(gain, qr.conj())) / self.forgetting
        if not np.all(np.isfinite(inv.view(float))):
            raise FloatingPointError("inverse covariance update produced non-finite values")
        self._inv = 0.5 * (inv + inv.conj().T)  # keep the estimate Hermitian
        x = self._inv @ self.steering
        self.w = self.gamma * x / np.vdot(self.steering, x)
        return complex(y)


class ConstrainedCg:
    """Conjugate-gradient beamformer with the gate forced open.

    Runs the set-membership machinery with a zero bound (every snapshot is
    accepted) and the forgetting factor clamped to a single constant, so
    the two implementations cannot drift apart.
    """

    def __init__(
        self,
        steering: np.ndarray,
        gamma: float = 1.0,
        forgetting: float = 0.998,
        eta: float = 0.5,
        r_hat_init: float = 1e-2,
    ) -> None:
        self._state = SmCgState(
            steering,
            gamma=gamma,
            eta=eta,
            lambda1_min=forgetting,
            lambda1_max=forgetting,
            r_hat_init=r_hat_init,
        )

    @property
    def w(self) -> np.ndarray:
        return self._state.w

    @property
    def state(self) -> SmCgState:
        return self._state

    def step(self, r: np.ndarray) -> StepResult:
        return self._state.step(r, 0.0)
