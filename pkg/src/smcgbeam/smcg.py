"""Set-membership conjugate-gradient beamformer with a distortionless constraint.

The filter minimises the output power ``w^H R w`` subject to
``w^H a0 = gamma`` and refreshes its state only when the instantaneous
output magnitude exceeds an error bound ``delta`` (the innovation gate).
Each accepted snapshot performs a single conjugate-gradient iteration on a
rank-one-updated covariance estimate:

    lambda1 : data-dependent forgetting factor weighting the rank-one term
    R       : R + lambda1 * r r^H
    alpha   : line-search step along the current direction p
    v       : v + alpha p          (unnormalised solution of R v = a0)
    g       : negative gradient a0 - R v, maintained recursively
    beta    : direction update keeping p(i+1) conjugate to p(i) under R
    w       : gamma * v / (a0^H v)

The forgetting factor is chosen so that the post-update solution lands on
the boundary of the constraint set, i.e. ``|v^H r|^2 = delta^2 |v^H a0|^2``
with ``v`` evaluated along the line search. Writing that condition with the
pre-update covariance gives a real quadratic in lambda1; its root is
returned through the sign-normalised ratio form (phases of the two complex
affine forms divided out at the solution), which is exact whenever the
quadratic has a real root. A gate that cannot be met by any admissible
forgetting factor is reported as degenerate and the caller falls back to
the upper clamp.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LAMBDA1_MIN_DEFAULT = 0.1
LAMBDA1_MAX_DEFAULT = 0.999
R_HAT_INIT_DEFAULT = 1e-2

# Absolute floor under which the sign-weighted ratio denominator is treated
# as vanishing and the closed form is declared unusable.
_DENOM_FLOOR = 1e-12


class DegenerateLambdaError(RuntimeError):
    """The gate-boundary condition has no usable closed-form solution."""


def _csign(z: complex) -> complex:
    """Complex sign ``z / |z|``, defined as 1 at the origin."""
    mag = abs(z)
    return z / mag if mag > 0.0 else 1.0 + 0.0j


def lambda1_root(
    v: np.ndarray,
    g: np.ndarray,
    p: np.ndarray,
    r_hat: np.ndarray,
    steering: np.ndarray,
    r: np.ndarray,
    delta: float,
    eta: float = 0.5,
) -> float:
    """Unclamped forgetting factor meeting the gate-boundary condition.

    All quadratic forms are evaluated with the pre-update covariance
    estimate ``r_hat``, which breaks the circular dependence between the
    forgetting factor and the covariance it scales. Raises
    :class:`DegenerateLambdaError` when the boundary condition has no real
    solution or the ratio denominator vanishes.
    """
    a_quad = np.vdot(p, r_hat @ p).real
    vr = np.vdot(v, r)
    va = np.vdot(v, steering)
    gp = np.vdot(g, p)  # g^H p
    pr = np.vdot(p, r)
    pa = np.vdot(p, steering)
    rp = np.conj(pr)

    tau1 = delta * va * a_quad + delta * (1.0 - eta) * gp * pa
    tau2 = vr * rp * pa
    tau3 = vr * a_quad + (1.0 - eta) * gp * pr
    tau4 = vr * rp * pr

    # |tau3 - lam tau4|^2 = |tau1 - lam delta tau2|^2, a real quadratic.
    qa = abs(tau4) ** 2 - delta ** 2 * abs(tau2) ** 2
    qb = 2.0 * (delta * (tau1 * np.conj(tau2)).real - (tau3 * np.conj(tau4)).real)
    qc = abs(tau3) ** 2 - abs(tau1) ** 2

    scale = max(abs(qa), abs(qb), abs(qc))
    if scale == 0.0:
        raise DegenerateLambdaError("gate condition independent of lambda1")
    if abs(qa) <= 1e-14 * scale:
        if abs(qb) <= 1e-14 * scale:
            raise DegenerateLambdaError("gate condition independent of lambda1")
        roots = [-qc / qb]
    else:
        disc = qb * qb - 4.0 * qa * qc
        if disc < 0.0:
            raise DegenerateLambdaError("no real solution to the gate condition")
        sq = float(np.sqrt(disc))
        q = -0.5 * (qb + sq) if qb >= 0.0 else -0.5 * (qb - sq)
        roots = [q / qa, qc / q] if q != 0.0 else [0.0]

    in_range = [x for x in roots if 0.0 < x <= 1.0]
    if in_range:
        lam = max(in_range)
    else:
        # keep the root nearest the admissible interval; clamping finishes the job
        lam = min(roots, key=lambda x: abs(x - 1.0) if x > 1.0 else abs(x))

    # Sign-weighted ratio form evaluated at the solution; exactness of the
    # root makes the ratio real, and a vanishing denominator flags a
    # boundary condition the closed form cannot express.
    s_a = np.conj(_csign(tau1 - lam * delta * tau2))
    s_r = np.conj(_csign(tau3 - lam * tau4))
    num = tau1 * s_a - tau3 * s_r
    den = delta * tau2 * s_a - tau4 * s_r
    if abs(den) < _DENOM_FLOOR:
        raise DegenerateLambdaError("vanishing denominator in the ratio form")
    return float((num / den).real)


@dataclass
class StepResult:
    """Outcome of one gated snapshot."""

    y: complex
    delta: float
    updated: bool
    lambda1: float | None
    alpha: float | None
    beta: complex | None
    w: np.ndarray
    w_degenerate: bool = False


class SmCgState:
    """State of the set-membership conjugate-gradient beamformer.

    Parameters
    ----------
    steering : numpy.ndarray
        Array response of the protected direction.
    gamma : float
        Constrained response gain.
    eta : float
        Line-search damping in [0, 0.5]; keeps the direction/gradient
        inner product contracting without sign reversal.
    lambda1_min, lambda1_max : float
        Clamp applied to the data-dependent forgetting factor.
    r_hat_init : float
        Diagonal loading of the initial covariance estimate.
    """

    def __init__(
        self,
        steering: np.ndarray,
        gamma: float = 1.0,
        eta: float = 0.5,
        lambda1_min: float = LAMBDA1_MIN_DEFAULT,
        lambda1_max: float = LAMBDA1_MAX_DEFAULT,
        r_hat_init: float = R_HAT_INIT_DEFAULT,
    ) -> None:
        steering = np.asarray(steering, dtype=complex)
        if steering.ndim != 1 or steering.size < 1:
            raise ValueError("steering must be a non-empty vector")
        if not np.all(np.isfinite(steering.view(float))):
            raise ValueError("steering must be finite")
        norm_sq = np.vdot(steering, steering).real
        if norm_sq == 0.0:
            raise ValueError("steering must be nonzero")
        if not 0.0 <= eta <= 0.5:
            raise ValueError("eta must lie in [0, 0.5]")
        if not 0.0 < lambda1_min <= lambda1_max <= 1.0:
            raise ValueError("require 0 < lambda1_min <= lambda1_max <= 1")
        if not r_hat_init > 0.0:
            raise ValueError("r_hat_init must be positive")

        self.steering = steering
        self.gamma = float(gamma)
        self.eta = float(eta)
        self.lambda1_min = float(lambda1_min)
        self.lambda1_max = float(lambda1_max)

        m = steering.size
        self.v = np.zeros(m, dtype=complex)
        self.g = steering.copy()
        self.p = steering.copy()
        self.r_hat = r_hat_init * np.eye(m, dtype=complex)
        self.w = self.gamma * steering / norm_sq
        self.update_count = 0
        self.step_count = 0

    @property
    def n_sensors(self) -> int:
        return self.steering.size

    def output(self, r: np.ndarray) -> complex:
        """Beamformer output ``w^H r`` for one snapshot."""
        if len(r) != self.n_sensors:
            raise ValueError("snapshot length does not match the array")
        return complex(np.vdot(self.w, r))

    def compute_lambda1(self, r: np.ndarray, delta: float) -> float:
        """Clamped forgetting factor for an accepted snapshot."""
        lam = lambda1_root(
            self.v, self.g, self.p, self.r_hat, self.steering, r, delta, self.eta
        )
        return min(max(lam, self.lambda1_min), self.lambda1_max)

    def compute_alpha(self, r: np.ndarray, lambda1: float) -> float:
        """Line-search step along ``p`` under the updated covariance.

        The denominator uses the post-update estimate
        ``r_hat + lambda1 r r^H`` without forming it; the numerator takes
        the real part of each inner product so the step is real and the
        direction/gradient product contracts by exactly ``eta`` per update.
        """
        pr = np.vdot(self.p, r)
        denom = np.vdot(self.p, self.r_hat @ self.p).real + lambda1 * abs(pr) ** 2
        if not denom > 0.0:
            raise ValueError("covariance estimate lost positive definiteness")
        num = (1.0 - self.eta) * np.vdot(self.p, self.g).real
        num -= lambda1 * (pr * np.vdot(r, self.v)).real
        return float(num / denom)

    def step(self, r: np.ndarray, delta: float) -> StepResult:
        """Process one snapshot against the bound ``delta``.

        The state mutates only when ``|y|^2`` strictly exceeds
        ``delta^2``; rejected snapshots leave every field untouched.
        """
        if delta < 0.0:
            raise ValueError("delta must be non-negative")
        r = np.asarray(r, dtype=complex)
        y = self.output(r)
        self.step_count += 1
        if not abs(y) ** 2 > delta ** 2:
            return StepResult(
                y=y, delta=delta, updated=False,
                lambda1=None, alpha=None, beta=None, w=self.w.copy(),
            )

        try:
            lam = self.compute_lambda1(r, delta)
        except DegenerateLambdaError:
            lam = self.lambda1_max
        alpha = self.compute_alpha(r, lam)

        # all scalars resolved; commit the state in the recursion order
        rv = np.vdot(r, self.v)  # r^H v(i-1), consumed by the gradient update
        self.r_hat += lam * np.outer(r, r.conj())
        rp = self.r_hat @ self.p
        self.v = self.v + alpha * self.p
        self.g = self.g - alpha * rp - lam * rv * r
        beta = complex(-np.vdot(self.p, self.r_hat @ self.g) / np.vdot(self.p, rp).real)
        self.p = self.g + beta * self.p

        degenerate = False
        av = np.vdot(self.steering, self.v)
        if av != 0.0:
            self.w = self.gamma * self.v / av
        else:
            degenerate = True  # direction lost the constrained component
        self.update_count += 1
        return StepResult(
            y=y, delta=delta, updated=True,
            lambda1=lam, alpha=alpha, beta=beta, w=self.w.copy(),
            w_degenerate=degenerate,
        )
