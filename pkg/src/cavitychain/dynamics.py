"""Linearized drift/diffusion model and its steady-state covariance.

The fluctuations of (cavity quadratures, three vibrational modes) obey
du/dt = A u + noise with quadrature order (X_c, P_c, x1, p1, x2, p2, x3, p3)
and, in kappa units,

    dX_c = -X_c - delta_bar P_c
    dP_c = delta_bar X_c - P_c - 2 sum_n g_n x_n
    dx_n = omega_n p_n - Gamma/2 x_n
    dp_n = -omega_n x_n - Gamma/2 p_n - 2 g_n X_c

where g_n = |a_bar| c_n (the cavity phase is rotated so a_bar is real and
non-negative, a local symplectic operation).  The diffusion matrix is
diag(1, 1, Gamma*(N+1/2) x 6).  The steady state solves the Lyapunov
equation A sigma + sigma A^T + D = 0 in the convention vacuum = I/2.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_continuous_lyapunov

from .equilibrium import ClassicalEquilibrium
from .modes import ModeData

N_MODES = 4  # cavity + three vibrational modes

MODE_LABELS = ("cavity", "mode1", "mode2", "mode3")
ION_LABELS = ("cavity", "ion1", "ion2", "ion3")

LYAP_RESIDUAL_TOL = 1e-10
PHYSICALITY_TOL = 1e-9


class UnstableModelError(RuntimeError):
    """The drift matrix has an eigenvalue with non-negative real part."""


class LyapunovError(RuntimeError):
    """The Lyapunov solve failed to reach the required residual."""


def symplectic_form(n_modes: int) -> np.ndarray:
    """Direct sum of [[0, 1], [-1, 0]] blocks."""
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    return omega


@dataclass(frozen=True)
class LinearModel:
    """Drift and diffusion of the linearized fluctuation dynamics."""

    A: np.ndarray          # (8, 8) drift, kappa units
    D: np.ndarray          # (8, 8) diagonal diffusion
    alpha: float           # |a_bar| entering the couplings
    g_n: np.ndarray        # (3,) effective couplings alpha * c_n
    delta_bar: float
    stable: bool           # all eigenvalues of A in the open left half-plane


@dataclass(frozen=True)
class GaussianState:
    """Covariance matrix with mode labels; vacuum variance is 1/2."""

    sigma: np.ndarray
    basis: str             # "modes" or "ions"
    labels: tuple[str, ...]

    @property
    def n_modes(self) -> int:
        return self.sigma.shape[0] // 2


def build_linear_model(eq: ClassicalEquilibrium, md: ModeData, p,
                       ) -> LinearModel:
    """Assemble the 8x8 drift and diffusion matrices at an equilibrium.

    The returned model carries a stability flag instead of raising, so
    sweeps can record unstable points as data.  A positive cavity detuning
    is accepted with a warning (it tends to heat the motion).
    """
    if p.delta_c > 0.0:
        warnings.warn("delta_c > 0: cavity heating regime, expect unstable "
                      "drift matrices", stacklevel=2)
    alpha = abs(eq.a_bar)
    g_n = alpha * md.c_n
    delta_bar = eq.delta_bar
    gam = p.gamma_motion

    a = np.zeros((8, 8))
    a[0, 0] = -1.0
    a[0, 1] = -delta_bar
    a[1, 0] = delta_bar
    a[1, 1] = -1.0
    for n in range(3):
        ix, ip = 2 + 2 * n, 3 + 2 * n
        a[1, ix] = -2.0 * g_n[n]
        a[ix, ix] = -0.5 * gam
        a[ix, ip] = md.omega_n[n]
        a[ip, ix] = -md.omega_n[n]
        a[ip, ip] = -0.5 * gam
        a[ip, 0] = -2.0 * g_n[n]

    d = np.zeros(8)
    d[0] = d[1] = 1.0
    d[2:] = gam * (p.n_thermal + 0.5)

    stable = bool(np.max(np.linalg.eigvals(a).real) < 0.0)
    return LinearModel(A=a, D=np.diag(d), alpha=float(alpha),
                       g_n=g_n, delta_bar=float(delta_bar), stable=stable)


def steady_state_covariance(model: LinearModel) -> GaussianState:
    """Solve A sigma + sigma A^T + D = 0 for the steady-state covariance.

    One step of iterative refinement is applied if needed to push the
    residual below 1e-10 (Frobenius); the result is checked against the
    physicality condition sigma + (i/2) Omega >= 0.

    Raises
    ------
    UnstableModelError
        If the model's stability flag is false.
    LyapunovError
        If the residual or physicality requirement cannot be met.
    """
    if not model.stable:
        raise UnstableModelError("drift matrix is not Hurwitz; "
                                 "no steady state exists")
    a, d = model.A, model.D
    sigma = solve_continuous_lyapunov(a, -d)
    sigma = 0.5 * (sigma + sigma.T)
    for _ in range(3):
        residual = a @ sigma + sigma @ a.T + d
        if np.linalg.norm(residual) < LYAP_RESIDUAL_TOL:
            break
        corr = solve_continuous_lyapunov(a, -residual)
        sigma = 0.5 * ((sigma + corr) + (sigma + corr).T)
    else:
        residual = a @ sigma + sigma @ a.T + d
        if np.linalg.norm(residual) >= LYAP_RESIDUAL_TOL:
            raise LyapunovError(
                f"Lyapunov residual {np.linalg.norm(residual):.3e} above "
                f"{LYAP_RESIDUAL_TOL:.0e}")

    omega = symplectic_form(N_MODES)
    min_eig = float(np.linalg.eigvalsh(sigma + 0.5j * omega).min().real)
    if min_eig < -PHYSICALITY_TOL:
        raise LyapunovError(
            f"steady state violates physicality by {min_eig:.3e}")
    return GaussianState(sigma=sigma, basis="modes", labels=MODE_LABELS)


def balanced_local_reference(md: ModeData) -> float:
    """Geometric mean of the mode frequencies.

    A local oscillator scale matched to the actual confinement; changing
    the reference is a local squeezing and leaves every entanglement
    measure invariant, but combination witnesses evaluated on the local
    quadratures are most sensitive near this balanced choice.
    """
    return float(np.prod(md.omega_n) ** (1.0 / 3.0))


def local_basis_transform(md: ModeData, p, omega_ref: float | None = None,
                          ) -> np.ndarray:
    """Symplectic map from mode quadratures to local per-ion quadratures.

    q_s = sum_n M_sn sqrt(omega_ref/omega_n) x_n and
    p_s = sum_n M_sn sqrt(omega_n/omega_ref) p_n, identity on the cavity
    block.  The reference scale defaults to the trap frequency.
    """
    if omega_ref is None:
        omega_ref = p.omega
    s = np.zeros((8, 8))
    s[0, 0] = s[1, 1] = 1.0
    for i in range(3):          # ion index
        for n in range(3):      # mode index
            s[2 + 2 * i, 2 + 2 * n] = md.M[i, n] * np.sqrt(
                omega_ref / md.omega_n[n])
            s[3 + 2 * i, 3 + 2 * n] = md.M[i, n] * np.sqrt(
                md.omega_n[n] / omega_ref)
    return s


def to_local_basis(state: GaussianState, md: ModeData, p,
                   omega_ref: float | None = None) -> GaussianState:
    """Re-express a mode-basis state in terms of the individual ions."""
    if state.basis != "modes":
        raise ValueError(f"expected a mode-basis state, got {state.basis!r}")
    s = local_basis_transform(md, p, omega_ref)
    sigma = s @ state.sigma @ s.T
    return GaussianState(sigma=0.5 * (sigma + sigma.T), basis="ions",
                         labels=ION_LABELS)
