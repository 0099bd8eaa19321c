"""Normal modes of the linearized ion motion at an equilibrium.

The dimensionless Hessian of the total potential is diagonalized as
K u = mu * (omega_n/kappa)^2 u.  Mode vectors are the columns of an
orthogonal matrix M, sorted by increasing frequency, with each sign fixed
so the overlap with the corresponding free-chain reference mode is
non-negative.  The coupling of mode n to the cavity field fluctuations is

    c_n / kappa = -(2 mu omega_n/kappa)^(-1/2) * sum_s M_sn d(Delta_eff)/dxi_s.

For an exactly mirror-symmetric configuration the Hessian is
centrosymmetric and is diagonalized in its symmetric/antisymmetric blocks,
which makes the antisymmetric mode (1, 0, -1)/sqrt(2) exact and the
couplings c_1, c_3 vanish identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import potential
from .equilibrium import ClassicalEquilibrium

# Free-chain mode vectors (center of mass, stretch, Egyptian), ascending
# frequency; ratios 1 : sqrt(3) : sqrt(29/5).
REFERENCE_MODES = np.array([
    [1.0 / math.sqrt(3.0),  1.0 / math.sqrt(2.0),  1.0 / math.sqrt(6.0)],
    [1.0 / math.sqrt(3.0),  0.0,                  -2.0 / math.sqrt(6.0)],
    [1.0 / math.sqrt(3.0), -1.0 / math.sqrt(2.0),  1.0 / math.sqrt(6.0)],
])


class UnstableConfigurationError(RuntimeError):
    """The Hessian has a non-positive eigenvalue; no normal modes exist."""


@dataclass(frozen=True)
class ModeData:
    """Mode frequencies (kappa units), mode matrix, cavity couplings and
    overlaps with the free-chain reference modes."""

    omega_n: np.ndarray   # (3,) ascending
    M: np.ndarray         # (3, 3), columns are mode vectors
    c_n: np.ndarray       # (3,) couplings in kappa units
    overlaps: np.ndarray  # (3,) in [0, 1]


def _centrosymmetric_eig(h: np.ndarray):
    """Eigendecomposition split into mirror-antisymmetric and symmetric
    subspaces; valid when h[0,0] == h[2,2] and h[0,1] == h[1,2]."""
    lam_anti = h[0, 0] - h[0, 2]
    v_anti = np.array([1.0, 0.0, -1.0]) / math.sqrt(2.0)

    block = np.array([[h[0, 0] + h[0, 2], math.sqrt(2.0) * h[0, 1]],
                      [math.sqrt(2.0) * h[0, 1], h[1, 1]]])
    lam_sym, w = np.linalg.eigh(block)
    e_a = np.array([1.0, 0.0, 1.0]) / math.sqrt(2.0)
    e_b = np.array([0.0, 1.0, 0.0])
    vecs_sym = [w[0, i] * e_a + w[1, i] * e_b for i in range(2)]

    lams = np.array([lam_sym[0], lam_sym[1], lam_anti])
    vecs = np.column_stack([vecs_sym[0], vecs_sym[1], v_anti])
    order = np.argsort(lams, kind="stable")
    return lams[order], vecs[:, order]


def normal_modes(eq: ClassicalEquilibrium, p,
                 hessian_source: str = "effective") -> ModeData:
    """Normal-mode data at a stable equilibrium.

    Parameters
    ----------
    eq : ClassicalEquilibrium
        Must have a positive-definite Hessian.
    p : DimensionlessParams
    hessian_source : {"effective", "frozen"}
        Which curvature of the optical potential enters the mode analysis;
        see :func:`cavitychain.potential.hessian`.

    Raises
    ------
    UnstableConfigurationError
        If any Hessian eigenvalue is non-positive.
    """
    xi = eq.xi
    h = potential.hessian(xi, p, source=hessian_source)

    if xi[1] == 0.0 and xi[0] == -xi[2]:
        lams, vecs = _centrosymmetric_eig(h)
    else:
        lams, vecs = np.linalg.eigh(h)

    if lams[0] <= 0.0:
        raise UnstableConfigurationError(
            f"non-positive Hessian eigenvalue {lams[0]:.3e} at {tuple(xi)}")

    omega_n = np.sqrt(lams / p.mu)

    # fix each mode sign against its reference vector
    for n in range(3):
        if float(vecs[:, n] @ REFERENCE_MODES[:, n]) < 0.0:
            vecs[:, n] = -vecs[:, n]
    overlaps = np.minimum(
        np.abs(np.einsum("sn,sn->n", vecs, REFERENCE_MODES)), 1.0)

    grad_delta = potential.delta_eff_gradient(xi, p)
    c_n = -(vecs.T @ grad_delta) / np.sqrt(2.0 * p.mu * omega_n)

    return ModeData(omega_n=omega_n, M=vecs, c_n=c_n, overlaps=overlaps)
