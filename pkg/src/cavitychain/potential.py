"""Effective potential of the driven cavity-ion system and its derivatives.

Positions are in units of x0 = lambda/4, so the intensity profile seen by
ion j is f(xi_j) = cos^2(pi*xi_j/2) and the optical potential has period 2.
All energies are in hbar*kappa.  The total potential is

    V_tot = eta^2 * arctan(-Delta_eff) + mu*omega^2/2 * sum xi_j^2
            + gamma_coul * sum_{j<k} 1/(xi_k - xi_j)

with Delta_eff = delta_c - C * sum_j f(xi_j), everything in kappa units.
Gradients and Hessians are exact analytic derivatives; the finite-difference
oracle lives only in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

N_IONS = 3

HESSIAN_SOURCES = ("effective", "frozen")


class CoincidentIonsError(ValueError):
    """Positions must be strictly increasing (Coulomb divergence)."""


@dataclass(frozen=True)
class IonConfiguration:
    """Three ion positions in units of x0, strictly increasing."""

    xi: tuple[float, float, float]

    def __post_init__(self):
        xi = tuple(float(v) for v in self.xi)
        if len(xi) != N_IONS:
            raise ValueError(f"expected {N_IONS} positions, got {len(xi)}")
        if not (xi[0] < xi[1] < xi[2]):
            raise CoincidentIonsError(
                f"positions must be strictly increasing, got {xi}")
        object.__setattr__(self, "xi", xi)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.xi, dtype=float)


def _as_xi(cfg) -> np.ndarray:
    if isinstance(cfg, IonConfiguration):
        return cfg.as_array()
    xi = np.asarray(cfg, dtype=float)
    if xi.shape != (N_IONS,):
        raise ValueError(f"expected {N_IONS} positions, got shape {xi.shape}")
    if not (xi[0] < xi[1] < xi[2]):
        raise CoincidentIonsError(
            f"positions must be strictly increasing, got {tuple(xi)}")
    return xi


def _reduced(xi):
    # The optical terms have period 2 in xi; reducing |xi| mod 2 before
    # multiplying by pi keeps them accurate at positions dozens of sites
    # from the origin (np.mod by 2 is exact in floating point).  Working on
    # |xi| also makes the even/odd parity of the profile exact, so mirror
    # configurations produce bitwise-centrosymmetric Hessians.
    return np.mod(np.abs(np.asarray(xi, dtype=float)), 2.0)


def intensity_profile(xi):
    """Optical intensity f(xi) = cos^2(pi*xi/2) at each position."""
    return np.cos(0.5 * math.pi * _reduced(xi)) ** 2


def _profile_d1(xi):
    # d/dxi cos^2(pi xi/2) = -(pi/2) sin(pi xi), odd in xi
    xi = np.asarray(xi, dtype=float)
    return -0.5 * math.pi * np.sign(xi) * np.sin(math.pi * _reduced(xi))


def _profile_d2(xi):
    return -0.5 * math.pi ** 2 * np.cos(math.pi * _reduced(xi))


_PI = math.pi
_HALF_PI = 0.5 * math.pi
_fmod = math.fmod
_cos = math.cos
_sin = math.sin


def _v_scalar(x1, x2, x3, p) -> float:
    c1 = _cos(_HALF_PI * _fmod(x1 if x1 >= 0.0 else -x1, 2.0))
    c2 = _cos(_HALF_PI * _fmod(x2 if x2 >= 0.0 else -x2, 2.0))
    c3 = _cos(_HALF_PI * _fmod(x3 if x3 >= 0.0 else -x3, 2.0))
    delta = p.delta_c - p.c_coop * (c1 * c1 + c2 * c2 + c3 * c3)
    v = p.eta ** 2 * math.atan(-delta)
    v += 0.5 * p.mu * p.omega ** 2 * (x1 * x1 + x2 * x2 + x3 * x3)
    v += p.gamma_coul * (1.0 / (x2 - x1) + 1.0 / (x3 - x2)
                         + 1.0 / (x3 - x1))
    return v


def _grad_scalar(x1, x2, x3, p):
    c = p.c_coop
    r1 = _fmod(x1 if x1 >= 0.0 else -x1, 2.0)
    r2 = _fmod(x2 if x2 >= 0.0 else -x2, 2.0)
    r3 = _fmod(x3 if x3 >= 0.0 else -x3, 2.0)
    c1 = _cos(_HALF_PI * r1)
    c2 = _cos(_HALF_PI * r2)
    c3 = _cos(_HALF_PI * r3)
    delta = p.delta_c - c * (c1 * c1 + c2 * c2 + c3 * c3)
    # d(delta)/dx_j = c * (pi/2) * sin(pi x_j), odd in x_j
    s1 = _HALF_PI * _sin(_PI * r1)
    s2 = _HALF_PI * _sin(_PI * r2)
    s3 = _HALF_PI * _sin(_PI * r3)
    d1 = c * (s1 if x1 > 0.0 else (-s1 if x1 < 0.0 else 0.0))
    d2 = c * (s2 if x2 > 0.0 else (-s2 if x2 < 0.0 else 0.0))
    d3 = c * (s3 if x3 > 0.0 else (-s3 if x3 < 0.0 else 0.0))
    pref = -p.eta ** 2 / (1.0 + delta * delta)
    trap = p.mu * p.omega ** 2
    i12 = p.gamma_coul / (x2 - x1) ** 2
    i13 = p.gamma_coul / (x3 - x1) ** 2
    i23 = p.gamma_coul / (x3 - x2) ** 2
    g1 = pref * d1 + trap * x1 + i12 + i13
    g2 = pref * d2 + trap * x2 - i12 + i23
    g3 = pref * d3 + trap * x3 - i13 - i23
    return g1, g2, g3


def _hess_scalar(x1, x2, x3, p):
    """Unique entries (h11, h22, h33, h12, h13, h23) of the Hessian."""
    c = p.c_coop
    r1 = _fmod(x1 if x1 >= 0.0 else -x1, 2.0)
    r2 = _fmod(x2 if x2 >= 0.0 else -x2, 2.0)
    r3 = _fmod(x3 if x3 >= 0.0 else -x3, 2.0)
    cc1 = _cos(_HALF_PI * r1)
    cc2 = _cos(_HALF_PI * r2)
    cc3 = _cos(_HALF_PI * r3)
    delta = p.delta_c - c * (cc1 * cc1 + cc2 * cc2 + cc3 * cc3)
    one = 1.0 + delta * delta
    s1 = _HALF_PI * _sin(_PI * r1)
    s2 = _HALF_PI * _sin(_PI * r2)
    s3 = _HALF_PI * _sin(_PI * r3)
    d1 = c * (s1 if x1 > 0.0 else (-s1 if x1 < 0.0 else 0.0))
    d2 = c * (s2 if x2 > 0.0 else (-s2 if x2 < 0.0 else 0.0))
    d3 = c * (s3 if x3 > 0.0 else (-s3 if x3 < 0.0 else 0.0))
    # second derivative of delta: +c (pi^2/2) cos(pi x), even in x
    q1 = c * _HALF_PI * _PI * _cos(_PI * r1)
    q2 = c * _HALF_PI * _PI * _cos(_PI * r2)
    q3 = c * _HALF_PI * _PI * _cos(_PI * r3)
    back = 2.0 * delta * p.eta ** 2 / (one * one)
    curv = -p.eta ** 2 / one
    trap = p.mu * p.omega ** 2
    c12 = 2.0 * p.gamma_coul / (x2 - x1) ** 3
    c13 = 2.0 * p.gamma_coul / (x3 - x1) ** 3
    c23 = 2.0 * p.gamma_coul / (x3 - x2) ** 3
    h11 = back * d1 * d1 + curv * q1 + trap + c12 + c13
    h22 = back * d2 * d2 + curv * q2 + trap + c12 + c23
    h33 = back * d3 * d3 + curv * q3 + trap + c13 + c23
    h12 = back * d1 * d2 - c12
    h13 = back * d1 * d3 - c13
    h23 = back * d2 * d3 - c23
    return h11, h22, h33, h12, h13, h23


def f_bar(cfg) -> float:
    """Localization measure: sum of the intensity profile over the ions.

    Ranges from 0 (all ions at optical minima) to 3 (all at maxima).
    """
    return float(np.sum(intensity_profile(_as_xi(cfg))))


def delta_eff(cfg, p) -> float:
    """Effective cavity detuning Delta_eff/kappa at a configuration."""
    return p.delta_c - p.c_coop * f_bar(cfg)


def delta_eff_gradient(cfg, p) -> np.ndarray:
    """d(Delta_eff/kappa)/dxi_j, one entry per ion."""
    return -p.c_coop * _profile_d1(_as_xi(cfg))


def v_ion(cfg, p) -> float:
    """Trap plus Coulomb potential, in hbar*kappa."""
    x1, x2, x3 = _as_xi(cfg)
    trap = 0.5 * p.mu * p.omega ** 2 * (x1 * x1 + x2 * x2 + x3 * x3)
    coul = p.gamma_coul * (1.0 / (x2 - x1) + 1.0 / (x3 - x2)
                           + 1.0 / (x3 - x1))
    return trap + coul


def v_tot(cfg, p) -> float:
    """Total effective potential in hbar*kappa (optical + trap + Coulomb)."""
    x1, x2, x3 = _as_xi(cfg)
    return _v_scalar(x1, x2, x3, p)


def gradient(cfg, p) -> np.ndarray:
    """Exact gradient of v_tot with respect to the positions."""
    x1, x2, x3 = _as_xi(cfg)
    return np.array(_grad_scalar(x1, x2, x3, p))


def hessian(cfg, p, source: str = "effective") -> np.ndarray:
    """Exact Hessian of the total potential.

    Parameters
    ----------
    cfg : IonConfiguration or array-like
        Positions in units of x0.
    p : DimensionlessParams
    source : {"effective", "frozen"}
        "effective" differentiates the arctan optical potential, including
        the back-action of the configuration on the photon number.
        "frozen" instead uses the optical potential at the photon number of
        this configuration, |a|^2 * C * sum f(xi_j), dropping that
        back-action term.  Equilibria always come from the effective
        potential; the switch only changes the fluctuation analysis.
    """
    if source not in HESSIAN_SOURCES:
        raise ValueError(f"unknown hessian source {source!r}")
    x = _as_xi(cfg)
    if source == "effective":
        h11, h22, h33, h12, h13, h23 = _hess_scalar(x[0], x[1], x[2], p)
        return np.array([[h11, h12, h13],
                         [h12, h22, h23],
                         [h13, h23, h33]])

    delta = p.delta_c - p.c_coop * float(np.sum(intensity_profile(x)))
    photon = p.eta ** 2 / (1.0 + delta * delta)
    # frozen photon number: V_opt = |a|^2 * C * sum f, curvature only
    dd2 = -p.c_coop * _profile_d2(x)
    h = -photon * np.diag(dd2)
    h += p.mu * p.omega ** 2 * np.eye(N_IONS)
    for j in range(N_IONS):
        for k in range(j + 1, N_IONS):
            inv3 = 2.0 * p.gamma_coul / (x[k] - x[j]) ** 3
            h[j, j] += inv3
            h[k, k] += inv3
            h[j, k] -= inv3
            h[k, j] -= inv3
    return h
