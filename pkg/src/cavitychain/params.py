"""Physical parameters and conversion to the internal dimensionless system.

Internal unit system: hbar = 1, frequencies and rates in units of the cavity
half-linewidth kappa, lengths in units of the reference length x0 = lambda/4
(a quarter of the optical wavelength), energies in hbar*kappa, time in
1/kappa.  With x0 = lambda/4 the product k*x0 equals pi/2 exactly, so the
optical intensity profile along the chain is cos^2(pi*xi/2) for a position
xi in units of x0.

Everything downstream of this module consumes only ``DimensionlessParams``;
no SI quantity crosses that boundary.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

# CODATA-2018, fixed for bit-stable outputs
HBAR = 1.054571817e-34      # J s
EPSILON_0 = 8.8541878128e-12  # F / m

KX0 = math.pi / 2.0

# Convenience constants for the default ion species (171Yb+ driven near 369 nm)
ATOMIC_MASS_KG = 1.66053906660e-27
ELEMENTARY_CHARGE = 1.602176634e-19


class InvalidParameterError(ValueError):
    """Raised when a physical parameter is outside its allowed range."""


@dataclass(frozen=True)
class SIParams:
    """Experimental parameters in SI units.

    Parameters
    ----------
    ion_mass : float
        Ion mass in kg.
    ion_charge : float
        Ion charge in C.
    wavelength : float
        Optical wavelength in m.
    kappa : float
        Cavity half-linewidth in rad/s (the photon number decays at 2*kappa).
    cooperativity : float
        Dimensionless back-action strength C; the dispersive shift per ion
        is U0 = C*kappa.
    delta_c : float
        Laser-cavity detuning in rad/s (any sign; positive values are
        accepted with a warning).
    eta : float
        Pump strength in rad/s, >= 0.
    trap_omega : float
        Axial trap frequency in rad/s.
    gamma_motion : float
        Motional noise rate in rad/s (uniform across vibrational modes).
    n_thermal : float
        Mean excitation number of the motional noise bath.
    """

    ion_mass: float
    ion_charge: float
    wavelength: float
    kappa: float
    cooperativity: float
    delta_c: float
    eta: float
    trap_omega: float
    gamma_motion: float
    n_thermal: float

    def __post_init__(self):
        positive = {
            "ion_mass": self.ion_mass,
            "wavelength": self.wavelength,
            "kappa": self.kappa,
            "cooperativity": self.cooperativity,
            "trap_omega": self.trap_omega,
            "gamma_motion": self.gamma_motion,
        }
        for name, value in positive.items():
            if not value > 0.0:
                raise InvalidParameterError(f"{name} must be > 0, got {value!r}")
        if self.ion_charge == 0.0:
            raise InvalidParameterError("ion_charge must be nonzero")
        if self.eta < 0.0:
            raise InvalidParameterError(f"eta must be >= 0, got {self.eta!r}")
        if self.n_thermal < 0.0:
            raise InvalidParameterError(
                f"n_thermal must be >= 0, got {self.n_thermal!r}")
        if self.delta_c > 0.0:
            warnings.warn("delta_c > 0 heats the motion through the cavity; "
                          "results may be unstable", stacklevel=2)


@dataclass(frozen=True)
class DimensionlessParams:
    """All physical inputs reduced to the internal unit system.

    ``mu`` is the dimensionless ion mass m*kappa*x0^2/hbar, ``gamma_coul``
    the Coulomb strength q^2/(4 pi eps0 x0 hbar kappa).  ``kappa_si`` and
    ``wavelength_si`` carry the scales needed to invert the reduction; they
    are provenance metadata, not simulation inputs.
    """

    mu: float
    gamma_coul: float
    c_coop: float
    u0: float
    delta_c: float
    eta: float
    omega: float
    gamma_motion: float
    n_thermal: float
    kx0: float = KX0
    kappa_si: float = float("nan")
    wavelength_si: float = float("nan")

    def with_(self, **changes) -> "DimensionlessParams":
        """Return a copy with the given fields replaced.

        Setting ``c_coop`` keeps ``u0`` in lockstep (U0 = C*kappa).
        """
        if "c_coop" in changes and "u0" not in changes:
            changes["u0"] = changes["c_coop"]
        return replace(self, **changes)


def to_dimensionless(si: SIParams) -> DimensionlessParams:
    """Reduce SI parameters to the internal unit system.

    Parameters
    ----------
    si : SIParams
        Validated experimental parameters.

    Returns
    -------
    DimensionlessParams
    """
    x0 = si.wavelength / 4.0
    mu = si.ion_mass * si.kappa * x0 * x0 / HBAR
    gamma_coul = si.ion_charge ** 2 / (
        4.0 * math.pi * EPSILON_0 * x0 * HBAR * si.kappa)
    return DimensionlessParams(
        mu=mu,
        gamma_coul=gamma_coul,
        c_coop=si.cooperativity,
        u0=si.cooperativity,
        delta_c=si.delta_c / si.kappa,
        eta=si.eta / si.kappa,
        omega=si.trap_omega / si.kappa,
        gamma_motion=si.gamma_motion / si.kappa,
        n_thermal=si.n_thermal,
        kx0=KX0,
        kappa_si=si.kappa,
        wavelength_si=si.wavelength,
    )


def to_si(p: DimensionlessParams) -> SIParams:
    """Invert :func:`to_dimensionless` using the stored kappa and wavelength."""
    if not (p.kappa_si > 0.0 and p.wavelength_si > 0.0):
        raise InvalidParameterError(
            "dimensionless parameters carry no SI scales; cannot invert")
    x0 = p.wavelength_si / 4.0
    mass = p.mu * HBAR / (p.kappa_si * x0 * x0)
    charge = math.sqrt(
        p.gamma_coul * 4.0 * math.pi * EPSILON_0 * x0 * HBAR * p.kappa_si)
    return SIParams(
        ion_mass=mass,
        ion_charge=charge,
        wavelength=p.wavelength_si,
        kappa=p.kappa_si,
        cooperativity=p.c_coop,
        delta_c=p.delta_c * p.kappa_si,
        eta=p.eta * p.kappa_si,
        trap_omega=p.omega * p.kappa_si,
        gamma_motion=p.gamma_motion * p.kappa_si,
        n_thermal=p.n_thermal,
    )


def d0_from_omega(p: DimensionlessParams) -> float:
    """Free interparticle distance d0/x0 of the three-ion chain.

    Solves (d0/x0)^3 = (5/4) * gamma_coul / (mu * (omega/kappa)^2), the
    equilibrium spacing of three equal ions in a harmonic trap without any
    optical field.
    """
    if not p.omega > 0.0:
        raise InvalidParameterError(f"omega must be > 0, got {p.omega!r}")
    return (1.25 * p.gamma_coul / (p.mu * p.omega * p.omega)) ** (1.0 / 3.0)


def omega_from_d0(d0_ratio: float, p: DimensionlessParams) -> float:
    """Trap frequency omega/kappa that yields the given d0/x0 (inverse map)."""
    if not d0_ratio > 0.0:
        raise InvalidParameterError(f"d0_ratio must be > 0, got {d0_ratio!r}")
    return math.sqrt(1.25 * p.gamma_coul / (p.mu * d0_ratio ** 3))


def default_si_params(**overrides) -> SIParams:
    """Baseline setup: 171Yb+ at 369 nm, kappa/2pi = 0.2 MHz, C = 0.5.

    Motional noise acts at 1e-6*kappa with mean excitation 10; the trap
    frequency defaults to 2pi*0.5 MHz and is usually overridden through a
    target d0/x0.  Keyword arguments replace individual fields.
    """
    kappa = 2.0 * math.pi * 0.2e6
    values = dict(
        ion_mass=171.0 * ATOMIC_MASS_KG,
        ion_charge=ELEMENTARY_CHARGE,
        wavelength=369e-9,
        kappa=kappa,
        cooperativity=0.5,
        delta_c=0.0,
        eta=0.0,
        trap_omega=2.0 * math.pi * 0.5e6,
        gamma_motion=1e-6 * kappa,
        n_thermal=10.0,
    )
    values.update(overrides)
    return SIParams(**values)


def default_params(**dimensionless_overrides) -> DimensionlessParams:
    """Dimensionless baseline; keyword arguments override reduced fields.

    ``d0_ratio`` is accepted as a pseudo-field and converted to ``omega``.
    """
    p = to_dimensionless(default_si_params())
    d0_ratio = dimensionless_overrides.pop("d0_ratio", None)
    if dimensionless_overrides:
        p = p.with_(**dimensionless_overrides)
    if d0_ratio is not None:
        p = p.with_(omega=omega_from_d0(d0_ratio, p))
    return p


def read_config(path: str) -> dict:
    """Parse a flat key=value run-configuration file.

    Blank lines and lines starting with '#' are ignored.  Values are kept
    as strings; interpretation is up to the caller (the CLI).
    """
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise InvalidParameterError(
                    f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out
