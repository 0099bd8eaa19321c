import math

import numpy as np
import pytest
from scipy.optimize import minimize

from cavitychain import (InvalidParameterError, d0_from_omega,
                         default_params, default_si_params, omega_from_d0,
                         read_config, to_dimensionless, to_si)
from cavitychain.params import EPSILON_0, HBAR

YB_MASS = 171.0 * 1.66053906660e-27
CHARGE = 1.602176634e-19
KAPPA = 2.0 * math.pi * 0.2e6
X0 = 369e-9 / 4.0


def test_mu_against_direct_si_evaluation():
    p = to_dimensionless(default_si_params())
    mu_direct = YB_MASS * KAPPA * X0 ** 2 / HBAR
    assert abs(p.mu - mu_direct) < 1e-12 * mu_direct
    assert abs(p.mu - 28.8) < 0.1


def test_gamma_coul_against_direct_si_evaluation():
    p = to_dimensionless(default_si_params())
    gc_direct = CHARGE ** 2 / (4.0 * math.pi * EPSILON_0 * X0 * HBAR * KAPPA)
    assert abs(p.gamma_coul - gc_direct) < 1e-12 * gc_direct
    assert abs(p.gamma_coul - 1.89e7) < 0.01 * 1.89e7


def test_kx0_is_exactly_half_pi():
    p = to_dimensionless(default_si_params(wavelength=1.07e-6))
    assert p.kx0 == math.pi / 2.0


def test_round_trip_si_dimensionless_si():
    si = default_si_params(delta_c=-3.7 * KAPPA, eta=12.0 * KAPPA,
                           trap_omega=2.0 * math.pi * 0.43e6)
    back = to_si(to_dimensionless(si))
    for name in ("ion_mass", "ion_charge", "wavelength", "kappa",
                 "cooperativity", "delta_c", "eta", "trap_omega",
                 "gamma_motion", "n_thermal"):
        a, b = getattr(si, name), getattr(back, name)
        assert a == pytest.approx(b, rel=1e-12), name


def test_d0_omega_reference_anchors():
    # matching / maximally mismatched trap frequencies of the Yb setup
    p = default_params()
    for omega, d0 in [(2.70, 48.0), (2.62, 49.0), (2.54, 50.0),
                      (2.46, 51.0)]:
        assert d0_from_omega(p.with_(omega=omega)) == pytest.approx(
            d0, rel=0.02)


def test_d0_spacing_matches_brute_force_chain_minimum():
    # independent oracle: minimize the bare trap+Coulomb energy of three
    # ions numerically and read off the spacing
    p = default_params(d0_ratio=49.795)

    def energy(xi):
        v = 0.5 * p.mu * p.omega ** 2 * np.sum(xi ** 2)
        v += p.gamma_coul * (1 / (xi[1] - xi[0]) + 1 / (xi[2] - xi[1])
                             + 1 / (xi[2] - xi[0]))
        return v

    res = minimize(energy, np.array([-40.0, 0.5, 41.0]), method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 20000})
    spacing = 0.5 * (res.x[2] - res.x[0])
    assert spacing == pytest.approx(d0_from_omega(p), rel=1e-6)


def test_d0_scaling_with_omega():
    p = default_params()
    d_full = d0_from_omega(p.with_(omega=3.0))
    d_half = d0_from_omega(p.with_(omega=1.5))
    assert d_half == pytest.approx(2 ** (2.0 / 3.0) * d_full, rel=1e-12)


def test_omega_d0_inverse_round_trip():
    p = default_params()
    for omega in (0.7, 2.54, 6.1):
        d0 = d0_from_omega(p.with_(omega=omega))
        assert omega_from_d0(d0, p) == pytest.approx(omega, rel=1e-12)


def test_invalid_parameters_rejected():
    with pytest.raises(InvalidParameterError):
        default_si_params(ion_mass=-1.0)
    with pytest.raises(InvalidParameterError):
        default_si_params(wavelength=0.0)
    with pytest.raises(InvalidParameterError):
        default_si_params(kappa=-KAPPA)
    with pytest.raises(InvalidParameterError):
        default_si_params(eta=-1.0)


def test_positive_detuning_warns():
    with pytest.warns(UserWarning):
        default_si_params(delta_c=0.3 * KAPPA)


def test_config_file_round_trip(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# comment\n"
                    "cooperativity = 0.1\n"
                    "n_thermal=3\n\n"
                    "grid = eta:0:50:11\n")
    cfg = read_config(str(path))
    assert cfg == {"cooperativity": "0.1", "n_thermal": "3",
                   "grid": "eta:0:50:11"}


def test_config_rejects_garbage(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("not a key value line\n")
    with pytest.raises(InvalidParameterError):
        read_config(str(path))
