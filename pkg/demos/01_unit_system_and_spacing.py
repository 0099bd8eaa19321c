"""Reduce a lab setup to the internal unit system and map trap frequency
to the free interparticle spacing.

The chain is Yb-171 driven near 369 nm in a cavity with kappa/2pi =
0.2 MHz.  Lengths are measured in x0 = lambda/4, so the optical lattice
has period 2 x0 and "matching" means an even d0/x0.
"""

import numpy as np

from cavitychain import (d0_from_omega, default_si_params, omega_from_d0,
                         to_dimensionless)

si = default_si_params()
p = to_dimensionless(si)

print("dimensionless mass        mu      =", round(p.mu, 3))
print("Coulomb strength          gamma_C = %.4g" % p.gamma_coul)
print("cooperativity             C       =", p.c_coop)
print("motional noise            Gamma   = %.1e kappa, N = %g"
      % (p.gamma_motion, p.n_thermal))

print("\ntrap frequency vs. free spacing:")
for omega in np.linspace(2.40, 2.75, 8):
    d0 = d0_from_omega(p.with_(omega=float(omega)))
    kind = ""
    if abs(d0 - round(d0)) < 0.05:
        kind = "matching" if round(d0) % 2 == 0 else "maximally mismatched"
    print(f"  omega/kappa = {omega:.3f}  ->  d0/x0 = {d0:6.2f}  {kind}")

# the inverse map is what the scans actually use
for target in (48.0, 48.99, 49.795, 51.44):
    print(f"d0/x0 = {target:6.3f}  needs  omega/kappa = "
          f"{omega_from_d0(target, p):.4f}")
