"""Locality diagnostic for the Gaussian treatment.

The localized description needs the cost of shifting the pinned chain by
one optical period to exceed the vibrational energy in the steady state;
otherwise the ions could diffuse between wells and a single-well Gaussian
is the wrong ansatz.  The margin shrinks as the pumping grows, because
the optical wells stiffen the modes (raising their thermal energy) while
the displacement cost is set by the trap alone.
"""

from cavitychain import (Branch, build_linear_model, default_params,
                         find_equilibria, normal_modes,
                         steady_state_covariance, validity_energy_check)

print(f"{'eta/kappa':>10} {'barrier':>10} {'E_vib':>10}  valid")
for eta in (40.0, 70.0, 100.0, 160.0, 250.0, 400.0):
    p = default_params(d0_ratio=49.795, eta=eta)
    eq = {e.branch: e for e in find_equilibria(p)}[Branch.BROKEN_LEFT]
    md = normal_modes(eq, p)
    state = steady_state_covariance(build_linear_model(eq, md, p))
    rep = validity_energy_check(eq, state, md, p)
    print(f"{eta:10.0f} {rep.barrier:10.1f} {rep.e_vib:10.1f}  {rep.valid}")
