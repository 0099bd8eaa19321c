import numpy as np
import pytest

from cavitychain import (Branch, BracketingError, Structure, classify_structure,
                         d0_from_omega, default_params, find_equilibria,
                         gradient, hessian, transition_boundaries)
from cavitychain.equilibrium import stationarity_tolerance


def by_branch(eqs):
    return {e.branch: e for e in eqs}


def test_free_chain_equilibrium_is_analytic():
    p = default_params(d0_ratio=49.795, eta=0.0)
    eqs = find_equilibria(p)
    assert len(eqs) == 1
    eq = eqs[0]
    assert eq.branch is Branch.SYMMETRIC
    d0 = d0_from_omega(p)
    assert np.max(np.abs(eq.xi - np.array([-d0, 0.0, d0]))) < 1e-9


def test_returned_equilibria_are_stationary_and_stable():
    for eta, dc, d0 in [(0.0, 0.0, 49.795), (9.0, -1.0, 49.795),
                        (16.0, 0.0, 49.795), (60.0, -4.0, 48.99),
                        (120.0, -7.0, 51.44)]:
        p = default_params(d0_ratio=d0, eta=eta, delta_c=dc)
        for eq in find_equilibria(p):
            g = np.linalg.norm(gradient(eq.xi, p))
            assert g < stationarity_tolerance(eq.xi, p)
            assert np.linalg.eigvalsh(hessian(eq.xi, p))[0] > 0.0
            assert eq.hessian_pd


def test_gradient_below_1e9_at_moderate_pumping():
    for eta in (0.0, 5.0, 16.0, 40.0):
        p = default_params(d0_ratio=49.795, eta=eta)
        for eq in find_equilibria(p):
            assert np.linalg.norm(gradient(eq.xi, p)) < 1e-9


def test_photon_number_consistency():
    for eta in (0.0, 10.0, 30.0, 200.0):
        p = default_params(d0_ratio=49.0, eta=eta, delta_c=-2.0)
        for eq in find_equilibria(p):
            expected = p.eta ** 2 / (1.0 + eq.delta_bar ** 2)
            assert eq.photon_number == pytest.approx(expected, abs=1e-12)
            assert abs(eq.a_bar) ** 2 == pytest.approx(expected, rel=1e-12)


def test_deep_pinned_uniform_regime_mirror_pair():
    p = default_params(d0_ratio=49.795, eta=400.0)
    eqs = find_equilibria(p)
    bb = by_branch(eqs)
    assert Branch.SYMMETRIC not in bb
    assert set(bb) == {Branch.BROKEN_LEFT, Branch.BROKEN_RIGHT}
    left, right = bb[Branch.BROKEN_LEFT], bb[Branch.BROKEN_RIGHT]
    gaps = (left.xi[1] - left.xi[0], left.xi[2] - left.xi[1])
    assert abs(gaps[0] - gaps[1]) < 0.05  # nearly uniform spacing
    # mirror pairing
    assert np.max(np.abs(right.xi + left.xi[::-1])) < 1e-6
    assert right.v_tot == pytest.approx(left.v_tot, abs=1e-9 * abs(left.v_tot))
    assert right.f_bar == pytest.approx(left.f_bar, abs=1e-9)
    assert right.photon_number == pytest.approx(left.photon_number,
                                                rel=1e-9)


def test_bistable_window_has_both_solution_kinds():
    p = default_params(d0_ratio=49.795, eta=16.0)
    bb = by_branch(find_equilibria(p))
    assert Branch.SYMMETRIC in bb
    assert Branch.BROKEN_LEFT in bb and Branch.BROKEN_RIGHT in bb


def test_branch_convention_central_ion_sign():
    p = default_params(d0_ratio=49.795, eta=100.0)
    bb = by_branch(find_equilibria(p))
    assert bb[Branch.BROKEN_LEFT].xi[1] < -1e-9
    assert bb[Branch.BROKEN_RIGHT].xi[1] > 1e-9


def test_f_bar_symmetric_phase_at_least_one():
    for d0 in (48.0, 48.99, 49.795, 51.44):
        p = default_params(d0_ratio=d0, eta=5.0, delta_c=-1.0)
        eq = by_branch(find_equilibria(p))[Branch.SYMMETRIC]
        assert eq.f_bar >= 1.0


def test_f_bar_decreases_monotonically_in_pinned_phase():
    p0 = default_params(d0_ratio=49.795)
    values = []
    for eta in np.linspace(25.0, 400.0, 12):
        bb = by_branch(find_equilibria(p0.with_(eta=float(eta))))
        values.append(bb[Branch.BROKEN_LEFT].f_bar)
    assert all(a > b for a, b in zip(values, values[1:]))


def test_structure_matching_gives_uniform_gaps():
    p = default_params(d0_ratio=48.0, eta=400.0)
    eq = by_branch(find_equilibria(p))[Branch.BROKEN_LEFT]
    rep = classify_structure(eq, p)
    assert rep.structure is Structure.UNIFORM
    assert rep.gaps[0] == pytest.approx(48.0, abs=1e-3)
    assert rep.gaps[1] == pytest.approx(48.0, abs=1e-3)
    # metric lives on a circle of circumference 2; 0 and 2 both mean matching
    assert min(rep.matching_metric, 2.0 - rep.matching_metric) < 1e-9


def test_structure_mismatched_forms_defect():
    p = default_params(d0_ratio=49.0, eta=400.0)
    eq = by_branch(find_equilibria(p))[Branch.BROKEN_LEFT]
    rep = classify_structure(eq, p)
    assert rep.structure is Structure.DEFECT
    assert abs(rep.gaps[1] - rep.gaps[0]) == pytest.approx(2.0, abs=0.01)
    assert rep.matching_metric == pytest.approx(1.0, abs=1e-9)


def test_structure_nearly_matching_is_uniform():
    p = default_params(d0_ratio=49.795, eta=400.0)
    eq = by_branch(find_equilibria(p))[Branch.BROKEN_LEFT]
    assert classify_structure(eq, p).structure is Structure.UNIFORM


def test_classify_structure_rejects_symmetric():
    p = default_params(d0_ratio=49.795, eta=0.0)
    eq = find_equilibria(p)[0]
    with pytest.raises(ValueError):
        classify_structure(eq, p)


def test_transition_boundaries_bistable_in_uniform_regime():
    p = default_params(d0_ratio=49.795)
    tb = transition_boundaries(p, (1.0, 60.0))
    assert tb.bistable
    assert tb.eta_pin_min < tb.eta_sym_max
    p48 = default_params(d0_ratio=48.0)
    tb48 = transition_boundaries(p48, (1.0, 60.0))
    assert tb48.bistable


def test_transition_continuous_at_maximal_mismatch():
    p = default_params(d0_ratio=49.0)
    tb = transition_boundaries(p, (1.0, 60.0))
    assert not tb.bistable
    assert tb.eta_pin_min == pytest.approx(tb.eta_sym_max, abs=1e-3)


def test_uniform_regime_pins_at_lower_pumping():
    tb_uniform = transition_boundaries(default_params(d0_ratio=48.0),
                                       (1.0, 60.0))
    tb_defect = transition_boundaries(default_params(d0_ratio=49.0),
                                      (1.0, 60.0))
    assert tb_uniform.eta_pin_min < tb_defect.eta_pin_min


def test_transition_requires_bracketing():
    p = default_params(d0_ratio=49.795)
    with pytest.raises(BracketingError):
        transition_boundaries(p, (1.0, 5.0))
    with pytest.raises(BracketingError):
        transition_boundaries(p, (100.0, 400.0))


def test_critical_cooperativity_for_discontinuous_transition():
    # near-matching spacing: the bistable window opens at C ~ 0.24
    def window(c):
        p = default_params(d0_ratio=49.98, c_coop=c)
        try:
            tb = transition_boundaries(p, (0.5, 80.0 / np.sqrt(c)))
        except BracketingError:
            return 0.0
        return tb.eta_sym_max - tb.eta_pin_min

    lo, hi = 0.1, 0.5
    assert window(lo) < 5e-4 < window(hi)
    for _ in range(10):
        mid = 0.5 * (lo + hi)
        if window(mid) > 5e-4:
            hi = mid
        else:
            lo = mid
    assert 0.5 * (lo + hi) == pytest.approx(0.24, abs=0.04)


def _steady_pipeline(p, branch):
    from cavitychain import (build_linear_model, normal_modes,
                             steady_state_covariance)
    eq = by_branch(find_equilibria(p))[branch]
    md = normal_modes(eq, p)
    state = steady_state_covariance(build_linear_model(eq, md, p))
    return eq, md, state


def test_validity_check_deep_pinned_regime():
    from cavitychain import validity_energy_check
    p = default_params(d0_ratio=49.795, eta=100.0)
    eq, md, state = _steady_pipeline(p, Branch.BROKEN_LEFT)
    rep = validity_energy_check(eq, state, md, p)
    assert not rep.degenerate_shift
    assert rep.barrier > 0.0
    assert rep.valid
    # the shifted configuration is the next lattice well away from center
    assert rep.shifted_xi[1] == pytest.approx(eq.xi[1] - 2.0, abs=0.05)


def test_validity_check_degenerate_without_lattice():
    from cavitychain import validity_energy_check
    p = default_params(d0_ratio=49.795, eta=0.0)
    eq, md, state = _steady_pipeline(p, Branch.SYMMETRIC)
    with pytest.warns(UserWarning):
        rep = validity_energy_check(eq, state, md, p)
    assert rep.degenerate_shift
    assert rep.barrier == 0.0
