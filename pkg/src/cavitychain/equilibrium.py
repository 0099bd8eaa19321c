"""Classical equilibrium configurations across the sliding-pinned transition.

Stationary points of the effective total potential are located by a damped
Newton iteration with analytic gradient and Hessian, started from a small
deterministic seed set that covers the symmetric basin and the candidate
pinned basins (ions near odd-integer positions, the chain optionally
displaced by one lattice site).  Only Hessian-positive-definite minima are
returned, at most one representative per symmetry branch (the lowest
potential wins when a branch has several local minima).
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from . import potential
from .params import DimensionlessParams, d0_from_omega
from .potential import (IonConfiguration, _grad_scalar, _hess_scalar,
                        _v_scalar, gradient, hessian, v_tot)

GRAD_TOL = 1e-10          # convergence threshold for |grad V|, hbar*kappa/x0
GRAD_ACCEPT = 1e-9        # floating-point floor accepted when Newton stalls
MAX_ITER = 500
DEDUP_TOL = 1e-6          # configurations closer than this coincide, x0
BRANCH_TOL = 1e-9         # symmetry classification tolerance, x0
MIN_GAP = 1e-3            # ordering safeguard during minimization, x0
EIG_FLOOR = 1e-8          # smallest Hessian eigenvalue accepted as stable
BISECT_TOL = 1e-4         # transition bisection tolerance in eta/kappa


class Branch(str, enum.Enum):
    SYMMETRIC = "symmetric"
    BROKEN_LEFT = "broken-left"
    BROKEN_RIGHT = "broken-right"


class Structure(str, enum.Enum):
    UNIFORM = "uniform"
    DEFECT = "defect"


class NoEquilibriumError(RuntimeError):
    """No stable equilibrium found; at least one must always exist."""


class BracketingError(ValueError):
    """The supplied eta range does not bracket the transition."""


@dataclass(frozen=True)
class ClassicalEquilibrium:
    """A stationary ion configuration with its cavity amplitude."""

    cfg: IonConfiguration
    a_bar: complex
    photon_number: float
    delta_bar: float
    f_bar: float
    v_tot: float
    branch: Branch
    structure: Structure | None
    hessian_pd: bool

    @property
    def xi(self) -> np.ndarray:
        return self.cfg.as_array()


@dataclass(frozen=True)
class StructureReport:
    structure: Structure
    gaps: tuple[float, float]       # interparticle distances, x0 units
    gap_difference_periods: float   # |gap2 - gap1| / (2 x0)
    matching_metric: float          # d0/x0 mod 2: 0 matching, 1 mismatched


@dataclass(frozen=True)
class TransitionBoundaries:
    eta_sym_max: float
    eta_pin_min: float
    bistable: bool


@dataclass(frozen=True)
class ValidityReport:
    barrier: float
    e_vib: float
    valid: bool
    degenerate_shift: bool
    shifted_xi: tuple[float, float, float]


def _sorted_eigvals(h: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(0.5 * (h + h.T))


def stationarity_tolerance(xi, p) -> float:
    """Smallest gradient norm resolvable at this point in double precision.

    Positions carry an absolute resolution of about eps*|xi|, so the
    gradient cannot be driven below ~lambda_max * ulp(xi); this floor only
    rises above the nominal 1e-9 acceptance deep in the pinned regime
    (eta/kappa of a few hundred).
    """
    lam_max = float(_sorted_eigvals(hessian(xi, p))[-1])
    floor = 4.0 * np.finfo(float).eps * lam_max * max(1.0, np.abs(xi).max())
    return max(GRAD_ACCEPT, floor)


def _chol_solve3(h, tau, g):
    """Solve (H + tau*I) s = -g via Cholesky; None when not PD."""
    h11, h22, h33, h12, h13, h23 = h
    a = h11 + tau
    if a <= 0.0:
        return None
    l11 = math.sqrt(a)
    l21 = h12 / l11
    l31 = h13 / l11
    b = h22 + tau - l21 * l21
    if b <= 0.0:
        return None
    l22 = math.sqrt(b)
    l32 = (h23 - l31 * l21) / l22
    c = h33 + tau - l31 * l31 - l32 * l32
    if c <= 0.0:
        return None
    l33 = math.sqrt(c)
    y1 = -g[0] / l11
    y2 = (-g[1] - l21 * y1) / l22
    y3 = (-g[2] - l31 * y1 - l32 * y2) / l33
    s3 = y3 / l33
    s2 = (y2 - l32 * s3) / l22
    s1 = (y1 - l21 * s2 - l31 * s3) / l11
    return s1, s2, s3


def _newton_minimize(xi0, p, gtol=GRAD_TOL, maxiter=MAX_ITER):
    """Damped Newton descent of v_tot; returns (xi, converged)."""
    x1, x2, x3 = (float(v) for v in np.asarray(xi0, dtype=float))
    if not (x1 + MIN_GAP < x2 < x3 - MIN_GAP):
        return np.array([x1, x2, x3]), False
    v = _v_scalar(x1, x2, x3, p)
    g = _grad_scalar(x1, x2, x3, p)
    eps = np.finfo(float).eps
    for _ in range(maxiter):
        gnorm = math.sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2])
        if gnorm < gtol:
            return np.array([x1, x2, x3]), True
        h = _hess_scalar(x1, x2, x3, p)
        hscale = max(abs(h[0]), abs(h[1]), abs(h[2]), 1.0)
        # the gradient cannot resolve below lambda_max * ulp(position)
        floor = 4.0 * eps * hscale * max(1.0, abs(x1), abs(x3))
        if gnorm < floor:
            return np.array([x1, x2, x3]), True
        tau = 0.0
        accepted = False
        for _ in range(60):
            step = _chol_solve3(h, tau, g)
            if step is None:
                tau = max(4.0 * tau, 1e-10 * hscale)
                continue
            t1, t2, t3 = x1 + step[0], x2 + step[1], x3 + step[2]
            if not (t1 + MIN_GAP < t2 < t3 - MIN_GAP):
                tau = max(4.0 * tau, 1e-10 * hscale)
                continue
            v_trial = _v_scalar(t1, t2, t3, p)
            descent = g[0] * step[0] + g[1] * step[1] + g[2] * step[2]
            if v_trial <= v + 1e-4 * descent:
                accept = True
            elif v_trial <= v + 1e-12 * abs(v):
                # near the minimum V differences sit on the rounding
                # plateau; a shrinking gradient is the reliable signal
                g_trial = _grad_scalar(t1, t2, t3, p)
                gtnorm = math.sqrt(g_trial[0] ** 2 + g_trial[1] ** 2
                                   + g_trial[2] ** 2)
                accept = gtnorm < 0.9 * gnorm
            else:
                accept = False
            if accept:
                x1, x2, x3 = t1, t2, t3
                v = v_trial
                g = _grad_scalar(t1, t2, t3, p)
                accepted = True
                break
            tau = max(4.0 * tau, 1e-10 * hscale)
        if not accepted:
            xi = np.array([x1, x2, x3])
            return xi, gnorm < stationarity_tolerance(xi, p)
    xi = np.array([x1, x2, x3])
    gnorm = math.sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2])
    return xi, gnorm < stationarity_tolerance(xi, p)


def _symmetric_half_width(p, b0=None):
    """Newton solve for the mirror-symmetric stationary point (-b, 0, b)."""
    b = float(b0) if b0 is not None else d0_from_omega(p)
    for _ in range(200):
        g = _grad_scalar(-b, 0.0, b, p)
        db_v = g[2] - g[0]
        if abs(db_v) < 1e-11:
            return b
        h = _hess_scalar(-b, 0.0, b, p)
        db2_v = h[0] - 2.0 * h[4] + h[2]
        step = -db_v / db2_v if db2_v > 0.0 else -math.copysign(0.1, db_v)
        # keep the half-width positive and the step moderate
        step = max(min(step, 0.5 * b), -0.5 * b)
        for _ in range(60):
            trial = b + step
            g_t = _grad_scalar(-trial, 0.0, trial, p)
            if abs(g_t[2] - g_t[0]) < abs(db_v):
                b = trial
                break
            step *= 0.5
        else:
            return b
    return b


def classify_branch(xi: np.ndarray) -> Branch:
    if abs(xi[1]) < BRANCH_TOL and abs(xi[0] + xi[2]) < BRANCH_TOL:
        return Branch.SYMMETRIC
    if abs(xi[1]) >= BRANCH_TOL:
        return Branch.BROKEN_LEFT if xi[1] < 0.0 else Branch.BROKEN_RIGHT
    # central ion on-site but outer ions displaced: classify by the chain
    return Branch.BROKEN_LEFT if (xi[0] + xi[2]) < 0.0 else Branch.BROKEN_RIGHT


def _snap_odd(x: float, direction: float) -> float:
    """Nearest odd integer to x; exact ties resolved toward `direction`."""
    lower = 2.0 * math.floor((x - 1.0) / 2.0) + 1.0
    upper = lower + 2.0
    dl, du = x - lower, upper - x
    if abs(dl - du) < 1e-12:
        return lower if direction < 0.0 else upper
    return lower if dl < du else upper


def seed_configurations(p, extra_seeds=None) -> list[np.ndarray]:
    """Deterministic multi-start seeds: the free-chain configuration plus
    pinned candidates with the central ion pushed to either neighboring
    optical minimum, with and without a one-site displacement of the chain."""
    d0 = d0_from_omega(p)
    seeds = [np.array([-d0, 0.0, d0])]
    for s in (-1.0, 1.0):
        seeds.append(np.array([_snap_odd(-d0, s), s, _snap_odd(d0, s)]))
        seeds.append(np.array([_snap_odd(-d0 + s, s), s, _snap_odd(d0 + s, s)]))
    if extra_seeds is not None:
        seeds.extend(np.asarray(e, dtype=float) for e in extra_seeds)
    unique: list[np.ndarray] = []
    for seed in seeds:
        if not (seed[0] < seed[1] < seed[2]):
            continue
        if all(np.max(np.abs(seed - u)) > DEDUP_TOL for u in unique):
            unique.append(seed)
    return unique


def _make_equilibrium(xi: np.ndarray, p, classify=True) -> ClassicalEquilibrium:
    branch = classify_branch(xi)
    if branch is Branch.SYMMETRIC:
        # store the exactly mirror-symmetric representative, re-polished on
        # the symmetric manifold so the tiny snap cannot degrade stationarity
        b = _symmetric_half_width(p, b0=0.5 * (xi[2] - xi[0]))
        xi = np.array([-b, 0.0, b])
    cfg = IonConfiguration(tuple(xi))
    delta_bar = potential.delta_eff(cfg, p)
    a_bar = p.eta / complex(1.0, -delta_bar)
    eq = ClassicalEquilibrium(
        cfg=cfg,
        a_bar=a_bar,
        photon_number=p.eta ** 2 / (1.0 + delta_bar ** 2),
        delta_bar=delta_bar,
        f_bar=potential.f_bar(cfg),
        v_tot=v_tot(cfg, p),
        branch=branch,
        structure=None,
        hessian_pd=bool(_sorted_eigvals(hessian(xi, p))[0] > EIG_FLOOR),
    )
    if classify and branch is not Branch.SYMMETRIC:
        eq = replace(eq, structure=classify_structure(eq, p).structure)
    return eq


def find_equilibria(p: DimensionlessParams, extra_seeds=None,
                    ) -> list[ClassicalEquilibrium]:
    """All stable classical equilibria, one representative per branch.

    Runs the dedicated mirror-symmetric solve plus a multi-start Newton
    minimization from :func:`seed_configurations`.  Minima are deduplicated
    at 1e-6 x0; when a branch holds several minima the lowest total
    potential is kept.  The result is ordered symmetric, broken-left,
    broken-right; branches whose Hessian is not positive definite are
    dropped.

    Parameters
    ----------
    p : DimensionlessParams
    extra_seeds : iterable of length-3 arrays, optional
        Additional starting points (used for branch continuation in sweeps).

    Returns
    -------
    list of ClassicalEquilibrium
    """
    candidates: list[np.ndarray] = []

    b = _symmetric_half_width(p)
    if b > 0.0:
        candidates.append(np.array([-b, 0.0, b]))

    failures = 0
    for seed in seed_configurations(p, extra_seeds):
        xi, ok = _newton_minimize(seed, p)
        if not ok:
            failures += 1
            continue
        candidates.append(xi)

    # deduplicate, then keep the lowest-potential minimum per branch
    best: dict[Branch, ClassicalEquilibrium] = {}
    seen: list[np.ndarray] = []
    for xi in candidates:
        if any(np.max(np.abs(xi - s)) < DEDUP_TOL for s in seen):
            continue
        seen.append(xi)
        if np.linalg.norm(gradient(xi, p)) > stationarity_tolerance(xi, p):
            failures += 1
            continue
        eq = _make_equilibrium(xi, p)
        if not eq.hessian_pd:
            continue
        prev = best.get(eq.branch)
        if prev is None or eq.v_tot < prev.v_tot:
            best[eq.branch] = eq

    result = [best[br] for br in
              (Branch.SYMMETRIC, Branch.BROKEN_LEFT, Branch.BROKEN_RIGHT)
              if br in best]
    if not result:
        raise NoEquilibriumError(
            f"no stable equilibrium found ({failures} seed failures)")
    return result


def classify_structure(eq: ClassicalEquilibrium, p) -> StructureReport:
    """Uniform/defect classification of a pinned configuration.

    The two interparticle distances are compared in units of the optical
    period 2*x0; a difference below half a period counts as uniform.
    Raises on the symmetric branch, where the notion does not apply.
    """
    if eq.branch is Branch.SYMMETRIC:
        raise ValueError("structure classification requires a pinned "
                         "(symmetry-broken) equilibrium")
    xi = eq.xi
    gaps = (float(xi[1] - xi[0]), float(xi[2] - xi[1]))
    diff_periods = abs(gaps[1] - gaps[0]) / 2.0
    structure = Structure.UNIFORM if diff_periods < 0.5 else Structure.DEFECT
    return StructureReport(
        structure=structure,
        gaps=gaps,
        gap_difference_periods=diff_periods,
        matching_metric=float(d0_from_omega(p) % 2.0),
    )


def _symmetric_stable(p) -> bool:
    b = _symmetric_half_width(p)
    if not b > 0.0:
        return False
    h = hessian(np.array([-b, 0.0, b]), p)
    return bool(_sorted_eigvals(h)[0] > EIG_FLOOR)


def _pinned_exists(p) -> bool:
    for seed in seed_configurations(p)[1:]:  # skip the symmetric seed
        xi, ok = _newton_minimize(seed, p)
        if not ok:
            continue
        if classify_branch(xi) is Branch.SYMMETRIC:
            continue
        if _sorted_eigvals(hessian(xi, p))[0] > EIG_FLOOR:
            return True
    return False


def _bisect(predicate, lo, hi, tol):
    """Largest x in [lo, hi] with predicate(x) == predicate(lo)."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def transition_boundaries(p: DimensionlessParams, eta_range,
                          ) -> TransitionBoundaries:
    """Critical pump strengths bracketing the sliding-pinned transition.

    ``eta_sym_max`` is the largest eta/kappa at which the symmetric branch
    is still stable, ``eta_pin_min`` the smallest at which a stable pinned
    branch exists; both located by bisection to 1e-4.  The value of
    ``p.eta`` is ignored.

    Raises
    ------
    BracketingError
        If the range does not straddle both critical points.
    """
    lo, hi = float(eta_range[0]), float(eta_range[1])
    if not lo < hi:
        raise BracketingError(f"empty eta range ({lo}, {hi})")

    def sym(eta):
        return _symmetric_stable(p.with_(eta=eta))

    def pin(eta):
        return _pinned_exists(p.with_(eta=eta))

    if not sym(lo) or sym(hi):
        raise BracketingError(
            f"symmetric branch does not destabilize inside eta range "
            f"({lo}, {hi})")
    if pin(lo) or not pin(hi):
        raise BracketingError(
            f"pinned branch does not appear inside eta range ({lo}, {hi})")

    eta_sym_max = _bisect(sym, lo, hi, BISECT_TOL)
    eta_pin_min = _bisect(lambda e: not pin(e), lo, hi, BISECT_TOL)
    bistable = (eta_sym_max - eta_pin_min) > 4.0 * BISECT_TOL
    return TransitionBoundaries(eta_sym_max=eta_sym_max,
                                eta_pin_min=eta_pin_min,
                                bistable=bistable)


def validity_energy_check(eq: ClassicalEquilibrium, sigma_state, modes, p,
                          ) -> ValidityReport:
    """Energy-barrier diagnostic for the localized Gaussian treatment.

    Compares the potential cost of displacing the pinned chain by one
    optical period (re-minimized from the uniformly shifted configuration,
    moving away from the trap center so the mirror well is not hit) with
    the mean vibrational energy sum_n omega_n*(sigma_xx,n + sigma_pp,n)/2
    of the steady state.

    Parameters
    ----------
    eq : ClassicalEquilibrium
        The global-minimum pinned equilibrium.
    sigma_state : GaussianState
        Steady state of ``eq`` in the mode basis.
    modes : ModeData
    p : DimensionlessParams
    """
    xi = eq.xi
    direction = 2.0 if xi[1] >= 0.0 else -2.0
    shifted, ok = _newton_minimize(xi + direction, p)
    degenerate = (not ok) or np.max(np.abs(shifted - xi)) < DEDUP_TOL
    if degenerate:
        warnings.warn("shifted seed fell back to the original minimum; "
                      "no adjacent lattice well (barrier set to 0)",
                      stacklevel=2)
        barrier = 0.0
        shifted = xi.copy()
    else:
        barrier = v_tot(shifted, p) - eq.v_tot

    sig = sigma_state.sigma
    e_vib = 0.0
    for n in range(3):
        ix = 2 + 2 * n
        e_vib += modes.omega_n[n] * 0.5 * (sig[ix, ix] + sig[ix + 1, ix + 1])
    return ValidityReport(
        barrier=float(barrier),
        e_vib=float(e_vib),
        valid=bool(barrier > e_vib),
        degenerate_shift=bool(degenerate),
        shifted_xi=tuple(float(x) for x in shifted),
    )
