"""Gaussian-state information toolkit.

Operates on covariance matrices in the convention vacuum = I/2 with
quadrature order (x_1, p_1, ..., x_K, p_K).  Logarithmic negativity uses
the natural logarithm: E_N = -sum ln(2 nu_k) over the symplectic
eigenvalues nu_k < 1/2 of the partially transposed state.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .dynamics import GaussianState, symplectic_form

NPT_MARGIN = 1e-9        # nu < 1/2 - margin counts as NPT
VL_BOUND = 2.0           # separability bound of the four-mode inequalities
VL_MARGIN = 1e-9
CERT_NEG_MIN = 1e-9      # minimum cavity-vs-ions negativity for the 4-mode
                         # certification


class InvalidStateError(ValueError):
    """Covariance matrix violates the physicality condition."""


class TripartiteClass(str, enum.Enum):
    GENUINE_TRIPARTITE = "genuine-tripartite"
    BISEPARABLE_ONE_CUT = "biseparable-one-cut"
    BISEPARABLE_TWO_CUTS = "biseparable-two-cuts"
    ALL_CUTS_PPT = "separable"


class FourpartiteResult(str, enum.Enum):
    CERTIFIED = "certified"
    NOT_CERTIFIED = "not-certified"
    INCONCLUSIVE = "inconclusive"


def default_g_list() -> np.ndarray:
    """Sixteen evenly spaced gain values in [-1, 1] plus g = 0.1."""
    return np.append(np.linspace(-1.0, 1.0, 16), 0.1)


def _quad_indices(modes) -> np.ndarray:
    out = []
    for m in modes:
        out.extend((2 * m, 2 * m + 1))
    return np.asarray(out, dtype=int)


def check_physical(sigma: np.ndarray, tol: float = 1e-9) -> float:
    """Smallest eigenvalue of sigma + (i/2) Omega; raises if below -tol."""
    omega = symplectic_form(sigma.shape[0] // 2)
    min_eig = float(np.linalg.eigvalsh(sigma + 0.5j * omega).min().real)
    if min_eig < -tol:
        raise InvalidStateError(
            f"covariance violates sigma + i/2 Omega >= 0 by {min_eig:.3e}")
    return min_eig


def symplectic_eigenvalues(sigma: np.ndarray) -> np.ndarray:
    """Positive spectrum of i*Omega*sigma, ascending (one value per mode).

    One- and two-mode inputs use the closed determinant formulas; larger
    states fall back to a dense eigensolve.
    """
    n = sigma.shape[0] // 2
    if n == 1:
        return np.array([math.sqrt(max(np.linalg.det(sigma), 0.0))])
    if n == 2:
        det_a = sigma[0, 0] * sigma[1, 1] - sigma[0, 1] * sigma[1, 0]
        det_b = sigma[2, 2] * sigma[3, 3] - sigma[2, 3] * sigma[3, 2]
        det_c = sigma[0, 2] * sigma[1, 3] - sigma[0, 3] * sigma[1, 2]
        det_s = max(np.linalg.det(sigma), 0.0)
        delta = det_a + det_b + 2.0 * det_c
        inner = max(delta * delta - 4.0 * det_s, 0.0)
        hi = 0.5 * (delta + math.sqrt(inner))
        # product form avoids cancellation in the small eigenvalue
        lo = det_s / hi if hi > 0.0 else 0.0
        return np.array([math.sqrt(max(lo, 0.0)), math.sqrt(max(hi, 0.0))])
    omega = symplectic_form(n)
    ev = np.linalg.eigvals(1j * omega @ sigma)
    return np.sort(np.abs(ev))[::2]


def reduce(state: GaussianState, keep) -> GaussianState:
    """Partial trace down to the given mode indices (order preserved)."""
    keep = list(keep)
    if not keep:
        raise ValueError("cannot reduce to an empty mode set")
    if any(m < 0 or m >= state.n_modes for m in keep):
        raise ValueError(f"mode indices {keep} out of range "
                         f"for {state.n_modes} modes")
    idx = _quad_indices(keep)
    return GaussianState(sigma=state.sigma[np.ix_(idx, idx)],
                         basis=state.basis,
                         labels=tuple(state.labels[m] for m in keep))


def reorder(state: GaussianState, order) -> GaussianState:
    """Permute the modes of a state into the given order."""
    order = list(order)
    if sorted(order) != list(range(state.n_modes)):
        raise ValueError(f"{order} is not a permutation of the modes")
    return reduce(state, order)


def partial_transpose(sigma: np.ndarray, modes_b) -> np.ndarray:
    """Flip the momentum signs of the given modes."""
    t = np.ones(sigma.shape[0])
    for m in modes_b:
        t[2 * m + 1] = -1.0
    return sigma * np.outer(t, t)


def _logneg_from_sigma(sigma: np.ndarray, side_b) -> float:
    nu = symplectic_eigenvalues(partial_transpose(sigma, side_b))
    small = nu[nu < 0.5]
    if small.size == 0:
        return 0.0
    return float(-np.sum(np.log(2.0 * small)))


def log_negativity(state: GaussianState, side_a) -> float:
    """Logarithmic negativity across the bipartition side_a | rest.

    One side must consist of a single mode for the PPT criterion to be
    conclusive for Gaussian states, and the state must be physical.
    """
    side_a = sorted(set(side_a))
    side_b = [m for m in range(state.n_modes) if m not in side_a]
    if not side_a or not side_b:
        raise ValueError("partition must split the modes in two")
    if min(len(side_a), len(side_b)) != 1:
        raise ValueError("one side of the partition must be a single mode")
    check_physical(state.sigma)
    return _logneg_from_sigma(state.sigma, side_b)


def _entropy_term(nu: float) -> float:
    up = nu + 0.5
    dn = nu - 0.5
    s = up * math.log(up)
    if dn > 1e-14:
        s -= dn * math.log(dn)
    return s


def entropy(sigma: np.ndarray) -> float:
    """Von Neumann entropy (nats) from the symplectic spectrum."""
    return float(sum(_entropy_term(nu) for nu in
                     np.maximum(symplectic_eigenvalues(sigma), 0.5)))


def mutual_information(state: GaussianState, side_a) -> float:
    """I(A:B) = S(A) + S(B) - S(AB) in nats."""
    side_a = sorted(set(side_a))
    side_b = [m for m in range(state.n_modes) if m not in side_a]
    if not side_a or not side_b:
        raise ValueError("partition must split the modes in two")
    check_physical(state.sigma)
    s_a = entropy(reduce(state, side_a).sigma)
    s_b = entropy(reduce(state, side_b).sigma)
    s_ab = entropy(state.sigma)
    return max(0.0, s_a + s_b - s_ab)


def _npt(state: GaussianState, side_a) -> bool:
    side_b = [m for m in range(state.n_modes) if m not in side_a]
    nu_min = symplectic_eigenvalues(
        partial_transpose(state.sigma, side_b))[0]
    return bool(nu_min < 0.5 - NPT_MARGIN)


def tripartite_class(state: GaussianState) -> TripartiteClass:
    """PPT-based classification of a three-mode Gaussian state.

    Counts the 1x2 bipartitions with a negative partial transpose: three
    make the state genuinely tripartite entangled, zero leaves every cut
    PPT (reported as separable).
    """
    if state.n_modes != 3:
        raise ValueError(f"expected 3 modes, got {state.n_modes}")
    check_physical(state.sigma)
    n_npt = sum(_npt(state, [k]) for k in range(3))
    return {
        3: TripartiteClass.GENUINE_TRIPARTITE,
        2: TripartiteClass.BISEPARABLE_ONE_CUT,
        1: TripartiteClass.BISEPARABLE_TWO_CUTS,
        0: TripartiteClass.ALL_CUTS_PPT,
    }[n_npt]


# Four-mode combination inequalities: each row pairs a position difference
# with a gain-weighted momentum sum; a state separable across any
# bipartition that splits the two differenced modes keeps the left-hand
# side at or above 2.  With the cavity as mode 1 and the ions (left to
# right) as modes 2-4, violating II and IV together rules out every
# bipartition except cavity | ions.
_VL_X = np.array([
    [1.0, -1.0, 0.0, 0.0],   # I
    [0.0, 1.0, -1.0, 0.0],   # II
    [1.0, 0.0, -1.0, 0.0],   # III
    [0.0, 0.0, 1.0, -1.0],   # IV
    [0.0, 1.0, 0.0, -1.0],   # V
    [1.0, 0.0, 0.0, -1.0],   # VI
])

_VL_P_FIXED = [
    (0, 1),  # I:   p1 + p2 (+ g3 p3 + g4 p4)
    (1, 2),  # II:  p2 + p3
    (0, 2),  # III: p1 + p3
    (2, 3),  # IV:  p3 + p4
    (1, 3),  # V:   p2 + p4
    (0, 3),  # VI:  p1 + p4
]


def vl_witness(state: GaussianState, g):
    """Left-hand sides of the six four-mode separability inequalities.

    Parameters
    ----------
    state : GaussianState
        Exactly four modes.
    g : float or sequence of 4 floats
        Gain factors g_i; a scalar is broadcast to all four.

    Returns
    -------
    lhs : ndarray (6,)
    violated : ndarray (6,) of bool
        True where lhs < 2 within tolerance.
    """
    if state.n_modes != 4:
        raise ValueError(f"expected 4 modes, got {state.n_modes}")
    g = np.broadcast_to(np.asarray(g, dtype=float), (4,)).copy()
    sigma = state.sigma
    lhs = np.zeros(6)
    for i in range(6):
        vx = np.zeros(8)
        vx[0::2] = _VL_X[i]
        wp = np.zeros(8)
        coeff = g.copy()
        for fixed in _VL_P_FIXED[i]:
            coeff[fixed] = 1.0
        wp[1::2] = coeff
        lhs[i] = vx @ sigma @ vx + wp @ sigma @ wp
    return lhs, lhs < VL_BOUND - VL_MARGIN


def fourpartite_certify(state: GaussianState, g_list=None) -> FourpartiteResult:
    """Four-partite entanglement certificate for (cavity, ion1, ion2, ion3).

    Certified when some gain value violates inequalities II and IV
    simultaneously -- which leaves cavity | ions as the only bipartition
    the state could still be separable across -- while the cavity is
    entangled with the three ions, ruling out that product form too.
    Anything else is inconclusive.
    """
    if state.n_modes != 4:
        raise ValueError(f"expected 4 modes, got {state.n_modes}")
    if g_list is None:
        g_list = default_g_list()
    both = False
    for g in g_list:
        _, violated = vl_witness(state, g)
        if violated[1] and violated[3]:
            both = True
            break
    if both and log_negativity(state, [0]) > CERT_NEG_MIN:
        return FourpartiteResult.CERTIFIED
    return FourpartiteResult.INCONCLUSIVE


_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


@dataclass(frozen=True)
class EntanglementReport:
    """Entanglement summary of a four-mode steady state in both bases.

    Pair and one-vs-rest negativities are keyed by mode label; tripartite
    classes by the traced-out label.  ``vl_lhs`` holds one row of six
    left-hand sides per gain value, evaluated in the ion ordering
    (ion1, ion2, ion3, cavity).
    """

    pair_neg_modes: dict
    pair_neg_ions: dict
    one_vs_rest_modes: dict
    one_vs_rest_ions: dict
    mutual_info_modes: dict
    mutual_info_ions: dict
    tripartite_modes: dict
    tripartite_ions: dict
    g_list: tuple
    vl_lhs: np.ndarray
    vl_violated: np.ndarray
    ii_and_iv_violated: bool
    fourpartite: FourpartiteResult
    extras: dict = field(default_factory=dict)


def _pair_key(labels, i, j):
    return f"{labels[i]}|{labels[j]}"


def _entropy_from_sigma(sigma: np.ndarray) -> float:
    return float(sum(_entropy_term(nu) for nu in
                     np.maximum(symplectic_eigenvalues(sigma), 0.5)))


def _tri_classes(sigma: np.ndarray, labels) -> dict:
    out = {}
    for traced in range(4):
        keep = [m for m in range(4) if m != traced]
        idx = _quad_indices(keep)
        sub = sigma[np.ix_(idx, idx)]
        n_npt = 0
        for k in range(3):
            nu_min = symplectic_eigenvalues(
                partial_transpose(sub, [k]))[0]
            if nu_min < 0.5 - NPT_MARGIN:
                n_npt += 1
        out[labels[traced]] = {
            3: TripartiteClass.GENUINE_TRIPARTITE,
            2: TripartiteClass.BISEPARABLE_ONE_CUT,
            1: TripartiteClass.BISEPARABLE_TWO_CUTS,
            0: TripartiteClass.ALL_CUTS_PPT,
        }[n_npt]
    return out


def build_report(mode_state: GaussianState, ion_state: GaussianState,
                 g_list=None, witness_state: GaussianState | None = None,
                 ) -> EntanglementReport:
    """Full entanglement report from the two basis representations.

    ``witness_state`` is the local-basis state used for the four-mode
    combination inequalities (they are sensitive to the local oscillator
    scale, unlike every other quantity here); it defaults to ``ion_state``.
    The physicality of each input is verified once up front; the internal
    evaluations then skip the per-call check.
    """
    if g_list is None:
        g_list = default_g_list()
    if witness_state is None:
        witness_state = ion_state
    check_physical(mode_state.sigma)
    check_physical(ion_state.sigma)

    def pairs(state):
        neg, mi = {}, {}
        for i, j in _PAIRS:
            idx = _quad_indices([i, j])
            sub = state.sigma[np.ix_(idx, idx)]
            key = _pair_key(state.labels, i, j)
            neg[key] = _logneg_from_sigma(sub, [1])
            s_a = _entropy_from_sigma(sub[:2, :2])
            s_b = _entropy_from_sigma(sub[2:, 2:])
            mi[key] = max(0.0, s_a + s_b - _entropy_from_sigma(sub))
        return neg, mi

    def one_vs_rest(state):
        return {state.labels[k]:
                _logneg_from_sigma(state.sigma, [k]) for k in range(4)}

    neg_m, mi_m = pairs(mode_state)
    neg_l, mi_l = pairs(ion_state)

    lhs_rows, violated_rows = [], []
    for g in g_list:
        lhs, violated = vl_witness(witness_state, g)
        lhs_rows.append(lhs)
        violated_rows.append(violated)
    vl_lhs = np.array(lhs_rows)
    vl_violated = np.array(violated_rows)
    ii_and_iv = bool(np.any(vl_violated[:, 1] & vl_violated[:, 3]))

    if ii_and_iv and _logneg_from_sigma(witness_state.sigma,
                                        [1, 2, 3]) > CERT_NEG_MIN:
        four = FourpartiteResult.CERTIFIED
    else:
        four = FourpartiteResult.INCONCLUSIVE

    return EntanglementReport(
        pair_neg_modes=neg_m,
        pair_neg_ions=neg_l,
        one_vs_rest_modes=one_vs_rest(mode_state),
        one_vs_rest_ions=one_vs_rest(ion_state),
        mutual_info_modes=mi_m,
        mutual_info_ions=mi_l,
        tripartite_modes=_tri_classes(mode_state.sigma, mode_state.labels),
        tripartite_ions=_tri_classes(ion_state.sigma, ion_state.labels),
        g_list=tuple(float(g) for g in g_list),
        vl_lhs=vl_lhs,
        vl_violated=vl_violated,
        ii_and_iv_violated=ii_and_iv,
        fourpartite=four,
    )
