"""Three-ion chain dispersively coupled to a pumped optical cavity.

Library for the steady-state structure (sliding vs. pinned configurations,
bistability, uniform chains vs. defects) and Gaussian entanglement
(bipartite, tripartite, four-partite) of three trapped ions in a driven
cavity field, within the linearized semiclassical treatment.
"""

__version__ = "0.1.0"

from .params import (SIParams, DimensionlessParams, InvalidParameterError,
                     to_dimensionless, to_si, d0_from_omega, omega_from_d0,
                     default_si_params, default_params, read_config)
from .potential import (IonConfiguration, CoincidentIonsError,
                        intensity_profile, f_bar, delta_eff, v_ion, v_tot,
                        gradient, hessian)
from .equilibrium import (Branch, Structure, ClassicalEquilibrium,
                          StructureReport, TransitionBoundaries,
                          ValidityReport, NoEquilibriumError, BracketingError,
                          find_equilibria, classify_structure,
                          transition_boundaries, validity_energy_check)
from .modes import ModeData, UnstableConfigurationError, normal_modes
from .dynamics import (LinearModel, GaussianState, UnstableModelError,
                       LyapunovError, build_linear_model,
                       steady_state_covariance, to_local_basis,
                       local_basis_transform, balanced_local_reference,
                       symplectic_form)
from .entanglement import (TripartiteClass, FourpartiteResult,
                           InvalidStateError, EntanglementReport, reduce,
                           reorder, partial_transpose, log_negativity,
                           mutual_information, symplectic_eigenvalues,
                           entropy, tripartite_class, vl_witness,
                           fourpartite_certify, build_report, default_g_list)
from .scan import (Axis, ScanGrid, ScanResult, ScanRecord, GridError,
                   run_scan, max_entanglement_map, resonance_overlay,
                   apply_axis_value, write_csv, read_csv, write_json)
