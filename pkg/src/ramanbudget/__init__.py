"""Scattering-error, gate-time and laser-power budgets for stimulated-Raman
gates on ground-state (g) and metastable-D5/2 (m) trapped-ion qubits.

Angular frequencies are rad/s, fields V/m, dipole lengths Bohr radii, and
magnetic fields Tesla unless a name says otherwise.
"""

from .halfint import HalfInt, half
from .angular import wigner3j, wigner6j
from .species import (
    HyperfineState,
    LevelSpec,
    QubitSpec,
    SpeciesData,
    TransitionSpec,
    builtin_names,
    load_species,
    validate_species,
)
from .couplings import Polarization, FieldCoupling, coupling_g, decay_rate, dipole_factor, mu
from .scattering import (
    Beam,
    BeamConfig,
    ModelVariant,
    ScatteringBreakdown,
    raman_fraction_rho,
    raman_total,
    rate_ladder,
    rate_lambda_v,
    rayleigh_total,
)
from .rabi import PoleError, RabiResult, rabi_frequency
from .gates import (
    GateErrorReport,
    NoSolutionError,
    TrapConfig,
    error_1q,
    error_2q,
    gate_time_1q,
    gate_time_2q,
    ground_state_spread,
    lamb_dicke,
    rayleigh_recoil_bound,
    threshold_detuning,
)
from .power import PowerReport, power_1q, power_2q, power_of_error_simplified
from .zeeman import ZeemanSpectrum, clock_point, curvature, qubit_frequency, zeeman_spectrum
from .limits import (
    CrossSectionResult,
    dc_polarizability,
    elastic_cross_section,
    thomson_limit_check,
    trk_partial_sum,
)

__version__ = "0.1.0"
