"""Laser power required for a given gate time and detuning (full model) or
given error (simplified closed forms).

Total powers: the single-qubit drive uses two beams of equal power, the
Molmer-Sorensen drive two beams at P plus one counter beam at 2P (1:1:2).
alpha_q is the P3/2 branching ratio into the qubit manifold; gamma the total
P3/2 decay rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import scipy.constants as const

from .gates import TrapConfig, ground_state_spread, lamb_dicke, laser_frequency
from .rabi import rabi_frequency
from .scattering import BeamConfig, ModelVariant, QUBIT_MANIFOLD, raman_fraction_rho
from .species import QubitSpec, SpeciesData

__all__ = ["PowerReport", "power_1q", "power_2q", "power_of_error_simplified"]


@dataclass(frozen=True)
class PowerReport:
    total_power: float  # W
    per_beam: tuple[float, ...]
    detuning: float  # rad/s
    error: float  # gate error at this operating point, nan if not evaluated
    gate_time: float  # s


def _qubit_branching(species: SpeciesData, qubit: QubitSpec) -> tuple[float, float, float]:
    """(alpha_q, gamma_total, omega_Pi) for the P3/2 <-> qubit-manifold pair."""
    qman = QUBIT_MANIFOLD[qubit.encoding]
    rates = {tr.lower: tr for tr in species.transitions if tr.upper == "P3/2"}
    gamma = sum(tr.decay_rate for tr in rates.values() if tr.decay_rate is not None)
    tr = rates.get(qman)
    if tr is None:
        raise ValueError(f"{species.name}: no P3/2 -> {qman} transition")
    alpha = tr.branching_ratio if tr.branching_ratio is not None else tr.decay_rate / gamma
    return alpha, gamma, laser_frequency(species, qubit, 0.0)


def _r_of_delta(species, qubit, delta, model) -> float:
    beams = BeamConfig.raman_pair(qubit.encoding)  # r(Delta) is power-independent
    return rabi_frequency(species, qubit, beams, delta, model).r_of_delta


def power_1q(species, qubit, delta, tau_1q: float, w0: float, model: ModelVariant,
             error: float = math.nan) -> PowerReport:
    """Total power of the two-beam sigma_x drive for gate time tau_1q."""
    alpha_q, gamma, omega_pi = _qubit_branching(species, qubit)
    r = _r_of_delta(species, qubit, delta, model)
    if r == 0.0:
        raise ValueError("r(Delta) = 0: interference zero, no finite power drives this gate")
    total = (const.hbar * omega_pi**3 * w0**2 / (3.0 * const.c**2 * alpha_q * gamma)
             * math.pi / (tau_1q * r))
    return PowerReport(total, (total / 2, total / 2), delta, error, tau_1q)


def power_2q(species, qubit, delta, tau_2q: float, w0: float, trap: TrapConfig,
             model: ModelVariant, convention: str = "eq_eta",
             error: float = math.nan) -> PowerReport:
    """Total power (1:1:2 split) of the three-beam MS drive for gate time
    tau_2q; eta is evaluated at the actual laser frequency in the full model."""
    alpha_q, gamma, omega_pi = _qubit_branching(species, qubit)
    r = _r_of_delta(species, qubit, delta, model)
    if r == 0.0:
        raise ValueError("r(Delta) = 0: interference zero, no finite power drives this gate")
    omega_l = omega_pi + (delta if model.kind == "full" else 0.0)
    eta = lamb_dicke(omega_l, ground_state_spread(species.mass, trap.omega_trap), trap, convention)
    total = (2.0 * const.hbar * omega_pi**3 * w0**2
             / (3.0 * math.sqrt(2.0) * const.c**2 * alpha_q * gamma)
             * math.pi * math.sqrt(trap.loops) / (tau_2q * eta * r))
    return PowerReport(total, (total / 4, total / 4, total / 2), delta, error, tau_2q)


def power_of_error_simplified(species, qubit, epsilon: float, tau: float, w0: float,
                              trap: TrapConfig, gate: str,
                              convention: str = "eq_eta") -> PowerReport:
    """Simplified-model power at a requested error, P proportional to 1/eps."""
    if epsilon <= 0:
        raise ValueError("target error must be positive")
    alpha_q, _gamma, omega_pi = _qubit_branching(species, qubit)
    model = ModelVariant.simplified()
    rho = raman_fraction_rho(species, qubit, BeamConfig.raman_pair(qubit.encoding), model)
    base = rho * math.pi * const.hbar * omega_pi**3 * w0**2 / (const.c**2 * epsilon * alpha_q)
    if gate == "1q":
        total = base * (5.0 / 2.0) * math.pi / tau
        return PowerReport(total, (total / 2, total / 2), math.nan, epsilon, tau)
    if gate == "2q":
        eta = lamb_dicke(omega_pi, ground_state_spread(species.mass, trap.omega_trap),
                         trap, convention)
        total = base * 10.0 * (math.pi / tau) * trap.loops / eta**2
        return PowerReport(total, (total / 4, total / 4, total / 2), math.nan, epsilon, tau)
    raise ValueError(f"unknown gate {gate!r}")
