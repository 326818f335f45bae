"""Gate times, Lamb-Dicke parameter, scattering error probabilities and
threshold-detuning solving for sigma_x and Molmer-Sorensen gates.

Two Lamb-Dicke conventions are exposed: "eq_eta" is Delta_k z0 b_p =
2 k_L z0 / sqrt(2) for counter-propagating beams with b_p = 1/sqrt(2)
(the model default), "table2" is the bare k_L z0 that the published
comparison-table eta values satisfy.

The two-qubit Raman error is the single-qubit rate expression scaled by a
literal factor of 4 (twice the total beam power, two ions) times the
Molmer-Sorensen gate-time factor. In the full model the Lamb-Dicke
parameter is evaluated at the actual laser frequency omega_Pi + Delta; the
simplified model pins it at resonance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import scipy.constants as const

from .rabi import rabi_frequency
from .scattering import (
    BeamConfig,
    ModelVariant,
    QUBIT_MANIFOLD,
    get_engine,
    raman_fraction_rho,
)
from .species import QubitSpec, SpeciesData

__all__ = [
    "TrapConfig",
    "GateErrorReport",
    "ThresholdResult",
    "NoSolutionError",
    "ground_state_spread",
    "lamb_dicke",
    "gate_time_1q",
    "gate_time_2q",
    "error_1q",
    "error_2q",
    "rayleigh_recoil_bound",
    "threshold_detuning",
    "laser_frequency",
]

RECOIL_GEOMETRY = 3.0 / 8.0 + 1.0 / (2.0 * math.sqrt(2.0))  # theta = 0 upper bound
TWO_QUBIT_SCALING = 4.0  # twice the total beam power, two ions


@dataclass(frozen=True)
class TrapConfig:
    omega_trap: float  # rad/s
    mode_participation: float = 1.0 / math.sqrt(2.0)
    loops: int = 1  # K

    def __post_init__(self):
        if self.omega_trap <= 0:
            raise ValueError("trap frequency must be positive")
        if not 0.0 < self.mode_participation <= 1.0:
            raise ValueError("mode participation must be in (0, 1]")
        if self.loops < 1:
            raise ValueError("loop count K must be a positive integer")


@dataclass(frozen=True)
class GateErrorReport:
    tau: float  # s
    eta: float
    p_raman: float
    p_rayleigh_recoil_bound: float
    rho: float

    @property
    def regime_valid(self) -> bool:
        return self.p_raman <= 1.0


class NoSolutionError(ValueError):
    """Target error unreachable on the requested side; carries the best found."""

    def __init__(self, message, best_error=None, best_delta=None):
        super().__init__(message)
        self.best_error = best_error
        self.best_delta = best_delta


@dataclass(frozen=True)
class ThresholdResult:
    delta: float  # rad/s from the P3/2 manifold mean
    error: float
    laser_wavelength: float  # m


def ground_state_spread(mass: float, omega_trap: float) -> float:
    """RMS ground-state wavepacket size z0 = sqrt(hbar / 2 M w_trap)."""
    if mass <= 0 or omega_trap <= 0:
        raise ValueError("mass and trap frequency must be positive")
    return math.sqrt(const.hbar / (2.0 * mass * omega_trap))


def lamb_dicke(omega_l: float, z0: float, trap: TrapConfig, convention: str = "eq_eta") -> float:
    """Lamb-Dicke parameter for counter-propagating beams at laser frequency
    omega_l."""
    if omega_l <= 0:
        raise ValueError("laser frequency must be positive")
    k = omega_l / const.c
    if convention == "eq_eta":
        return 2.0 * k * z0 * trap.mode_participation
    if convention == "table2":
        return k * z0
    raise ValueError(f"unknown Lamb-Dicke convention {convention!r}")


def gate_time_1q(omega_r: float) -> float:
    """sigma_x gate: tau = pi / 2|Omega_R|."""
    if omega_r == 0.0:
        raise ValueError("zero Rabi frequency")
    return math.pi / (2.0 * abs(omega_r))


def gate_time_2q(omega_r: float, eta: float, loops: int = 1) -> float:
    """Molmer-Sorensen gate: tau = pi sqrt(K) / (2 sqrt(2) |Omega_R| eta)."""
    if omega_r == 0.0:
        raise ValueError("zero Rabi frequency")
    if eta <= 0:
        raise ValueError("Lamb-Dicke parameter must be positive")
    return math.pi * math.sqrt(loops) / (2.0 * math.sqrt(2.0) * abs(omega_r) * eta)


def laser_frequency(species: SpeciesData, qubit: QubitSpec, delta: float) -> float:
    """Absolute laser frequency omega_Pi + Delta, rad/s."""
    qman = QUBIT_MANIFOLD[qubit.encoding]
    return species.level("P3/2").energy - species.level(qman).energy + delta


def error_1q(species, qubit, beams, delta, model) -> GateErrorReport:
    """Raman scattering error of a sigma_x gate, P = pi Gamma_Ram / 2|Omega_R|."""
    eng = get_engine(species, qubit, beams, model)
    omega = rabi_frequency(species, qubit, beams, delta, model)
    gamma_ram = eng.raman_total(delta)
    tau = gate_time_1q(omega.omega_r)
    return GateErrorReport(
        tau=tau,
        eta=0.0,
        p_raman=tau * gamma_ram,
        p_rayleigh_recoil_bound=0.0,
        rho=raman_fraction_rho(species, qubit, beams, model),
    )


def _eta_at(species, qubit, trap, delta, model, convention) -> float:
    omega_l = laser_frequency(species, qubit, delta if model.kind == "full" else 0.0)
    z0 = ground_state_spread(species.mass, trap.omega_trap)
    return lamb_dicke(omega_l, z0, trap, convention)


def error_2q(species, qubit, beams, delta, trap, model, convention: str = "eq_eta") -> GateErrorReport:
    """Raman scattering error of a 2-qubit MS gate plus the Rayleigh recoil
    bound, both reported even when > 1 (regime_valid flags that)."""
    eng = get_engine(species, qubit, beams, model)
    omega = rabi_frequency(species, qubit, beams, delta, model)
    eta = _eta_at(species, qubit, trap, delta, model, convention)
    tau = gate_time_2q(omega.omega_r, eta, trap.loops)
    p_raman = TWO_QUBIT_SCALING * tau * eng.raman_total(delta)
    p_elastic = TWO_QUBIT_SCALING * tau * eng.rayleigh_total(delta)
    return GateErrorReport(
        tau=tau,
        eta=eta,
        p_raman=p_raman,
        p_rayleigh_recoil_bound=p_elastic * eta**2 * RECOIL_GEOMETRY,
        rho=raman_fraction_rho(species, qubit, beams, model),
    )


def rayleigh_recoil_bound(species, qubit, beams, delta, trap, model,
                          convention: str = "eq_eta") -> float:
    """Upper bound P_E2q eta^2 (3/8 + 1/(2 sqrt 2)) on the recoil error."""
    return error_2q(species, qubit, beams, delta, trap, model, convention).p_rayleigh_recoil_bound


def _gate_error(species, qubit, beams, trap, delta, gate, model, convention) -> float:
    if gate == "1q":
        return error_1q(species, qubit, beams, delta, model).p_raman
    if gate == "2q":
        return error_2q(species, qubit, beams, delta, trap, model, convention).p_raman
    raise ValueError(f"unknown gate {gate!r}")


def side_domain(species: SpeciesData, qubit: QubitSpec, side: str,
                model: ModelVariant) -> tuple[float, float]:
    """(start, limit) detunings from P3/2 for one side: start is nearest to
    resonance, limit the farthest usable detuning (laser frequency zero on
    the red side, the first higher-manifold resonance on the blue side)."""
    omega_pi = laser_frequency(species, qubit, 0.0)
    omega_f = species.fine_structure_splitting
    if side == "red":
        if qubit.encoding == "g":
            # red of P1/2 per the reporting convention
            return -omega_f, -0.999 * omega_pi
        return 0.0, -0.999 * omega_pi
    if side == "blue":
        eng = get_engine(species, qubit, BeamConfig.raman_pair(qubit.encoding), model)
        poles = [w for w in eng.omega_mp if w > 0]
        return 0.0, 0.98 * min(poles) if poles else 4.0 * omega_pi
    raise ValueError(f"unknown side {side!r}")


def threshold_detuning(species, qubit, beams, trap, target_error: float,
                       side: str, gate: str, model: ModelVariant,
                       convention: str = "eq_eta", rel_tol: float = 1e-6) -> ThresholdResult:
    """Smallest-|Delta| detuning on one side where the gate error crosses
    target_error, refined by bisection to |error - target| <= rel_tol*target.

    Raises NoSolutionError (carrying the achievable minimum) when the whole
    side stays above the target.
    """
    if target_error <= 0:
        raise ValueError("target error must be positive")
    start, limit = side_domain(species, qubit, side, model)
    sign = 1.0 if limit > start else -1.0
    span = abs(limit - start)

    def err(delta):
        return _gate_error(species, qubit, beams, trap, delta, gate, model, convention)

    # expand geometrically from 0.1 THz past the start until the error drops
    # below target or the side's domain is exhausted
    step = 2.0 * math.pi * 0.1e12
    best = (math.inf, None)
    prev = None
    bracket = None
    while step < span:
        delta = start + sign * step
        e = err(delta)
        if e < best[0]:
            best = (e, delta)
        if e <= target_error:
            bracket = (prev if prev is not None else start + sign * min(step / 2, span / 1e6), delta)
            break
        prev = delta
        step *= 2.0
    if bracket is None:
        # fine sweep toward the limit for the achievable minimum
        for frac in (0.85, 0.9, 0.95, 0.975):
            delta = start + sign * span * frac
            e = err(delta)
            if e < best[0]:
                best = (e, delta)
            if e <= target_error:
                bracket = (prev, delta)
                break
            prev = delta
    if bracket is None:
        raise NoSolutionError(
            f"{species.name} {qubit.encoding}-{gate} cannot reach {target_error:g} on the "
            f"{side} side; achievable minimum ~{best[0]:.3g} at delta/2pi = "
            f"{best[1] / (2e12 * math.pi):.3f} THz",
            best_error=best[0], best_delta=best[1],
        )

    lo, hi = bracket  # err(lo) > target >= err(hi)
    e_mid, mid = err(hi), hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        e_mid = err(mid)
        if abs(e_mid - target_error) <= rel_tol * target_error:
            break
        if e_mid > target_error:
            lo = mid
        else:
            hi = mid
    omega_l = laser_frequency(species, qubit, mid)
    return ThresholdResult(delta=mid, error=e_mid, laser_wavelength=2 * math.pi * const.c / omega_l)
