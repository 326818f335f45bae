"""Two-photon Rabi frequency and its detuning profile r(Delta) = |Omega|/g^2.

The full-model Omega_R is the coherent sublevel sum over all included
intermediate manifolds, co-rotating term 1/(omega_kP - Delta) plus
counter-rotating term 1/(omega_ki + omega_Pi + Delta), normalized by the
P3/2-anchored mu_Pi^2 (other manifolds weighted by their pair-mu ratios).

The simplified m-qubit model is the closed form Omega_R = -(2/15) g^2/Delta:
within that model the two |F, m_F> qubit states sit in a two-dimensional
m_F subspace whose trace fixes the universal 2/15, and the closed form is
what the simplified error and power expressions are built from.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scattering import BeamConfig, ModelVariant, get_engine
from .species import QubitSpec, SpeciesData

__all__ = ["PoleError", "RabiResult", "rabi_frequency"]

# fractional distance from a manifold resonance treated as "on resonance"
_POLE_WINDOW = 1e-9


class PoleError(ArithmeticError):
    """Detuning sits on an intermediate-manifold resonance."""


@dataclass(frozen=True)
class RabiResult:
    omega_r: float  # signed, rad/s; relative phase folded into the sign
    r_of_delta: float  # |Omega_R| / g^2, s

    @property
    def magnitude(self) -> float:
        return abs(self.omega_r)


def _fold_sign(z: complex) -> float:
    # drives here are either real or purely imaginary; keep the magnitude
    # and the sign of the dominant quadrature
    if abs(z.real) >= abs(z.imag):
        return float(np.copysign(abs(z), z.real if z.real else 1.0))
    return float(np.copysign(abs(z), z.imag))


def rabi_frequency(species: SpeciesData, qubit: QubitSpec, beams: BeamConfig,
                   delta: float, model: ModelVariant) -> RabiResult:
    """Rabi frequency of the |0> -> |1> stimulated Raman drive at detuning
    delta from the P3/2 manifold mean.

    Raises PoleError when delta sits on an included manifold resonance.
    """
    eng = get_engine(species, qubit, beams, model)
    g2 = float(np.sqrt(eng.g2[0] * eng.g2[1]))  # g_red * g_blue

    if model.kind == "simplified" and qubit.encoding == "m":
        if delta == 0.0:
            raise PoleError("simplified m-qubit drive has a pole at delta = 0")
        r = 2.0 / (15.0 * abs(delta))
        return RabiResult(omega_r=-(2.0 / 15.0) * g2 / delta, r_of_delta=r)

    i1 = eng.i_in_finals[1]  # |1> as a final state of the qubit manifold
    if i1 < 0:
        raise ValueError("qubit state1 not found among qubit-manifold sublevels")
    red, blue = eng.beams.raman_beams()
    c_b = np.array([blue.polarization.absorbed_components()[q] for q in (-1, 0, 1)])
    c_b_conj = np.array([blue.polarization.absorbed_components(True)[q] for q in (-1, 0, 1)])
    c_r = np.array([red.polarization.absorbed_components()[q] for q in (-1, 0, 1)])
    c_r_conj = np.array([red.polarization.absorbed_components(True)[q] for q in (-1, 0, 1)])

    # tensor[f=state1, q_emit, M, i=state0, q_abs]
    s01 = eng.tensor[i1, :, :, 0, :]
    d1 = eng.omega_mp - delta
    d2 = eng.omega_mp + 2 * eng.omega_pi + delta
    scale = eng.omega_pi
    if np.any(np.abs(d1) < _POLE_WINDOW * scale) or np.any(np.abs(d2) < _POLE_WINDOW * scale):
        raise PoleError(f"detuning {delta:g} rad/s sits on an intermediate resonance")

    z = complex(np.einsum("a,amb,b,m->", c_r_conj, s01, c_b, 1.0 / d1))
    if model.include_counter_rotating:
        z += complex(np.einsum("a,amb,b,m->", c_r, s01, c_b_conj, 1.0 / d2))
    omega = _fold_sign(z)
    return RabiResult(omega_r=g2 * omega, r_of_delta=abs(z))
