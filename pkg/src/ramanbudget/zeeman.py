"""Hyperfine + Zeeman structure of one manifold: qubit frequencies, clock
points and second-order field sensitivities.

H = A I.J + quadrupole + mu_B B (g_J J_z + g_I I_z), diagonalized per m_F
block in the |m_J, m_I> product basis (m_F is conserved exactly). Energies
are in Hz. Dressed states are labeled adiabatically by their zero-field
|F, m_F>: within a block eigenvalues never cross, so sorted order tracks
continuity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.constants as const
from scipy.optimize import brentq

from .halfint import HalfInt
from .species import LevelSpec, QubitSpec, SpeciesData

__all__ = ["ZeemanSpectrum", "zeeman_spectrum", "qubit_frequency", "clock_point", "curvature"]

MU_B_HZ = const.physical_constants["Bohr magneton"][0] / const.h  # Hz/T

CLOCK_WINDOW = 0.02  # T, covers every published clock point with margin
CLOCK_SLOPE_TOL = 1e4  # Hz/T, i.e. 1 Hz/G


@dataclass(frozen=True)
class ZeemanSpectrum:
    b_field: float  # T
    labels: tuple  # ((2F, 2mF), ...) adiabatic zero-field labels
    energies: tuple  # Hz, parallel to labels

    def energy(self, f: HalfInt, mf: HalfInt) -> float:
        key = (f.twice_value, mf.twice_value)
        for label, e in zip(self.labels, self.energies):
            if label == key:
                return e
        raise KeyError(f"no sublevel F={f}, mF={mf}")


def _angmom_matrices(tj: int):
    """(Jz, J+) in the descending |m> basis for 2j = tj."""
    j = tj / 2.0
    ms = np.array([m / 2.0 for m in range(tj, -tj - 1, -2)])
    jz = np.diag(ms)
    jp = np.zeros((len(ms), len(ms)))
    for idx in range(1, len(ms)):
        m = ms[idx]  # raising |m> -> |m+1>
        jp[idx - 1, idx] = math.sqrt(j * (j + 1) - m * (m + 1))
    return jz, jp


def _hyperfine_hamiltonian(level: LevelSpec, nuclear_spin: HalfInt, b_field: float, g_i: float):
    """Full (2J+1)(2I+1) Hamiltonian in Hz plus the (m_J, m_I) basis list."""
    tj, ti = level.j.twice_value, nuclear_spin.twice_value
    jz, jp = _angmom_matrices(tj)
    iz, ip = _angmom_matrices(ti)
    nj, ni = tj + 1, ti + 1
    eye_j, eye_i = np.eye(nj), np.eye(ni)

    idotj = (np.kron(jz, iz)
             + 0.5 * (np.kron(jp, ip.T) + np.kron(jp.T, ip)))
    h = level.hyperfine_a * idotj
    jj = (tj / 2.0) * (tj / 2.0 + 1.0)
    ii = (ti / 2.0) * (ti / 2.0 + 1.0)
    if level.hyperfine_b and tj >= 2 and ti >= 2:
        # 2I(2I-1) * J(2J-1)
        denom = (ti * (ti - 1.0)) * ((tj / 2.0) * (tj - 1.0))
        h = h + level.hyperfine_b * (
            3.0 * idotj @ idotj + 1.5 * idotj - ii * jj * np.eye(nj * ni)
        ) / denom
    h = h + MU_B_HZ * b_field * (level.g_j * np.kron(jz, eye_i) + g_i * np.kron(eye_j, iz))

    basis = [(mj, mi) for mj in range(tj, -tj - 1, -2) for mi in range(ti, -ti - 1, -2)]
    return h, basis


def _zero_field_energy(level: LevelSpec, nuclear_spin: HalfInt, tf: int) -> float:
    j, i, f = level.j.twice_value / 2.0, nuclear_spin.twice_value / 2.0, tf / 2.0
    k = f * (f + 1) - i * (i + 1) - j * (j + 1)
    e = 0.5 * level.hyperfine_a * k
    if level.hyperfine_b and level.j.twice_value >= 2 and nuclear_spin.twice_value >= 2:
        e += level.hyperfine_b * (0.75 * k * (k + 1) - i * (i + 1) * j * (j + 1)) / (
            2.0 * i * (2 * i - 1) * j * (2 * j - 1)
        )
    return e


def zeeman_spectrum(level: LevelSpec, nuclear_spin: HalfInt, b_field: float,
                    g_i: float = 0.0) -> ZeemanSpectrum:
    """Eigen-decomposition of the hyperfine + Zeeman Hamiltonian of one level."""
    if level.hyperfine_a == 0.0 and level.j.twice_value > 0 and nuclear_spin.twice_value > 0:
        raise ValueError(f"level {level.label}: hyperfine constants missing")
    h, basis = _hyperfine_hamiltonian(level, nuclear_spin, b_field, g_i)
    tj, ti = level.j.twice_value, nuclear_spin.twice_value

    labels, energies = [], []
    for tmf in range(-(tj + ti), tj + ti + 1, 2):
        idx = [n for n, (mj, mi) in enumerate(basis) if mj + mi == tmf]
        block = h[np.ix_(idx, idx)]
        vals = np.linalg.eigvalsh(block)
        fs = sorted(range(max(abs(tj - ti), abs(tmf)), tj + ti + 1, 2),
                    key=lambda tf: _zero_field_energy(level, nuclear_spin, tf))
        for e, tf in zip(vals, fs):
            labels.append((tf, tmf))
            energies.append(float(e))
    return ZeemanSpectrum(b_field=b_field, labels=tuple(labels), energies=tuple(energies))


def qubit_frequency(species: SpeciesData, qubit: QubitSpec, b_field: float) -> float:
    """|E(state0) - E(state1)| of the dressed qubit states, Hz."""
    level = species.level(qubit.state0.level)
    spec = zeeman_spectrum(level, species.nuclear_spin, b_field, species.nuclear_g_factor())
    return abs(spec.energy(qubit.state0.f, qubit.state0.mf)
               - spec.energy(qubit.state1.f, qubit.state1.mf))


def _slope(species, qubit, b, h=1e-6):
    return (qubit_frequency(species, qubit, b + h)
            - qubit_frequency(species, qubit, b - h)) / (2 * h)


def clock_point(species: SpeciesData, qubit: QubitSpec) -> float:
    """Field B* in [0, 200 G] where d(omega_0)/dB = 0.

    Returns the lowest such field; raises ValueError when the window holds
    no stationary point.
    """
    grid = np.linspace(0.0, CLOCK_WINDOW, 201)
    slopes = [_slope(species, qubit, b) for b in grid]
    if abs(slopes[0]) < CLOCK_SLOPE_TOL:
        return 0.0
    for n in range(1, len(grid)):
        if abs(slopes[n]) < CLOCK_SLOPE_TOL:
            return float(grid[n])
        if slopes[n - 1] * slopes[n] < 0:
            b = brentq(lambda x: _slope(species, qubit, x), grid[n - 1], grid[n], xtol=1e-9)
            return float(b)
    raise ValueError(
        f"{species.name} {qubit.encoding} qubit: no clock point below {CLOCK_WINDOW * 1e4:.0f} G"
    )


def curvature(species: SpeciesData, qubit: QubitSpec, b_field: float | None = None) -> float:
    """d^2(omega_0)/dB^2 at the clock point (Hz/T^2), Richardson-refined."""
    if b_field is None:
        b_field = clock_point(species, qubit)

    def second(h):
        return (qubit_frequency(species, qubit, b_field + h)
                - 2 * qubit_frequency(species, qubit, b_field)
                + qubit_frequency(species, qubit, b_field - h)) / h**2

    h = 2e-5  # 0.2 G
    return (4.0 * second(h / 2) - second(h)) / 3.0
