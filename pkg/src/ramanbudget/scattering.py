"""Two-photon scattering rates summed over intermediate and final sublevels.

The rate to a final sublevel f groups the exact Kramers-Heisenberg amplitude
as gamma_Pf g^2/2 sum_{i,j,q} |sum_k (...)|^2 (1 + Delta/omega_Pf)^3, with
matrix elements normalized by the P3/2-anchored mu_Pf mu_Pi; contributions
of intermediate manifolds other than P3/2 enter through the ratios of their
pair mu's, so the grouping stays exact. Detunings Delta are measured from
the P3/2 manifold mean, positive above. Hyperfine energy spread is ignored
in all denominators.

Ladder scattering (two emitted photons, final states below the qubit
manifold) exists only for m qubits and only in the full model.

All sublevel geometry is Delta-independent and cached per (species, qubit,
beams, model); a rate evaluation is then a handful of small numpy
contractions, safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
import scipy.constants as const

from .couplings import (
    Polarization,
    coupling_g,
    decay_rate as _eq3_rate,
    dipole_factor,
    gaussian_beam_field,
    mu as _eq2_mu,
    pair_mu,
)
from .species import HyperfineState, QubitSpec, SpeciesData

__all__ = [
    "Beam",
    "BeamConfig",
    "ModelVariant",
    "ScatteringBreakdown",
    "rate_lambda_v",
    "rate_ladder",
    "raman_total",
    "rayleigh_total",
    "raman_fraction_rho",
    "scattering_breakdown",
]

QUBIT_MANIFOLD = {"g": "S1/2", "m": "D5/2"}

# average occupation of each qubit state over a sigma_x gate
XI_I = 0.5


@dataclass(frozen=True)
class Beam:
    label: str  # "red", "blue" or "third"
    power: float  # W
    polarization: Polarization

    def __post_init__(self):
        if self.power < 0:
            raise ValueError("beam power must be >= 0")


@dataclass(frozen=True)
class BeamConfig:
    beams: tuple[Beam, ...]
    waist: float  # m
    geometry: str = "counter_propagating_pair"

    def __post_init__(self):
        if self.waist <= 0:
            raise ValueError("waist must be positive")
        if self.geometry not in ("counter_propagating_pair", "co_propagating_pair_plus_counter"):
            raise ValueError(f"unknown geometry {self.geometry!r}")
        if self.geometry == "co_propagating_pair_plus_counter":
            co = [b.power for b in self.beams if b.label != "third"]
            counter = [b.power for b in self.beams if b.label == "third"]
            if len(co) != 2 or len(counter) != 1:
                raise ValueError("MS geometry needs two co-propagating beams and one counter beam")
            if counter[0] and abs(counter[0] - 2 * co[0]) > 1e-9 * counter[0]:
                raise ValueError("counter-propagating beam must carry twice the co-propagating power")

    @classmethod
    def raman_pair(cls, encoding: str, power: float = 10e-3, waist: float = 20e-6) -> "BeamConfig":
        """The two-beam single-qubit drive: pi/pi for m, lin-perp-lin for g."""
        if encoding == "m":
            pols = (Polarization.pi(), Polarization.pi())
        else:
            pols = (Polarization.linear_x(), Polarization.linear_y())
        return cls(
            beams=(Beam("red", power, pols[0]), Beam("blue", power, pols[1])),
            waist=waist,
        )

    @classmethod
    def ms_triple(cls, encoding: str, power: float = 10e-3, waist: float = 20e-6) -> "BeamConfig":
        """Co-propagating pair at P each plus a counter beam at 2P."""
        pair = cls.raman_pair(encoding, power, waist)
        third = Beam("third", 2 * power, pair.beams[0].polarization)
        return cls(beams=pair.beams + (third,), waist=waist,
                   geometry="co_propagating_pair_plus_counter")

    def raman_beams(self) -> tuple[Beam, ...]:
        """The pair entering the rate sums; the counter beam is folded into
        the two-qubit factor of 4."""
        return tuple(b for b in self.beams if b.label != "third")


@dataclass(frozen=True)
class ModelVariant:
    kind: str  # "full" or "simplified"
    include_higher_levels: bool = True
    include_counter_rotating: bool = True
    include_frequency_cubed: bool = True

    def __post_init__(self):
        if self.kind not in ("full", "simplified"):
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.kind == "simplified" and (
            self.include_higher_levels or self.include_counter_rotating or self.include_frequency_cubed
        ):
            raise ValueError("the simplified model has all correction flags off")

    @classmethod
    def full(cls, higher_levels: bool = True) -> "ModelVariant":
        return cls("full", include_higher_levels=higher_levels)

    @classmethod
    def simplified(cls) -> "ModelVariant":
        return cls("simplified", include_higher_levels=False,
                   include_counter_rotating=False, include_frequency_cubed=False)

    @property
    def include_ladder(self) -> bool:
        return self.kind == "full"


@dataclass(frozen=True)
class ScatteringBreakdown:
    """Per (initial, final) sublevel rates, classified Raman vs Rayleigh."""

    entries: tuple  # of (i: HyperfineState, f: HyperfineState, rate_lv, rate_ladder, kind)

    def raman_total(self) -> float:
        return sum(lv + lad for _, _, lv, lad, kind in self.entries if kind == "Raman")

    def rayleigh_total(self) -> float:
        return sum(lv + lad for _, _, lv, lad, kind in self.entries if kind == "Rayleigh")

    def total(self) -> float:
        return sum(lv + lad for _, _, lv, lad, _ in self.entries)


@lru_cache(maxsize=None)
def _sublevel_tensor(species: SpeciesData, qubit: QubitSpec, include_higher: bool):
    """Delta-independent geometry for one species/qubit.

    Returns finals, final-manifold data, intermediate-manifold data and the
    tensor S[f, qf, M, i, qi] = w_f w_i sum_{k in M} factor(f,qf,k) factor(k,qi,i),
    already weighted by the mu ratios that anchor normalization to P3/2.
    """
    qman = QUBIT_MANIFOLD[qubit.encoding]
    p32 = species.level("P3/2")
    i_states = (qubit.state0, qubit.state1)
    mu_pi = pair_mu(species, "P3/2", qman)
    if mu_pi == 0.0:
        raise ValueError(f"{species.name}: no P3/2 <-> {qman} transition in species file")

    inter_labels = []
    for lv in species.levels:
        if lv.is_higher and not include_higher:
            continue
        if pair_mu(species, lv.label, qman) > 0.0 and lv.label != qman:
            inter_labels.append(lv.label)
    # final manifolds: below P3/2 and dipole-coupled to it (gamma_Pf > 0)
    fin_labels = [lv.label for lv in species.levels
                  if lv.energy < p32.energy and pair_mu(species, "P3/2", lv.label) > 0.0]

    finals = []
    f_man_idx = []
    for nm, label in enumerate(fin_labels):
        for state in species.level(label).sublevels(species.nuclear_spin):
            finals.append(state)
            f_man_idx.append(nm)

    omega_pf = np.array([p32.energy - species.level(l).energy for l in fin_labels])
    gamma_pf = np.empty(len(fin_labels))
    for nm, label in enumerate(fin_labels):
        tr = species.transition_between("P3/2", label)
        if tr.decay_rate is not None:
            gamma_pf[nm] = tr.decay_rate
        else:
            gamma_pf[nm] = _eq3_rate(_eq2_mu(p32, species.level(label), tr.reduced_element), omega_pf[nm])

    omega_mp = np.array([species.level(m).energy - p32.energy for m in inter_labels])
    w_i = np.array([pair_mu(species, m, qman) / mu_pi for m in inter_labels])
    w_f = np.zeros((len(fin_labels), len(inter_labels)))
    for nm, fl in enumerate(fin_labels):
        mu_pf = pair_mu(species, "P3/2", fl)
        for mm, ml in enumerate(inter_labels):
            w_f[nm, mm] = pair_mu(species, ml, fl) / mu_pf

    nf, nm_, ni = len(finals), len(inter_labels), len(i_states)
    tensor = np.zeros((nf, 3, nm_, ni, 3))
    for mm, ml in enumerate(inter_labels):
        k_states = species.level(ml).sublevels(species.nuclear_spin)
        for fi, f in enumerate(finals):
            wgt = w_f[f_man_idx[fi], mm]
            if wgt == 0.0:
                continue
            for qf in (-1, 0, 1):
                for ii, i in enumerate(i_states):
                    for qi in (-1, 0, 1):
                        if f.mf + qf != i.mf + qi:
                            continue
                        acc = 0.0
                        for k in k_states:
                            if k.mf != i.mf + qi:
                                continue
                            a = dipole_factor(species, f, qf, k)
                            if a == 0.0:
                                continue
                            b = dipole_factor(species, k, qi, i)
                            acc += a * b
                        tensor[fi, qf + 1, mm, ii, qi + 1] = acc * wgt * w_i[mm]

    i_in_finals = [finals.index(s) if s in finals else -1 for s in i_states]
    return (tuple(finals), np.array(f_man_idx), gamma_pf, omega_pf,
            tuple(inter_labels), omega_mp, tensor, tuple(i_in_finals))


class RateEngine:
    """Evaluates the sublevel-summed rates for one configuration."""

    def __init__(self, species: SpeciesData, qubit: QubitSpec, beams: BeamConfig, model: ModelVariant):
        self.species = species
        self.qubit = qubit
        self.beams = beams
        self.model = model
        qman = QUBIT_MANIFOLD[qubit.encoding]
        (self.finals, self.f_man_idx, self._gamma_pf_man, self._omega_pf_man,
         self.inter_labels, self.omega_mp, tensor, self.i_in_finals) = _sublevel_tensor(
            species, qubit, model.include_higher_levels)
        self.tensor = tensor
        self.omega_pi = species.level("P3/2").energy - species.level(qman).energy

        mu_pi = pair_mu(species, "P3/2", qman)
        raman = beams.raman_beams()
        self.g2 = np.array([
            coupling_g(gaussian_beam_field(b.power, beams.waist), mu_pi) ** 2 for b in raman
        ])
        comps = np.array([[b.polarization.absorbed_components()[q] for q in (-1, 0, 1)] for b in raman])
        comps_conj = np.array([[b.polarization.absorbed_components(conjugated=True)[q]
                                for q in (-1, 0, 1)] for b in raman])
        # N1[f,q,M,i,j]: beam absorbed on the i side; N2: beam absorbed on the f side
        self.n1 = np.einsum("fqmik,jk->fqmij", tensor, comps)
        self.n2 = np.einsum("fkmiq,jk->fqmij", tensor, comps)
        if model.include_ladder and qubit.encoding == "m":
            self.nl1 = np.einsum("fqmik,jk->fqmij", tensor, comps_conj)
            self.nl2 = np.einsum("fkmiq,jk->fqmij", tensor, comps_conj)
        else:
            self.nl1 = self.nl2 = None

        self.gamma_pf = self._gamma_pf_man[self.f_man_idx]
        self.omega_pf = self._omega_pf_man[self.f_man_idx]

    def _cube_lv(self, delta: float) -> np.ndarray:
        if not self.model.include_frequency_cubed:
            return np.ones_like(self.omega_pf)
        return np.clip(1.0 + delta / self.omega_pf, 0.0, None) ** 3

    def _cube_ladder(self, delta: float) -> np.ndarray:
        return np.clip(1.0 - (2 * self.omega_pi + delta) / self.omega_pf, 0.0, None) ** 3

    def rates_lambda_v(self, delta: float) -> np.ndarray:
        """Array [i, f] of Lambda-V rates (rad/s), xi_i = 1/2 included."""
        d1 = self.omega_mp - delta  # [M]
        amp = np.einsum("fqmij,m->fqij", self.n1, 1.0 / d1)
        if self.model.include_counter_rotating:
            d2 = (self.omega_mp[None, :] + self.omega_pi
                  + self.omega_pf[:, None] + delta)  # [f, M]
            amp = amp + np.einsum("fqmij,fm->fqij", self.n2, 1.0 / d2)
        per_if = np.einsum("fqij,j->if", np.abs(amp) ** 2, self.g2)
        return XI_I * self.gamma_pf[None, :] * self._cube_lv(delta)[None, :] * per_if

    def rates_ladder(self, delta: float) -> np.ndarray:
        """Array [i, f] of ladder rates; zero for g qubits."""
        shape = (len(self.i_in_finals), len(self.finals))
        if self.nl1 is None:
            return np.zeros(shape)
        cube = self._cube_ladder(delta)[self.f_man_idx]
        if not cube.any():
            return np.zeros(shape)
        d1 = self.omega_mp + delta + 2 * self.omega_pi  # [M]
        d2 = (self.omega_mp[None, :] - delta
              + (self.omega_pf[:, None] - self.omega_pi))  # [f, M]
        amp = (np.einsum("fqmij,m->fqij", self.nl1, 1.0 / d1)
               + np.einsum("fqmij,fm->fqij", self.nl2, 1.0 / d2))
        per_if = np.einsum("fqij,j->if", np.abs(amp) ** 2, self.g2)
        return XI_I * self.gamma_pf[None, :] * cube[None, :] * per_if

    def breakdown(self, delta: float) -> ScatteringBreakdown:
        lv = self.rates_lambda_v(delta)
        lad = self.rates_ladder(delta)
        i_states = (self.qubit.state0, self.qubit.state1)
        entries = []
        for ii, i in enumerate(i_states):
            for fi, f in enumerate(self.finals):
                kind = "Rayleigh" if f == i else "Raman"
                entries.append((i, f, float(lv[ii, fi]), float(lad[ii, fi]), kind))
        return ScatteringBreakdown(tuple(entries))

    def raman_total(self, delta: float) -> float:
        both = self.rates_lambda_v(delta) + self.rates_ladder(delta)
        total = float(both.sum())
        for ii, fi in enumerate(self.i_in_finals):
            if fi >= 0:
                total -= float(both[ii, fi])
        return total

    def rayleigh_total(self, delta: float) -> float:
        both = self.rates_lambda_v(delta) + self.rates_ladder(delta)
        return sum(float(both[ii, fi]) for ii, fi in enumerate(self.i_in_finals) if fi >= 0)


@lru_cache(maxsize=256)
def get_engine(species: SpeciesData, qubit: QubitSpec, beams: BeamConfig, model: ModelVariant) -> RateEngine:
    return RateEngine(species, qubit, beams, model)


def rate_lambda_v(species, qubit, beams, delta, f: HyperfineState, model) -> float:
    """Lambda-V rate into one final sublevel, summed over both qubit states."""
    eng = get_engine(species, qubit, beams, model)
    try:
        fi = eng.finals.index(f)
    except ValueError:
        return 0.0
    return float(eng.rates_lambda_v(delta)[:, fi].sum())


def rate_ladder(species, qubit, beams, delta, f: HyperfineState, model) -> float:
    """Ladder rate into one final sublevel; 0 for g qubits."""
    eng = get_engine(species, qubit, beams, model)
    try:
        fi = eng.finals.index(f)
    except ValueError:
        return 0.0
    return float(eng.rates_ladder(delta)[:, fi].sum())


def scattering_breakdown(species, qubit, beams, delta, model) -> ScatteringBreakdown:
    return get_engine(species, qubit, beams, model).breakdown(delta)


def raman_total(species, qubit, beams, delta, model) -> float:
    """Rate summed over all f != i (plus ladder for m qubits)."""
    return get_engine(species, qubit, beams, model).raman_total(delta)


def rayleigh_total(species, qubit, beams, delta, model) -> float:
    """Elastic f = i rate, amplitude interference between manifolds included."""
    return get_engine(species, qubit, beams, model).rayleigh_total(delta)


def rho_reference_detuning(species: SpeciesData) -> float:
    """Geometric mean of 0.01 and 0.1 fine-structure splittings, red of P3/2."""
    return -math.sqrt(0.01 * 0.1) * species.fine_structure_splitting


def raman_fraction_rho(species, qubit, beams, model) -> float:
    """Raman-only fraction of the total scattering rate, evaluated in the
    low-detuning plateau."""
    eng = get_engine(species, qubit, beams, model)
    delta = rho_reference_detuning(species)
    raman = eng.raman_total(delta)
    return raman / (raman + eng.rayleigh_total(delta))
