"""Fine-structure coupling strengths and geometric hyperfine dipole factors.

The reduction chain is Wigner-Eckart in F (3j over m_F), then F -> J with I
as spectator (6j), then J -> L (6j), all in the Condon-Shortley phase
convention. Reduced <L||r||L'> magnitudes come from the species file; their
canonical direction is <lower||r||upper> = +R, and the reversed direction
picks up (-1)^(L-L') = -1, so the relative P1/2 / P3/2 signs that drive the
interference effects are generated entirely by the 6j factors.

Pure functions over immutable SpeciesData; thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import scipy.constants as const

from .angular import wigner3j, wigner6j
from .halfint import HalfInt
from .species import HyperfineState, LevelSpec, SpeciesData

A0 = const.physical_constants["Bohr radius"][0]

__all__ = [
    "Polarization",
    "FieldCoupling",
    "mu",
    "decay_rate",
    "coupling_g",
    "dipole_factor",
    "gaussian_beam_field",
]


@dataclass(frozen=True)
class Polarization:
    """Complex amplitudes of the sigma-, pi, sigma+ spherical components."""

    c_minus: complex
    c_zero: complex
    c_plus: complex

    def __post_init__(self):
        norm = abs(self.c_minus) ** 2 + abs(self.c_zero) ** 2 + abs(self.c_plus) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"polarization amplitudes are not normalized (|.|^2 = {norm})")

    @classmethod
    def pi(cls):
        return cls(0.0, 1.0, 0.0)

    @classmethod
    def sigma_plus(cls):
        return cls(0.0, 0.0, 1.0)

    @classmethod
    def sigma_minus(cls):
        return cls(1.0, 0.0, 0.0)

    @classmethod
    def linear_x(cls):
        # x = (e_minus - e_plus)/sqrt(2), perpendicular to the quantization axis
        r = 1 / math.sqrt(2)
        return cls(r, 0.0, -r)

    @classmethod
    def linear_y(cls):
        # y = i(e_plus + e_minus)/sqrt(2)
        r = 1j / math.sqrt(2)
        return cls(r, 0.0, r)

    def component(self, q: int) -> complex:
        return (self.c_minus, self.c_zero, self.c_plus)[q + 1]

    def absorbed_components(self, conjugated: bool = False) -> dict[int, complex]:
        """Coefficient of <.|r.e_q|.> per q when the field is eps (or eps*).

        r.eps = sum_q c_q (r.e_q); r.eps* = sum_q (-1)^q conj(c_{-q}) (r.e_q).
        """
        if not conjugated:
            return {q: self.component(q) for q in (-1, 0, 1)}
        return {q: (-1) ** q * self.component(-q).conjugate() for q in (-1, 0, 1)}


@dataclass(frozen=True)
class FieldCoupling:
    """g = e E mu / 2 hbar bundled with its ingredients."""

    g: float  # rad/s
    e_field: float  # V/m
    mu: float  # Bohr radii

    def __post_init__(self):
        expected = coupling_g(self.e_field, self.mu)
        if expected and abs(self.g - expected) / expected > 1e-12:
            raise ValueError("inconsistent FieldCoupling: g != e E mu / 2 hbar")

    @classmethod
    def from_field(cls, e_field: float, mu_a0: float) -> "FieldCoupling":
        return cls(coupling_g(e_field, mu_a0), e_field, mu_a0)


def mu(level_u: LevelSpec, level_l: LevelSpec, reduced_element: float) -> float:
    """Fine-structure dipole matrix element between two levels, Bohr radii.

    |<L_l||r||L_u>| sqrt((2J_l+1)(2L_l+1)) |{L_l L_u 1; J_u J_l S}|, the
    normalization for which the total decay rate of any upper sublevel into
    the lower manifold is e^2 w^3 mu^2 / 3 pi eps0 hbar c^3.
    """
    if abs(level_u.l.twice_value - level_l.l.twice_value) != 2:
        raise ValueError(
            f"{level_u.label} <-> {level_l.label} is not electric-dipole allowed (|dL| != 1)"
        )
    six = wigner6j(level_l.l, level_u.l, 1, level_u.j, level_l.j, level_l.s)
    dim = (level_l.j.twice_value + 1) * (level_l.l.twice_value + 1)
    return abs(reduced_element) * math.sqrt(dim) * abs(six)


def decay_rate(mu_a0: float, omega_ul: float) -> float:
    """Partial spontaneous decay rate e^2 w^3 mu^2 / 3 pi eps0 hbar c^3, rad/s."""
    if omega_ul <= 0:
        raise ValueError("transition frequency must be positive")
    mu_m = mu_a0 * A0
    return const.e**2 * omega_ul**3 * mu_m**2 / (3 * math.pi * const.epsilon_0 * const.hbar * const.c**3)


def coupling_g(e_field: float, mu_a0: float) -> float:
    """Field coupling g = e E mu / 2 hbar, rad/s."""
    if e_field < 0:
        raise ValueError("field amplitude must be >= 0")
    return const.e * e_field * mu_a0 * A0 / (2 * const.hbar)


def gaussian_beam_field(power_w: float, waist_m: float) -> float:
    """Peak field of a Gaussian beam, E^2 = 4 P / (pi w0^2 c eps0)."""
    return math.sqrt(4 * power_w / (math.pi * waist_m**2 * const.c * const.epsilon_0))


@lru_cache(maxsize=262144)
def _factor_t(tl_f: int, tj_f: int, tf_f: int, tmf_f: int,
              tl_i: int, tj_i: int, tf_i: int, tmf_i: int,
              q: int, ti: int, f_is_lower: bool) -> float:
    """Signed <f|r.e_q|i> / (mu(pair) * <L_l||r||L_u>-magnitude) chain."""
    ts = 1  # S = 1/2 throughout
    w3 = wigner3j(HalfInt(tf_f), 1, HalfInt(tf_i), HalfInt(-tmf_f), HalfInt(2 * q), HalfInt(tmf_i))
    if w3 == 0.0:
        return 0.0
    phase3 = -1 if ((tf_f - tmf_f) // 2) % 2 else 1

    w6f = wigner6j(HalfInt(tj_f), HalfInt(tf_f), HalfInt(ti), HalfInt(tf_i), HalfInt(tj_i), 1)
    if w6f == 0.0:
        return 0.0
    phase_f = -1 if ((tj_f + ti + tf_i) // 2 + 1) % 2 else 1
    red_f = phase_f * math.sqrt((tf_f + 1) * (tf_i + 1)) * w6f

    w6j = wigner6j(HalfInt(tl_f), HalfInt(tj_f), HalfInt(ts), HalfInt(tj_i), HalfInt(tl_i), 1)
    if w6j == 0.0:
        return 0.0
    phase_j = -1 if ((tl_f + ts + tj_i) // 2 + 1) % 2 else 1
    red_j = phase_j * math.sqrt((tj_f + 1) * (tj_i + 1)) * w6j

    sign_l = 1.0 if f_is_lower else -1.0  # <upper||r||lower> = -<lower||r||upper>

    # mu of the pair in units of the L-reduced magnitude
    lo_l, lo_j = (tl_f, tj_f) if f_is_lower else (tl_i, tj_i)
    up_l, up_j = (tl_i, tj_i) if f_is_lower else (tl_f, tj_f)
    six_mu = wigner6j(HalfInt(lo_l), HalfInt(up_l), 1, HalfInt(up_j), HalfInt(lo_j), HalfInt(ts))
    mu_units = math.sqrt((lo_j + 1) * (lo_l + 1)) * abs(six_mu)

    return phase3 * w3 * red_f * red_j * sign_l / mu_units


def dipole_factor(species: SpeciesData, f: HyperfineState, q: int, i: HyperfineState) -> float:
    """Geometric factor with <f|r.e_q|i> = factor * mu(level_f, level_i).

    Vanishes unless m_F(f) = m_F(i) + q and |dF| <= 1 and the two levels are
    dipole-coupled; selection-rule failures return 0, not an error.
    """
    if q not in (-1, 0, 1):
        raise ValueError("q must be one of -1, 0, +1")
    if f.mf != i.mf + q:
        return 0.0
    if abs(f.f.twice_value - i.f.twice_value) > 2:
        return 0.0
    lev_f, lev_i = species.level(f.level), species.level(i.level)
    if abs(lev_f.l.twice_value - lev_i.l.twice_value) != 2:
        return 0.0
    return _factor_t(
        lev_f.l.twice_value, lev_f.j.twice_value, f.f.twice_value, f.mf.twice_value,
        lev_i.l.twice_value, lev_i.j.twice_value, i.f.twice_value, i.mf.twice_value,
        q, species.nuclear_spin.twice_value, lev_f.energy < lev_i.energy,
    )


def pair_mu(species: SpeciesData, a: str, b: str) -> float:
    """mu for a level pair, from the stored reduced element; 0 if uncoupled."""
    tr = species.transition_between(a, b)
    if tr is None:
        return 0.0
    return mu(species.level(tr.upper), species.level(tr.lower), tr.reduced_element)
