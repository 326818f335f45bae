"""Ion species data model and JSON file ingestion.

One JSON document per isotope. Level energies are stored in THz (ordinary
frequency above the S1/2 manifold mean), hyperfine constants in MHz and
decay rates in 2pi*MHz, the units atomic tables publish; everything is
converted to SI (rad/s, Hz, kg) on load. Reduced dipole elements are stored
in Bohr radii.

SpeciesData is immutable after load and freely shareable across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Optional

import scipy.constants as const

from .halfint import HalfInt

AMU = const.physical_constants["atomic mass constant"][0]

_G_S = 2.00231930436  # free-electron g, used when the file gives no g_J


class SpeciesError(ValueError):
    """Raised for unparseable or invalid species files."""


@dataclass(frozen=True)
class HyperfineState:
    """|level; F, m_F> label used as initial/intermediate/final state."""

    level: str
    f: HalfInt
    mf: HalfInt

    def __repr__(self):
        return f"|{self.level}; F={self.f}, mF={self.mf}>"


@dataclass(frozen=True)
class LevelSpec:
    label: str
    l: HalfInt
    j: HalfInt
    energy: float  # rad/s above the S1/2 manifold mean
    s: HalfInt = HalfInt(1)
    hyperfine_a: float = 0.0  # Hz
    hyperfine_b: float = 0.0  # Hz
    lifetime: Optional[float] = None  # s
    lande_gj: Optional[float] = None
    is_higher: bool = False

    def __post_init__(self):
        if self.energy < 0:
            raise SpeciesError(f"level {self.label}: energy must be >= 0")
        if not abs(self.l - self.s) <= self.j <= self.l + self.s:
            raise SpeciesError(f"level {self.label}: J={self.j} incompatible with L={self.l}, S={self.s}")
        if self.lifetime is not None and self.lifetime <= 0:
            raise SpeciesError(f"level {self.label}: lifetime must be positive")

    @property
    def g_j(self) -> float:
        """Lande g-factor (file value, else LS-coupling formula)."""
        if self.lande_gj is not None:
            return self.lande_gj
        j, l, s = float(self.j), float(self.l), float(self.s)
        if j == 0:
            return 0.0
        return 1.0 + (_G_S - 1.0) * (j * (j + 1) + s * (s + 1) - l * (l + 1)) / (2 * j * (j + 1))

    def sublevels(self, nuclear_spin: HalfInt):
        """All |F, mF> of this level, (2J+1)(2I+1) of them."""
        out = []
        fmin = abs(self.j - nuclear_spin).twice_value
        fmax = (self.j + nuclear_spin).twice_value
        for tf in range(fmin, fmax + 1, 2):
            for tm in range(-tf, tf + 1, 2):
                out.append(HyperfineState(self.label, HalfInt(tf), HalfInt(tm)))
        return out


@dataclass(frozen=True)
class TransitionSpec:
    upper: str
    lower: str
    reduced_element: float  # <L_lower||r||L_upper> magnitude, Bohr radii
    decay_rate: Optional[float] = None  # partial rate upper -> lower, rad/s
    branching_ratio: Optional[float] = None

    def __post_init__(self):
        if self.reduced_element < 0:
            raise SpeciesError(f"transition {self.upper}->{self.lower}: reduced element must be >= 0")
        if self.branching_ratio is not None and not 0.0 <= self.branching_ratio <= 1.0:
            raise SpeciesError(f"transition {self.upper}->{self.lower}: branching ratio outside [0, 1]")


@dataclass(frozen=True)
class QubitSpec:
    encoding: str  # "g" or "m"
    state0: HyperfineState
    state1: HyperfineState
    clock_field: Optional[float] = None  # Tesla

    def __post_init__(self):
        if self.encoding not in ("g", "m"):
            raise SpeciesError(f"unknown qubit encoding {self.encoding!r}")
        if self.state0.level != self.state1.level:
            raise SpeciesError("qubit states must share one manifold")


@dataclass(frozen=True)
class SpeciesData:
    name: str
    mass: float  # kg
    nuclear_spin: HalfInt
    levels: tuple[LevelSpec, ...]
    transitions: tuple[TransitionSpec, ...]
    qubits: tuple[QubitSpec, ...] = ()
    nuclear_moment: Optional[float] = None  # mu_I in nuclear magnetons
    includes_higher_levels: bool = False

    def level(self, label: str) -> LevelSpec:
        for lv in self.levels:
            if lv.label == label:
                return lv
        raise KeyError(f"{self.name} has no level {label!r}")

    def has_level(self, label: str) -> bool:
        return any(lv.label == label for lv in self.levels)

    def transition_between(self, a: str, b: str) -> Optional[TransitionSpec]:
        for tr in self.transitions:
            if {tr.upper, tr.lower} == {a, b}:
                return tr
        return None

    def qubit(self, encoding: str) -> QubitSpec:
        for q in self.qubits:
            if q.encoding == encoding:
                return q
        raise KeyError(f"{self.name} defines no {encoding!r} qubit")

    def has_qubit(self, encoding: str) -> bool:
        return any(q.encoding == encoding for q in self.qubits)

    @property
    def fine_structure_splitting(self) -> float:
        """omega_f = E(P3/2) - E(P1/2), rad/s."""
        return self.level("P3/2").energy - self.level("P1/2").energy

    def nuclear_g_factor(self) -> float:
        """g_I in Bohr magnetons (Steck sign convention), 0 if moment unknown."""
        if self.nuclear_moment is None:
            return 0.0
        ratio = const.physical_constants["nuclear magneton"][0] / const.physical_constants["Bohr magneton"][0]
        return -self.nuclear_moment * ratio / float(self.nuclear_spin)


def _twice(raw, where: str) -> HalfInt:
    if not isinstance(raw, int):
        raise SpeciesError(f"{where}: twice-integer quantum number must be an int, got {raw!r}")
    return HalfInt(raw)


def _state_from_json(raw: dict, where: str) -> HyperfineState:
    try:
        return HyperfineState(raw["level"], _twice(raw["f_2x"], where), _twice(raw["mf_2x"], where))
    except KeyError as exc:
        raise SpeciesError(f"{where}: missing field {exc}") from None


def _species_from_json(doc: dict, origin: str) -> SpeciesData:
    def need(mapping, key, where):
        try:
            return mapping[key]
        except KeyError:
            raise SpeciesError(f"{origin}: {where}: missing field {key!r}") from None

    levels = []
    for n, raw in enumerate(need(doc, "levels", "document")):
        where = f"levels[{n}]"
        levels.append(LevelSpec(
            label=need(raw, "label", where),
            l=HalfInt(2 * int(need(raw, "l", where))),
            j=_twice(need(raw, "j_2x", where), where),
            energy=2e12 * math.pi * float(need(raw, "energy_thz", where)),
            hyperfine_a=1e6 * float(raw.get("hyperfine_a_mhz", 0.0)),
            hyperfine_b=1e6 * float(raw.get("hyperfine_b_mhz", 0.0)),
            lifetime=raw.get("lifetime_s"),
            lande_gj=raw.get("lande_gj"),
            is_higher=bool(raw.get("higher_level", False)),
        ))
    transitions = []
    for n, raw in enumerate(doc.get("transitions", [])):
        where = f"transitions[{n}]"
        rate = raw.get("decay_rate_2pi_mhz")
        transitions.append(TransitionSpec(
            upper=need(raw, "upper", where),
            lower=need(raw, "lower", where),
            reduced_element=float(need(raw, "reduced_element_a0", where)),
            decay_rate=None if rate is None else 2e6 * math.pi * float(rate),
            branching_ratio=raw.get("branching_ratio"),
        ))
    qubits = []
    for enc, raw in sorted(doc.get("qubits", {}).items()):
        where = f"qubits[{enc}]"
        gauss = raw.get("clock_field_gauss")
        qubits.append(QubitSpec(
            encoding=enc,
            state0=_state_from_json(need(raw, "state0", where), where),
            state1=_state_from_json(need(raw, "state1", where), where),
            clock_field=None if gauss is None else 1e-4 * float(gauss),
        ))
    return SpeciesData(
        name=need(doc, "name", "document"),
        mass=AMU * float(need(doc, "mass_amu", "document")),
        nuclear_spin=_twice(need(doc, "nuclear_spin_2x", "document"), "document"),
        levels=tuple(levels),
        transitions=tuple(transitions),
        qubits=tuple(qubits),
        nuclear_moment=doc.get("nuclear_moment_mu_n"),
        includes_higher_levels=any(lv.is_higher for lv in levels),
    )


def serialize(species: SpeciesData) -> dict:
    """Inverse of the JSON schema; serialize(load_species(f)) round-trips."""
    doc = {
        "name": species.name,
        "mass_amu": species.mass / AMU,
        "nuclear_spin_2x": species.nuclear_spin.twice_value,
        "levels": [],
        "transitions": [],
        "qubits": {},
    }
    if species.nuclear_moment is not None:
        doc["nuclear_moment_mu_n"] = species.nuclear_moment
    for lv in species.levels:
        raw = {
            "label": lv.label,
            "l": int(lv.l),
            "j_2x": lv.j.twice_value,
            "energy_thz": lv.energy / (2e12 * math.pi),
        }
        if lv.hyperfine_a:
            raw["hyperfine_a_mhz"] = lv.hyperfine_a / 1e6
        if lv.hyperfine_b:
            raw["hyperfine_b_mhz"] = lv.hyperfine_b / 1e6
        if lv.lifetime is not None:
            raw["lifetime_s"] = lv.lifetime
        if lv.lande_gj is not None:
            raw["lande_gj"] = lv.lande_gj
        if lv.is_higher:
            raw["higher_level"] = True
        doc["levels"].append(raw)
    for tr in species.transitions:
        raw = {"upper": tr.upper, "lower": tr.lower, "reduced_element_a0": tr.reduced_element}
        if tr.decay_rate is not None:
            raw["decay_rate_2pi_mhz"] = tr.decay_rate / (2e6 * math.pi)
        if tr.branching_ratio is not None:
            raw["branching_ratio"] = tr.branching_ratio
        doc["transitions"].append(raw)
    for q in species.qubits:
        raw = {
            "state0": {"level": q.state0.level, "f_2x": q.state0.f.twice_value, "mf_2x": q.state0.mf.twice_value},
            "state1": {"level": q.state1.level, "f_2x": q.state1.f.twice_value, "mf_2x": q.state1.mf.twice_value},
        }
        if q.clock_field is not None:
            raw["clock_field_gauss"] = q.clock_field / 1e-4
        doc["qubits"][q.encoding] = raw
    return doc


def validate_species(species: SpeciesData) -> list[str]:
    """All invariant violations as human-readable diagnostics (empty = valid)."""
    from .couplings import decay_rate as eq3_rate, mu as eq2_mu  # local import, avoids cycle

    diags = []
    for label in ("S1/2", "P1/2", "P3/2"):
        if not species.has_level(label):
            diags.append(f"required level {label} missing")
    if species.has_qubit("m"):
        for label in ("D3/2", "D5/2"):
            if not species.has_level(label):
                diags.append(f"m qubit requires level {label}")
    if not species.transitions:
        diags.append("transitions list is empty")

    seen = set()
    for lv in species.levels:
        if lv.label in seen:
            diags.append(f"duplicate level {lv.label}")
        seen.add(lv.label)

    for tr in species.transitions:
        for end in (tr.upper, tr.lower):
            if not species.has_level(end):
                diags.append(f"transition references unknown level {end!r}")
        if not species.has_level(tr.upper) or not species.has_level(tr.lower):
            continue
        up, lo = species.level(tr.upper), species.level(tr.lower)
        if up.energy <= lo.energy:
            diags.append(f"transition {tr.upper}->{tr.lower}: upper level is not above lower")
            continue
        if abs(up.l.twice_value - lo.l.twice_value) != 2:
            diags.append(f"transition {tr.upper}->{tr.lower} is not electric-dipole allowed (|dL| != 1)")
            continue
        if tr.decay_rate is not None and tr.reduced_element > 0:
            omega = up.energy - lo.energy
            gamma = eq3_rate(eq2_mu(up, lo, tr.reduced_element), omega)
            if abs(tr.decay_rate - gamma) / tr.decay_rate > 0.02:
                diags.append(
                    f"transition {tr.upper}->{tr.lower}: stored decay rate and reduced element "
                    f"disagree by {abs(tr.decay_rate - gamma) / tr.decay_rate:.1%} (limit 2%)"
                )

    if species.has_level("P3/2"):
        branch = [tr.branching_ratio for tr in species.transitions
                  if tr.upper == "P3/2" and tr.branching_ratio is not None]
        if branch and abs(sum(branch) - 1.0) > 1e-3:
            diags.append(f"P3/2 branching ratios sum to {sum(branch):.5f}, expected 1 within 1e-3")

    for q in species.qubits:
        manifold = {"g": "S1/2", "m": "D5/2"}[q.encoding]
        if q.state0.level != manifold:
            diags.append(f"{q.encoding} qubit must live in {manifold}, found {q.state0.level}")
            continue
        if not species.has_level(manifold):
            diags.append(f"{q.encoding} qubit references missing level {manifold}")
            continue
        j = species.level(manifold).j
        i = species.nuclear_spin
        for name, st in (("state0", q.state0), ("state1", q.state1)):
            if not abs(j - i) <= st.f <= j + i:
                diags.append(f"{q.encoding} qubit {name}: F={st.f} outside |J-I|..J+I")
            if abs(st.mf) > st.f:
                diags.append(f"{q.encoding} qubit {name}: |mF|={abs(st.mf)} exceeds F={st.f}")
            if (st.f.twice_value - st.mf.twice_value) % 2:
                diags.append(f"{q.encoding} qubit {name}: mF not on the F lattice")
    return diags


def _builtin_dir():
    return resources.files("ramanbudget") / "data"


def builtin_names() -> list[str]:
    """Shipped dataset names, usable wherever a species path is accepted."""
    return sorted(p.name[:-5] for p in _builtin_dir().iterdir() if p.name.endswith(".json"))


def load_species(path_or_name) -> SpeciesData:
    """Load and validate a species file (path) or builtin dataset (name)."""
    path = Path(path_or_name)
    if path.suffix == ".json" and path.exists():
        text, origin = path.read_text(), str(path)
    else:
        candidate = _builtin_dir() / f"{path_or_name}.json"
        if not candidate.is_file():
            raise SpeciesError(
                f"no species file {path_or_name!r}; builtin datasets: {', '.join(builtin_names())}"
            )
        text, origin = candidate.read_text(), f"builtin:{path_or_name}"
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpeciesError(f"{origin}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    species = _species_from_json(doc, origin)
    problems = validate_species(species)
    if problems:
        raise SpeciesError(f"{origin}: " + "; ".join(problems))
    return species
