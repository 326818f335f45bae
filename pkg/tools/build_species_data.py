#!/usr/bin/env python3
"""Regenerate the shipped species JSON files from literature constants.

Level energies are NIST ASD values (cm^-1); P-manifold decay rates and
branching ratios are the measured values collected in the usual trapped-ion
references; S1/2 and D5/2 hyperfine constants are spectroscopy values, with
the 133/135 Ba D5/2 constants scaled from the measured 137 values by the
S1/2 A-ratio and the nuclear quadrupole-moment ratio. Reduced matrix
elements are back-computed from the partial decay rates so stored rates and
elements are exactly consistent.

Run from the repo root:  python tools/build_species_data.py
"""

import json
import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import scipy.constants as const

from ramanbudget.angular import wigner6j
from ramanbudget.couplings import A0

CM1_TO_THZ = const.c * 1e2 / 1e12  # cm^-1 -> THz (ordinary frequency)

L_OF = {"S": 0, "P": 1, "D": 2, "F": 3}


def label_lj(label):
    # labels look like "P3/2": (L, 2J)
    return L_OF[label[0]], int(label[1:].split("/")[0])


def reduced_from_partial_rate(gamma, omega, l_up, tj_up, l_lo, tj_lo):
    """<L_lo||r||L_up> (a0) reproducing a partial decay rate via the mu form."""
    pref = const.e**2 * omega**3 / (3 * math.pi * const.epsilon_0 * const.hbar * const.c**3)
    mu_a0 = math.sqrt(gamma / pref) / A0
    six = wigner6j(l_lo, l_up, 1, tj_up / 2, tj_lo / 2, 0.5)
    dim = math.sqrt((tj_lo + 1) * (2 * l_lo + 1))
    return mu_a0 / (dim * abs(six))


def mu_from_reduced(red, l_up, tj_up, l_lo, tj_lo):
    six = wigner6j(l_lo, l_up, 1, tj_up / 2, tj_lo / 2, 0.5)
    return red * math.sqrt((tj_lo + 1) * (2 * l_lo + 1)) * abs(six)


def rate_from_mu(mu_a0, omega):
    mu_m = mu_a0 * A0
    return const.e**2 * omega**3 * mu_m**2 / (3 * math.pi * const.epsilon_0 * const.hbar * const.c**3)


SPECIES = {
    "be9": {
        "name": "9Be+",
        "mass_amu": 9.0121831,
        "i2": 3,
        "moment": -1.177432,
        "levels_cm1": {"P1/2": 31928.744, "P3/2": 31935.320},
        "gamma_2pi_mhz": {"P3/2": 19.4, "P1/2": 19.4},
        "branching": {"P3/2": {"S1/2": 1.0}, "P1/2": {"S1/2": 1.0}},
        "hyperfine_mhz": {"S1/2": (-625.008837, 0.0)},
        "qubits": {"g": ("S1/2", (4, 0), (2, 0), 0.0)},
    },
    "mg25": {
        "name": "25Mg+",
        "mass_amu": 24.9858370,
        "i2": 5,
        "moment": -0.85545,
        "levels_cm1": {"P1/2": 35669.31, "P3/2": 35760.88},
        "gamma_2pi_mhz": {"P3/2": 41.8, "P1/2": 41.3},
        "branching": {"P3/2": {"S1/2": 1.0}, "P1/2": {"S1/2": 1.0}},
        "hyperfine_mhz": {"S1/2": (-596.2542487, 0.0)},
        "qubits": {"g": ("S1/2", (6, 0), (4, 0), 0.0)},
    },
    "ca43": {
        "name": "43Ca+",
        "mass_amu": 42.9587766,
        "i2": 7,
        "moment": -1.317643,
        "levels_cm1": {"D3/2": 13650.19, "D5/2": 13710.88, "P1/2": 25191.51,
                       "P3/2": 25414.40, "F5/2": 68056.91, "F7/2": 68056.77},
        "gamma_2pi_mhz": {"P3/2": 23.2, "P1/2": 21.57},
        "branching": {"P3/2": {"S1/2": 0.9350, "D3/2": 0.0063, "D5/2": 0.0587},
                      "P1/2": {"S1/2": 0.93565, "D3/2": 0.06435}},
        "lifetimes_s": {"D5/2": 1.110, "D3/2": 1.176},
        "hyperfine_mhz": {"S1/2": (-806.4020716, 0.0), "D5/2": (-3.8931, -4.241)},
        "df_anchor": 2.681,  # <d5/2||D||f7/2>, atomic units
        "qubits": {"g": ("S1/2", (8, 0), (6, 0), 0.0),
                   "m": ("D5/2", (12, 10), (10, 10), 2.54)},
    },
    "sr87": {
        "name": "87Sr+",
        "mass_amu": 86.9088775,
        "i2": 9,
        "moment": -1.0936030,
        "levels_cm1": {"D3/2": 14555.90, "D5/2": 14836.24, "P1/2": 23715.19,
                       "P3/2": 24516.65, "F5/2": 60991.34, "F7/2": 60992.06},
        "gamma_2pi_mhz": {"P3/2": 24.0, "P1/2": 21.5},
        "branching": {"P3/2": {"S1/2": 0.9406, "D3/2": 0.0063, "D5/2": 0.0531},
                      "P1/2": {"S1/2": 0.9452, "D3/2": 0.0548}},
        "lifetimes_s": {"D5/2": 0.357, "D3/2": 0.435},
        "hyperfine_mhz": {"S1/2": (-1000.473673, 0.0), "D5/2": (2.1743, 49.11)},
        "df_anchor": 3.05,
        "qubits": {"g": ("S1/2", (10, 0), (8, 0), 0.0),
                   "m": ("D5/2", (12, -12), (14, -12), 6.49)},
    },
    "ba133": {
        "name": "133Ba+",
        "mass_amu": 132.9060074,
        "i2": 1,
        "moment": 0.77167,
        "hyperfine_mhz": {"S1/2": (9925.45355, 0.0), "D5/2": (-29.708, 0.0)},
        "qubits": {"g": ("S1/2", (2, 0), (0, 0), 0.0),
                   "m": ("D5/2", (4, 4), (6, 4), 33.0)},
    },
    "ba135": {
        "name": "135Ba+",
        "mass_amu": 134.9056886,
        "i2": 3,
        "moment": 0.837943,
        "hyperfine_mhz": {"S1/2": (3591.67011, 0.0), "D5/2": (-10.750, 38.88)},
        "qubits": {"g": ("S1/2", (4, 0), (2, 0), 0.0),
                   "m": ("D5/2", (8, -6), (6, -6), 1.79)},
    },
    "ba137": {
        "name": "137Ba+",
        "mass_amu": 136.9058274,
        "i2": 3,
        "moment": 0.937365,
        "hyperfine_mhz": {"S1/2": (4018.87098, 0.0), "D5/2": (-12.029, 59.533)},
        "qubits": {"g": ("S1/2", (4, 0), (2, 0), 0.0),
                   "m": ("D5/2", (8, -6), (6, -6), 0.0720)},
    },
    "yb171": {
        "name": "171Yb+",
        "mass_amu": 170.9363302,
        "i2": 1,
        "moment": 0.4937,
        "hyperfine_mhz": {"S1/2": (12642.812118, 0.0)},
        "qubits": {"g": ("S1/2", (0, 0), (2, 0), 0.0)},
    },
    "yb173": {
        "name": "173Yb+",
        "mass_amu": 172.9382151,
        "i2": 5,
        "moment": -0.67989,
        "hyperfine_mhz": {"S1/2": (-3497.55, 0.0)},
        "qubits": {"g": ("S1/2", (4, 0), (6, 0), 0.0)},
    },
}

BA_COMMON = {
    "levels_cm1": {"D3/2": 4873.852, "D5/2": 5674.807, "P1/2": 20261.561,
                   "P3/2": 21952.404, "F5/2": 48259.14, "F7/2": 48261.15},
    "gamma_2pi_mhz": {"P3/2": 25.2, "P1/2": 20.1},
    "branching": {"P3/2": {"S1/2": 0.7417, "D3/2": 0.02803, "D5/2": 0.2303},
                  "P1/2": {"S1/2": 0.7312, "D3/2": 0.2688}},
    "lifetimes_s": {"D5/2": 29.856, "D3/2": 79.8},
    "df_anchor": 4.36,
}
YB_COMMON = {
    "levels_cm1": {"D3/2": 24332.69, "D5/2": 24752.30, "P1/2": 27061.82, "P3/2": 30392.23},
    "gamma_2pi_mhz": {"P3/2": 25.9, "P1/2": 19.6},
    "branching": {"P3/2": {"S1/2": 0.9875, "D3/2": 0.0017, "D5/2": 0.0108},
                  "P1/2": {"S1/2": 0.99501, "D3/2": 0.00499}},
    "lifetimes_s": {"D5/2": 0.0072, "D3/2": 0.0528},
}
for key in ("ba133", "ba135", "ba137"):
    SPECIES[key] = {**BA_COMMON, **SPECIES[key]}
for key in ("yb171", "yb173"):
    SPECIES[key] = {**YB_COMMON, **SPECIES[key]}


def build(key, spec):
    levels = [{"label": "S1/2", "l": 0, "j_2x": 1, "energy_thz": 0.0,
               "lande_gj": 2.00231930}]
    for label, e_cm1 in sorted(spec["levels_cm1"].items(), key=lambda kv: kv[1]):
        l, tj = label_lj(label)
        raw = {"label": label, "l": l, "j_2x": tj, "energy_thz": e_cm1 * CM1_TO_THZ}
        if label in spec.get("lifetimes_s", {}):
            raw["lifetime_s"] = spec["lifetimes_s"][label]
        if label.startswith("F"):
            raw["higher_level"] = True
        levels.append(raw)
    for label, (a, b) in spec["hyperfine_mhz"].items():
        raw = next(lv for lv in levels if lv["label"] == label)
        raw["hyperfine_a_mhz"] = a
        if b:
            raw["hyperfine_b_mhz"] = b

    energy = {lv["label"]: lv["energy_thz"] for lv in levels}
    transitions = []
    for up, branches in spec["branching"].items():
        gamma_tot = 2e6 * math.pi * spec["gamma_2pi_mhz"][up]
        l_up, tj_up = label_lj(up)
        for lo, alpha in branches.items():
            l_lo, tj_lo = label_lj(lo)
            omega = 2e12 * math.pi * (energy[up] - energy[lo])
            red = reduced_from_partial_rate(alpha * gamma_tot, omega, l_up, tj_up, l_lo, tj_lo)
            transitions.append({
                "upper": up, "lower": lo,
                "reduced_element_a0": round(red, 6),
                "decay_rate_2pi_mhz": round(alpha * spec["gamma_2pi_mhz"][up], 6),
                "branching_ratio": alpha,
            })

    if "df_anchor" in spec:
        # one L-reduced element for the whole d-f complex, J-pairs via 6j
        anchor = spec["df_anchor"]
        six = wigner6j(2, 5 / 2, 1 / 2, 7 / 2, 3, 1)
        red_l = anchor / math.sqrt(6 * 8 * six**2)
        for up, lo in (("F7/2", "D5/2"), ("F5/2", "D5/2"), ("F5/2", "D3/2")):
            l_up, tj_up = label_lj(up)
            l_lo, tj_lo = label_lj(lo)
            omega = 2e12 * math.pi * (energy[up] - energy[lo])
            mu_a0 = mu_from_reduced(red_l, l_up, tj_up, l_lo, tj_lo)
            gamma = rate_from_mu(mu_a0, omega)
            transitions.append({
                "upper": up, "lower": lo,
                "reduced_element_a0": round(red_l, 6),
                "decay_rate_2pi_mhz": round(gamma / (2e6 * math.pi), 6),
            })

    qubits = {}
    for enc, (manifold, s0, s1, clock_gauss) in spec["qubits"].items():
        qubits[enc] = {
            "state0": {"level": manifold, "f_2x": s0[0], "mf_2x": s0[1]},
            "state1": {"level": manifold, "f_2x": s1[0], "mf_2x": s1[1]},
            "clock_field_gauss": clock_gauss,
        }

    return {
        "name": spec["name"],
        "mass_amu": spec["mass_amu"],
        "nuclear_spin_2x": spec["i2"],
        "nuclear_moment_mu_n": spec["moment"],
        "levels": levels,
        "transitions": transitions,
        "qubits": qubits,
    }


def main():
    outdir = Path(__file__).resolve().parents[1] / "src" / "ramanbudget" / "data"
    outdir.mkdir(parents=True, exist_ok=True)
    for key, spec in SPECIES.items():
        doc = build(key, spec)
        path = outdir / f"{key}.json"
        path.write_text(json.dumps(doc, indent=2) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
