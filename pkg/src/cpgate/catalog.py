"""Machine-readable catalog of the composite phase-gate pulse trains.

Phases are recorded exactly as published, in units of pi: closed-form
values as exact fractions, numerically derived values as 4-decimal
strings.  The embedded copy below is the reference; the same content
ships as an editable JSON file (``data/catalog.json``), and solver output
can be appended to such files with ``source="solver"``.

Four printed decimals limit a phase to ~1e-4 pi, which is far too coarse
for high-order derivative cancellation, so sequence construction polishes
decimal phases back onto the exact root by pinned Newton refinement (the
structural zeros and exact fractions never move).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import mpmath as mp
import numpy as np

from . import precise, solver
from .su2 import CompositeSequence, Pulse

# name -> (phi units pi, order, phase strings units pi, range [lo, hi] units pi)
_TABLE_GATES = {
    # Z gate, phi = pi
    "Z2": ("1", 0, ["0", "1/2"], (0.99994, 1.00006)),
    "Z4": ("1", 1, ["0", "7/4", "1/2", "1/4"], (0.994, 1.006)),
    "Z6": ("1", 2, ["0", "0", "1.6350", "1/2", "1/2", "0.1350"], (0.970, 1.030)),
    "Z8": ("1", 3,
           ["0", "0", "1.8137", "1.5637", "1/2", "1/2", "0.3137", "0.0637"],
           (0.936, 1.064)),
    "Z10": ("1", 4,
            ["0", "1.0992", "1.0992", "1.8315", "0.0203",
             "1/2", "1.5992", "1.5992", "0.3315", "0.5203"],
            (0.899, 1.101)),
    "Z12": ("1", 5,
            ["0", "0", "0.4492", "0.4492", "1.4099", "1.1599",
             "1/2", "1/2", "0.9492", "0.9492", "1.9099", "1.6599"],
            (0.862, 1.138)),
    "Z14": ("1", 6,
            ["0", "0.7815", "0.7815", "1.9963", "1.9963", "0.8915", "0.3245",
             "1/2", "1.2815", "1.2815", "0.4963", "0.4963", "1.3915", "0.8245"],
            (0.823, 1.177)),
    "Z16": ("1", 7,
            ["0", "0", "1.8969", "1.8969", "1.0586", "1.0586", "0.0214",
             "1.7714", "1/2", "1/2", "0.3969", "0.3969", "1.5586", "1.5586",
             "0.5214", "0.2714"],
            (0.795, 1.205)),
    "Z18": ("1", 8,
            ["0", "0.1421", "0.1421", "1.0834", "1.0834", "0.5572", "0.5572",
             "1.4991", "1.0352", "1/2", "0.6421", "0.6421", "1.5834", "1.5834",
             "1.0572", "1.0572", "1.9991", "1.5352"],
            (0.766, 1.234)),
    # S gate, phi = pi/2
    "S2": ("1/2", 0, ["0", "3/4"], (0.99988, 1.00012)),
    "S4": ("1/2", 1, ["0", "15/8", "3/4", "5/8"], (0.991, 1.009)),
    "S6": ("1/2", 2, ["0", "0", "1.8137", "3/4", "3/4", "0.5637"],
           (0.964, 1.036)),
    "S8": ("1/2", 3,
           ["0", "0", "1.9064", "1.7814", "3/4", "3/4", "0.6564", "0.5314"],
           (0.926, 1.074)),
    "S10": ("1/2", 4,
            ["0", "0.8226", "0.8226", "1.9152", "0.4416",
             "3/4", "1.5726", "1.5726", "0.6652", "1.1916"],
            (0.885, 1.115)),
    "S12": ("1/2", 5,
            ["0", "0", "1.3587", "1.3587", "0.3367", "0.2117",
             "3/4", "3/4", "0.1087", "0.1087", "1.0867", "0.9617"],
            (0.847, 1.153)),
    "S14": ("1/2", 6,
            ["0", "0.8197", "0.8197", "1.6756", "1.6756", "0.7586", "1.1000",
             "3/4", "1.5697", "1.5697", "0.4255", "0.4255", "1.5086", "1.8500"],
            (0.811, 1.189)),
    "S16": ("1/2", 7,
            ["0", "0", "1.9466", "1.9466", "1.1420", "1.1420", "0.1251",
             "0.0001", "3/4", "3/4", "0.6966", "0.6966", "1.8920", "1.8920",
             "0.8751", "0.7501"],
            (0.778, 1.222)),
    "S18": ("1/2", 8,
            ["0", "0.3453", "0.3453", "1.4636", "1.4636", "0.2616", "0.2616",
             "1.3543", "0.0643", "3/4", "1.0953", "1.0953", "0.2136", "0.2136",
             "1.0116", "1.0116", "0.1043", "0.8143"],
            (0.749, 1.251)),
    # T gate, phi = pi/4
    "T2": ("1/4", 0, ["0", "7/8"], (0.99977, 1.00023)),
    "T4": ("1/4", 1, ["0", "31/16", "7/8", "13/16"], (0.988, 1.012)),
    "T6": ("1/4", 2, ["0", "0", "1.9064", "7/8", "7/8", "0.7814"],
           (0.955, 1.045)),
    "T8": ("1/4", 3,
           ["0", "0", "1.9531", "1.8906", "7/8", "7/8", "0.8281", "0.7656"],
           (0.912, 1.088)),
    "T10": ("1/4", 4,
            ["0", "1.1086", "1.1086", "0.0218", "0.2593",
             "7/8", "1.9836", "1.9836", "0.8968", "1.1343"],
            (0.869, 1.131)),
    "T12": ("1/4", 5,
            ["0", "0", "0.5488", "0.5488", "1.5386", "1.4761",
             "7/8", "7/8", "1.4238", "1.4238", "0.4136", "0.3511"],
            (0.828, 1.172)),
    "T14": ("1/4", 6,
            ["0", "0.9406", "0.9406", "0.2214", "0.2214", "1.1532", "1.3379",
             "7/8", "1.8156", "1.8156", "1.0964", "1.0964", "0.0282", "0.2129"],
            (0.791, 1.209)),
    "T16": ("1/4", 7,
            ["0", "0", "1.9724", "1.9724", "0.7247", "0.7247", "1.7171",
             "1.6546", "7/8", "7/8", "0.8474", "0.8474", "1.5997", "1.5997",
             "0.5921", "0.5296"],
            (0.758, 1.242)),
    "T18": ("1/4", 8,
            ["0", "0.9424", "0.9424", "0.5711", "0.5711", "1.3429", "1.3429",
             "0.3645", "0.6381", "7/8", "1.8174", "1.8174", "1.4461", "1.4461",
             "0.2179", "0.2179", "1.2395", "1.5131"],
            (0.728, 1.272)),
}

# phi (units pi) -> free phases per train length, as published.
_TABLE_ARBITRARY = {
    "1/16": {4: ["127/64"], 6: ["1.9766"], 8: ["1.9883", "1.9727"],
             10: ["0.9980", "0.9883"], 12: ["1.0316", "1.7227", "0.6755"],
             14: ["0.9995", "0.9960", "0.9857"]},
    "1/12": {4: ["95/48"], 6: ["1.9688"], 8: ["1.9844", "1.9635"],
             10: ["0.9974", "0.9844"], 12: ["1.0342", "1.6996", "0.6446"],
             14: ["0.9993", "0.9947", "0.9809"]},
    "1/8": {4: ["63/32"], 6: ["1.9531"], 8: ["1.9766", "1.9453"],
            10: ["0.9961", "0.9765"], 12: ["1.0379", "1.6646", "0.5955"],
            14: ["0.9990", "0.9922", "0.9716"]},
    "1/6": {4: ["47/24"], 6: ["1.9375"], 8: ["1.9688", "1.9271"],
            10: ["0.9948", "0.9687"], 12: ["1.0405", "1.6378", "0.5556"],
            14: ["0.9987", "0.9895", "0.9620"]},
    "1/4": {4: ["31/16"], 6: ["1.9064"], 8: ["1.9531", "1.8906"],
            10: ["0.9922", "0.9530"], 12: ["1.0439", "1.5966", "0.4901"],
            14: ["0.9980", "0.9843", "0.9431"]},
    "1/3": {4: ["23/12"], 6: ["1.8754"], 8: ["1.9375", "1.8542"],
            10: ["0.9895", "0.9371"], 12: ["1.0459", "1.5642", "0.4349"],
            14: ["0.9974", "0.9790", "0.9240"]},
    "1/2": {4: ["15/8"], 6: ["1.8137"], 8: ["1.9064", "1.7814"],
            10: ["0.9842", "0.9050"], 12: ["1.0477", "1.5126", "0.3399"],
            14: ["0.9961", "0.9684", "0.8855"]},
    "2/3": {4: ["11/6"], 6: ["1.7529"], 8: ["1.8754", "1.7087"],
            10: ["0.9787", "0.8721"], 12: ["1.0479", "1.4703", "0.2558"],
            14: ["0.9947", "0.9575", "0.8460"]},
    "3/4": {4: ["29/16"], 6: ["1.7229"], 8: ["1.8599", "1.6724"],
            10: ["0.9759", "0.8552"], 12: ["1.0475", "1.4512", "0.2162"],
            14: ["0.9941", "0.9520", "0.8259"]},
    "5/6": {4: ["43/24"], 6: ["1.6932"], 8: ["1.8444", "1.6361"],
            10: ["0.9731", "0.8381"], 12: ["1.0470", "1.4332", "0.1779"],
            14: ["0.9934", "0.9464", "0.8056"]},
    "7/8": {4: ["57/32"], 6: ["1.6785"], 8: ["1.8368", "1.6180"],
            10: ["0.9717", "0.8294"], 12: ["1.0467", "1.4245", "0.1591"],
            14: ["0.9930", "0.9436", "0.7953"]},
    "11/12": {4: ["85/48"], 6: ["1.6639"], 8: ["1.8291", "1.5999"],
              10: ["0.9702", "0.8206"], 12: ["1.0463", "1.4161", "0.1405"],
              14: ["0.9927", "0.9407", "0.7849"]},
    "15/16": {4: ["113/64"], 6: ["1.6566"], 8: ["1.8252", "1.5908"],
              10: ["0.9695", "0.8161"], 12: ["1.0462", "1.4119", "0.1314"],
              14: ["0.9925", "0.9393", "0.7797"]},
    "1": {4: ["7/4"], 6: ["1.6350"], 8: ["1.8137", "1.5637"],
          10: ["0.9673", "0.8027"], 12: ["1.0456", "1.4000", "0.1041"],
          14: ["0.9920", "0.9350", "0.7638"]},
}


class CatalogError(KeyError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    """One published pulse train: phases in units of pi, plus its quoted
    high-fidelity pulse-area interval."""

    name: str
    phi_over_pi: Fraction
    order: int
    phases_over_pi: tuple[Fraction, ...]
    phase_strings: tuple[str, ...]
    quoted_range_over_pi: tuple[float, float]
    source: str = "paper-table"

    @property
    def pulse_count(self) -> int:
        return len(self.phases_over_pi)

    @property
    def quoted_half_width(self) -> float:
        lo, hi = self.quoted_range_over_pi
        return (hi - lo) / 2


@dataclass(frozen=True)
class ArbitraryPhaseRow:
    """Free phases of the 4..14-pulse forms for one gate angle."""

    phi_over_pi: Fraction
    columns: dict

    def free_phases(self, pulses: int) -> tuple[Fraction, ...]:
        if pulses not in self.columns:
            raise CatalogError(f"no {pulses}-pulse column")
        return tuple(Fraction(s) for s in self.columns[pulses])


def _entry(name: str) -> CatalogEntry:
    phi_s, order, phases, rng = _TABLE_GATES[name]
    return CatalogEntry(
        name=name,
        phi_over_pi=Fraction(phi_s),
        order=order,
        phases_over_pi=tuple(Fraction(s) for s in phases),
        phase_strings=tuple(phases),
        quoted_range_over_pi=rng,
    )


def names() -> list[str]:
    return list(_TABLE_GATES)


def entries() -> list[CatalogEntry]:
    return [_entry(name) for name in _TABLE_GATES]


@lru_cache(maxsize=None)
def get(name: str) -> CatalogEntry:
    """Look up a published train by name (Z2..Z18, S2..S18, T2..T18)."""
    if name not in _TABLE_GATES:
        raise CatalogError(f"unknown catalog entry {name!r}")
    return _entry(name)


def arbitrary_rows() -> list[ArbitraryPhaseRow]:
    return [
        ArbitraryPhaseRow(Fraction(k), dict(v)) for k, v in _TABLE_ARBITRARY.items()
    ]


def get_arbitrary_row(phi_over_pi) -> ArbitraryPhaseRow:
    key = Fraction(phi_over_pi)
    for k, v in _TABLE_ARBITRARY.items():
        if Fraction(k) == key:
            return ArbitraryPhaseRow(key, dict(v))
    raise CatalogError(f"no arbitrary-phase row for phi = {phi_over_pi} pi")


def _is_exact(s: str) -> bool:
    return "." not in s


def _build_structured(rel_strings, phi_over_pi: Fraction, order: int,
                      label: str, refine: bool) -> CompositeSequence:
    """Construct the full train from first-half relative phases (units pi).

    Decimal phases are polished onto the exact root; "0" entries and exact
    fractions are pinned.  Phases come out as mpf values so downstream
    extended-precision checks see the actual root, while float consumers
    simply cast.
    """
    with mp.workdps(precise.WORKING_DPS):
        phi_mp = mp.pi * phi_over_pi.numerator / phi_over_pi.denominator
        fracs = [Fraction(s) for s in rel_strings]
        if refine and not all(_is_exact(s) for s in rel_strings):
            pinned = np.array([_is_exact(s) for s in rel_strings], dtype=bool)
            seed = [float(f) * math.pi for f in fracs]
            rel = precise.polish_structured(seed, phi_mp, pinned=pinned)
        else:
            rel = [mp.pi * f.numerator / f.denominator for f in fracs]
        half = [mp.mpf(0)] + list(rel)
        shift = mp.pi - phi_mp / 2
        phases = half + [p + shift for p in half]
    return CompositeSequence(
        pulses=tuple(Pulse(math.pi, p) for p in phases),
        target_phi=phi_mp,
        order=order,
        label=label,
    )


@lru_cache(maxsize=None)
def _to_sequence_cached(name: str, refine: bool) -> CompositeSequence:
    entry = get(name)
    n = entry.order
    first_half = entry.phase_strings[: n + 1]
    if first_half[0] != "0":
        raise CatalogError(f"{name}: first phase must be 0")
    return _build_structured(
        list(first_half[1:]), entry.phi_over_pi, n, entry.name, refine
    )


def to_sequence(entry: CatalogEntry, refine: bool = True) -> CompositeSequence:
    """Pulse train of a catalog entry (see ``_build_structured`` for the
    refinement of printed decimals)."""
    if entry.source == "paper-table" and entry.name in _TABLE_GATES:
        return _to_sequence_cached(entry.name, refine)
    return _build_structured(
        [str(f) for f in entry.phases_over_pi[1 : entry.order + 1]],
        entry.phi_over_pi,
        entry.order,
        entry.name,
        refine,
    )


_ROW_ORDERS = {4: 1, 6: 2, 8: 3, 10: 4, 12: 5, 14: 6}
_ROW_LEADING_ZEROS = {4: 0, 6: 1, 8: 1, 10: 2, 12: 2, 14: 3}


@lru_cache(maxsize=None)
def arbitrary_row(phi_over_pi, pulses: int, refine: bool = True) -> CompositeSequence:
    """Train for an arbitrary-angle table row and train length."""
    row = get_arbitrary_row(phi_over_pi)
    if pulses not in _ROW_ORDERS:
        raise CatalogError(f"no {pulses}-pulse column")
    free = row.columns[pulses]
    rel = ["0"] * _ROW_LEADING_ZEROS[pulses] + list(free)
    label = f"phi={phi_over_pi}pi-{pulses}p"
    return _build_structured(rel, row.phi_over_pi, _ROW_ORDERS[pulses], label, refine)


# --- JSON interchange -------------------------------------------------------

def entry_to_dict(entry: CatalogEntry) -> dict:
    return {
        "name": entry.name,
        "phi_over_pi": str(entry.phi_over_pi),
        "order": entry.order,
        "phases_over_pi": list(entry.phase_strings),
        "quoted_range_over_pi": list(entry.quoted_range_over_pi),
        "source": entry.source,
    }


def entry_from_dict(d: dict) -> CatalogEntry:
    phases = [str(s) for s in d["phases_over_pi"]]
    rng = d.get("quoted_range_over_pi") or [math.nan, math.nan]
    return CatalogEntry(
        name=d["name"],
        phi_over_pi=Fraction(str(d["phi_over_pi"])),
        order=int(d["order"]),
        phases_over_pi=tuple(Fraction(s) for s in phases),
        phase_strings=tuple(phases),
        quoted_range_over_pi=(float(rng[0]), float(rng[1])),
        source=d.get("source", "paper-table"),
    )


def save_catalog(entry_list, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([entry_to_dict(e) for e in entry_list], fh, indent=2)
        fh.write("\n")


def load_catalog(path=None) -> list[CatalogEntry]:
    """Load entries from ``path``, $CPGATE_CATALOG, or the packaged file."""
    if path is None:
        path = os.environ.get("CPGATE_CATALOG")
    if path is None:
        text = (
            resources.files("cpgate").joinpath("data/catalog.json").read_text()
        )
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    data = json.loads(text)
    if isinstance(data, dict):
        data = [data]
    return [entry_from_dict(d) for d in data]


def solution_to_entry(phases, phi_over_pi, order: int, name: str) -> CatalogEntry:
    """Package solver output (radians) in catalog form, source="solver"."""
    strings = tuple(f"{p / math.pi:.10f}" for p in phases)
    return CatalogEntry(
        name=name,
        phi_over_pi=Fraction(phi_over_pi),
        order=order,
        phases_over_pi=tuple(Fraction(s) for s in strings),
        phase_strings=strings,
        quoted_range_over_pi=(math.nan, math.nan),
        source="solver",
    )
