"""Analytic constructors for the composite phase-gate pulse trains.

All trains are built from nominal pi pulses; 2pi/3pi/4pi blocks are runs
of identical-phase pi pulses, so a train of compensation order n always
has 2(n+1) entries.  Constructors keep exact phase expressions (negative
values are not wrapped); normalization to [0, 2pi) is a display concern.

Every train shares the asymmetric two-half structure: a half-sequence
R_{n+1}(nu) = pi_nu pi_{nu+p1} ... pi_{nu+pn} followed by the same half
with every phase shifted by pi - phi/2.  That structure alone pins the
zero-error propagator to the target gate and cancels all odd-order
derivatives of the major-diagonal element and all even-order derivatives
of the minor-diagonal one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .su2 import CompositeSequence, Pulse

PI = math.pi


@dataclass(frozen=True)
class HalfSequenceSpec:
    """Relative phases p1..pn of one half (the leading phase is 0)."""

    relative_phases: tuple[float, ...]
    phi: float

    @property
    def order(self) -> int:
        return len(self.relative_phases)


def _pi_train(phases, phi, order, label) -> CompositeSequence:
    return CompositeSequence(
        pulses=tuple(Pulse(PI, p) for p in phases),
        target_phi=phi,
        order=order,
        label=label,
    )


def structured_sequence(spec: HalfSequenceSpec, nu: float = 0.0) -> CompositeSequence:
    """Full 2(n+1)-pulse train from one half, second half shifted by pi - phi/2."""
    half = [nu] + [nu + p for p in spec.relative_phases]
    shift = PI - spec.phi / 2
    phases = half + [p + shift for p in half]
    return _pi_train(
        phases, spec.phi, spec.order, label=f"struct(n={spec.order})"
    )


def two_pulse(phi: float, nu: float = 0.0) -> CompositeSequence:
    """pi_nu pi_{nu+pi-phi/2}: the bare (uncompensated) phase gate."""
    seq = structured_sequence(HalfSequenceSpec((), phi), nu)
    return _pi_train(seq.phases, phi, 0, label="two")


_FOUR_VARIANTS = 4


def four_pulse(phi: float, variant: int = 1) -> CompositeSequence:
    """Four-pulse train with first-order error compensation.

    The four variants are distinct exact solutions of the first-order
    nullification conditions; all share the same fidelity profile.
    """
    if variant not in range(1, _FOUR_VARIANTS + 1):
        raise ValueError(f"four_pulse variant must be 1..4, got {variant}")
    s = PI - phi / 2
    variants = {
        1: [0.0, -phi / 4, s, PI - 3 * phi / 4],
        2: [0.0, PI - phi / 4, s, -3 * phi / 4],
        3: [phi / 4, 0.0, PI - phi / 4, s],
        4: [PI + phi / 4, 0.0, -phi / 4, s],
    }
    return _pi_train(variants[variant], phi, 1, label=f"four-v{variant}")


def chi_six(phi: float) -> float:
    """Phase offset for the six-pulse solutions: phi/4 + arcsin(sin(phi/4)/2)."""
    x = phi / 4
    return x + math.asin(0.5 * math.sin(x))


def chi_eight(phi: float) -> float:
    """Phase offset for the eight-pulse solutions: phi/8 + arcsin(sin(phi/8)/2)."""
    x = phi / 8
    return x + math.asin(0.5 * math.sin(x))


def six_pulse(phi: float, variant: int = 1) -> CompositeSequence:
    """Six-pulse train with second-order error compensation."""
    if variant not in (1, 2, 3, 4):
        raise ValueError(f"six_pulse variant must be 1..4, got {variant}")
    c = chi_six(phi)
    s = PI - phi / 2
    variants = {
        1: [c, 0.0, 0.0, c + s, s, s],
        2: [PI + phi / 2 - c, 0.0, 0.0, -c, s, s],
        3: [0.0, 0.0, s + c, s, s, -phi + c],
        4: [0.0, 0.0, -c, s, s, -c + s],
    }
    return _pi_train(variants[variant], phi, 2, label=f"six-v{variant}")


def eight_pulse(phi: float, variant: int = 1) -> CompositeSequence:
    """Eight-pulse train with third-order error compensation."""
    if variant not in range(1, 7):
        raise ValueError(f"eight_pulse variant must be 1..6, got {variant}")
    c = chi_eight(phi)
    s = PI - phi / 2
    variants = {
        1: [c, 0.0, 0.0, c + PI - phi / 4, c + s, s, s, c - 3 * phi / 4],
        2: [PI + phi / 4 - c, 0.0, 0.0, -c, -c - phi / 4, s, s, -c + s],
        3: [0.0, 0.0, c + PI - phi / 4, c + s, s, s, c - 3 * phi / 4, c - phi],
        4: [0.0, 0.0, -c, -c - phi / 4, s, s, -c + s, -c + PI - 3 * phi / 4],
        5: [c + phi / 4, c, 0.0, 0.0, c + PI - phi / 4, c + s, s, s],
        6: [PI + phi / 2 - c, PI + phi / 4 - c, 0.0, 0.0, -c, -c - phi / 4, s, s],
    }
    return _pi_train(variants[variant], phi, 3, label=f"eight-v{variant}")


def appendix_b_sequence(
    phi: float,
    pulses: int,
    phases,
    constraint_tol: float = 1e-9,
) -> CompositeSequence:
    """Compact 10/12/14-pulse forms built around 3pi/4pi leading blocks.

    ``phases`` holds the free phases of the first half in radians:
    two for 10 pulses ((3pi)_0 pi_p pi_q), three for 12 pulses (which must
    satisfy p3 = p2 - p1 - phi/4 within ``constraint_tol``), three for 14
    pulses ((4pi)_0 pi_p pi_q pi_r).  The second half repeats the first
    shifted by pi - phi/2.
    """
    phases = tuple(phases)
    if pulses == 10:
        if len(phases) != 2:
            raise ValueError("10-pulse form takes exactly 2 free phases")
        rel = (0.0, 0.0) + phases
        order = 4
    elif pulses == 12:
        if len(phases) != 3:
            raise ValueError("12-pulse form takes exactly 3 free phases")
        p1, p2, p3 = phases
        defect = _mod_distance(p3, p2 - p1 - phi / 4)
        if defect > constraint_tol:
            raise ValueError(
                f"12-pulse phase constraint violated by {defect:.3e} rad"
            )
        rel = (0.0, 0.0) + phases
        order = 5
    elif pulses == 14:
        if len(phases) != 3:
            raise ValueError("14-pulse form takes exactly 3 free phases")
        rel = (0.0, 0.0, 0.0) + phases
        order = 6
    else:
        raise ValueError(f"compact forms exist for 10/12/14 pulses, got {pulses}")
    seq = structured_sequence(HalfSequenceSpec(rel, phi))
    return _pi_train(seq.phases, phi, order, label=f"compact-{pulses}")


def _mod_distance(x: float, y: float) -> float:
    """Distance between two angles modulo 2*pi."""
    d = (x - y) % (2 * PI)
    return min(d, 2 * PI - d)
