"""Literature shortcut models for energy per meter, and where they break.

Two widely used shortcuts assume the energy rate is a fixed power of mass
at any cruise speed: a lift-to-drag model EPM = m g / (r(Vx) eta), and a
hover-extrapolated model EPM = (g sum m_k)^(3/2) / (eta Vx sqrt(2 n rho
zeta)).  The physics model shows EPM/m is only invariant at fixed pitch
angle, not fixed speed; the divergence report quantifies both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .params import RotorCoefficients, VehicleConfig
from .trim import trim_state, velocity_from_pitch

MODEL_PHYSICS = "physics"
MODEL_LIFT_DRAG = "lift_drag"
MODEL_HOVER = "hover"


class BaselineDomainError(ValueError):
    """Velocity outside the tabulated lift-to-drag domain."""


@dataclass(frozen=True)
class BaselineParams:
    """Inputs of the two shortcut models.

    lift_to_drag is a sampled (Vx, ratio) table, linearly interpolated and
    never extrapolated; eta is the lumped system efficiency; n and zeta
    are the rotor count and single-rotor spinning area of the hover model.
    """

    eta: float
    lift_to_drag: tuple[tuple[float, float], ...]
    n: int
    zeta: float

    def lift_to_drag_at(self, Vx: float) -> float:
        xs = [v for v, _ in self.lift_to_drag]
        ys = [r for _, r in self.lift_to_drag]
        if not xs[0] <= Vx <= xs[-1]:
            raise BaselineDomainError(
                f"Vx = {Vx:.3g} outside tabulated lift-to-drag domain [{xs[0]:.3g}, {xs[-1]:.3g}]"
            )
        for (x1, y1), (x2, y2) in zip(self.lift_to_drag, self.lift_to_drag[1:]):
            if Vx <= x2:
                return y1 + (y2 - y1) * (Vx - x1) / (x2 - x1)
        return ys[-1]


def validate_baseline_params(bp: BaselineParams) -> list[str]:
    errs = []
    if not 0 < bp.eta <= 1:
        errs.append(f"eta: must be in (0, 1], got {bp.eta}")
    if not bp.zeta > 0:
        errs.append(f"zeta: must be > 0, got {bp.zeta}")
    if bp.n < 1:
        errs.append(f"n: must be >= 1, got {bp.n}")
    if len(bp.lift_to_drag) < 2:
        errs.append("lift_to_drag: needs at least 2 samples")
    else:
        xs = [v for v, _ in bp.lift_to_drag]
        if any(x2 <= x1 for x1, x2 in zip(xs, xs[1:])):
            errs.append("lift_to_drag: velocities must be strictly increasing")
        if any(r <= 0 for _, r in bp.lift_to_drag):
            errs.append("lift_to_drag: ratios must be > 0")
    return errs


def epm_lift_drag(m: float, Vx: float, bp: BaselineParams, g: float) -> float:
    """Lift-to-drag shortcut: EPM = m g / (r(Vx) eta); linear in mass by fiat."""
    return m * g / (bp.lift_to_drag_at(Vx) * bp.eta)


def epm_hover_model(
    masses: Sequence[float], Vx: float, bp: BaselineParams, rho: float, g: float
) -> float:
    """Hover-extrapolated shortcut for total mass sum(masses); scales as m^(3/2).

    Monotone decreasing in Vx, so it admits no optimal cruise speed at all.
    """
    if not Vx > 0:
        raise ValueError(f"Vx must be positive, got {Vx}")
    total = sum(masses)
    return (g * total) ** 1.5 / (bp.eta * Vx * math.sqrt(2.0 * bp.n * rho * bp.zeta))


@dataclass(frozen=True)
class DivergenceRow:
    axis: str          # "fixed_vx" | "fixed_theta"
    value: float       # the fixed Vx (m/s) or theta (rad)
    model: str
    epm_over_m: tuple[float, ...]   # one entry per studied mass
    spread: float                   # (max - min) / mean


def _spread(values: Sequence[float]) -> float:
    mean = sum(values) / len(values)
    return (max(values) - min(values)) / mean if mean != 0 else 0.0


def divergence_report(
    cfg: VehicleConfig,
    coeffs: RotorCoefficients,
    bp: BaselineParams,
    masses: Sequence[float],
    vx_grid: Sequence[float],
    theta_grid: Sequence[float],
) -> list[DivergenceRow]:
    """EPM/m spread across masses at fixed speed and at fixed pitch.

    The physics model spreads widely at fixed speed but collapses at fixed
    pitch; the lift-to-drag shortcut has zero spread at fixed speed by
    construction, and the hover shortcut spreads as sqrt(mass) everywhere.
    """
    from .trim import epm_of_velocity, pitch_from_velocity

    g, rho = cfg.env.g, cfg.env.rho
    rows: list[DivergenceRow] = []
    for vx in vx_grid:
        physics = [epm_of_velocity(vx, m, cfg, coeffs) / m for m in masses]
        ld = [epm_lift_drag(m, vx, bp, g) / m for m in masses]
        hover = [epm_hover_model([m], vx, bp, rho, g) / m for m in masses]
        rows.append(DivergenceRow("fixed_vx", vx, MODEL_PHYSICS, tuple(physics), _spread(physics)))
        rows.append(DivergenceRow("fixed_vx", vx, MODEL_LIFT_DRAG, tuple(ld), _spread(ld)))
        rows.append(DivergenceRow("fixed_vx", vx, MODEL_HOVER, tuple(hover), _spread(hover)))
    for th in theta_grid:
        speeds = [velocity_from_pitch(th, m, cfg) for m in masses]
        physics = [trim_state(th, m, cfg, coeffs).epm / m for m in masses]
        ld = [epm_lift_drag(m, v, bp, g) / m for m, v in zip(masses, speeds)]
        hover = [epm_hover_model([m], v, bp, rho, g) / m for m, v in zip(masses, speeds)]
        rows.append(DivergenceRow("fixed_theta", th, MODEL_PHYSICS, tuple(physics), _spread(physics)))
        rows.append(DivergenceRow("fixed_theta", th, MODEL_LIFT_DRAG, tuple(ld), _spread(ld)))
        rows.append(DivergenceRow("fixed_theta", th, MODEL_HOVER, tuple(hover), _spread(hover)))
    return rows
