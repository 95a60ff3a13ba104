"""Constant-velocity horizontal-flight equilibrium and energy per meter.

At trim the thrust tilt balances body drag and the vertical component
carries the weight:

    Cbd Vx^2 = T sin(theta),      T = m g / cos(theta)

which pins Vx for a given pitch angle and mass.  The rotor speed then
follows from the thrust quadratic, torque from the torque form, and the
energy-per-meter figure is EPM = P / Vx with P = Q omega.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .aero import induced_velocity_numeric, thrust_coefficient_form, torque_coefficient_form
from .params import MODE_ORACLE_CONSISTENT, RotorCoefficients, VehicleConfig

#: Pitch angles beyond this void the small-angle blade aerodynamics.
THETA_MAX = math.radians(60.0)


class TrimInfeasibleError(Exception):
    """No physical rotor speed satisfies the trim thrust requirement."""


@dataclass(frozen=True)
class TrimState:
    """One steady-state operating point (all quantities vehicle totals)."""

    m: float
    theta: float
    Vx: float
    T: float
    vi: float
    omega: float
    Q: float
    P: float
    epm: float


def velocity_from_pitch(theta: float, m: float, cfg: VehicleConfig) -> float:
    """Trim speed for a pitch angle: Vx = sqrt(m g tan(theta) / Cbd)."""
    if not 0 <= theta < math.pi / 2:
        raise ValueError(f"theta must be in [0, pi/2), got {theta}")
    if not m > 0:
        raise ValueError(f"mass must be positive, got {m}")
    return math.sqrt(m * cfg.env.g * math.tan(theta) / cfg.Cbd)


def pitch_from_velocity(Vx: float, m: float, cfg: VehicleConfig) -> float:
    """Trim pitch for a speed: theta = atan(Cbd Vx^2 / (m g))."""
    if Vx < 0:
        raise ValueError(f"Vx must be >= 0, got {Vx}")
    if not m > 0:
        raise ValueError(f"mass must be positive, got {m}")
    return math.atan(cfg.Cbd * Vx * Vx / (m * cfg.env.g))


def rotor_speed(
    theta: float,
    m: float,
    vi: float,
    cfg: VehicleConfig,
    coeffs: RotorCoefficients,
) -> float:
    """Rotor speed meeting the trim thrust, from the thrust quadratic.

    Solves BT1 w^2 - BT3 upr w + (BT2 vx^2/2 - T) = 0 for the larger root
    (the physical branch, continuous with hover); the smaller root sits on
    the branch where thrust falls with rotor speed.  The quadratic is the
    thrust form with T = m g / cos(theta) substituted, so the closure
    thrust_coefficient_form(w, ...) == T holds by construction.
    """
    frame_consistent = coeffs.mode == MODE_ORACLE_CONSISTENT
    Vx = velocity_from_pitch(theta, m, cfg)
    T = m * cfg.env.g / math.cos(theta)
    upr = Vx * math.sin(theta) + vi
    vxp = Vx * math.cos(theta) if frame_consistent else Vx
    b = coeffs.BT3 * upr
    c = coeffs.BT2 * vxp**2 / 2.0 - T
    disc = b * b - 4.0 * coeffs.BT1 * c
    if disc < 0:
        raise TrimInfeasibleError(
            f"no real rotor speed at theta={theta:.4f} rad, m={m:.3f} kg"
        )
    omega = (b + math.sqrt(disc)) / (2.0 * coeffs.BT1)
    if not omega > 0:
        raise TrimInfeasibleError(
            f"no positive rotor speed at theta={theta:.4f} rad, m={m:.3f} kg"
        )
    return omega


def trim_state(
    theta: float,
    m: float,
    cfg: VehicleConfig,
    coeffs: RotorCoefficients,
    theta_max: float = THETA_MAX,
) -> TrimState:
    """Full operating state at pitch theta and total mass m.

    theta = 0 is hover: a valid state with P > 0 and an infinite
    energy-per-meter sentinel (no distance covered).
    """
    if not 0 <= theta <= theta_max:
        raise ValueError(
            f"theta = {theta:.4f} rad outside validity envelope [0, {theta_max:.4f}]"
        )
    if not m > 0:
        raise ValueError(f"mass must be positive, got {m}")
    frame_consistent = coeffs.mode == MODE_ORACLE_CONSISTENT
    Vx = velocity_from_pitch(theta, m, cfg)
    T = m * cfg.env.g / math.cos(theta)
    vi = induced_velocity_numeric(T, Vx, theta, cfg)
    omega = rotor_speed(theta, m, vi, cfg, coeffs)
    Q = torque_coefficient_form(omega, Vx, theta, vi, coeffs, frame_consistent)
    P = Q * omega
    epm = P / Vx if Vx > 0 else math.inf
    return TrimState(m=m, theta=theta, Vx=Vx, T=T, vi=vi, omega=omega, Q=Q, P=P, epm=epm)


def epm_of_velocity(Vx: float, m: float, cfg: VehicleConfig, coeffs: RotorCoefficients) -> float:
    """Energy per meter at a commanded cruise speed (trim pitch implied)."""
    if not Vx > 0:
        raise ValueError(f"Vx must be positive, got {Vx}")
    return trim_state(pitch_from_velocity(Vx, m, cfg), m, cfg, coeffs).epm


def thrust_closure_residual(state: TrimState, coeffs: RotorCoefficients) -> float:
    """Relative mismatch between the thrust form at the trim point and the
    required trim thrust; the authoritative check on the rotor-speed solve."""
    frame_consistent = coeffs.mode == MODE_ORACLE_CONSISTENT
    T_form = thrust_coefficient_form(
        state.omega, state.Vx, state.theta, state.vi, coeffs, frame_consistent
    )
    return abs(T_form - state.T) / state.T
