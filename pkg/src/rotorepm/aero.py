"""Rotor aerodynamics: induced velocity and thrust/torque models.

Induced velocity at the rotor disk comes from momentum theory.  In steady
forward flight at pitch angle theta it satisfies a quartic

    vi^4 + 2 Vx sin(theta) vi^3 + Vx^2 vi^2 = (T_prop / (2 rho pi R^2))^2

whose unique positive root is found numerically (bracketed bisection plus
Newton polish) and, alternatively, by the resolvent-based closed form.

Thrust and torque come either from the lumped-coefficient quadratic forms
or from the blade-element double integral over blade span and azimuth,
which serves as the ground-truth oracle for the coefficient forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import (
    TIP_LOSS_FACTOR,
    MODE_ORACLE_CONSISTENT,
    RotorCoefficients,
    VehicleConfig,
)
from .quadrature import QuadratureError, segmented_simpson_nodes, simpson_nodes

VARIANT_RESOLVENT = "resolvent"
VARIANT_AS_PUBLISHED = "as_published"


class AeroDomainError(ValueError):
    """Input outside the physical domain of the model."""


class ClosedFormInapplicable(Exception):
    """Closed-form quartic solution hit a complex intermediate or a
    degenerate resolvent; callers should fall back to the numeric root."""


@dataclass(frozen=True)
class InflowState:
    """One inflow operating point in the global frame.

    The perpendicular inflow convention is upr = Vx sin(theta) + vi (flow
    into the tilted disk adds to the self-induced downwash).
    """

    Vx: float
    theta: float
    vi: float

    @property
    def upr(self) -> float:
        return self.Vx * math.sin(self.theta) + self.vi

    @property
    def in_plane(self) -> float:
        return self.Vx * math.cos(self.theta)


@dataclass(frozen=True)
class ClosedFormResult:
    """Closed-form induced velocity plus its validation against the numeric root."""

    vi: float
    validated: bool
    rel_error: float
    variant: str


def _quartic_rhs(T_total: float, cfg: VehicleConfig) -> float:
    # per-propeller momentum-theory constant, units of velocity^2
    return T_total / (2.0 * cfg.Np * cfg.env.rho * cfg.disk_area)


def quartic_residual(vi: float, T_total: float, Vx: float, theta: float, cfg: VehicleConfig) -> float:
    """Residual of the inflow quartic at vi, relative to its right-hand side."""
    rhs = _quartic_rhs(T_total, cfg)
    f = vi**4 + 2.0 * Vx * math.sin(theta) * vi**3 + Vx**2 * vi**2 - rhs * rhs
    return abs(f) / (rhs * rhs)


def induced_velocity_numeric(
    T_total: float,
    Vx: float,
    theta: float,
    cfg: VehicleConfig,
    rel_tol: float = 1e-12,
) -> float:
    """Unique positive root of the inflow quartic for total thrust T_total.

    Bisection on a guaranteed sign-change bracket [0, 10 v_hover], then
    Newton polish to machine precision.  For theta in [0, pi/2) every
    non-leading quartic coefficient is >= 0 and the constant term is < 0,
    so exactly one positive real root exists.
    """
    if not T_total > 0:
        raise AeroDomainError(f"thrust must be positive, got {T_total}")
    if Vx < 0:
        raise AeroDomainError(f"Vx must be >= 0, got {Vx}")
    if not 0 <= theta < math.pi / 2:
        raise AeroDomainError(f"theta must be in [0, pi/2), got {theta}")
    rhs = _quartic_rhs(T_total, cfg)
    b = 2.0 * Vx * math.sin(theta)
    c = Vx * Vx
    e = -rhs * rhs

    def f(v: float) -> float:
        return ((v + b) * v + c) * v * v + e

    v_hover = math.sqrt(rhs)
    lo, hi = 0.0, 10.0 * v_hover
    if not (f(lo) < 0 and f(hi) > 0):
        raise AeroDomainError("quartic bracket does not change sign")
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    v = 0.5 * (lo + hi)
    # Newton polish; converges in a couple of steps from the bisection root
    for _ in range(12):
        fp = (4.0 * v**2 + 3.0 * b * v + 2.0 * c) * v
        if fp == 0:
            break
        step = f(v) / fp
        v -= step
        if abs(step) <= 1e-16 * v:
            break
    return v


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def _normalized_quartic_root(sin_t: float, K2: float, variant: str) -> float:
    """Positive root of x^4 + 2 sin(t) x^3 + x^2 - K2/sin(t)^2 = 0, via resolvent.

    This is the inflow quartic with velocities normalized by the trim
    speed, which removes the mass dependence.  `resolvent` assembles the
    root exactly from the resolvent quantities; `as_published` evaluates
    the printed normalized solution literally (sign and radicand scaling
    differ from the exact assembly; retained to document the discrepancy).
    """
    s2 = sin_t * sin_t
    cos2 = 1.0 - s2
    p = 1.0 - 1.5 * s2
    d0 = 1.0 - 12.0 * K2 / s2
    d1 = 2.0 * (1.0 - 54.0 * K2 + 36.0 * K2 / s2)
    disc = d1 * d1 - 4.0 * d0**3
    if disc < 0:
        raise ClosedFormInapplicable("complex resolvent intermediate (disc < 0)")
    s1 = _cbrt((d1 + math.sqrt(disc)) / 2.0)
    if abs(s1) < 1e-300:
        raise ClosedFormInapplicable("degenerate resolvent (S1 = 0)")
    s2sq = -p / 6.0 + s1 / 12.0 + d0 / (12.0 * s1)
    if s2sq <= 0 or math.sqrt(s2sq) < 1e-12:
        raise ClosedFormInapplicable("degenerate resolvent (S2 ~ 0)")
    s2v = math.sqrt(s2sq)
    if variant == VARIANT_AS_PUBLISHED:
        rad = -s2sq / 4.0 + (3.0 * s2 - 2.0) / 16.0 + sin_t * cos2 / (16.0 * s2v)
        if rad < 0:
            raise ClosedFormInapplicable("negative radicand in published assembly")
        return sin_t / 2.0 + s2v + math.sqrt(rad)
    if variant != VARIANT_RESOLVENT:
        raise ValueError(f"unknown closed-form variant {variant!r}")
    rad = -s2sq + (3.0 * s2 - 2.0) / 4.0 + sin_t * cos2 / (4.0 * s2v)
    if rad < 0:
        raise ClosedFormInapplicable("negative radicand in resolvent assembly")
    return -sin_t / 2.0 + s2v + math.sqrt(rad)


def induced_velocity_closed_form(
    theta: float,
    m: float,
    cfg: VehicleConfig,
    variant: str = VARIANT_RESOLVENT,
    validation_tol: float = 1e-6,
) -> ClosedFormResult:
    """Closed-form induced velocity at the trim point for pitch theta, mass m.

    Trim fixes Vx = sqrt(m g tan(theta) / Cbd) and T = m g / cos(theta);
    the normalized quartic root then scales by the trim speed.  The result
    is flagged validated only when it matches the numeric root within
    validation_tol (relative).
    """
    if not 0 < theta < math.pi / 2:
        raise AeroDomainError(f"theta must be in (0, pi/2), got {theta}")
    if not m > 0:
        raise AeroDomainError(f"mass must be positive, got {m}")
    g, cbd = cfg.env.g, cfg.Cbd
    K2 = (cbd / (2.0 * cfg.Np * cfg.env.rho * cfg.disk_area)) ** 2
    x = _normalized_quartic_root(math.sin(theta), K2, variant)
    vx = math.sqrt(m * g * math.tan(theta) / cbd)
    vi = vx * x
    T = m * g / math.cos(theta)
    vi_num = induced_velocity_numeric(T, vx, theta, cfg)
    rel = abs(vi - vi_num) / vi_num
    return ClosedFormResult(vi=vi, validated=rel <= validation_tol, rel_error=rel, variant=variant)


def bemt_oracle(
    omega: float,
    vx: float,
    upr: float,
    cfg: VehicleConfig,
    n_r: int = 1000,
    n_psi: int = 720,
    check_convergence: bool = False,
    convergence_tol: float = 1e-10,
) -> tuple[float, float]:
    """Blade-element double integral for total thrust and torque.

    Integrates the small-angle section loads over blade span and one
    rotation, with planar inflow u_pl = omega r + vx sin(psi) and uniform
    perpendicular inflow upr; the inflow angle uses the same small-angle
    form as the section lift term (phi ~ upr/u_pl), so the lumped
    coefficient forms are exact expansions of this integral.  Thrust spans
    R0..0.97R, torque R0..R.  Raises if reverse flow (u_pl <= 0) occurs
    anywhere on the integration domain.
    """
    if not omega > 0:
        raise AeroDomainError(f"omega must be positive, got {omega}")

    def evaluate(nr: int, npsi: int) -> tuple[float, float]:
        blade = cfg.blade
        psi, wpsi = simpson_nodes(0.0, 2.0 * math.pi, npsi)
        sin_psi = np.sin(psi)

        def one(hi: float, torque: bool) -> float:
            r, wr = segmented_simpson_nodes(blade.R0, hi, blade.stations(), nr)
            c = blade.chord_at(r)
            th = blade.twist_at(r)
            upl = omega * r[:, None] + vx * sin_psi[None, :]
            if np.min(upl) <= 0:
                raise AeroDomainError(
                    "reverse flow: u_pl <= 0 inside the integration domain "
                    f"(omega R0 = {omega * blade.R0:.3g} <= vx = {vx:.3g})"
                )
            if torque:
                integ = (
                    0.5 * blade.Nb * cfg.env.rho * r[:, None] * c[:, None]
                    * (blade.a * (th[:, None] * upl * upr - upr * upr) + blade.cd * upl**2)
                )
            else:
                integ = (
                    0.5 * blade.Nb * cfg.env.rho * c[:, None] * blade.a
                    * (th[:, None] * upl**2 - upr * upl)
                )
            return float(wr @ integ @ wpsi) / (2.0 * math.pi)

        T = cfg.Np * one(TIP_LOSS_FACTOR * blade.R, torque=False)
        Q = cfg.Np * one(blade.R, torque=True)
        return T, Q

    T, Q = evaluate(n_r, n_psi)
    if check_convergence:
        T2, Q2 = evaluate(2 * n_r, 2 * n_psi)
        for name, v1, v2 in (("thrust", T, T2), ("torque", Q, Q2)):
            scale = max(abs(v1), abs(v2))
            if scale > 0 and abs(v1 - v2) > convergence_tol * scale:
                raise QuadratureError(
                    f"blade-element {name} integral not converged: "
                    f"|delta|/|value| = {abs(v1 - v2) / scale:.3e}"
                )
    return T, Q


def thrust_coefficient_form(
    omega: float,
    Vx: float,
    theta: float,
    vi: float,
    coeffs: RotorCoefficients,
    frame_consistent: bool = True,
) -> float:
    """Total thrust from the lumped quadratic form.

    frame_consistent resolves the in-plane inflow as Vx cos(theta) (the
    rotor-frame component), which makes the form an exact expansion of the
    blade-element integral; disabling it evaluates the printed form, which
    uses the global-frame Vx directly.
    """
    flow = InflowState(Vx, theta, vi)
    vxp = flow.in_plane if frame_consistent else Vx
    return coeffs.BT1 * omega**2 + coeffs.BT2 * vxp**2 / 2.0 - coeffs.BT3 * omega * flow.upr


def torque_coefficient_form(
    omega: float,
    Vx: float,
    theta: float,
    vi: float,
    coeffs: RotorCoefficients,
    frame_consistent: bool = True,
) -> float:
    """Total torque from the lumped quadratic form (see thrust_coefficient_form)."""
    flow = InflowState(Vx, theta, vi)
    vxp = flow.in_plane if frame_consistent else Vx
    upr = flow.upr
    return (
        coeffs.CQ1 * omega**2
        + coeffs.CQ2 * vxp**2
        + coeffs.CQ3 * upr * omega
        - coeffs.CQ4 * upr**2
    )
