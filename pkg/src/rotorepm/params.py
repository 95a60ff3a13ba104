"""Vehicle, blade, and environment parameters plus lumped rotor coefficients.

The lumped coefficients reduce the blade-element thrust/torque integrals to
quadratic forms in rotor speed and the inflow velocities.  Thrust-family
integrals stop at 97% of the tip radius (tip-loss cutoff); torque-family
integrals run to the full tip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import QuadratureError, segmented_simpson_nodes

TIP_LOSS_FACTOR = 0.97

MODE_ORACLE_CONSISTENT = "oracle_consistent"
MODE_AS_PUBLISHED = "as_published"

#: Relative tolerance for the half-resolution quadrature convergence check.
QUADRATURE_TOL = 1e-10

#: Default number of Simpson intervals for the radial integrals.
QUADRATURE_INTERVALS = 1000


@dataclass(frozen=True)
class Environment:
    """Ambient constants: air density rho (kg/m^3) and gravity g (m/s^2)."""

    rho: float
    g: float


@dataclass(frozen=True)
class BladeGeometry:
    """Propeller blade geometry and section aerodynamics.

    chord and twist are sampled radial profiles given as (r, value) pairs;
    values between stations are linearly interpolated, and no extrapolation
    outside the sampled range is performed.  Twist is in radians.
    """

    R: float
    R0: float
    Nb: int
    a: float
    cd: float
    chord: tuple[tuple[float, float], ...]
    twist: tuple[tuple[float, float], ...]

    def chord_at(self, r) -> np.ndarray:
        xs, ys = zip(*self.chord)
        return np.interp(r, xs, ys)

    def twist_at(self, r) -> np.ndarray:
        xs, ys = zip(*self.twist)
        return np.interp(r, xs, ys)

    def stations(self) -> list[float]:
        """All radial stations where a profile table has a breakpoint."""
        return sorted({r for r, _ in self.chord} | {r for r, _ in self.twist})


@dataclass(frozen=True)
class VehicleConfig:
    """Complete vehicle description used by every model in the package."""

    env: Environment
    blade: BladeGeometry
    Np: int
    mv: float
    Cbd: float

    @property
    def disk_area(self) -> float:
        """Single-rotor disk area pi R^2 (m^2)."""
        return math.pi * self.blade.R**2


@dataclass(frozen=True)
class RotorCoefficients:
    """Lumped thrust/torque coefficients (vehicle totals, all Np rotors).

    Thrust:  T = BT1 w^2 + BT2 vx^2/2 - BT3 w upr
    Torque:  Q = CQ1 w^2 + CQ2 vx^2 + CQ3 upr w - CQ4 upr^2

    where vx is the in-plane and upr the perpendicular rotor inflow speed.
    `mode` records how the torque constants were assembled:
    oracle_consistent uses the bare radial integrals so the quadratic forms
    reproduce the blade-element double integral; as_published keeps the
    doubly-prefactored constants (and CQ4 = 2 CQ2) exactly as printed in
    the source model, which is dimensionally inconsistent unless a == cd.
    """

    BT1: float
    BT2: float
    BT3: float
    CQ1: float
    CQ2: float
    CQ3: float
    CQ4: float
    mode: str


def validate_config(cfg: VehicleConfig) -> list[str]:
    """Check every invariant; returns a list of violation messages (empty if valid)."""
    errs: list[str] = []
    env, blade = cfg.env, cfg.blade
    if not env.rho > 0:
        errs.append(f"env.rho: must be > 0, got {env.rho}")
    if not env.g > 0:
        errs.append(f"env.g: must be > 0, got {env.g}")
    if not 0 <= blade.R0 < blade.R:
        errs.append(f"blade.R0: must satisfy 0 <= R0 < R, got R0={blade.R0}, R={blade.R}")
    if blade.Nb < 2:
        errs.append(f"blade.Nb: must be >= 2, got {blade.Nb}")
    if not blade.a > 0:
        errs.append(f"blade.a: must be > 0, got {blade.a}")
    if blade.cd < 0:
        errs.append(f"blade.cd: must be >= 0, got {blade.cd}")
    for name, table in (("chord", blade.chord), ("twist", blade.twist)):
        if len(table) < 2:
            errs.append(f"blade.{name}: needs at least 2 samples, got {len(table)}")
            continue
        rs = [r for r, _ in table]
        if any(r2 <= r1 for r1, r2 in zip(rs, rs[1:])):
            errs.append(f"blade.{name}: sample radii must be strictly increasing")
        if rs[0] > blade.R0 or rs[-1] < blade.R:
            errs.append(
                f"blade.{name}: samples must cover [R0, R] = [{blade.R0}, {blade.R}], "
                f"got [{rs[0]}, {rs[-1]}]"
            )
    if any(c <= 0 for _, c in blade.chord):
        errs.append("blade.chord: all chord values must be > 0")
    if any(not 0 < t < math.pi / 2 for _, t in blade.twist):
        errs.append("blade.twist: all twist values must be in (0, pi/2)")
    if cfg.Np < 1:
        errs.append(f"Np: must be >= 1, got {cfg.Np}")
    if not cfg.mv > 0:
        errs.append(f"mv: must be > 0, got {cfg.mv}")
    if not cfg.Cbd > 0:
        errs.append(f"Cbd: must be > 0, got {cfg.Cbd}")
    return errs


def blade_integral(
    cfg: VehicleConfig,
    r_power: int,
    with_twist: bool,
    hi: float,
    n: int = QUADRATURE_INTERVALS,
) -> float:
    """Radial integral of r^p * c(r) [* theta(r)] from R0 to hi."""
    blade = cfg.blade
    x, w = segmented_simpson_nodes(blade.R0, hi, blade.stations(), n)
    f = x**r_power * blade.chord_at(x)
    if with_twist:
        f = f * blade.twist_at(x)
    return float(w @ f)


def _converged_integral(cfg, r_power, with_twist, hi, n, tol):
    full = blade_integral(cfg, r_power, with_twist, hi, n)
    half = blade_integral(cfg, r_power, with_twist, hi, n // 2)
    scale = max(abs(full), abs(half))
    if scale > 0 and abs(full - half) > tol * scale:
        raise QuadratureError(
            f"radial integral (r^{r_power}, twist={with_twist}) not converged: "
            f"|delta|/|value| = {abs(full - half) / scale:.3e} > {tol:g}"
        )
    return full


def thrust_coefficients(
    cfg: VehicleConfig,
    n: int = QUADRATURE_INTERVALS,
    tol: float = QUADRATURE_TOL,
) -> tuple[float, float, float]:
    """Lumped thrust constants (BT1, BT2, BT3), integrated to the tip-loss cutoff."""
    blade = cfg.blade
    pre = cfg.Np * blade.Nb * cfg.env.rho * blade.a / 2.0
    tip = TIP_LOSS_FACTOR * blade.R
    bt1 = pre * _converged_integral(cfg, 2, True, tip, n, tol)
    bt2 = pre * _converged_integral(cfg, 0, True, tip, n, tol)
    bt3 = pre * _converged_integral(cfg, 1, False, tip, n, tol)
    return bt1, bt2, bt3


def torque_coefficients(
    cfg: VehicleConfig,
    mode: str = MODE_ORACLE_CONSISTENT,
    n: int = QUADRATURE_INTERVALS,
    tol: float = QUADRATURE_TOL,
) -> tuple[float, float, float, float]:
    """Lumped torque constants (CQ1, CQ2, CQ3, CQ4), integrated to the full tip.

    oracle_consistent reads the constants as bare radial integrals with a
    single prefactor each, matching the blade-element expansion.
    as_published nests the prefactored thrust constants inside CQ2/CQ3 and
    sets CQ4 = 2 CQ2, reproducing the printed constants literally.
    """
    blade = cfg.blade
    nbrho = cfg.Np * blade.Nb * cfg.env.rho
    cq1 = (nbrho * blade.cd / 2.0) * _converged_integral(cfg, 3, False, blade.R, n, tol)
    if mode == MODE_ORACLE_CONSISTENT:
        cq2 = (nbrho * blade.cd / 4.0) * _converged_integral(cfg, 1, False, blade.R, n, tol)
        cq3 = (nbrho * blade.a / 2.0) * _converged_integral(cfg, 2, True, blade.R, n, tol)
        cq4 = (nbrho * blade.a / 2.0) * _converged_integral(cfg, 1, False, blade.R, n, tol)
    elif mode == MODE_AS_PUBLISHED:
        bt1, _, bt3 = thrust_coefficients(cfg, n, tol)
        cq2 = (nbrho * blade.cd / 4.0) * bt3
        cq3 = (nbrho * blade.a / 2.0) * bt1
        cq4 = 2.0 * cq2
    else:
        raise ValueError(f"unknown coefficient mode {mode!r}")
    return cq1, cq2, cq3, cq4


def rotor_coefficients(
    cfg: VehicleConfig,
    mode: str = MODE_ORACLE_CONSISTENT,
    n: int = QUADRATURE_INTERVALS,
    tol: float = QUADRATURE_TOL,
) -> RotorCoefficients:
    """Assemble the full coefficient set for a validated configuration."""
    errs = validate_config(cfg)
    if errs:
        raise ValueError("invalid configuration: " + "; ".join(errs))
    bt1, bt2, bt3 = thrust_coefficients(cfg, n, tol)
    cq1, cq2, cq3, cq4 = torque_coefficients(cfg, mode, n, tol)
    return RotorCoefficients(bt1, bt2, bt3, cq1, cq2, cq3, cq4, mode)


def reference_octorotor() -> VehicleConfig:
    """The checked-in reference vehicle used by the scaling studies.

    Every number here is an input choice for a plausible ~4 kg-class
    octorotor with 0.30 m rotors (tapered planform, washout twist), not a
    measured or published value.  configs/octorotor.yaml mirrors this
    definition for the CLI.
    """
    chord = (
        (0.025, 0.0220),
        (0.0375, 0.0262),
        (0.050, 0.0280),
        (0.0625, 0.0270),
        (0.075, 0.0252),
        (0.0875, 0.0231),
        (0.100, 0.0210),
        (0.1125, 0.0190),
        (0.125, 0.0170),
        (0.1375, 0.0151),
        (0.150, 0.0130),
    )
    twist = (
        (0.025, 0.5000),
        (0.0375, 0.3600),
        (0.050, 0.2900),
        (0.0625, 0.2480),
        (0.075, 0.2200),
        (0.0875, 0.2000),
        (0.100, 0.1850),
        (0.1125, 0.1733),
        (0.125, 0.1640),
        (0.1375, 0.1564),
        (0.150, 0.1500),
    )
    return VehicleConfig(
        env=Environment(rho=1.225, g=9.81),
        blade=BladeGeometry(R=0.15, R0=0.025, Nb=2, a=5.7, cd=0.015, chord=chord, twist=twist),
        Np=8,
        mv=3.2,
        Cbd=0.08,
    )


#: Total reference mass (dry vehicle + nominal payload) for scaling studies.
REFERENCE_MASS = 4.0
