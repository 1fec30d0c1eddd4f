"""Rothermel surface-fire spread chain and elliptic spread frames.

Implements the classical semi-empirical chain from fuel-bed description to
no-wind/no-slope spread rate R0, the wind and slope multipliers, and the
head/back rates that define the elliptic "spread frame" (a, b, c) used by
the wind metric models.

Units follow the original imperial formulation throughout this module:
surface-to-volume ratio sigma in 1/ft, loading w_o in lb/ft^2, depth delta
in ft, heat content h in BTU/lb, particle density rho_p in lb/ft^3, wind
speed U in ft/min, rates in ft/min.  Moistures and mineral fractions are
dimensionless.  Conversion helpers live in :mod:`firefront.units`.

The chain is computed exactly as printed in the source table, including a
few rows that differ from other Rothermel references (the wind exponent B
uses the packing ratio, E and the effective heating number use the fuel
depth, and the heat of preignition uses the moisture of extinction).  A
single ``standard`` flag switches on the heat-sink variant, which divides
R0 by rho_b * epsilon * Q_ig with epsilon = exp(-138/sigma).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateFrameError, InvalidInputError

TWO_PI = 2.0 * math.pi


def _require(cond, message):
    if not cond:
        raise InvalidInputError(message)


@dataclass(frozen=True)
class FuelBed:
    """A homogeneous fuel bed.

    sigma: surface-area-to-volume ratio, 1/ft
    w_o:   oven-dry fuel loading, lb/ft^2
    delta: fuel bed depth, ft
    M_x:   moisture content of extinction, fraction
    M_f:   fuel moisture content, fraction
    h:     heat content, BTU/lb
    S_T:   total mineral content, fraction
    S_e:   effective mineral content, fraction
    rho_p: oven-dry particle density, lb/ft^3
    """

    sigma: float
    w_o: float
    delta: float
    M_x: float
    M_f: float
    h: float = 8000.0
    S_T: float = 0.0555
    S_e: float = 0.010
    rho_p: float = 32.0

    def __post_init__(self):
        _require(self.sigma > 0, f"sigma must be > 0, got {self.sigma}")
        _require(self.w_o > 0, f"w_o must be > 0, got {self.w_o}")
        _require(self.delta > 0, f"delta must be > 0, got {self.delta}")
        _require(0 < self.M_x < 1, f"M_x must be in (0, 1), got {self.M_x}")
        _require(0 <= self.M_f < 1, f"M_f must be in [0, 1), got {self.M_f}")
        _require(self.h > 0, f"h must be > 0, got {self.h}")
        _require(0 <= self.S_T < 1, f"S_T must be in [0, 1), got {self.S_T}")
        _require(self.S_e > 0, f"S_e must be > 0, got {self.S_e}")
        _require(self.rho_p > 0, f"rho_p must be > 0, got {self.rho_p}")


@dataclass(frozen=True)
class Environment:
    """Wind and terrain acting on a fuel bed.

    U:         open wind speed, ft/min (>= 0)
    tan_phi:   tangent of the slope angle (>= 0)
    theta_hat: direction of maximal spread (upslope/downwind), radians,
               measured counterclockwise from the +x axis on the plane;
               normalized into [0, 2*pi).
    """

    U: float = 0.0
    tan_phi: float = 0.0
    theta_hat: float = 0.0

    def __post_init__(self):
        _require(self.U >= 0, f"U must be >= 0, got {self.U}")
        _require(self.tan_phi >= 0, f"tan_phi must be >= 0, got {self.tan_phi}")
        object.__setattr__(self, "theta_hat", self.theta_hat % TWO_PI)


@dataclass(frozen=True)
class SpreadParams:
    """Resolved spread parameters for one fuel/environment combination.

    Rates are in ft/min; theta_hat in radians; a, b, c are the spread-frame
    semi-axes/offset in the same rate units (b along theta_hat).
    """

    R0: float
    phi_s: float
    phi_w: float
    R_H: float
    R_B: float
    a: float
    b: float
    c: float
    theta_hat: float
    U: float


# ---------------------------------------------------------------------------
# chain rows
# ---------------------------------------------------------------------------

def bulk_density(fuel: FuelBed) -> float:
    """Oven-dry bulk density rho_b = w_o / delta, lb/ft^3."""
    return fuel.w_o / fuel.delta


def packing_ratio(fuel: FuelBed) -> float:
    """Packing ratio beta = rho_b / rho_p."""
    return bulk_density(fuel) / fuel.rho_p


def optimum_packing_ratio(fuel: FuelBed) -> float:
    """Optimum packing ratio beta_op = 3.348 * sigma^-0.8189."""
    return 3.348 * fuel.sigma ** -0.8189


def reaction_velocity(fuel: FuelBed) -> float:
    """Optimum reaction velocity Gamma', 1/min."""
    sigma = fuel.sigma
    A = 133.0 * sigma ** -0.7913
    gamma_max = sigma ** 1.5 / (495.0 + 0.0594 * sigma ** 1.5)
    ratio = packing_ratio(fuel) / optimum_packing_ratio(fuel)
    return gamma_max * ratio ** A * math.exp(A * (1.0 - ratio))


def moisture_damping(fuel: FuelBed) -> float:
    """Moisture damping coefficient eta_M.

    r_M = min(M_f / M_x, 1); the cubic vanishes at r_M = 1 and is clamped
    to exactly zero there (IEEE evaluation of the printed cubic leaves a
    ~5e-16 residue at the boundary).
    """
    r_M = min(fuel.M_f / fuel.M_x, 1.0)
    if r_M == 1.0:
        return 0.0
    return 1.0 - 2.59 * r_M + 5.11 * r_M ** 2 - 3.52 * r_M ** 3


def mineral_damping(fuel: FuelBed) -> float:
    """Mineral damping coefficient eta_s = min(0.174 * S_e^-0.19, 1)."""
    return min(0.174 * fuel.S_e ** -0.19, 1.0)


def reaction_intensity(fuel: FuelBed) -> float:
    """Reaction intensity I_R = Gamma' * w_n * h * eta_M * eta_s, BTU/ft^2/min."""
    w_n = fuel.w_o * (1.0 - fuel.S_T)
    return reaction_velocity(fuel) * w_n * fuel.h * moisture_damping(fuel) * mineral_damping(fuel)


def propagating_flux_ratio(fuel: FuelBed) -> float:
    """Propagating flux ratio xi."""
    sigma = fuel.sigma
    beta = packing_ratio(fuel)
    return math.exp((0.792 + 0.681 * math.sqrt(sigma)) * (beta + 0.1)) / (192.0 + 0.2595 * sigma)


def effective_heating_number(fuel: FuelBed, standard: bool = False) -> float:
    """Effective heating number epsilon.

    As printed, epsilon = exp(-138 / delta); the heat-sink variant
    (``standard=True``) uses exp(-138 / sigma).
    """
    return math.exp(-138.0 / (fuel.sigma if standard else fuel.delta))


def heat_of_preignition(fuel: FuelBed) -> float:
    """Heat of preignition Q_ig = 250 + 1116 * M_x, BTU/lb."""
    return 250.0 + 1116.0 * fuel.M_x


def no_wind_spread_rate(fuel: FuelBed, standard: bool = False) -> float:
    """No-wind, no-slope spread rate R0, ft/min.

    Default: R0 = I_R * xi.  With ``standard=True`` the heat-sink variant
    additionally divides by rho_b * epsilon * Q_ig, with epsilon taken as
    exp(-138/sigma).
    """
    R0 = reaction_intensity(fuel) * propagating_flux_ratio(fuel)
    if standard:
        sink = bulk_density(fuel) * effective_heating_number(fuel, standard=True) * heat_of_preignition(fuel)
        R0 = R0 / sink
    return R0


def wind_factor(fuel: FuelBed, U: float) -> float:
    """Wind multiplier phi_w for open wind speed U in ft/min."""
    _require(U >= 0, f"U must be >= 0, got {U}")
    if U == 0:
        return 0.0
    sigma = fuel.sigma
    beta = packing_ratio(fuel)
    C = 7.47 * math.exp(-0.133 * sigma ** 0.55)
    B = 0.02526 * beta ** 0.54
    E = 0.715 * math.exp(-3.59e-4 * fuel.delta)
    return C * U ** B * (beta / optimum_packing_ratio(fuel)) ** -E


def slope_factor(fuel: FuelBed, tan_phi: float) -> float:
    """Slope multiplier phi_s = 5.275 * beta^-0.3 * tan_phi^2."""
    _require(tan_phi >= 0, f"tan_phi must be >= 0, got {tan_phi}")
    return 5.275 * packing_ratio(fuel) ** -0.3 * tan_phi ** 2


def frame_from_rates(R_H: float, R_B: float, U: float):
    """Spread-frame parameters (a, b, c) from head/back rates.

    b = (R_H + R_B)/2 and c = (R_H - R_B)/2 are in the units of the rates;
    a = (1 + 0.25 U)/(2 (R_B + R_H)) with U in ft/min.  Raises
    DegenerateFrameError when R_H + R_B vanishes.
    """
    _require(R_H >= R_B >= 0, f"need R_H >= R_B >= 0, got R_H={R_H}, R_B={R_B}")
    _require(U >= 0, f"U must be >= 0, got {U}")
    total = R_H + R_B
    if total == 0:
        raise DegenerateFrameError("R_H + R_B = 0: spread frame is degenerate")
    b = 0.5 * (R_H + R_B)
    c = 0.5 * (R_H - R_B)
    a = (1.0 + 0.25 * U) / (2.0 * total)
    return a, b, c


def spread_params(fuel: FuelBed, env: Environment, standard: bool = False) -> SpreadParams:
    """Resolve a fuel bed and environment into SpreadParams (ft/min).

    Head rate R_H = R0 (1 + phi_w + phi_s); back rate from the wind-driven
    eccentricity e = sqrt(z^2 - 1)/z with z = 1 + 0.25 U, so that U = 0
    gives e = 0 and R_B = R_H exactly.
    """
    R0 = no_wind_spread_rate(fuel, standard=standard)
    phi_w = wind_factor(fuel, env.U)
    phi_s = slope_factor(fuel, env.tan_phi)
    R_H = R0 * (1.0 + phi_w + phi_s)
    z = 1.0 + 0.25 * env.U
    e = math.sqrt(z * z - 1.0) / z
    R_B = R_H * (1.0 - e) / (1.0 + e)
    a, b, c = frame_from_rates(R_H, R_B, env.U)
    return SpreadParams(R0=R0, phi_s=phi_s, phi_w=phi_w, R_H=R_H, R_B=R_B,
                        a=a, b=b, c=c, theta_hat=env.theta_hat, U=env.U)


def spread_chain(fuel: FuelBed, env: Environment, standard: bool = False) -> dict:
    """Every intermediate of the chain, in evaluation order.

    Returned keys: rho_b, beta, beta_op, A, Gamma_max, Gamma, w_n, r_M,
    eta_M, eta_s, I_R, xi, epsilon, Q_ig, R0, C, B, E, phi_w, phi_s, R_H,
    z, e, R_B, a, b, c, theta_hat, U.  ``epsilon`` is the value in force
    for the active mode (depth-based by default, sigma-based under the
    heat-sink variant).
    """
    sigma = fuel.sigma
    beta = packing_ratio(fuel)
    params = spread_params(fuel, env, standard=standard)
    chain = {
        "rho_b": bulk_density(fuel),
        "beta": beta,
        "beta_op": optimum_packing_ratio(fuel),
        "A": 133.0 * sigma ** -0.7913,
        "Gamma_max": sigma ** 1.5 / (495.0 + 0.0594 * sigma ** 1.5),
        "Gamma": reaction_velocity(fuel),
        "w_n": fuel.w_o * (1.0 - fuel.S_T),
        "r_M": min(fuel.M_f / fuel.M_x, 1.0),
        "eta_M": moisture_damping(fuel),
        "eta_s": mineral_damping(fuel),
        "I_R": reaction_intensity(fuel),
        "xi": propagating_flux_ratio(fuel),
        "epsilon": effective_heating_number(fuel, standard=standard),
        "Q_ig": heat_of_preignition(fuel),
        "R0": params.R0,
        "C": 7.47 * math.exp(-0.133 * sigma ** 0.55),
        "B": 0.02526 * beta ** 0.54,
        "E": 0.715 * math.exp(-3.59e-4 * fuel.delta),
        "phi_w": params.phi_w,
        "phi_s": params.phi_s,
        "R_H": params.R_H,
        "z": 1.0 + 0.25 * env.U,
        "e": math.sqrt((1.0 + 0.25 * env.U) ** 2 - 1.0) / (1.0 + 0.25 * env.U),
        "R_B": params.R_B,
        "a": params.a,
        "b": params.b,
        "c": params.c,
        "theta_hat": params.theta_hat,
        "U": params.U,
    }
    return chain
