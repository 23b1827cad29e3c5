"""Natural-unit conventions, dimensionless field parameterization, SI conversion.

Everything downstream works in natural units hbar = c = m = 1, in which the
trembling-motion angular frequency is exactly 2 and the reduced Compton
wavelength is exactly 1.  The single dimensionless field parameter is

    epsilon = -omega_c / omega_zbw,

negative for a physical magnetic field along +z with the electron's charge
convention.  SI tesla values appear only at the conversion boundary.
"""
from __future__ import annotations

from dataclasses import dataclass, field

OMEGA_ZBW = 2.0   # 2 m c^2 / hbar
LAMBDA_C = 1.0    # hbar / (m c)

# CODATA 2018
_E_CHARGE = 1.602176634e-19     # C
_HBAR = 1.054571817e-34         # J s
_M_E = 9.1093837015e-31         # kg
_C = 2.99792458e8               # m / s

# |epsilon| per tesla: (e B / m) / (2 m c^2 / hbar)
_EPSILON_PER_TESLA = _E_CHARGE * _HBAR / (2.0 * _M_E**2 * _C**2)

EPSILON_MAX = 0.1        # weak-field validity bound
R0_MIN = 10.0            # packet width must stay well above the Compton scale

SPINS = ("up", "down")
CHARGES = ("electron", "positron")

TWO_PI = 6.283185307179586


@dataclass(frozen=True)
class NaturalUnits:
    """The fixed hbar = c = m = 1 convention."""

    hbar: float = 1.0
    c: float = 1.0
    m: float = 1.0

    @property
    def omega_zbw(self) -> float:
        return 2.0 * self.m * self.c**2 / self.hbar

    @property
    def lambda_c(self) -> float:
        return self.hbar / (self.m * self.c)


@dataclass(frozen=True)
class SIField:
    """Uniform magnetic flux density in tesla."""

    B_tesla: float


@dataclass(frozen=True)
class DimensionlessParams:
    """Single source of truth for a simulation configuration."""

    epsilon: float
    spin: str = "up"
    charge: str = "electron"
    r0_over_lambda: float = 100.0
    phi0: float = 0.0

    def __post_init__(self) -> None:
        if self.spin not in SPINS:
            raise ValueError(f"spin must be one of {SPINS}, got {self.spin!r}")
        if self.charge not in CHARGES:
            raise ValueError(f"charge must be one of {CHARGES}, got {self.charge!r}")
        if not abs(self.epsilon) < EPSILON_MAX:
            raise ValueError(
                f"|epsilon| = {abs(self.epsilon):g} outside weak-field regime (< {EPSILON_MAX})"
            )
        if self.r0_over_lambda < R0_MIN:
            raise ValueError(
                f"r0_over_lambda = {self.r0_over_lambda:g} too small (>= {R0_MIN} required)"
            )
        object.__setattr__(self, "phi0", self.phi0 % TWO_PI)

    @property
    def spin_sign(self) -> float:
        """+1 for spin up, -1 for spin down."""
        return 1.0 if self.spin == "up" else -1.0

    @property
    def charge_sign(self) -> float:
        """+1 for electron, -1 for positron (shift-formula label, not e itself)."""
        return 1.0 if self.charge == "electron" else -1.0


def epsilon_from_tesla(field: SIField | float) -> float:
    """Dimensionless epsilon for a lab-frame flux density in tesla.

    epsilon = -omega_c / omega_zbw = -(e B / m) / (2 m c^2 / hbar), which is
    -mu_B B / (m c^2) via the Bohr magneton.
    """
    b = field.B_tesla if isinstance(field, SIField) else float(field)
    if b < 0.0:
        raise ValueError("B_tesla must be nonnegative")
    eps = -_EPSILON_PER_TESLA * b
    if abs(eps) >= EPSILON_MAX:
        raise ValueError(
            f"B = {b:g} T gives |epsilon| = {abs(eps):g}, outside the validated regime"
        )
    return eps


def tesla_from_epsilon(epsilon: float) -> SIField:
    """Inverse of :func:`epsilon_from_tesla`; epsilon must be <= 0."""
    if epsilon > 0.0:
        raise ValueError("physical fields correspond to epsilon <= 0")
    return SIField(B_tesla=-epsilon / _EPSILON_PER_TESLA)


def cyclotron_frequency(params: DimensionlessParams) -> float:
    """omega_c = -epsilon * omega_zbw in natural units; >= 0 for epsilon <= 0."""
    return -params.epsilon * OMEGA_ZBW
