"""Classical spinning-particle dynamics in a uniform magnetic field.

Integrates the coupled (x, pi, v, S) first-order system with fixed-step RK4,
solves the characteristic cubic for the planar rotation frequencies exactly
and perturbatively, and extracts mode frequencies from simulated v_x(tau).

Conventions: metric (+,-,-,-), proper-time derivatives, units with
hbar = c = m = 1 and the spinor coupling constant set to -1.  The field
enters through e*B = 2*epsilon (electron: e = -1, B = -2*epsilon > 0 for
physical epsilon < 0), and s_z is identified with S^{12}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fitting import FrequencyFit, fit_frequencies
from .units import OMEGA_ZBW, DimensionlessParams

TWO_PI = 2.0 * math.pi
_G = np.array([1.0, -1.0, -1.0, -1.0])  # metric signature diag


class IntegrationUnstableError(RuntimeError):
    """A state component exceeded the blow-up guard during integration."""


class ComplexRootsError(ValueError):
    """Characteristic cubic discriminant was not positive."""


@dataclass
class BZState:
    """Phase point: position, kinetic momentum, velocity, spin tensor."""

    x: np.ndarray   # (4,)
    pi: np.ndarray  # (4,)
    v: np.ndarray   # (4,)
    S: np.ndarray   # (4, 4), antisymmetric

    def flat(self) -> np.ndarray:
        return np.concatenate([self.x, self.pi, self.v, self.S.ravel()])

    @classmethod
    def from_flat(cls, y: np.ndarray) -> "BZState":
        return cls(x=y[0:4].copy(), pi=y[4:8].copy(), v=y[8:12].copy(),
                   S=y[12:28].reshape(4, 4).copy())


@dataclass(frozen=True)
class FieldTensor:
    """Uniform B along z: the only nonzero components are F^{21} = -F^{12} = B."""

    b: float

    @property
    def matrix(self) -> np.ndarray:
        f = np.zeros((4, 4))
        f[2, 1] = self.b
        f[1, 2] = -self.b
        return f


def bz_rhs(state: BZState, field: FieldTensor, e: float) -> BZState:
    """Proper-time derivatives of the coupled Euler-Lagrange system."""
    v_low = state.v * _G
    pi_low = state.pi * _G
    f = field.matrix
    return BZState(
        x=state.v.copy(),
        pi=e * (f @ v_low),
        v=4.0 * (state.S @ pi_low),
        S=np.outer(state.pi, state.v) - np.outer(state.v, state.pi),
    )


def field_and_charge(params: DimensionlessParams) -> tuple[FieldTensor, float]:
    """Electron-convention (F, e) reproducing e*B = 2*epsilon."""
    e = -1.0
    return FieldTensor(b=-2.0 * params.epsilon), e


def make_initial_state(params: DimensionlessParams) -> BZState:
    """Rest-frame polarized start that excites all three rotation modes.

    S^{12}(0) = s_z, boost components zero; pi(0) is timelike with
    pi^2 = m^2 - 2 e B s_z and v^0(0) = m / pi^0(0), so the constants of
    motion assumed by the characteristic-cubic reduction (pi.v = m and
    pi^2 - e F.S = m^2) hold exactly along the trajectory.
    """
    field, e = field_and_charge(params)
    s_z = 0.5 * params.spin_sign
    pi0 = math.sqrt(1.0 - 2.0 * e * field.b * s_z)
    s = np.zeros((4, 4))
    s[1, 2] = s_z
    s[2, 1] = -s_z
    return BZState(
        x=np.zeros(4),
        pi=np.array([pi0, 0.0, 0.0, 0.0]),
        v=np.array([1.0 / pi0, 1.0, 0.0, 0.0]),
        S=s,
    )


@dataclass(frozen=True)
class BZTrajectory:
    tau: np.ndarray
    x: np.ndarray   # (N, 4)
    v: np.ndarray   # (N, 4)
    S: np.ndarray   # (N, 4, 4)


def _rhs_flat(y: np.ndarray, e: float, b: float) -> np.ndarray:
    v = y[8:12]
    s = y[12:28].reshape(4, 4)
    pi = y[4:8]
    out = np.empty(28)
    out[0:4] = v
    # e * F^{mu nu} v_nu for the z-directed field
    out[4] = 0.0
    out[5] = e * b * v[2]   # F^{12} v_2 = (-b)(-v_y)
    out[6] = -e * b * v[1]  # F^{21} v_1 = b (-v_x)
    out[7] = 0.0
    out[8:12] = 4.0 * (s @ (pi * _G))
    sd = np.outer(pi, v)
    out[12:28] = (sd - sd.T).ravel()
    return out


def integrate(
    state0: BZState,
    field: FieldTensor,
    e: float,
    tau_max: float,
    dt: float,
    blowup: float = 1e6,
) -> BZTrajectory:
    """Classic fixed-step fourth-order Runge-Kutta over [0, tau_max]."""
    if dt > TWO_PI / (50.0 * OMEGA_ZBW):
        raise ValueError(f"dt = {dt:g} too coarse (need <= {TWO_PI / (50.0 * OMEGA_ZBW):g})")
    n = int(round(tau_max / dt))
    y = state0.flat()
    b = field.b
    tau = dt * np.arange(n + 1)
    xs = np.empty((n + 1, 4))
    vs = np.empty((n + 1, 4))
    ss = np.empty((n + 1, 4, 4))
    xs[0], vs[0], ss[0] = y[0:4], y[8:12], y[12:28].reshape(4, 4)
    half = 0.5 * dt
    sixth = dt / 6.0
    for i in range(n):
        k1 = _rhs_flat(y, e, b)
        k2 = _rhs_flat(y + half * k1, e, b)
        k3 = _rhs_flat(y + half * k2, e, b)
        k4 = _rhs_flat(y + dt * k3, e, b)
        y = y + sixth * (k1 + 2.0 * (k2 + k3) + k4)
        if np.max(np.abs(y)) > blowup:
            raise IntegrationUnstableError(f"state blew up at tau = {tau[i + 1]:g}")
        xs[i + 1], vs[i + 1] = y[0:4], y[8:12]
        ss[i + 1] = y[12:28].reshape(4, 4)
    return BZTrajectory(tau=tau, x=xs, v=vs, S=ss)


def free_solution(
    v0: np.ndarray, a0: np.ndarray, p: np.ndarray, tau: float | np.ndarray, m: float = 1.0
) -> np.ndarray:
    """Field-free 4-velocity: drift plus trembling at omega_zbw."""
    tau = np.asarray(tau, dtype=float)
    drift = np.asarray(p) / m
    osc = np.asarray(v0) - drift
    return (
        drift
        + osc * np.cos(OMEGA_ZBW * tau)[..., None]
        + (np.asarray(a0) / (2.0 * m)) * np.sin(OMEGA_ZBW * tau)[..., None]
    )


@dataclass(frozen=True)
class CubicCoefficients:
    """omega^3 + c1*omega + c0 = 0 (no quadratic term by construction)."""

    c3: float
    c1: float
    c0: float
    c1_raw: float
    c0_raw: float


def characteristic_cubic(params: DimensionlessParams) -> CubicCoefficients:
    """Coefficients in both the raw (m, e, B, s_z) and dimensionless forms."""
    eps = params.epsilon
    sgn = params.spin_sign
    c1 = -(OMEGA_ZBW**2) * (1.0 - sgn * 3.0 * eps)
    c0 = eps * OMEGA_ZBW**3
    field, e = field_and_charge(params)
    s_z = 0.5 * sgn
    c1_raw = -4.0 * (1.0 - 3.0 * e * s_z * field.b)
    c0_raw = 4.0 * e * field.b
    if abs(c1 - c1_raw) > 1e-12 * abs(c1) or abs(c0 - c0_raw) > 1e-12 * max(abs(c0), 1e-30):
        raise AssertionError("raw and dimensionless cubic coefficients disagree")
    return CubicCoefficients(c3=1.0, c1=c1, c0=c0, c1_raw=c1_raw, c0_raw=c0_raw)


@dataclass(frozen=True)
class RootSet:
    omega1: float
    omega2: float
    omega3: float
    method: str  # "exact" | "rough" | "accurate"

    def as_array(self) -> np.ndarray:
        return np.array([self.omega1, self.omega2, self.omega3])


def solve_cubic_exact(c: CubicCoefficients) -> RootSet:
    """Trigonometric solution of the depressed cubic, one Newton polish per root.

    Roots are sorted by magnitude; the two fast roots keep the (positive,
    negative) order of the field-free pair (0, +2, -2).
    """
    p, q = c.c1, c.c0
    disc = -4.0 * p**3 - 27.0 * q**2
    if disc <= 0.0:
        raise ComplexRootsError(f"discriminant {disc:g} <= 0")
    r = 2.0 * math.sqrt(-p / 3.0)
    arg = 3.0 * q / (p * r)
    arg = min(1.0, max(-1.0, arg))
    acos = math.acos(arg)
    roots = [r * math.cos((acos - TWO_PI * k) / 3.0) for k in range(3)]
    for i, w in enumerate(roots):
        fw = w**3 + p * w + q
        dfw = 3.0 * w**2 + p
        roots[i] = w - fw / dfw
    roots.sort(key=abs)
    w1, wa, wb = roots
    w2, w3 = (wa, wb) if wa > 0 else (wb, wa)
    return RootSet(omega1=w1, omega2=w2, omega3=w3, method="exact")


def perturbative_roots(params: DimensionlessParams, scheme: str) -> RootSet:
    """First-order ("rough") and improved ("accurate") root approximations."""
    eps = params.epsilon
    sgn = params.spin_sign
    omega_c = -2.0 * eps
    if scheme == "rough":
        return RootSet(
            omega1=omega_c * (1.0 + sgn * 3.0 * eps),
            omega2=OMEGA_ZBW * (1.0 - sgn * 1.5 * eps),
            omega3=-OMEGA_ZBW * (1.0 - sgn * 1.5 * eps),
            method="rough",
        )
    if scheme == "accurate":
        exact = solve_cubic_exact(characteristic_cubic(params))
        if params.spin == "up":
            w2 = OMEGA_ZBW * (1.0 - 2.0 * eps)
            w3 = -OMEGA_ZBW * (1.0 - eps)
        else:
            w2 = OMEGA_ZBW * (1.0 + eps)
            w3 = -OMEGA_ZBW * (1.0 + 2.0 * eps)
        return RootSet(omega1=exact.omega1, omega2=w2, omega3=w3, method="accurate")
    raise ValueError(f"scheme must be 'rough' or 'accurate', got {scheme!r}")


def reduced_third_order_rhs(state: np.ndarray, params: DimensionlessParams) -> np.ndarray:
    """Derivative of (vx, vy, vx', vy', vx'', vy'') for the constant-spin reduction."""
    c = characteristic_cubic(params)
    vx, vy, ax, ay, jx, jy = state
    return np.array([ax, ay, jx, jy, c.c1 * ax + c.c0 * vy, c.c1 * ay - c.c0 * vx])


def reduced_initial_state(params: DimensionlessParams) -> np.ndarray:
    """Reduced-system start matching :func:`make_initial_state` exactly."""
    c = characteristic_cubic(params)
    return np.array([1.0, 0.0, 0.0, 0.0, c.c1, 0.0])


def integrate_reduced(
    state0: np.ndarray, params: DimensionlessParams, tau_max: float, dt: float
) -> tuple[np.ndarray, np.ndarray]:
    """RK4 on the reduced linear system; returns (tau, states (N, 6))."""
    n = int(round(tau_max / dt))
    tau = dt * np.arange(n + 1)
    out = np.empty((n + 1, 6))
    y = np.asarray(state0, dtype=float).copy()
    out[0] = y
    half, sixth = 0.5 * dt, dt / 6.0
    for i in range(n):
        k1 = reduced_third_order_rhs(y, params)
        k2 = reduced_third_order_rhs(y + half * k1, params)
        k3 = reduced_third_order_rhs(y + half * k2, params)
        k4 = reduced_third_order_rhs(y + dt * k3, params)
        y = y + sixth * (k1 + 2.0 * (k2 + k3) + k4)
        out[i + 1] = y
    return tau, out


def spectral_frequencies(
    params: DimensionlessParams,
    tau_max: float,
    dt: float,
    modes: str = "all",
) -> FrequencyFit:
    """Integrate a field run and fit its v_x spectrum against the cubic modes.

    modes="all" fits |omega1|, omega2, |omega3| plus a constant and needs the
    span to cover a few slow cyclotron-like periods; modes="fast" fits only
    the two trembling modes and absorbs the unresolved slow mode in a cubic
    trend, which is what short spans at very small |epsilon| require.
    """
    field, e = field_and_charge(params)
    traj = integrate(make_initial_state(params), field, e, tau_max, dt)
    exact = solve_cubic_exact(characteristic_cubic(params))
    if modes == "all":
        seeds = np.abs(exact.as_array())
        trend = 0
    elif modes == "fast":
        seeds = np.array([exact.omega2, abs(exact.omega3)])
        trend = 3
    else:
        raise ValueError(f"modes must be 'all' or 'fast', got {modes!r}")
    return fit_frequencies(traj.tau, traj.v[:, 1], seeds, trend_degree=trend)
