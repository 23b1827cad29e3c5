"""Sinusoid frequency estimation by nonlinear least squares.

Single-tone fits use variable projection: for a trial frequency the amplitude,
phase and offset are solved linearly, and only the frequency is refined
nonlinearly.  Multi-tone fits do the same over several frequencies at once,
optionally with a polynomial trend absorbing unresolved slow components.
Least-squares fitting resolves frequency shifts far below the DFT bin width,
which is what the weak-field shifts require.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

TWO_PI = 2.0 * math.pi


class FitFailureError(RuntimeError):
    """Residual exceeded the single-sinusoid model tolerance."""


@dataclass(frozen=True)
class SinusoidFit:
    omega: float
    amplitude: float
    phase: float
    offset: float
    residual_rms: float


@dataclass(frozen=True)
class FrequencyFit:
    freqs: np.ndarray
    amplitudes: np.ndarray
    residual_rms: float


def _fft_frequency_guess(t: np.ndarray, y: np.ndarray) -> float:
    """Peak of the zero-padded periodogram with parabolic interpolation."""
    dt = t[1] - t[0]
    yz = y - y.mean()
    n = 8 * len(yz)
    spec = np.abs(np.fft.rfft(yz, n=n))
    k = int(np.argmax(spec[1:])) + 1
    if 1 <= k < len(spec) - 1:
        a, b, c = spec[k - 1], spec[k], spec[k + 1]
        denom = a - 2.0 * b + c
        if denom != 0.0:
            k = k + 0.5 * (a - c) / denom
    return TWO_PI * k / (n * dt)


def _design_single(omega: float, t: np.ndarray) -> np.ndarray:
    return np.column_stack([np.sin(omega * t), np.cos(omega * t), np.ones_like(t)])


def fit_sinusoid(
    times: np.ndarray,
    values: np.ndarray,
    omega0: float | None = None,
    residual_tol: float = 0.01,
) -> SinusoidFit:
    """Fit A sin(omega t + phi) + c to a uniformly sampled series.

    Raises FitFailureError when the RMS residual exceeds residual_tol times
    the fitted amplitude (model mismatch, e.g. two-tone input), and
    ValueError when the sampling is too coarse or the span too short.
    """
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    if t.ndim != 1 or t.shape != y.shape or len(t) < 8:
        raise ValueError("need matching 1-D arrays with at least 8 samples")
    dt = np.diff(t)
    if dt.min() <= 0 or (dt.max() - dt.min()) > 1e-9 * dt.mean():
        raise ValueError("times must be strictly increasing and uniform")

    w0 = _fft_frequency_guess(t, y) if omega0 is None else float(omega0)

    def residual(w):
        dm = _design_single(w[0], t)
        coef, *_ = np.linalg.lstsq(dm, y, rcond=None)
        return dm @ coef - y

    sol = least_squares(residual, [w0], xtol=1e-15, ftol=1e-15, gtol=1e-15, method="trf")
    omega = float(sol.x[0])
    dm = _design_single(omega, t)
    coef, *_ = np.linalg.lstsq(dm, y, rcond=None)
    amplitude = float(math.hypot(coef[0], coef[1]))
    phase = float(math.atan2(coef[1], coef[0]))
    offset = float(coef[2])
    residual_rms = float(np.sqrt(np.mean((dm @ coef - y) ** 2)))

    period = TWO_PI / abs(omega)
    if float(dt.mean()) > period / 8.0:
        raise ValueError(f"fewer than 8 samples per period {period:g}")
    if t[-1] - t[0] < 3.0 * period:
        raise ValueError(f"span shorter than 3 periods of {period:g}")
    if residual_rms > residual_tol * amplitude:
        raise FitFailureError(
            f"residual rms {residual_rms:g} exceeds {residual_tol:g} x amplitude {amplitude:g}"
        )
    return SinusoidFit(omega=abs(omega), amplitude=amplitude, phase=phase, offset=offset,
                       residual_rms=residual_rms)


def _design_multi(freqs: np.ndarray, t: np.ndarray, trend_degree: int) -> np.ndarray:
    cols = []
    for w in freqs:
        cols.append(np.cos(w * t))
        cols.append(np.sin(w * t))
    tm = t / t[-1]
    for d in range(trend_degree + 1):
        cols.append(tm**d)
    return np.column_stack(cols)


def fit_frequencies(
    times: np.ndarray,
    values: np.ndarray,
    freq_seeds: np.ndarray,
    trend_degree: int = 0,
) -> FrequencyFit:
    """Jointly refine several sinusoid frequencies against a sampled series.

    Seeds must be close enough that the linear-in-amplitudes problem at the
    seed frequencies already separates the modes; the nonlinear step then
    converges to machine-level frequency estimates on noiseless data.
    """
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    seeds = np.abs(np.asarray(freq_seeds, dtype=float))

    def residual(freqs):
        dm = _design_multi(freqs, t, trend_degree)
        coef, *_ = np.linalg.lstsq(dm, y, rcond=None)
        return dm @ coef - y

    sol = least_squares(
        residual, seeds, xtol=1e-15, ftol=1e-15, gtol=1e-15, method="trf",
        x_scale=np.maximum(np.abs(seeds), 1e-3),
    )
    freqs = np.abs(sol.x)
    dm = _design_multi(freqs, t, trend_degree)
    coef, *_ = np.linalg.lstsq(dm, y, rcond=None)
    amps = np.hypot(coef[0 : 2 * len(freqs) : 2], coef[1 : 2 * len(freqs) : 2])
    residual_rms = float(np.sqrt(np.mean((dm @ coef - y) ** 2)))
    return FrequencyFit(freqs=freqs, amplitudes=amps, residual_rms=residual_rms)
