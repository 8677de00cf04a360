"""Analysis windows and analytic wavelets defined by their Fourier profile.

Windows are real, even, compactly supported time-domain functions used by
the time-focused transform.  Wavelets are specified directly in the
frequency domain as smooth bumps supported on a strictly positive interval,
so the associated transforms act on the positive-spectrum subspace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

__all__ = [
    "Window",
    "truncated_gaussian_window",
    "hann_window",
    "AnalyticWavelet",
    "make_fourier_bump_wavelet",
    "frequency_localization",
    "admissibility_constant",
    "derivative_bound",
    "halfpower_interval",
    "CqtReference",
    "cqt_reference_from_wavelet",
    "parse_window",
    "parse_wavelet",
]


@dataclass
class Window:
    """Real even window, nonzero at 0, supported on [-support_length/2, +support_length/2].

    evaluate is vectorized and returns 0 outside the support.  l2_norm is
    the L2 norm computed by adaptive quadrature at construction.
    """

    kind: str
    support_length: float
    evaluate: Callable
    sup_norm: float
    l2_norm: float

    def energy(self) -> float:
        return self.l2_norm**2


def _window_l2(evaluate, half: float) -> float:
    val, _ = quad(lambda x: evaluate(x) ** 2, -half, half, limit=200)
    return float(np.sqrt(val))


def truncated_gaussian_window(duration: float, shape: float = 3.0) -> Window:
    """Gaussian truncated to [-duration/2, duration/2].

    h(x) = exp(-x^2 / (2 s^2)) with s = duration / (2 * shape); shape
    controls how many standard deviations the support covers, so the edge
    discontinuity is exp(-shape^2 / 2).
    """
    if not (duration > 0):
        raise ValueError("duration must be positive")
    if not (shape > 0):
        raise ValueError("shape must be positive")
    half = duration / 2.0
    s = duration / (2.0 * shape)

    def evaluate(x):
        x = np.asarray(x, dtype=np.float64)
        return np.where(np.abs(x) <= half, np.exp(-(x**2) / (2.0 * s**2)), 0.0)

    return Window(
        kind=f"gauss:{duration:g}:{shape:g}",
        support_length=duration,
        evaluate=evaluate,
        sup_norm=1.0,
        l2_norm=_window_l2(lambda x: float(np.exp(-(x**2) / (2.0 * s**2))), half),
    )


def hann_window(duration: float) -> Window:
    """Raised-cosine window: h(x) = cos^2(pi x / duration) on [-duration/2, duration/2]."""
    if not (duration > 0):
        raise ValueError("duration must be positive")
    half = duration / 2.0

    def evaluate(x):
        x = np.asarray(x, dtype=np.float64)
        return np.where(np.abs(x) <= half, np.cos(np.pi * x / duration) ** 2, 0.0)

    return Window(
        kind=f"hann:{duration:g}",
        support_length=duration,
        evaluate=evaluate,
        sup_norm=1.0,
        l2_norm=_window_l2(lambda x: float(np.cos(np.pi * x / duration) ** 2), half),
    )


def parse_window(text: str) -> Window:
    """Parse "gauss:<ms>:<shape>" or "hann:<ms>" (durations in milliseconds)."""
    parts = text.strip().split(":")
    try:
        if parts[0] == "gauss" and len(parts) == 3:
            return truncated_gaussian_window(float(parts[1]) / 1000.0, float(parts[2]))
        if parts[0] == "hann" and len(parts) == 2:
            return hann_window(float(parts[1]) / 1000.0)
    except ValueError as exc:
        if "must be" in str(exc):
            raise
        raise ValueError(f"bad window spec {text!r}") from exc
    raise ValueError(f"unknown window spec {text!r}")


@dataclass
class AnalyticWavelet:
    """Wavelet given by a Fourier-domain profile supported on xi > 0.

    Stored constants:

    - xi0: weighted mean frequency of |profile|^2,
    - norm_sq: squared L2 norm of the profile,
    - c_psi: admissibility constant, integral of |profile|^2 / xi,
    - a_psi: bound A with |d(|profile|^2)/dxi| <= A / |xi - xi0|,
    - halfpower: largest interval around xi0 where |profile|^2 >= peak^2 / 2,
    - peak_value: |profile(xi0)|.
    """

    kind: str
    fourier_profile: Callable
    support: tuple
    xi0: float
    norm_sq: float
    c_psi: float
    a_psi: float
    halfpower: tuple
    peak_value: float


def _smoothstep(t):
    """C-infinity step: 0 for t <= 0, 1 for t >= 1."""
    t = np.asarray(t, dtype=np.float64)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        g0 = np.where(t > 0, np.exp(-1.0 / np.maximum(t, 1e-300)), 0.0)
        g1 = np.where(t < 1, np.exp(-1.0 / np.maximum(1.0 - t, 1e-300)), 0.0)
    return g0 / (g0 + g1)


def _smoothstep_scalar(t: float) -> float:
    if t <= 0.0:
        return 0.0
    if t >= 1.0:
        return 1.0
    g0 = math.exp(-1.0 / t)
    g1 = math.exp(-1.0 / (1.0 - t))
    return g0 / (g0 + g1)


def _quad_profile(f, lo, hi, inner_lo, inner_hi):
    # The taper joints are the only non-analytic points; passing them to the
    # adaptive integrator keeps subdivision cheap.
    val, _ = quad(f, lo, hi, points=[inner_lo, inner_hi], limit=400)
    return float(val)


def make_fourier_bump_wavelet(
    xi0_target: float, width: float, support_halfwidth: float
) -> AnalyticWavelet:
    """Gaussian bump times a smooth compactly supported taper.

    The profile is exp(-(xi - xi0_target)^2 / (2 width^2)) multiplied by a
    C-infinity taper equal to 1 on the inner 80% of
    (xi0_target - support_halfwidth, xi0_target + support_halfwidth) and 0
    outside.  The support must stay strictly positive.
    """
    if not (xi0_target > 0 and width > 0 and support_halfwidth > 0):
        raise ValueError("xi0_target, width and support_halfwidth must be positive")
    lo = xi0_target - support_halfwidth
    hi = xi0_target + support_halfwidth
    if lo <= 0:
        raise ValueError("wavelet support must stay strictly positive")
    ramp = 0.2 * support_halfwidth
    inner_lo = lo + ramp
    inner_hi = hi - ramp

    def fourier_profile(xi):
        if np.ndim(xi) == 0:
            # Scalar fast path: adaptive integrators call this millions of
            # times, and the array machinery below dominates their runtime.
            x = float(xi)
            if x <= lo or x >= hi:
                return 0.0 + 0.0j
            bump = math.exp(-((x - xi0_target) ** 2) / (2.0 * width**2))
            if x <= inner_lo:
                taper = _smoothstep_scalar((x - lo) / ramp)
            elif x >= inner_hi:
                taper = _smoothstep_scalar((hi - x) / ramp)
            else:
                taper = 1.0
            return bump * taper + 0.0j
        xi = np.asarray(xi, dtype=np.float64)
        bump = np.exp(-((xi - xi0_target) ** 2) / (2.0 * width**2))
        taper = np.where(
            xi <= inner_lo,
            _smoothstep((xi - lo) / ramp),
            np.where(xi >= inner_hi, _smoothstep((hi - xi) / ramp), 1.0),
        )
        inside = (xi > lo) & (xi < hi)
        return np.where(inside, bump * taper, 0.0) + 0.0j

    sq = lambda xi: float(np.abs(fourier_profile(xi)) ** 2)
    norm_sq = _quad_profile(sq, lo, hi, inner_lo, inner_hi)
    first = _quad_profile(lambda xi: xi * sq(xi), lo, hi, inner_lo, inner_hi)
    xi0 = first / norm_sq
    c_psi = _quad_profile(lambda xi: sq(xi) / xi, lo, hi, inner_lo, inner_hi)
    peak = float(np.abs(fourier_profile(xi0)))

    w = AnalyticWavelet(
        kind=f"bump:{xi0_target:g}:{width:g}:{support_halfwidth:g}",
        fourier_profile=fourier_profile,
        support=(lo, hi),
        xi0=xi0,
        norm_sq=norm_sq,
        c_psi=c_psi,
        a_psi=float("nan"),
        halfpower=(float("nan"), float("nan")),
        peak_value=peak,
    )
    w.a_psi = derivative_bound(w)
    w.halfpower = halfpower_interval(w)
    return w


def parse_wavelet(text: str) -> AnalyticWavelet:
    """Parse "bump:<xi0>:<width>:<support_halfwidth>"."""
    parts = text.strip().split(":")
    if parts[0] == "bump" and len(parts) == 4:
        try:
            return make_fourier_bump_wavelet(float(parts[1]), float(parts[2]), float(parts[3]))
        except ValueError as exc:
            if "must" in str(exc):
                raise
            raise ValueError(f"bad wavelet spec {text!r}") from exc
    raise ValueError(f"unknown wavelet spec {text!r}")


def frequency_localization(w: AnalyticWavelet) -> float:
    """Mean frequency of |profile|^2, computed by adaptive quadrature."""
    lo, hi = w.support
    sq = lambda xi: float(np.abs(w.fourier_profile(xi)) ** 2)
    norm_sq, _ = quad(sq, lo, hi, limit=400)
    first, _ = quad(lambda xi: xi * sq(xi), lo, hi, limit=400)
    if norm_sq <= 0:
        raise ValueError("wavelet profile has no energy")
    return float(first / norm_sq)


def admissibility_constant(w: AnalyticWavelet) -> float:
    """Integral of |profile(xi)|^2 / xi over xi > 0."""
    lo, hi = w.support
    if lo <= 0:
        raise ValueError("admissibility integral diverges: support reaches 0")
    sq = lambda xi: float(np.abs(w.fourier_profile(xi)) ** 2)
    val, _ = quad(lambda xi: sq(xi) / xi, lo, hi, limit=400)
    return float(val)


def derivative_bound(w: AnalyticWavelet, n_grid: int = 8001) -> float:
    """Smallest A with |d(|profile|^2)/dxi| <= A / |xi - xi0| on a dense grid.

    The derivative is taken by centered differences; the bound is the grid
    supremum of |derivative| * |xi - xi0|.
    """
    lo, hi = w.support
    xi = np.linspace(lo, hi, n_grid)
    sq = np.abs(w.fourier_profile(xi)) ** 2
    d = np.gradient(sq, xi)
    return float(np.max(np.abs(d) * np.abs(xi - w.xi0)))


def halfpower_interval(w: AnalyticWavelet) -> tuple:
    """Largest interval (a, b) around xi0 with |profile|^2 >= peak^2 / 2.

    Endpoints are located by bisection between xi0 and the support edges.
    """
    lo, hi = w.support
    peak_sq = w.peak_value**2
    f = lambda xi: float(np.abs(w.fourier_profile(xi)) ** 2) - 0.5 * peak_sq
    eps = 1e-12 * (hi - lo)
    a = brentq(f, lo + eps, w.xi0)
    b = brentq(f, w.xi0, hi - eps)
    return (float(a), float(b))


@dataclass
class CqtReference:
    """Frequency-shifted copy of a wavelet profile used by the log-frequency
    baseline transform: profile(y) = wavelet profile(y + 1)."""

    fourier_profile: Callable
    support: tuple
    c_h: float
    source_kind: str


def cqt_reference_from_wavelet(w: AnalyticWavelet) -> CqtReference:
    """Shift the wavelet profile down by one frequency unit.

    The shifted profile plays the role of the modulated-window spectrum and
    inherits the admissibility constant unchanged (substitution y -> y + 1
    in the defining integral).
    """
    lo, hi = w.support

    def fourier_profile(y):
        y = np.asarray(y, dtype=np.float64)
        return w.fourier_profile(y + 1.0)

    return CqtReference(
        fourier_profile=fourier_profile,
        support=(lo - 1.0, hi - 1.0),
        c_h=w.c_psi,
        source_kind=w.kind,
    )
