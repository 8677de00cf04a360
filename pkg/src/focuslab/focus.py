"""Constructors that derive focus profiles from a signal.

A reference transform (constant window for the time side, plain wavelet for
the frequency side) is sliced per frame or per scale row, each slice is
reduced to one number (weighted moment or entropy), and the resulting raw
curve is renormalized affinely into [1, sigma_max].  Entropy-based focus is
invariant under rescaling of the input because slices are L1-normalized
before the entropy is taken; the moment focus gains that invariance only
through the final renormalization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .freqfocus import FreqFocusProfile, ScaleGrid, wavelet_transform
from .signal import hardy_project
from .timefocus import TimeFocusConfig, TimeFocusProfile, constant_profile, transform_time_focused
from .windows import AnalyticWavelet

__all__ = [
    "UndefinedEntropyError",
    "FocusSpec",
    "parse_focus_kind",
    "affine_renormalize",
    "moment_time_focus",
    "shannon_entropy_time_focus",
    "shannon_entropy_slice",
    "renyi_entropy_slice",
    "time_focus_profile",
    "entropy_freq_focus",
]


class UndefinedEntropyError(ValueError):
    """Entropy of an all-zero slice is requested."""


@dataclass(frozen=True)
class FocusSpec:
    """What to compute per slice and how to map it into [1, sigma_max].

    kind is one of "moment", "shannon-entropy", "renyi".  order applies to
    the moment kind (weight |omega|^order), alpha to the renyi kind.
    sigma_ref is the constant focus value of the reference transform.
    smooth, when >= 2, applies a centered moving average of that many
    slices to the raw curve before renormalization (off by default).
    """

    kind: str
    sigma_max: float
    order: int = 1
    alpha: float = 2.0
    sigma_ref: float = 1.0
    smooth: int = 0

    def __post_init__(self):
        if self.kind not in ("moment", "shannon-entropy", "renyi"):
            raise ValueError(f"unknown focus kind {self.kind!r}")
        if not (self.sigma_max >= 1):
            raise ValueError("sigma_max must be >= 1")
        if self.kind == "moment" and (self.order < 0 or int(self.order) != self.order):
            raise ValueError("moment order must be a nonnegative integer")
        if self.kind == "renyi":
            if not (self.alpha > 0) or self.alpha == 1.0:
                raise ValueError("renyi alpha must be positive and different from 1")
        if not (self.sigma_ref >= 1):
            raise ValueError("sigma_ref must be >= 1")


def parse_focus_kind(text: str, sigma_max: float, **kwargs) -> FocusSpec:
    """Parse "moment:<n>", "entropy" or "renyi:<alpha>" into a FocusSpec."""
    parts = text.strip().split(":")
    if parts[0] == "moment" and len(parts) == 2:
        return FocusSpec(kind="moment", sigma_max=sigma_max, order=int(parts[1]), **kwargs)
    if parts[0] == "entropy" and len(parts) == 1:
        return FocusSpec(kind="shannon-entropy", sigma_max=sigma_max, **kwargs)
    if parts[0] == "renyi" and len(parts) == 2:
        return FocusSpec(kind="renyi", sigma_max=sigma_max, alpha=float(parts[1]), **kwargs)
    raise ValueError(f"unknown focus kind {text!r}")


def affine_renormalize(raw, sigma_max: float) -> np.ndarray:
    """Map a raw curve affinely onto [1, sigma_max].

    Both endpoints are attained unless the curve is constant, in which case
    the output is identically 1 (no information, no focusing).
    """
    raw = np.asarray(raw, dtype=np.float64)
    lo = float(np.min(raw))
    hi = float(np.max(raw))
    if hi <= lo:
        return np.ones_like(raw)
    return 1.0 + (sigma_max - 1.0) * (raw - lo) / (hi - lo)


def _smooth_raw(raw: np.ndarray, width: int) -> np.ndarray:
    if width < 2:
        return raw
    kernel = np.ones(int(width)) / float(width)
    return np.convolve(raw, kernel, mode="same")


def shannon_entropy_slice(slice_values, delta: float) -> float:
    """Discrete Shannon entropy of a nonnegative slice.

    Bin probabilities are p_k = s_k * delta / sum(s * delta), so a uniform
    slice over N bins gives log N regardless of delta.
    """
    s = np.asarray(slice_values, dtype=np.float64)
    total = np.sum(s) * delta
    if total <= 0:
        raise UndefinedEntropyError("entropy of an all-zero slice")
    p = s * delta / total
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)))


def renyi_entropy_slice(slice_values, alpha: float, delta: float) -> float:
    """Renyi entropy (1/(1-alpha)) log(||s||_alpha^alpha / ||s||_1^alpha).

    Norms are delta-weighted.  Converges to the Shannon slice entropy plus
    log delta as alpha approaches 1.
    """
    if not (alpha > 0) or alpha == 1.0:
        raise ValueError("alpha must be positive and different from 1")
    s = np.asarray(slice_values, dtype=np.float64)
    if np.any(s < 0):
        raise ValueError("slice values must be nonnegative")
    l1 = np.sum(s) * delta
    if l1 <= 0:
        raise UndefinedEntropyError("entropy of an all-zero slice")
    la = np.sum(s**alpha) * delta
    return float(np.log(la / l1**alpha) / (1.0 - alpha))


def _slice_reducer(spec: FocusSpec, delta: float):
    """Map a nonnegative slice to its raw focus value; all-zero gives 0."""
    if spec.kind == "shannon-entropy":
        fn = lambda s: shannon_entropy_slice(s, delta)
    elif spec.kind == "renyi":
        fn = lambda s: renyi_entropy_slice(s, spec.alpha, delta)
    else:
        raise ValueError("reducer is defined for entropy kinds only")

    def reduce(s):
        try:
            return fn(s)
        except UndefinedEntropyError:
            return 0.0

    return reduce


def _reference_time_transform(f, spec: FocusSpec, cfg: TimeFocusConfig):
    if f.n == 0:
        raise ValueError("cannot derive a focus profile from an empty signal")
    ref = constant_profile(cfg, f, value=spec.sigma_ref)
    return transform_time_focused(f, ref, cfg)


def moment_time_focus(f, spec: FocusSpec, cfg: TimeFocusConfig) -> TimeFocusProfile:
    """Weighted spectral moment per frame, renormalized into [1, sigma_max].

    raw(t_m) = sum_k |omega_k|^order |Vf(t_m, omega_k)| dOmega against the
    constant-focus reference transform V.  Order 0 is the slice L1 norm;
    higher orders emphasize high-frequency content, so sharp transients
    push the profile toward sigma_max.
    """
    mat = _reference_time_transform(f, spec, cfg)
    weights = np.abs(mat.row_axis) ** spec.order * mat.row_weights
    raw = weights @ np.abs(mat.values)
    raw = _smooth_raw(raw, spec.smooth)
    sigma = affine_renormalize(raw, spec.sigma_max)
    return TimeFocusProfile(
        sigma=sigma,
        times=mat.time_axis,
        frame_step=mat.frame_step,
        sigma_max=spec.sigma_max,
    )


def shannon_entropy_time_focus(f, spec: FocusSpec, cfg: TimeFocusConfig) -> TimeFocusProfile:
    """Entropy of each fixed-time spectral slice, renormalized.

    Slices are L1-normalized before the entropy is taken, so the raw curve
    (and hence the profile) does not change when the signal is scaled.
    Spread-out slices (transients) score high, concentrated slices low.
    """
    if spec.kind not in ("shannon-entropy", "renyi"):
        raise ValueError("entropy time focus needs an entropy focus kind")
    mat = _reference_time_transform(f, spec, cfg)
    delta = float(mat.row_weights[0])
    reduce = _slice_reducer(spec, delta)
    mags = np.abs(mat.values)
    raw = np.array([reduce(mags[:, m]) for m in range(mat.n_frames)])
    raw = _smooth_raw(raw, spec.smooth)
    sigma = affine_renormalize(raw, spec.sigma_max)
    return TimeFocusProfile(
        sigma=sigma,
        times=mat.time_axis,
        frame_step=mat.frame_step,
        sigma_max=spec.sigma_max,
    )


def time_focus_profile(f, spec: FocusSpec, cfg: TimeFocusConfig) -> TimeFocusProfile:
    """Dispatch on spec.kind."""
    if spec.kind == "moment":
        return moment_time_focus(f, spec, cfg)
    return shannon_entropy_time_focus(f, spec, cfg)


def entropy_freq_focus(
    f, spec: FocusSpec, grid: ScaleGrid, w: AnalyticWavelet
) -> FreqFocusProfile:
    """Entropy of each fixed-scale time slice of the plain wavelet transform.

    Rows whose energy is spread across time (steady tones) score high.  The
    outer eighth of the rows on each side is forced to 1 so the profile
    dies off before the band edges, keeping the upper energy bound finite
    in spirit and its integral small in practice.
    """
    if spec.kind == "moment":
        raise ValueError("moment focus is defined for the time side only")
    fa = f if np.iscomplexobj(f.samples) else hardy_project(f)
    mat = wavelet_transform(fa, grid, w)
    reduce = _slice_reducer(spec, float(mat.frame_step))
    mags = np.abs(mat.values)
    raw = np.array([reduce(mags[j, :]) for j in range(mat.n_rows)])
    raw = _smooth_raw(raw, spec.smooth)
    sigma = affine_renormalize(raw, spec.sigma_max)
    guard = max(1, grid.n_rows // 8)
    sigma[:guard] = 1.0
    sigma[-guard:] = 1.0
    return FreqFocusProfile(sigma=sigma, sigma_max=spec.sigma_max)
