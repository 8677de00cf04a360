"""Sampled-signal containers and scaled discrete Fourier transforms.

The DFT convention used throughout approximates the continuous Fourier
transform F(f)(omega) = integral f(x) exp(-2i pi x omega) dx: forward bins
carry a factor 1/sample_rate, inverse synthesis carries a factor freq_step.
With this scaling, discrete energies approximate the corresponding L2
integrals and Plancherel holds exactly on the grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "RealSignal",
    "ComplexSignal",
    "Spectrum",
    "TimeFrequencyMatrix",
    "dft_forward",
    "dft_inverse",
    "hardy_project",
    "signal_energy",
    "weighted_energy",
]


@dataclass
class RealSignal:
    """Uniformly sampled real signal.

    Parameters
    ----------
    samples : ndarray
        Real sample values.
    sample_rate : float
        Samples per second, > 0.
    start_time : float
        Time of the first sample in seconds.
    """

    samples: np.ndarray
    sample_rate: float
    start_time: float = 0.0

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if self.samples.size < 1:
            raise ValueError("need at least one sample")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("samples must be finite")
        if not (self.sample_rate > 0):
            raise ValueError("sample_rate must be positive")

    @property
    def dt(self) -> float:
        return 1.0 / self.sample_rate

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def duration(self) -> float:
        return self.n / self.sample_rate

    def times(self) -> np.ndarray:
        return self.start_time + np.arange(self.n) / self.sample_rate


@dataclass
class ComplexSignal:
    """Uniformly sampled complex signal (same grid conventions as RealSignal)."""

    samples: np.ndarray
    sample_rate: float
    start_time: float = 0.0

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.complex128)
        if self.samples.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if self.samples.size < 1:
            raise ValueError("need at least one sample")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("samples must be finite")
        if not (self.sample_rate > 0):
            raise ValueError("sample_rate must be positive")

    @property
    def dt(self) -> float:
        return 1.0 / self.sample_rate

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def duration(self) -> float:
        return self.n / self.sample_rate

    def times(self) -> np.ndarray:
        return self.start_time + np.arange(self.n) / self.sample_rate


@dataclass
class Spectrum:
    """DFT bins under the continuous-transform approximation.

    bins[k] ~ F(f)(k * freq_step), with bins for k > n/2 holding the
    negative frequencies (wrap-around order).  start_time is carried so a
    round trip through dft_inverse restores the signal grid.
    """

    bins: np.ndarray
    freq_step: float
    start_time: float = 0.0
    convention: str = "continuous-ft"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.bins = np.asarray(self.bins, dtype=np.complex128)
        if self.bins.ndim != 1:
            raise ValueError("bins must be one-dimensional")
        if not (self.freq_step > 0):
            raise ValueError("freq_step must be positive")

    @property
    def n(self) -> int:
        return self.bins.size

    @property
    def sample_rate(self) -> float:
        return self.n * self.freq_step

    def frequencies(self) -> np.ndarray:
        """Signed bin frequencies (wrap-around mapped to negatives)."""
        n = self.n
        k = np.arange(n)
        # k == n//2 (even n) stays positive: the Nyquist bin is kept on the
        # nonnegative side by convention.
        k = np.where(k <= n // 2, k, k - n)
        return k * self.freq_step


@dataclass
class TimeFrequencyMatrix:
    """Complex transform values on a (row, frame) grid.

    values[j, m] is the coefficient for row j (frequency or scale
    row_axis[j]) at frame m (time time_axis[m]).  row_weights carry the
    per-row measure weight so that weighted_energy approximates the
    continuous squared norm of the transform.
    """

    values: np.ndarray
    row_axis: np.ndarray
    time_axis: np.ndarray
    frame_step: float
    row_weights: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)
        self.row_axis = np.asarray(self.row_axis, dtype=np.float64)
        self.time_axis = np.asarray(self.time_axis, dtype=np.float64)
        self.row_weights = np.asarray(self.row_weights, dtype=np.float64)
        if self.values.ndim != 2:
            raise ValueError("values must be a 2-d array")
        rows, frames = self.values.shape
        if self.row_axis.size != rows or self.row_weights.size != rows:
            raise ValueError("row_axis and row_weights must match the row count")
        if self.time_axis.size != frames:
            raise ValueError("time_axis must match the frame count")
        if not (self.frame_step > 0):
            raise ValueError("frame_step must be positive")
        if not np.all(np.isfinite(self.row_weights)) or np.any(self.row_weights < 0):
            raise ValueError("row_weights must be finite and nonnegative")

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_frames(self) -> int:
        return self.values.shape[1]


def dft_forward(signal) -> Spectrum:
    """Forward DFT with continuous-transform scaling.

    bins[k] = (1/sample_rate) * sum_n samples[n] exp(-2i pi k n / N).
    """
    samples = np.asarray(signal.samples)
    if samples.size == 0:
        raise ValueError("cannot transform an empty signal")
    bins = np.fft.fft(samples) / signal.sample_rate
    freq_step = signal.sample_rate / samples.size
    return Spectrum(bins, freq_step, start_time=getattr(signal, "start_time", 0.0))


def dft_inverse(spectrum: Spectrum) -> ComplexSignal:
    """Inverse of dft_forward: samples[n] = freq_step * sum_k bins[k] exp(+2i pi k n / N)."""
    if spectrum.n == 0:
        raise ValueError("cannot invert an empty spectrum")
    samples = np.fft.ifft(spectrum.bins) * spectrum.n * spectrum.freq_step
    return ComplexSignal(samples, spectrum.sample_rate, start_time=spectrum.start_time)


def hardy_project(signal) -> ComplexSignal:
    """Orthogonal projection onto the subspace with spectrum vanishing for
    frequencies <= 0.

    The DC bin and (for even length) the sign-ambiguous Nyquist bin are
    zeroed along with all negative-frequency bins.
    """
    spec = dft_forward(signal)
    n = spec.n
    bins = spec.bins.copy()
    bins[0] = 0.0
    if n % 2 == 0:
        bins[n // 2] = 0.0
        bins[n // 2 + 1 :] = 0.0
    else:
        bins[(n + 1) // 2 :] = 0.0
    projected = Spectrum(bins, spec.freq_step, start_time=spec.start_time)
    return dft_inverse(projected)


def signal_energy(signal) -> float:
    """Squared L2 norm of the sampled signal: sum |x_n|^2 / sample_rate."""
    samples = np.asarray(signal.samples)
    return float(np.sum(np.abs(samples) ** 2) / signal.sample_rate)


def weighted_energy(matrix: TimeFrequencyMatrix) -> float:
    """Measure-weighted squared norm of a transform matrix.

    Sums |values|^2 * frame_step per row, then combines rows with their
    measure weights.  Accumulation order is fixed (row-major) so repeated
    runs give bitwise-identical results.
    """
    per_row = np.sum(np.abs(matrix.values) ** 2, axis=1) * matrix.frame_step
    return float(np.dot(per_row, matrix.row_weights))
