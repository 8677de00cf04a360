"""Synthetic test signals: a noisy multisine with additive spikes, and a
train of exponentially damped impulses.

Both generators are deterministic for a fixed spec (including its seed).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signal import RealSignal

__all__ = ["SynthSpec", "synth_multisine_spikes_noise", "synth_spike_train"]


@dataclass(frozen=True)
class SynthSpec:
    """Parameters for the synthetic generators.

    multisine-spikes-noise: sine_freqs/sine_amps, n_spikes spikes added at
    distinct uniform-random sample positions with amplitudes drawn uniform
    from spike_amp_range, plus white Gaussian noise of std noise_std.

    spike-train: damped impulses a * exp(-(t - t_k)/damping) starting at
    the times in spike_times with amplitudes spike_amps (1 if omitted).
    """

    kind: str = "multisine-spikes-noise"
    sine_freqs: tuple = (50.0, 120.0, 135.0, 400.0)
    sine_amps: tuple = (1.0, 1.0, 1.0, 1.0)
    n_spikes: int = 50
    spike_amp_range: tuple = (1.0, 5.0)
    noise_std: float = 0.1
    duration: float = 4.0
    sample_rate: float = 4000.0
    seed: int = 0
    spike_times: tuple = ()
    spike_amps: tuple = ()
    damping: float = 0.005

    def __post_init__(self):
        if self.kind not in ("multisine-spikes-noise", "spike-train"):
            raise ValueError(f"unknown synthesis kind {self.kind!r}")
        if not (self.sample_rate > 0 and self.duration > 0):
            raise ValueError("sample_rate and duration must be positive")
        nyquist = 0.5 * self.sample_rate
        if any(f <= 0 or f >= nyquist for f in self.sine_freqs):
            raise ValueError("sine frequencies must lie in (0, Nyquist)")
        if len(self.sine_amps) != len(self.sine_freqs):
            raise ValueError("sine_amps must match sine_freqs")
        if self.n_spikes < 0:
            raise ValueError("spike count must be nonnegative")
        if self.spike_amps and len(self.spike_amps) != len(self.spike_times):
            raise ValueError("spike_amps must match spike_times")
        if not (self.damping > 0):
            raise ValueError("damping time constant must be positive")


def synth_multisine_spikes_noise(spec: SynthSpec) -> RealSignal:
    """Sum of sines plus spikes at distinct random samples plus white noise.

    Exactly n_spikes samples receive a spike addition (positions are drawn
    without replacement).
    """
    n = int(round(spec.duration * spec.sample_rate))
    if n < 1:
        raise ValueError("duration too short for one sample")
    if spec.n_spikes > n:
        raise ValueError("more spikes than samples")
    rng = np.random.default_rng(spec.seed)
    t = np.arange(n) / spec.sample_rate
    x = np.zeros(n)
    for freq, amp in zip(spec.sine_freqs, spec.sine_amps):
        x += amp * np.sin(2.0 * np.pi * freq * t)
    positions = rng.choice(n, size=spec.n_spikes, replace=False)
    lo, hi = spec.spike_amp_range
    x[positions] += rng.uniform(lo, hi, size=spec.n_spikes)
    x += rng.normal(0.0, spec.noise_std, size=n)
    return RealSignal(x, spec.sample_rate)


def synth_spike_train(spec: SynthSpec) -> RealSignal:
    """Exponentially damped impulses at the specified onset times."""
    n = int(round(spec.duration * spec.sample_rate))
    if n < 1:
        raise ValueError("duration too short for one sample")
    t = np.arange(n) / spec.sample_rate
    x = np.zeros(n)
    amps = spec.spike_amps if spec.spike_amps else (1.0,) * len(spec.spike_times)
    for t_k, a_k in zip(spec.spike_times, amps):
        if not (0 <= t_k < spec.duration):
            raise ValueError(f"spike time {t_k} outside the signal")
        onset = t >= t_k
        x[onset] += a_k * np.exp(-(t[onset] - t_k) / spec.damping)
    return RealSignal(x, spec.sample_rate)
