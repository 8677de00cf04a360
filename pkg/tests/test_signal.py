import numpy as np
import pytest

from focuslab import (
    ComplexSignal,
    RealSignal,
    TimeFrequencyMatrix,
    dft_forward,
    dft_inverse,
    hardy_project,
    signal_energy,
    weighted_energy,
)


def test_real_signal_validation():
    with pytest.raises(ValueError):
        RealSignal([], 100.0)
    with pytest.raises(ValueError):
        RealSignal([1.0, np.inf], 100.0)
    with pytest.raises(ValueError):
        RealSignal([1.0], 0.0)
    sig = RealSignal([1.0, 2.0], 10.0, start_time=0.5)
    assert sig.dt == pytest.approx(0.1)
    assert np.allclose(sig.times(), [0.5, 0.6])


def test_dft_dc_and_impulse():
    n, rate = 64, 100.0
    const = ComplexSignal(np.ones(n, dtype=complex), rate)
    spec = dft_forward(const)
    # DC bin holds the total duration, every other bin vanishes
    assert spec.bins[0] == pytest.approx(n / rate)
    assert np.max(np.abs(spec.bins[1:])) < 1e-12
    impulse = np.zeros(n, dtype=complex)
    impulse[0] = 1.0
    flat = dft_forward(ComplexSignal(impulse, rate))
    assert np.allclose(flat.bins, 1.0 / rate)


def test_dft_pure_exponential_single_bin():
    n, rate = 128, 128.0
    t = np.arange(n) / rate
    f0 = 16.0
    sig = ComplexSignal(np.exp(2j * np.pi * f0 * t), rate)
    spec = dft_forward(sig)
    k0 = int(round(f0 / spec.freq_step))
    duration = n / rate
    assert spec.bins[k0] == pytest.approx(duration, rel=1e-12)
    rest = np.delete(spec.bins, k0)
    assert np.max(np.abs(rest)) < 1e-12


def test_dft_roundtrip_and_plancherel():
    rng = np.random.default_rng(3)
    x = rng.normal(size=257) + 1j * rng.normal(size=257)
    sig = ComplexSignal(x, 997.0)
    back = dft_inverse(dft_forward(sig))
    assert np.max(np.abs(back.samples - x)) / np.max(np.abs(x)) < 1e-12
    spec = dft_forward(sig)
    lhs = signal_energy(sig)
    rhs = float(np.sum(np.abs(spec.bins) ** 2) * spec.freq_step)
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_dft_inverse_single_bin_is_exponential():
    n, rate = 64, 64.0
    spec_bins = np.zeros(n, dtype=complex)
    k0 = 5
    spec_bins[k0] = 1.0
    sig = dft_inverse(dft_forward(ComplexSignal(np.zeros(n, dtype=complex), rate)))
    assert np.max(np.abs(sig.samples)) == 0.0
    # build the bin via a forward transform of the matching exponential
    t = np.arange(n) / rate
    expo = ComplexSignal(np.exp(2j * np.pi * k0 * (rate / n) * t), rate)
    spec = dft_forward(expo)
    back = dft_inverse(spec)
    assert np.max(np.abs(back.samples - expo.samples)) < 1e-10


def test_hardy_project_cosine_halves_energy():
    n, rate = 256, 256.0
    t = np.arange(n) / rate
    f0 = 32.0
    sig = RealSignal(np.cos(2 * np.pi * f0 * t), rate)
    proj = hardy_project(sig)
    expected = 0.5 * np.exp(2j * np.pi * f0 * t)
    assert np.max(np.abs(proj.samples - expected)) < 1e-10
    assert signal_energy(proj) == pytest.approx(0.5 * signal_energy(sig), rel=1e-10)


def test_hardy_project_constant_and_bin_budget():
    n, rate = 128, 64.0
    const = RealSignal(np.ones(n), rate)
    assert np.max(np.abs(hardy_project(const).samples)) < 1e-14
    rng = np.random.default_rng(11)
    sig = RealSignal(rng.normal(size=n), rate)
    proj = hardy_project(sig)
    spec = dft_forward(ComplexSignal(sig.samples.astype(complex), rate))
    dc = np.abs(spec.bins[0]) ** 2 * spec.freq_step
    nyq = np.abs(spec.bins[n // 2]) ** 2 * spec.freq_step
    expected = (signal_energy(sig) - dc - nyq) / 2.0
    assert signal_energy(proj) == pytest.approx(expected, rel=1e-10)


def test_hardy_project_idempotent_contraction():
    rng = np.random.default_rng(12)
    sig = RealSignal(rng.normal(size=200), 100.0)
    once = hardy_project(sig)
    twice = hardy_project(once)
    assert np.max(np.abs(twice.samples - once.samples)) < 1e-12
    assert signal_energy(once) <= signal_energy(sig)


def test_weighted_energy_single_cell_and_bruteforce():
    m = TimeFrequencyMatrix(
        values=np.array([[1.0 + 0j]]),
        row_axis=np.array([5.0]),
        time_axis=np.array([0.0]),
        frame_step=0.5,
        row_weights=np.array([2.0]),
    )
    assert weighted_energy(m) == pytest.approx(1.0)
    rng = np.random.default_rng(4)
    vals = rng.normal(size=(3, 7)) + 1j * rng.normal(size=(3, 7))
    weights = rng.uniform(0.1, 2.0, size=3)
    m2 = TimeFrequencyMatrix(
        values=vals,
        row_axis=np.arange(3.0),
        time_axis=np.arange(7.0) * 0.25,
        frame_step=0.25,
        row_weights=weights,
    )
    brute = sum(
        abs(vals[j, k]) ** 2 * 0.25 * weights[j]
        for j in range(3)
        for k in range(7)
    )
    assert weighted_energy(m2) == pytest.approx(brute, rel=1e-12)


def test_weighted_energy_additive_over_row_partition():
    rng = np.random.default_rng(5)
    vals = rng.normal(size=(6, 4)) + 1j * rng.normal(size=(6, 4))
    weights = rng.uniform(0.5, 1.5, size=6)
    def sub(rows):
        return TimeFrequencyMatrix(
            values=vals[rows],
            row_axis=np.arange(6.0)[rows],
            time_axis=np.arange(4.0),
            frame_step=1.0,
            row_weights=weights[rows],
        )
    total = weighted_energy(sub(slice(0, 6)))
    parts = weighted_energy(sub(slice(0, 2))) + weighted_energy(sub(slice(2, 6)))
    assert total == pytest.approx(parts, rel=1e-12)


def test_matrix_axis_validation():
    with pytest.raises(ValueError):
        TimeFrequencyMatrix(
            values=np.zeros((2, 3), dtype=complex),
            row_axis=np.zeros(5),
            time_axis=np.zeros(3),
            frame_step=1.0,
            row_weights=np.zeros(2),
        )
    with pytest.raises(ValueError):
        TimeFrequencyMatrix(
            values=np.zeros((2, 3), dtype=complex),
            row_axis=np.zeros(2),
            time_axis=np.zeros(3),
            frame_step=1.0,
            row_weights=np.array([1.0, -1.0]),
        )


def test_signal_energy_basics():
    assert signal_energy(RealSignal(np.zeros(10), 10.0)) == 0.0
    assert signal_energy(RealSignal(np.ones(100), 100.0)) == pytest.approx(1.0)
