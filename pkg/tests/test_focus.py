"""Tests for focus-profile constructors (moment and entropy based)."""

import numpy as np
import pytest

from focuslab import (
    FocusSpec,
    RealSignal,
    TimeFocusConfig,
    UndefinedEntropyError,
    affine_renormalize,
    entropy_freq_focus,
    hann_window,
    make_fourier_bump_wavelet,
    make_scale_grid,
    moment_time_focus,
    parse_focus_kind,
    renyi_entropy_slice,
    shannon_entropy_slice,
    shannon_entropy_time_focus,
    time_focus_profile,
    unit_freq_profile,
)

RATE = 4000.0
WAVELET = make_fourier_bump_wavelet(1.0, 0.05, 0.2)


def _cfg(hop=8):
    return TimeFocusConfig(window=hann_window(0.010), hop=hop, fft_size=64)


def _spike_signal(n=1024, pos=512):
    x = np.zeros(n)
    x[pos] = 1.0
    return RealSignal(x, RATE)


def _tone_signal(n=1024, cycles=53):
    # frequency on the DFT lattice so the spectral line is exact
    t = np.arange(n) / RATE
    f0 = cycles * RATE / n
    return RealSignal(np.sin(2 * np.pi * f0 * t), RATE), f0


def test_parse_focus_kind():
    spec = parse_focus_kind("moment:2", 5.0)
    assert spec.kind == "moment" and spec.order == 2 and spec.sigma_max == 5.0
    spec = parse_focus_kind("entropy", 3.0)
    assert spec.kind == "shannon-entropy"
    spec = parse_focus_kind("renyi:2.5", 3.0)
    assert spec.kind == "renyi" and spec.alpha == 2.5
    for bad in ("entropy:3", "moment", "renyi", "mystery"):
        with pytest.raises(ValueError):
            parse_focus_kind(bad, 3.0)


def test_focus_spec_validation():
    with pytest.raises(ValueError, match="unknown focus kind"):
        FocusSpec(kind="median", sigma_max=3.0)
    with pytest.raises(ValueError, match="sigma_max"):
        FocusSpec(kind="moment", sigma_max=0.5)
    with pytest.raises(ValueError, match="order"):
        FocusSpec(kind="moment", sigma_max=3.0, order=-1)
    with pytest.raises(ValueError, match="alpha"):
        FocusSpec(kind="renyi", sigma_max=3.0, alpha=1.0)
    with pytest.raises(ValueError, match="alpha"):
        FocusSpec(kind="renyi", sigma_max=3.0, alpha=-2.0)
    with pytest.raises(ValueError, match="sigma_ref"):
        FocusSpec(kind="moment", sigma_max=3.0, sigma_ref=0.2)


def test_affine_renormalize():
    out = affine_renormalize(np.array([0.0, 1.0, 2.0]), 5.0)
    assert np.allclose(out, [1.0, 3.0, 5.0], rtol=1e-15)
    # constant input carries no information and stays at no focusing
    assert np.array_equal(affine_renormalize(np.full(7, 3.3), 5.0), np.ones(7))
    rng = np.random.default_rng(0)
    out = affine_renormalize(rng.normal(size=50), 4.0)
    assert out.min() == 1.0 and out.max() == 4.0


def test_shannon_entropy_slice():
    # one-hot concentrates all mass: zero entropy
    assert shannon_entropy_slice(np.array([0.0, 5.0, 0.0]), 0.5) == 0.0
    # uniform over N bins: log N, independent of the bin width
    for delta in (1.0, 0.25):
        val = shannon_entropy_slice(np.full(16, 2.0), delta)
        assert val == pytest.approx(np.log(16.0), rel=1e-12)
    with pytest.raises(UndefinedEntropyError):
        shannon_entropy_slice(np.zeros(8), 1.0)


def test_renyi_entropy_slice():
    uniform = np.full(16, 3.0)
    for alpha in (0.5, 2.0, 5.0):
        val = renyi_entropy_slice(uniform, alpha, 1.0)
        assert val == pytest.approx(np.log(16.0), rel=1e-12)
    one_hot = np.array([0.0, 0.0, 7.0, 0.0])
    assert renyi_entropy_slice(one_hot, 2.0, 1.0) == pytest.approx(0.0, abs=1e-12)
    # alpha -> 1 recovers the Shannon value (delta = 1 keeps offsets away)
    rng = np.random.default_rng(2)
    s = rng.uniform(0.1, 1.0, size=32)
    shannon = shannon_entropy_slice(s, 1.0)
    for alpha in (1.0 - 1e-3, 1.0 + 1e-3):
        assert renyi_entropy_slice(s, alpha, 1.0) == pytest.approx(shannon, abs=1e-3)
    with pytest.raises(ValueError, match="alpha"):
        renyi_entropy_slice(s, 1.0, 1.0)
    with pytest.raises(ValueError, match="nonnegative"):
        renyi_entropy_slice(np.array([-1.0, 2.0]), 2.0, 1.0)
    with pytest.raises(UndefinedEntropyError):
        renyi_entropy_slice(np.zeros(8), 2.0, 1.0)


def test_moment_focus_peaks_at_spike():
    cfg = _cfg()
    f = _spike_signal()
    spec = FocusSpec(kind="moment", sigma_max=4.0, order=1)
    prof = moment_time_focus(f, spec, cfg)
    spike_frame = int(np.argmin(np.abs(prof.times - 512 / RATE)))
    assert abs(int(np.argmax(prof.sigma)) - spike_frame) <= 1
    assert prof.sigma.max() == 4.0
    assert prof.sigma.min() == 1.0


def test_entropy_focus_peaks_at_spike():
    # a spike spreads its slice across all rows, so entropy peaks there
    cfg = _cfg()
    x = np.zeros(1024)
    x[512] = 1.0
    t = np.arange(1024) / RATE
    x += 0.05 * np.sin(2 * np.pi * 207.03125 * t)
    f = RealSignal(x, RATE)
    spec = FocusSpec(kind="shannon-entropy", sigma_max=4.0)
    prof = shannon_entropy_time_focus(f, spec, cfg)
    spike_frame = int(np.argmin(np.abs(prof.times - 512 / RATE)))
    assert abs(int(np.argmax(prof.sigma)) - spike_frame) <= 1


def test_zero_signal_gives_flat_profile():
    cfg = _cfg()
    f = RealSignal(np.zeros(512), RATE)
    for kind in ("moment", "shannon-entropy"):
        spec = FocusSpec(kind=kind, sigma_max=4.0)
        prof = time_focus_profile(f, spec, cfg)
        assert np.all(prof.sigma == 1.0)


def test_amplitude_invariance():
    # scaling by a power of two is exact in floating point, so the profile
    # must not move at all; moment focus gains this from the affine
    # renormalization, entropy focus from the slice L1 normalization
    cfg = _cfg()
    rng = np.random.default_rng(8)
    x = rng.normal(size=1024)
    x[300] += 6.0
    f = RealSignal(x, RATE)
    g = RealSignal(4.0 * x, RATE)
    for kind in ("moment", "shannon-entropy"):
        spec = FocusSpec(kind=kind, sigma_max=4.0)
        pf = time_focus_profile(f, spec, cfg)
        pg = time_focus_profile(g, spec, cfg)
        assert np.array_equal(pf.sigma, pg.sigma)
    # arbitrary scaling is invariant up to rounding for the entropy kind
    h = RealSignal(3.0 * x, RATE)
    spec = FocusSpec(kind="shannon-entropy", sigma_max=4.0)
    ph = time_focus_profile(h, spec, cfg)
    pf = time_focus_profile(f, spec, cfg)
    assert np.allclose(ph.sigma, pf.sigma, atol=1e-9)


def test_time_dispatch_matches_kind():
    cfg = _cfg()
    f = _spike_signal()
    m_spec = FocusSpec(kind="moment", sigma_max=3.0, order=1)
    e_spec = FocusSpec(kind="shannon-entropy", sigma_max=3.0)
    assert np.array_equal(
        time_focus_profile(f, m_spec, cfg).sigma, moment_time_focus(f, m_spec, cfg).sigma
    )
    assert np.array_equal(
        time_focus_profile(f, e_spec, cfg).sigma,
        shannon_entropy_time_focus(f, e_spec, cfg).sigma,
    )


def test_smoothing_reduces_frame_jumps():
    cfg = _cfg()
    rng = np.random.default_rng(5)
    x = rng.normal(size=1024)
    x[256] += 8.0
    x[700] += 8.0
    f = RealSignal(x, RATE)
    rough = moment_time_focus(f, FocusSpec(kind="moment", sigma_max=4.0), cfg)
    smooth = moment_time_focus(f, FocusSpec(kind="moment", sigma_max=4.0, smooth=6), cfg)
    assert np.max(np.abs(np.diff(smooth.sigma))) <= np.max(np.abs(np.diff(rough.sigma)))
    assert smooth.sigma.min() >= 1.0 and smooth.sigma.max() <= 4.0


def test_entropy_freq_focus_tone():
    # a steady tone in noise spreads its row evenly across time, so that
    # row's entropy ranks above the wobblier noise-only rows
    grid = make_scale_grid(20.0, 800.0, 64, RATE, 1024)
    f, f0 = _tone_signal()
    rng = np.random.default_rng(4)
    f = RealSignal(f.samples + 0.1 * rng.normal(size=f.n), RATE)
    spec = FocusSpec(kind="shannon-entropy", sigma_max=3.0)
    prof = entropy_freq_focus(f, spec, grid, WAVELET)
    centers = grid.centers()
    tone_row = int(np.argmin(np.abs(centers - f0)))
    quartile = np.quantile(prof.sigma, 0.75)
    assert prof.sigma[tone_row] >= quartile
    # the raw maximum may sit on a guard row, so only the range is promised
    assert 1.0 <= prof.sigma.max() <= 3.0
    # outer eighth of the rows is forced to 1 on both sides
    guard = 64 // 8
    assert np.all(prof.sigma[:guard] == 1.0)
    assert np.all(prof.sigma[-guard:] == 1.0)


def test_entropy_freq_focus_rejects_moment():
    grid = make_scale_grid(20.0, 800.0, 64, RATE, 1024)
    f, _ = _tone_signal()
    with pytest.raises(ValueError, match="time side"):
        entropy_freq_focus(f, FocusSpec(kind="moment", sigma_max=3.0), grid, WAVELET)


def test_freq_profile_respects_sigma_max():
    grid = make_scale_grid(20.0, 800.0, 64, RATE, 1024)
    rng = np.random.default_rng(12)
    f = RealSignal(rng.normal(size=1024), RATE)
    prof = entropy_freq_focus(f, FocusSpec(kind="renyi", sigma_max=2.5), grid, WAVELET)
    assert prof.sigma_max == 2.5
    assert np.all(prof.sigma >= 1.0)
    assert np.all(prof.sigma <= 2.5)
    assert prof.sigma.shape == unit_freq_profile(grid).sigma.shape
