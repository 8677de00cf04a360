import numpy as np
import pytest

from focuslab import (
    DegenerateWindowError,
    RealSignal,
    TimeFocusConfig,
    TimeFocusProfile,
    Window,
    check_time_bounds,
    constant_profile,
    hann_window,
    inverse_kernel_profile,
    kernel_time,
    l1_kernel_identity,
    l2_kernel_identity,
    lower_bound_cf,
    make_identity,
    make_sinh,
    quadrature_inner_product,
    signal_energy,
    step_profile,
    time_focused_atom,
    transform_time_focused,
    truncated_gaussian_window,
    upper_bound_Cf,
    weighted_energy,
)

RATE = 4000.0


def _cfg(hop=8, fft_size=64, gamma=None, window=None):
    return TimeFocusConfig(
        window=window or hann_window(0.01),
        gamma=gamma or make_identity(),
        hop=hop,
        fft_size=fft_size,
    )


def _noise(seed, n=512):
    rng = np.random.default_rng(seed)
    return RealSignal(rng.normal(size=n), RATE)


def test_atom_reduces_to_stft_atom():
    cfg = _cfg()
    t0, omega = 0.064, 500.0
    atom = time_focused_atom(t0, omega, 1.0, cfg, 512, RATE)
    x = atom.times()
    expected = np.exp(2j * np.pi * omega * x) * cfg.window.evaluate(x - t0)
    assert np.max(np.abs(atom.samples - expected)) < 1e-12


def test_atom_energy_independent_of_sigma_and_t():
    cfg = _cfg(gamma=make_sinh(300.0))
    omega = 420.0
    base = cfg.gamma.deriv(omega) * cfg.window.l2_norm ** 2
    # sigma = 2.5 leaves 16 samples under the scaled 10 ms window at 4 kHz
    for t0, sig_val in ((0.05, 1.0), (0.08, 2.5), (0.05, 2.5)):
        atom = time_focused_atom(t0, omega, sig_val, cfg, 512, RATE)
        assert signal_energy(atom) == pytest.approx(base, rel=1e-3)


def test_atom_support_scaling_and_validation():
    cfg = _cfg()
    t0 = 0.064
    atom = time_focused_atom(t0, 100.0, 4.0, cfg, 512, RATE)
    x = atom.times()
    outside = np.abs(x - t0) > cfg.window.support_length / (2 * 4.0) + 1e-9
    assert np.max(np.abs(atom.samples[outside])) == 0.0
    with pytest.raises(ValueError):
        time_focused_atom(t0, 100.0, 0.5, cfg, 512, RATE)


def test_zero_signal_zero_matrix():
    cfg = _cfg()
    sig = RealSignal(np.zeros(256), RATE)
    m = transform_time_focused(sig, constant_profile(cfg, sig, 2.0), cfg)
    assert np.max(np.abs(m.values)) == 0.0


def test_constant_focus_parseval_small():
    cfg = _cfg(hop=1)
    rng = np.random.default_rng(8)
    # bandlimited signal, comfortably inside the fft row span
    n = 1024
    bins = np.zeros(n, dtype=complex)
    band = slice(20, 400)
    k = np.arange(*band.indices(n))[0:380]
    bins[k] = rng.normal(size=k.size) + 1j * rng.normal(size=k.size)
    samples = np.fft.ifft(bins).real * np.sqrt(n)
    sig = RealSignal(samples, RATE)
    m = transform_time_focused(sig, constant_profile(cfg, sig, 1.0), cfg)
    target = cfg.window.l2_norm ** 2 * signal_energy(sig)
    assert weighted_energy(m) == pytest.approx(target, rel=1e-3)


def test_transform_cells_match_quadrature_oracle():
    for gamma in (make_identity(), make_sinh(200.0)):
        cfg = _cfg(hop=64, fft_size=64, gamma=gamma)
        sig = _noise(9, n=256)
        profile = step_profile(cfg, sig, 0.02, 0.05, 2.0)
        m = transform_time_focused(sig, profile, cfg)
        f_c = sig.samples.astype(complex)
        scale = np.max(np.abs(m.values))
        for mi in (1, m.n_frames // 2):
            sigma_m = profile.sigma[mi]
            for k in (5, 16, 27):
                atom = time_focused_atom(
                    float(profile.times[mi]), float(m.row_axis[k]), float(sigma_m),
                    cfg, sig.n, RATE, sig.start_time,
                )
                oracle = quadrature_inner_product(
                    type(atom)(f_c, RATE, sig.start_time), atom
                )
                got = m.values[k, mi]
                assert abs(got - oracle) / (abs(oracle) + 1e-9 * scale) < 1e-6


def test_frozen_profile_homogeneity():
    cfg = _cfg()
    sig = _noise(10)
    profile = step_profile(cfg, sig, 0.04, 0.09, 3.0)
    m1 = transform_time_focused(sig, profile, cfg)
    scaled = RealSignal(4.0 * sig.samples, RATE)
    m2 = transform_time_focused(scaled, profile, cfg)
    assert np.max(np.abs(m2.values - 4.0 * m1.values)) < 1e-12 * np.max(np.abs(m2.values))


def test_inverse_kernel_profile_constant_cases():
    cfg = _cfg()
    sig = _noise(11)
    t_grid = np.linspace(0.02, 0.1, 40)
    h_sq = cfg.window.l2_norm ** 2
    for value in (1.0, 2.0):
        prof = constant_profile(cfg, sig, value)
        phi = inverse_kernel_profile(prof, cfg, t_grid)
        assert np.max(np.abs(phi - h_sq)) / h_sq < 1e-6


def test_kernel_time_constant_profile_is_dc_spike():
    cfg = _cfg()
    sig = _noise(12)
    spec = kernel_time(constant_profile(cfg, sig, 1.0), cfg)
    mags = np.abs(spec.bins)
    assert mags[0] > 0
    assert np.max(mags[1:]) < 1e-10 * mags[0]


def test_kernel_time_hermitian_for_step_profile():
    cfg = _cfg()
    sig = _noise(13)
    spec = kernel_time(step_profile(cfg, sig, 0.03, 0.08, 3.0), cfg)
    bins = spec.bins
    assert np.max(np.abs(bins[1:][::-1] - np.conj(bins[1:]))) < 1e-12 * np.max(np.abs(bins))


def test_l1_l2_kernel_identities_step_profiles():
    cfg = _cfg()
    sig = RealSignal(np.zeros(2048), RATE)
    prof = step_profile(cfg, sig, 0.15, 0.35, 2.0)
    lhs1, rhs1, rel1 = l1_kernel_identity(prof, cfg)
    assert rel1 < 1e-4
    lhs2, rhs2, rel2 = l2_kernel_identity(prof, cfg)
    assert rel2 < 1e-3


def test_kernel_identities_window_homogeneity():
    g = truncated_gaussian_window(0.01, 3.0)
    doubled = Window(
        kind="scaled-gauss",
        support_length=g.support_length,
        evaluate=lambda x: 2.0 * g.evaluate(x),
        sup_norm=2.0,
        l2_norm=2.0 * g.l2_norm,
    )
    sig = RealSignal(np.zeros(1024), RATE)
    results = []
    for win in (g, doubled):
        cfg = _cfg(window=win)
        prof = step_profile(cfg, sig, 0.08, 0.16, 2.0)
        results.append((l1_kernel_identity(prof, cfg), l2_kernel_identity(prof, cfg)))
    (l1a, l1b) = results[0][0], results[1][0]
    (l2a, l2b) = results[0][1], results[1][1]
    # h -> 2h multiplies the L1 identity by 4 and the L2 identity by 16
    assert l1b[0] == pytest.approx(4.0 * l1a[0], rel=1e-12)
    assert l1b[1] == pytest.approx(4.0 * l1a[1], rel=1e-12)
    assert l2b[0] == pytest.approx(16.0 * l2a[0], rel=1e-12)
    assert l2b[1] == pytest.approx(16.0 * l2a[1], rel=1e-12)


def test_l2_kernel_identity_rejects_constant_profile():
    cfg = _cfg()
    sig = RealSignal(np.zeros(512), RATE)
    with pytest.raises(ValueError):
        l2_kernel_identity(constant_profile(cfg, sig, 1.0), cfg)


def test_bound_constants_constant_profiles():
    cfg = _cfg()
    sig = RealSignal(np.zeros(1024), RATE)
    h_sq = cfg.window.l2_norm ** 2
    prof1 = constant_profile(cfg, sig, 1.0)
    assert upper_bound_Cf(prof1, cfg) == pytest.approx(h_sq, rel=1e-6)
    c1, floor1 = lower_bound_cf(prof1, cfg)
    assert c1 == pytest.approx(h_sq, rel=1e-4)
    assert c1 > floor1 > 0
    prof2 = constant_profile(cfg, sig, 2.0)
    # C_f(sigma = 2) = int |h(2t)|^2 * 2 dt = ||h||^2
    assert upper_bound_Cf(prof2, cfg) == pytest.approx(h_sq, rel=1e-6)
    c2, floor2 = lower_bound_cf(prof2, cfg)
    assert c2 == pytest.approx(h_sq / 2.0, rel=1e-4)
    # floor = (half-height radius) * sup_norm^2 / sigma_max, so it halves
    assert floor2 == pytest.approx(floor1 / 2.0, rel=1e-12)
    assert c2 > floor2


def test_check_time_bounds_constant_equality_and_step():
    cfg = _cfg(hop=1)
    sig = _noise(14, n=1024)
    report = check_time_bounds(sig, constant_profile(cfg, sig, 1.0), cfg)
    assert report.lower_ok and report.upper_ok
    h_sq = cfg.window.l2_norm ** 2
    assert report.measured == pytest.approx(h_sq * signal_energy(sig), rel=1e-3)
    prof = step_profile(cfg, sig, 0.06, 0.14, 4.0)
    report2 = check_time_bounds(sig, prof, cfg)
    assert report2.lower_ok and report2.upper_ok
    assert report2.lower < report2.upper


def test_check_time_bounds_zero_signal():
    cfg = _cfg()
    sig = RealSignal(np.zeros(512), RATE)
    report = check_time_bounds(sig, constant_profile(cfg, sig, 1.0), cfg)
    assert report.measured == 0.0
    assert report.lower_ok and report.upper_ok


def test_degenerate_window_guard():
    cfg = _cfg()
    sig = RealSignal(np.zeros(512), RATE)
    big = constant_profile(cfg, sig, 12.0)
    with pytest.raises(DegenerateWindowError):
        transform_time_focused(sig, big, cfg)


def test_profile_grid_mismatch_rejected():
    cfg8 = _cfg(hop=8)
    cfg16 = _cfg(hop=16)
    sig = RealSignal(np.zeros(512), RATE)
    prof = constant_profile(cfg8, sig, 1.0)
    with pytest.raises(ValueError):
        transform_time_focused(sig, prof, cfg16)


def test_profile_range_validation():
    with pytest.raises(ValueError):
        TimeFocusProfile(
            sigma=np.array([0.5, 1.0]),
            times=np.array([0.0, 0.002]),
            frame_step=0.002,
            sigma_max=5.0,
        )
    # the declared ceiling stretches to cover the data, keeping the
    # range invariant true by construction
    p = TimeFocusProfile(
        sigma=np.array([1.0, 7.0]),
        times=np.array([0.0, 0.002]),
        frame_step=0.002,
        sigma_max=5.0,
    )
    assert p.sigma_max == 7.0
