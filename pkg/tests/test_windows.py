import numpy as np
import pytest
from scipy.integrate import quad

from focuslab import (
    admissibility_constant,
    cqt_reference_from_wavelet,
    derivative_bound,
    frequency_localization,
    halfpower_interval,
    hann_window,
    make_fourier_bump_wavelet,
    parse_wavelet,
    parse_window,
    truncated_gaussian_window,
)

# Reference wavelet used across the bound tests: center 1 Hz, 20% relative
# width, support (0.2, 1.8).  Constants frozen from quadrature oracles run
# before the transforms were built.
REF_C_PSI = 0.3620552669335107
REF_A_PSI = 0.735758637089907
REF_NORM_SQ = 0.3544904829010528
REF_HALFPOWER = (0.8334890777688839, 1.1665109222317727)


def test_gaussian_window_shape():
    g = truncated_gaussian_window(0.01, 3.0)
    assert g.evaluate(np.array([0.0]))[0] == pytest.approx(1.0)
    assert g.sup_norm == pytest.approx(1.0)
    # compact support: zero just outside +-duration/2
    outside = g.evaluate(np.array([0.0051, -0.0051, 1.0]))
    assert np.max(np.abs(outside)) == 0.0
    s = 0.01 / (2 * 3.0)
    oracle, _ = quad(lambda x: np.exp(-(x ** 2) / s ** 2), -0.005, 0.005)
    assert g.l2_norm ** 2 == pytest.approx(oracle, rel=1e-8)
    with pytest.raises(ValueError):
        truncated_gaussian_window(-0.01, 3.0)


def test_hann_window_shape():
    h = hann_window(0.02)
    assert h.evaluate(np.array([0.0]))[0] == pytest.approx(1.0)
    assert h.evaluate(np.array([0.005]))[0] == pytest.approx(0.5)
    assert h.evaluate(np.array([0.01]))[0] == pytest.approx(0.0, abs=1e-15)
    assert h.evaluate(np.array([0.0101]))[0] == 0.0
    assert h.l2_norm ** 2 == pytest.approx(0.375 * 0.02, rel=1e-10)


def test_window_continuity_by_refinement():
    # Hann is continuous everywhere; the truncated Gaussian is continuous on
    # the support interior and has a fixed edge jump of exp(-shape^2/2).
    h = hann_window(0.01)
    x = np.linspace(-0.006, 0.006, 20001)
    assert np.max(np.abs(np.diff(h.evaluate(x)))) < 5e-4
    g = truncated_gaussian_window(0.01, 3.0)
    inner = np.linspace(-0.00499, 0.00499, 20001)
    assert np.max(np.abs(np.diff(g.evaluate(inner)))) < 5e-4
    edge = g.evaluate(np.array([0.0049999]))[0]
    assert edge == pytest.approx(np.exp(-(3.0 ** 2) / 2), rel=1e-3)


def test_bump_wavelet_constants_frozen():
    w = make_fourier_bump_wavelet(1.0, 0.2, 0.8)
    assert w.xi0 == pytest.approx(1.0, rel=1e-9)
    assert w.c_psi == pytest.approx(REF_C_PSI, rel=1e-9)
    assert w.a_psi == pytest.approx(REF_A_PSI, rel=1e-9)
    assert w.norm_sq == pytest.approx(REF_NORM_SQ, rel=1e-9)
    assert w.halfpower[0] == pytest.approx(REF_HALFPOWER[0], rel=1e-9)
    assert w.halfpower[1] == pytest.approx(REF_HALFPOWER[1], rel=1e-9)
    assert w.peak_value == pytest.approx(1.0)


def test_bump_wavelet_analytic_and_support():
    w = make_fourier_bump_wavelet(1.0, 0.2, 0.8)
    xi = np.linspace(-2.0, 0.0, 50)
    assert np.max(np.abs(w.fourier_profile(xi))) == 0.0
    lo, hi = w.support
    assert np.max(np.abs(w.fourier_profile(np.array([hi + 1e-6, lo - 1e-6])))) == 0.0
    with pytest.raises(ValueError):
        make_fourier_bump_wavelet(0.5, 0.2, 0.6)  # support would touch zero


def test_frequency_localization_symmetry_and_scaling():
    w = make_fourier_bump_wavelet(1.0, 0.2, 0.8)
    assert frequency_localization(w) == pytest.approx(1.0, rel=1e-6)
    w2 = make_fourier_bump_wavelet(2.0, 0.4, 1.6)
    assert frequency_localization(w2) == pytest.approx(2.0, rel=1e-6)


def test_admissibility_riemann_oracle():
    w = make_fourier_bump_wavelet(1.0, 0.2, 0.8)
    lo, hi = w.support
    xi = np.linspace(lo + 1e-9, hi, 200001)
    riemann = np.trapezoid(np.abs(w.fourier_profile(xi)) ** 2 / xi, xi)
    assert admissibility_constant(w) == pytest.approx(riemann, rel=1e-6)
    # scaling invariance: doubling center, width and support leaves c_psi fixed
    w2 = make_fourier_bump_wavelet(2.0, 0.4, 1.6)
    assert w2.c_psi == pytest.approx(w.c_psi, rel=1e-8)


def test_derivative_bound_properties():
    w = make_fourier_bump_wavelet(1.0, 0.2, 0.8)
    a = derivative_bound(w)
    assert np.isfinite(a) and a > 0
    a_fine = derivative_bound(w, n_grid=40001)
    assert abs(a - a_fine) / a_fine < 0.01


def test_halfpower_matches_closed_form():
    # |psi_hat|^2 = exp(-(xi - xi0)^2 / width^2) >= 1/2 on xi0 +- width*sqrt(ln 2)
    w = make_fourier_bump_wavelet(1.0, 0.05, 0.2)
    a, b = halfpower_interval(w)
    half = 0.05 * np.sqrt(np.log(2.0))
    assert a == pytest.approx(1.0 - half, rel=1e-6)
    assert b == pytest.approx(1.0 + half, rel=1e-6)
    assert a < w.xi0 < b
    # pointwise law on a dense grid
    xi = np.linspace(a + 1e-9, b - 1e-9, 2001)
    assert np.all(np.abs(w.fourier_profile(xi)) ** 2 >= w.peak_value ** 2 / 2 - 1e-12)
    just_out = np.array([a - 1e-4, b + 1e-4])
    assert np.all(np.abs(w.fourier_profile(just_out)) ** 2 < w.peak_value ** 2 / 2)


def test_cqt_reference_shares_admissibility():
    w = make_fourier_bump_wavelet(1.0, 0.2, 0.8)
    ref = cqt_reference_from_wavelet(w)
    assert ref.c_h == pytest.approx(w.c_psi, rel=1e-10)
    # shifted profile: reference at y equals wavelet at y + 1
    y = np.linspace(-0.5, 0.7, 31)
    assert np.allclose(ref.fourier_profile(y), w.fourier_profile(y + 1.0))


def test_parse_window_milliseconds():
    g = parse_window("gauss:10:3")
    assert g.support_length == pytest.approx(0.01)
    h = parse_window("hann:25")
    assert h.support_length == pytest.approx(0.025)
    with pytest.raises(ValueError):
        parse_window("gauss:10")
    with pytest.raises(ValueError):
        parse_window("boxcar:10")


def test_parse_wavelet_spec():
    w = parse_wavelet("bump:1:0.05:0.2")
    assert w.xi0 == pytest.approx(1.0, rel=1e-9)
    assert w.support[0] == pytest.approx(0.8)
    with pytest.raises(ValueError):
        parse_wavelet("bump:1:0.05")
    with pytest.raises(ValueError):
        parse_wavelet("morlet:1:0.05:0.2")
