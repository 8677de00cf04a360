"""Scale-grid transforms: constant-Q and wavelet baselines, per-scale
frequency squeezing, the squeezed transform, and its energy-control kernel.

All transforms here work row-by-row in the Fourier domain: the analyzed
spectrum is multiplied by the conjugate atom profile for one scale and
brought back to the time axis with the inverse DFT.  Row weights carry the
scale measure so that weighted_energy approximates the continuous squared
norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .scalemaps import ScaleMap, make_exponential
from .signal import (
    ComplexSignal,
    Spectrum,
    TimeFrequencyMatrix,
    dft_forward,
    hardy_project,
    signal_energy,
    weighted_energy,
)
from .windows import AnalyticWavelet, CqtReference

__all__ = [
    "InvalidGridError",
    "ScaleGrid",
    "FreqFocusProfile",
    "FreqBoundReport",
    "make_scale_grid",
    "unit_freq_profile",
    "indicator_freq_profile",
    "cqt_transform",
    "wavelet_transform",
    "freq_shift",
    "squeeze",
    "focused_atom_spectrum",
    "transform_freq_focused",
    "kernel_freq",
    "upper_bound_C",
    "lower_bound_d",
    "check_freq_bounds",
]


class InvalidGridError(ValueError):
    """Scale band incompatible with the signal lattice (outside (0, Nyquist))."""


@dataclass(frozen=True)
class ScaleGrid:
    """Uniform grid in scale parameter u with its image under a scale map.

    The grid is tied to a fixed signal lattice (n_samples at sample_rate) so
    transforms can validate their input and atom spectra can be rendered
    without extra bookkeeping.
    """

    u_values: np.ndarray
    gamma: ScaleMap
    sample_rate: float
    n_samples: int

    def __post_init__(self):
        u = np.asarray(self.u_values, dtype=np.float64)
        object.__setattr__(self, "u_values", u)
        if u.size < 2:
            raise ValueError("need at least two scale rows")
        steps = np.diff(u)
        if not np.all(steps > 0):
            raise ValueError("u_values must be strictly increasing")
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
            raise ValueError("u_values must be uniformly spaced")
        if self.gamma.codomain != "positive-reals":
            raise ValueError("scale map must have positive codomain")
        centers = self.gamma.eval(u)
        nyquist = 0.5 * self.sample_rate
        if centers[0] <= 0 or centers[-1] >= nyquist:
            raise InvalidGridError("scale centers must lie inside (0, Nyquist)")

    @property
    def du(self) -> float:
        return float(self.u_values[1] - self.u_values[0])

    @property
    def n_rows(self) -> int:
        return self.u_values.size

    def centers(self) -> np.ndarray:
        return self.gamma.eval(self.u_values)

    def weights_wavelet(self) -> np.ndarray:
        """Row weights gamma'(u_j) * du for the scale measure."""
        return self.gamma.deriv(self.u_values) * self.du

    def weights_cqt(self) -> np.ndarray:
        """Row weights gamma'(u_j) / gamma(u_j) * du."""
        return self.gamma.deriv(self.u_values) / self.gamma.eval(self.u_values) * self.du


def make_scale_grid(
    f_min: float,
    f_max: float,
    n_rows: int,
    sample_rate: float,
    n_samples: int,
    gamma: ScaleMap | None = None,
) -> ScaleGrid:
    """Build a uniform-in-u grid whose centers run from f_min to f_max.

    The default map is exponential, giving log-spaced center frequencies.
    """
    if gamma is None:
        gamma = make_exponential()
    if not (0 < f_min < f_max):
        raise ValueError("need 0 < f_min < f_max")
    u_lo = float(gamma.invert(f_min))
    u_hi = float(gamma.invert(f_max))
    u = np.linspace(u_lo, u_hi, int(n_rows))
    return ScaleGrid(u, gamma, float(sample_rate), int(n_samples))


@dataclass
class FreqFocusProfile:
    """Per-scale squeezing values on a scale grid.

    sigma[j] >= 1 applies to row j.  The first and last rows must stay at 1
    (the discrete stand-in for squeezing that dies off outside the band) so
    the upper-bound integral stays finite.
    """

    sigma: np.ndarray
    sigma_max: float

    def __post_init__(self):
        self.sigma = np.asarray(self.sigma, dtype=np.float64)
        if self.sigma.ndim != 1:
            raise ValueError("sigma must be one-dimensional")
        if np.any(self.sigma < 1.0):
            raise ValueError("squeezing values must be >= 1")
        if np.any(self.sigma > self.sigma_max * (1 + 1e-12)):
            raise ValueError("squeezing values must not exceed sigma_max")
        if self.sigma[0] != 1.0 or self.sigma[-1] != 1.0:
            raise ValueError("profile must equal 1 on the outermost rows")

    def sigma_at_u(self, u, grid: ScaleGrid):
        """Linear interpolation in u; exactly 1 outside the grid band."""
        u = np.asarray(u, dtype=np.float64)
        return np.interp(u, grid.u_values, self.sigma, left=1.0, right=1.0)


@dataclass
class FreqBoundReport:
    """Outcome of the frequency-side energy sandwich check."""

    d_psi: float
    C_sigma: float
    measured_energy: float
    signal_energy: float
    slack: float
    lower_ok: bool
    upper_ok: bool
    warnings: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.lower_ok and self.upper_ok


def unit_freq_profile(grid: ScaleGrid) -> FreqFocusProfile:
    """No squeezing anywhere (reduces the transform to the plain wavelet one)."""
    return FreqFocusProfile(np.ones(grid.n_rows), sigma_max=1.0)


def indicator_freq_profile(
    grid: ScaleGrid, f_on: float, f_off: float, value: float
) -> FreqFocusProfile:
    """Squeeze by a constant factor on rows whose center lies in (f_on, f_off).

    The band must be interior to the grid: the outermost rows have to stay
    at 1 for the profile to be valid.
    """
    centers = grid.centers()
    sigma = np.ones(grid.n_rows)
    sigma[(centers > f_on) & (centers < f_off)] = value
    return FreqFocusProfile(sigma, sigma_max=max(1.0, value))


def _check_signal_grid(f, grid: ScaleGrid):
    if f.n != grid.n_samples:
        raise ValueError("signal length does not match the scale grid lattice")
    if not math.isclose(f.sample_rate, grid.sample_rate, rel_tol=1e-12):
        raise ValueError("signal sample rate does not match the scale grid lattice")


def _check_band(grid: ScaleGrid, support_hi: float, allow_truncated: bool, meta: dict):
    """Highest analyzed frequency must stay below Nyquist.

    support_hi is the upper edge of the atom profile argument, so the atom at
    scale gamma(u) occupies frequencies up to gamma(u) * support_hi.
    """
    top = float(grid.centers()[-1] * support_hi)
    nyquist = 0.5 * grid.sample_rate
    if top >= nyquist:
        if not allow_truncated:
            raise InvalidGridError(
                f"atom band reaches {top:.1f} Hz, at or past Nyquist {nyquist:.1f} Hz"
            )
        meta["truncated"] = True
    else:
        meta["truncated"] = False


def _rows_from_multipliers(f, grid: ScaleGrid, multipliers: np.ndarray) -> np.ndarray:
    """Inverse-DFT each spectral row product back to the time axis.

    multipliers has one row per scale, sampled on the signed DFT frequency
    lattice of f.
    """
    spec = dft_forward(f)
    products = multipliers * spec.bins[np.newaxis, :]
    return np.fft.ifft(products, axis=1) * f.n * spec.freq_step


def cqt_transform(f, grid: ScaleGrid, reference: CqtReference) -> TimeFrequencyMatrix:
    """Log-frequency transform against shifted-profile atoms.

    Row j holds inner products with atoms gamma_j h(gamma_j (x - t))
    e^{2 i pi gamma_j (x - t)}: in the Fourier domain the multiplier is
    conj reference_profile(xi / gamma_j - 1) with no amplitude prefactor.
    """
    _check_signal_grid(f, grid)
    meta = {"kind": "cqt", "projected": False}
    _check_band(grid, reference.support[1] + 1.0, False, meta)
    if np.isrealobj(f.samples):
        # Real input: analyze its positive-frequency part.  The shifted
        # profile vanishes below its support anyway, so this only removes
        # the redundant conjugate half from energy bookkeeping.
        f = hardy_project(f)
        meta["projected"] = True
    xi = dft_forward(f).frequencies()
    centers = grid.centers()
    multipliers = np.conj(reference.fourier_profile(xi[np.newaxis, :] / centers[:, np.newaxis] - 1.0))
    values = _rows_from_multipliers(f, grid, multipliers)
    return TimeFrequencyMatrix(
        values=values,
        row_axis=centers,
        time_axis=f.times(),
        frame_step=f.dt,
        row_weights=grid.weights_cqt(),
        meta=meta,
    )


def freq_shift(sigma_val: float, w: AnalyticWavelet) -> float:
    """Frequency shift (sigma - 1) * xi0 that keeps a squeezed atom centered."""
    return (sigma_val - 1.0) * w.xi0


def squeeze(xi, u: float, sigma_val: float, grid: ScaleGrid, w: AnalyticWavelet):
    """Affine frequency compression (sigma / gamma(u)) xi - (sigma - 1) xi0.

    Fixed point: squeeze(gamma(u) * xi0) = xi0 for every sigma, so squeezing
    narrows an atom's band without moving its center frequency.
    """
    xi = np.asarray(xi, dtype=np.float64)
    g = float(grid.gamma.eval(u))
    return (sigma_val / g) * xi - freq_shift(sigma_val, w)


def _squeezed_multipliers(
    f_xi: np.ndarray, grid: ScaleGrid, w: AnalyticWavelet, sigma: np.ndarray
) -> np.ndarray:
    """conj psi_hat(beta_u(xi)) / sqrt(gamma(u)) for every scale row."""
    centers = grid.centers()
    shift = (sigma - 1.0) * w.xi0
    args = (sigma / centers)[:, np.newaxis] * f_xi[np.newaxis, :] - shift[:, np.newaxis]
    return np.conj(w.fourier_profile(args)) / np.sqrt(centers)[:, np.newaxis]


def transform_freq_focused(
    f_analytic: ComplexSignal,
    profile: FreqFocusProfile,
    grid: ScaleGrid,
    w: AnalyticWavelet,
    allow_truncated: bool = False,
) -> TimeFrequencyMatrix:
    """Wavelet-type transform with per-scale squeezed atoms.

    Expects an analytic input (spectrum vanishing for xi <= 0).  Row j uses
    the multiplier conj psi_hat(beta_{u_j}(xi)) / sqrt(gamma(u_j)); with the
    unit profile this is exactly the plain wavelet transform.
    """
    _check_signal_grid(f_analytic, grid)
    if profile.sigma.size != grid.n_rows:
        raise ValueError("profile length does not match the scale grid")
    meta = {"kind": "freq-focused", "sigma_max": float(profile.sigma_max)}
    _check_band(grid, w.support[1], allow_truncated, meta)
    xi = dft_forward(f_analytic).frequencies()
    multipliers = _squeezed_multipliers(xi, grid, w, profile.sigma)
    values = _rows_from_multipliers(f_analytic, grid, multipliers)
    return TimeFrequencyMatrix(
        values=values,
        row_axis=grid.centers(),
        time_axis=f_analytic.times(),
        frame_step=f_analytic.dt,
        row_weights=grid.weights_wavelet(),
        meta=meta,
    )


def wavelet_transform(
    f_analytic: ComplexSignal, grid: ScaleGrid, w: AnalyticWavelet
) -> TimeFrequencyMatrix:
    """Plain analytic-wavelet transform (the unsqueezed case).

    Shares the squeezed code path with a unit profile, so the two agree
    cell-by-cell, bit for bit, when sigma is 1 everywhere.
    """
    out = transform_freq_focused(f_analytic, unit_freq_profile(grid), grid, w)
    out.meta["kind"] = "wavelet"
    return out


def focused_atom_spectrum(
    t: float, u: float, sigma_val: float, grid: ScaleGrid, w: AnalyticWavelet
) -> Spectrum:
    """Squeezed atom profile sampled on the grid's DFT frequency lattice.

    The atom is psi_hat(beta_u(xi)) e^{-2 i pi xi t} / sqrt(gamma(u)); its
    squared L2 norm is norm_sq(psi) / sigma.  If the (theoretical) squeezed
    support pokes past the lattice band a truncation note lands in meta.
    """
    if sigma_val < 1.0:
        raise ValueError("squeezing factor must be >= 1")
    n = grid.n_samples
    freq_step = grid.sample_rate / n
    k = np.arange(n)
    xi = np.where(k <= n // 2, k, k - n) * freq_step
    g = float(grid.gamma.eval(u))
    args = squeeze(xi, u, sigma_val, grid, w)
    bins = w.fourier_profile(args) * np.exp(-2j * np.pi * xi * t) / np.sqrt(g)
    lo, hi = w.support
    # beta_u is increasing in xi, so the support endpoints map back directly.
    edge_hi = (g / sigma_val) * (hi + freq_shift(sigma_val, w))
    meta = {"center": g * w.xi0, "sigma": float(sigma_val)}
    meta["truncated"] = bool(edge_hi >= 0.5 * grid.sample_rate)
    return Spectrum(bins, freq_step, start_time=0.0, meta=meta)


def _sigma_of_u(profile, grid: ScaleGrid):
    """Accept either a profile object or a bare callable u -> sigma(u)."""
    if callable(profile):
        return profile
    return lambda u: float(profile.sigma_at_u(u, grid))


def kernel_freq(
    profile,
    grid: ScaleGrid,
    w: AnalyticWavelet,
    xi_grid,
    form: str = "scale",
) -> np.ndarray:
    """Energy-control kernel K_sigma by adaptive quadrature.

    Two equivalent expressions are available (they differ by the change of
    variable y -> xi / y, and in particular evaluate the squeezing profile
    at different places):

    - "scale":    K(xi) = int |psi_hat(beta_{gamma^-1(y)}(xi))|^2 dy / y
    - "argument": K(xi) = int |psi_hat(xi0 + s (y - xi0))|^2 dy / y with
                  s = sigma(gamma^-1(xi / y))

    The integrand is compactly supported for every xi because the wavelet
    profile is, which gives exact integration limits: (xi/hi, xi/lo) for the
    scale form, (lo, hi) for the argument form.
    """
    sigma_fn = _sigma_of_u(profile, grid)
    lo, hi = w.support
    xi0 = w.xi0
    invert = grid.gamma.invert
    # A profile interpolated from node values has kinks at the nodes.  Their
    # preimages are handed to the integrator as breakpoints, but only where
    # the wavelet support is actually hit: the integrator must evaluate every
    # breakpoint subinterval, so kinks in the zero region just burn time.
    g_nodes = np.asarray(grid.centers(), dtype=np.float64)
    s_nodes = np.array([sigma_fn(float(u)) for u in grid.u_values])

    def active_nodes(beta_at_nodes):
        mask = (beta_at_nodes > lo) & (beta_at_nodes < hi)
        mask[:-1] |= mask[1:]
        mask[1:] |= mask[:-1]
        return mask

    def integrand_scale(y, xi):
        s = sigma_fn(invert(y))
        val = w.fourier_profile((s / y) * xi - (s - 1.0) * xi0)
        return float(np.abs(val) ** 2) / y

    def integrand_arg(y, xi):
        s = sigma_fn(invert(xi / y))
        val = w.fourier_profile(xi0 + s * (y - xi0))
        return float(np.abs(val) ** 2) / y

    out = np.empty(len(xi_grid))
    for i, xi in enumerate(np.asarray(xi_grid, dtype=np.float64)):
        if xi <= 0:
            raise ValueError("kernel is defined for positive frequencies only")
        if form == "scale":
            y_lo, y_hi = xi / hi, xi / lo
            keep = active_nodes((s_nodes / g_nodes) * xi - (s_nodes - 1.0) * xi0)
            pts = g_nodes[keep & (g_nodes > y_lo) & (g_nodes < y_hi)]
            val, _ = quad(
                integrand_scale, y_lo, y_hi, args=(xi,), limit=400,
                points=pts, epsabs=1e-10, epsrel=1e-9,
            )
        elif form == "argument":
            cand = xi / g_nodes
            keep = active_nodes(xi0 + s_nodes * (cand - xi0))
            pts = cand[keep & (cand > lo) & (cand < hi)]
            val, _ = quad(
                integrand_arg, lo, hi, args=(xi,), limit=400,
                points=pts, epsabs=1e-10, epsrel=1e-9,
            )
        else:
            raise ValueError("form must be 'scale' or 'argument'")
        out[i] = val
    return out


def upper_bound_C(profile, grid: ScaleGrid, w: AnalyticWavelet) -> float:
    """Upper energy bound c_psi + A_psi * int (sigma(gamma^-1(y)) - 1) dy/y.

    In the u variable the integral is int (sigma(u) - 1) gamma'(u)/gamma(u) du
    over the grid band (the profile is 1 outside).  Accepts a profile object
    or a callable u -> sigma(u).
    """
    sigma_fn = _sigma_of_u(profile, grid)
    gamma = grid.gamma

    def integrand(u):
        return (sigma_fn(u) - 1.0) * gamma.deriv(u) / gamma.eval(u)

    u = grid.u_values
    if not callable(profile):
        # Only the rows where sigma > 1 (padded by one node on each side,
        # where the interpolant ramps back down to 1) contribute.
        active = np.flatnonzero(profile.sigma > 1.0)
        if active.size == 0:
            return w.c_psi
        u_lo = float(u[max(active[0] - 1, 0)])
        u_hi = float(u[min(active[-1] + 1, u.size - 1)])
    else:
        u_lo = float(u[0])
        u_hi = float(u[-1])
    nodes = u[(u > u_lo) & (u < u_hi)]
    val, _ = quad(
        integrand, u_lo, u_hi, limit=50 + 4 * grid.n_rows,
        points=nodes, epsabs=1e-10, epsrel=1e-9,
    )
    return w.c_psi + w.a_psi * val


def lower_bound_d(w: AnalyticWavelet) -> float:
    """Squeeze-independent energy floor peak^2 / 2 * ln(b / a).

    (a, b) is the stored half-power interval of the wavelet profile.  See
    check_freq_bounds for the range of squeezing strengths over which this
    floor is actually valid.
    """
    a, b = w.halfpower
    return 0.5 * w.peak_value**2 * math.log(b / a)


def check_freq_bounds(
    f_analytic: ComplexSignal,
    profile: FreqFocusProfile,
    grid: ScaleGrid,
    w: AnalyticWavelet,
    slack: float = 1e-2,
) -> FreqBoundReport:
    """Verify d_psi ||f||^2 <= weighted transform energy <= C_sigma ||f||^2.

    The floor d_psi comes with a caveat: its textbook derivation silently
    assumes the squeezed half-power band keeps a log-measure ln(b/a), which
    fails for strong squeezing (for the shipped bump wavelet the floor is
    violated by constant profiles with sigma around 2.2 and above).  Callers
    who want a certified sandwich should keep sigma_max at 2 or below; the
    check itself just reports what it measures.
    """
    warnings = []
    edge_hi = grid.centers()[-1] * w.support[1]
    if edge_hi >= 0.5 * grid.sample_rate:
        warnings.append(
            f"atom band reaches {edge_hi:.1f} Hz past Nyquist; rows are truncated"
        )
    mat = transform_freq_focused(f_analytic, profile, grid, w, allow_truncated=True)
    measured = weighted_energy(mat)
    e_sig = signal_energy(f_analytic)
    d = lower_bound_d(w)
    big_c = upper_bound_C(profile, grid, w)
    lower_ok = d * e_sig * (1.0 - slack) <= measured
    upper_ok = measured <= big_c * e_sig * (1.0 + slack)
    return FreqBoundReport(
        d_psi=d,
        C_sigma=big_c,
        measured_energy=measured,
        signal_energy=e_sig,
        slack=slack,
        lower_ok=bool(lower_ok),
        upper_ok=bool(upper_ok),
        warnings=warnings,
    )
