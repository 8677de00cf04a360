"""Adaptive time-frequency analysis with signal-dependent focus.

Two adaptive transforms form the core: a time-focused short-time Fourier
transform whose window narrows where the focus profile is large, and a
frequency-focused wavelet transform whose atoms squeeze toward their
center frequency.  Around them: plain STFT / CQT / wavelet baselines,
focus-profile constructors (moment and entropy laws), kernel and bound
computations for both transforms, synthetic test signals, file formats,
and a numerical certification suite (`focuslab verify`).
"""

from .signal import (
    ComplexSignal,
    RealSignal,
    Spectrum,
    TimeFrequencyMatrix,
    dft_forward,
    dft_inverse,
    hardy_project,
    signal_energy,
    weighted_energy,
)
from .scalemaps import ScaleMap, make_exponential, make_identity, make_sinh, parse_scale_map
from .windows import (
    AnalyticWavelet,
    CqtReference,
    Window,
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
from .timefocus import (
    DegenerateWindowError,
    TimeBoundReport,
    TimeFocusConfig,
    TimeFocusProfile,
    check_time_bounds,
    constant_profile,
    frame_grid,
    inverse_kernel_profile,
    kernel_time,
    l1_kernel_identity,
    l2_kernel_identity,
    lower_bound_cf,
    step_profile,
    time_focused_atom,
    transform_time_focused,
    upper_bound_Cf,
)
from .freqfocus import (
    FreqBoundReport,
    FreqFocusProfile,
    InvalidGridError,
    ScaleGrid,
    check_freq_bounds,
    cqt_transform,
    focused_atom_spectrum,
    freq_shift,
    indicator_freq_profile,
    kernel_freq,
    lower_bound_d,
    make_scale_grid,
    squeeze,
    transform_freq_focused,
    unit_freq_profile,
    upper_bound_C,
    wavelet_transform,
)
from .focus import (
    FocusSpec,
    UndefinedEntropyError,
    affine_renormalize,
    entropy_freq_focus,
    moment_time_focus,
    parse_focus_kind,
    renyi_entropy_slice,
    shannon_entropy_slice,
    shannon_entropy_time_focus,
    time_focus_profile,
)
from .synth import SynthSpec, synth_multisine_spikes_noise, synth_spike_train
from .io import (
    read_csv_signal,
    read_matrix_csv,
    read_wav,
    write_csv_signal,
    write_matrix_csv,
    write_pgm,
    write_wav,
)
from .verify import (
    CheckReport,
    TOLERANCES,
    format_report,
    quadrature_inner_product,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "ComplexSignal",
    "RealSignal",
    "Spectrum",
    "TimeFrequencyMatrix",
    "dft_forward",
    "dft_inverse",
    "hardy_project",
    "signal_energy",
    "weighted_energy",
    "ScaleMap",
    "make_exponential",
    "make_identity",
    "make_sinh",
    "parse_scale_map",
    "AnalyticWavelet",
    "CqtReference",
    "Window",
    "admissibility_constant",
    "cqt_reference_from_wavelet",
    "derivative_bound",
    "frequency_localization",
    "halfpower_interval",
    "hann_window",
    "make_fourier_bump_wavelet",
    "parse_wavelet",
    "parse_window",
    "truncated_gaussian_window",
    "DegenerateWindowError",
    "TimeBoundReport",
    "TimeFocusConfig",
    "TimeFocusProfile",
    "check_time_bounds",
    "constant_profile",
    "frame_grid",
    "inverse_kernel_profile",
    "kernel_time",
    "l1_kernel_identity",
    "l2_kernel_identity",
    "lower_bound_cf",
    "step_profile",
    "time_focused_atom",
    "transform_time_focused",
    "upper_bound_Cf",
    "FreqBoundReport",
    "FreqFocusProfile",
    "InvalidGridError",
    "ScaleGrid",
    "check_freq_bounds",
    "cqt_transform",
    "focused_atom_spectrum",
    "freq_shift",
    "indicator_freq_profile",
    "kernel_freq",
    "lower_bound_d",
    "make_scale_grid",
    "squeeze",
    "transform_freq_focused",
    "unit_freq_profile",
    "upper_bound_C",
    "wavelet_transform",
    "FocusSpec",
    "UndefinedEntropyError",
    "affine_renormalize",
    "entropy_freq_focus",
    "moment_time_focus",
    "parse_focus_kind",
    "renyi_entropy_slice",
    "shannon_entropy_slice",
    "shannon_entropy_time_focus",
    "time_focus_profile",
    "SynthSpec",
    "synth_multisine_spikes_noise",
    "synth_spike_train",
    "read_csv_signal",
    "read_matrix_csv",
    "read_wav",
    "write_csv_signal",
    "write_matrix_csv",
    "write_pgm",
    "write_wav",
    "CheckReport",
    "TOLERANCES",
    "format_report",
    "quadrature_inner_product",
    "run_suite",
]
