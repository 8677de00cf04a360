"""Command-line front end: synthesis, focus profiles, transforms, checks.

Every subcommand is a thin wrapper over library calls, so the same code
paths run whether invoked from a shell or in-process via main(argv).

Configuration is a flat key=value namespace.  Values come from DEFAULTS,
then from an optional --config file (key = value lines, '#' comments),
then from individual --<key> flags, later sources winning.  Malformed
keys or values in that namespace exit 2 (usage); errors raised while the
work runs (unreadable files, invalid parameter combinations) exit 1.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .focus import entropy_freq_focus, parse_focus_kind, time_focus_profile
from .freqfocus import (
    cqt_transform,
    hardy_project,
    make_scale_grid,
    transform_freq_focused,
    unit_freq_profile,
    wavelet_transform,
)
from .io import (
    read_csv_signal,
    read_wav,
    write_csv_signal,
    write_matrix_csv,
    write_pgm,
    write_wav,
)
from .scalemaps import parse_scale_map
from .signal import RealSignal
from .synth import SynthSpec, synth_multisine_spikes_noise, synth_spike_train
from .timefocus import TimeFocusConfig, constant_profile, transform_time_focused
from .verify import format_report, run_suite
from .windows import cqt_reference_from_wavelet, parse_wavelet, parse_window

__all__ = ["DEFAULTS", "main"]

DEFAULTS = {
    # synthesis
    "kind": "multisine-spikes-noise",
    "duration": "4.0",
    "sample_rate": "4000",
    "sine_freqs": "50,120,135,400",
    "sine_amps": "1,1,1,1",
    "n_spikes": "50",
    "spike_amp_range": "1,5",
    "noise_std": "0.1",
    "spike_times": "",
    "spike_amps": "",
    "damping": "0.005",
    "seed": "0",
    # analysis
    "window": "gauss:10:3",
    "wavelet": "bump:1:0.05:0.2",
    "gamma": "identity",
    "focus": "moment:1",
    "sigma_max": "5",
    "sigma_ref": "1",
    "smooth": "0",
    "hop": "40",
    "fft_size": "256",
    "f_min": "20",
    "f_max": "800",
    "n_rows": "64",
    "db_range": "80",
}

KEY_HELP = {
    "kind": "synthesis kind: multisine-spikes-noise | spike-train",
    "duration": "synthesized length in seconds",
    "sample_rate": "synthesis sample rate in Hz",
    "sine_freqs": "comma list of sine frequencies in Hz",
    "sine_amps": "comma list of sine amplitudes",
    "n_spikes": "number of random spikes in the multisine",
    "spike_amp_range": "lo,hi of the uniform spike amplitude law",
    "noise_std": "white noise standard deviation",
    "spike_times": "comma list of impulse onsets for spike-train",
    "spike_amps": "comma list of impulse amplitudes (default all 1)",
    "damping": "impulse decay time constant in seconds",
    "seed": "random seed (synthesis; `verify` defaults to 42)",
    "window": "analysis window: gauss:<ms>:<shape> | hann:<ms>",
    "wavelet": "analytic wavelet: bump:<xi0>:<width>:<halfwidth>",
    "gamma": "frequency map of the time transform: identity | sinh:<scale>",
    "focus": "focus law: moment:<n> | entropy | renyi:<alpha>",
    "sigma_max": "focus ceiling, sigma values lie in [1, sigma_max]",
    "sigma_ref": "reference scale of the moment focus",
    "smooth": "moving-average half-width applied to raw focus curves",
    "hop": "frame hop in samples (time-side transforms)",
    "fft_size": "FFT length in bins (time-side transforms)",
    "f_min": "lowest scale-row center in Hz (freq-side transforms)",
    "f_max": "highest scale-row center in Hz (freq-side transforms)",
    "n_rows": "number of scale rows (freq-side transforms)",
    "db_range": "dynamic range of PGM renderings in dB",
}


class UsageError(Exception):
    """Bad command line or configuration text; maps to exit code 2."""


def parse_config_file(path) -> dict:
    """Read key = value lines; '#' starts a comment, blank lines skipped."""
    out = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in text.split("=", 1))
        if key not in DEFAULTS:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        out[key] = value
    return out


def merge_config(args) -> tuple[dict, set]:
    """DEFAULTS <- config file <- --<key> flags; returns (merged, explicit)."""
    merged = dict(DEFAULTS)
    explicit = set()
    if getattr(args, "config", None):
        from_file = parse_config_file(args.config)
        merged.update(from_file)
        explicit.update(from_file)
    for key in DEFAULTS:
        value = getattr(args, f"cfg_{key}", None)
        if value is not None:
            merged[key] = value
            explicit.add(key)
    return merged, explicit


def _float_key(cfg: dict, key: str) -> float:
    try:
        return float(cfg[key])
    except ValueError as exc:
        raise UsageError(f"config key {key} must be a number, got {cfg[key]!r}") from exc


def _int_key(cfg: dict, key: str) -> int:
    try:
        return int(cfg[key])
    except ValueError as exc:
        raise UsageError(f"config key {key} must be an integer, got {cfg[key]!r}") from exc


def _float_list(cfg: dict, key: str) -> tuple:
    text = cfg[key].strip()
    if not text:
        return ()
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise UsageError(f"config key {key} must be a comma list of numbers") from exc


def synth_spec_from_config(cfg: dict) -> SynthSpec:
    amp_range = _float_list(cfg, "spike_amp_range")
    if len(amp_range) != 2:
        raise UsageError("spike_amp_range must be lo,hi")
    return SynthSpec(
        kind=cfg["kind"],
        sine_freqs=_float_list(cfg, "sine_freqs"),
        sine_amps=_float_list(cfg, "sine_amps"),
        n_spikes=_int_key(cfg, "n_spikes"),
        spike_amp_range=amp_range,
        noise_std=_float_key(cfg, "noise_std"),
        duration=_float_key(cfg, "duration"),
        sample_rate=_float_key(cfg, "sample_rate"),
        seed=_int_key(cfg, "seed"),
        spike_times=_float_list(cfg, "spike_times"),
        spike_amps=_float_list(cfg, "spike_amps"),
        damping=_float_key(cfg, "damping"),
    )


def synthesize(cfg: dict) -> RealSignal:
    spec = synth_spec_from_config(cfg)
    if spec.kind == "spike-train":
        return synth_spike_train(spec)
    return synth_multisine_spikes_noise(spec)


def load_signal(path) -> RealSignal:
    if str(path).lower().endswith(".wav"):
        return read_wav(path)
    return read_csv_signal(path)


def save_signal(signal: RealSignal, path) -> None:
    if str(path).lower().endswith(".wav"):
        write_wav(signal, path)
    else:
        write_csv_signal(signal, path)


def _input_signal(args, cfg: dict) -> RealSignal:
    if getattr(args, "infile", None):
        return load_signal(args.infile)
    return synthesize(cfg)


def time_config_from_config(cfg: dict) -> TimeFocusConfig:
    return TimeFocusConfig(
        window=parse_window(cfg["window"]),
        gamma=parse_scale_map(cfg["gamma"]),
        hop=_int_key(cfg, "hop"),
        fft_size=_int_key(cfg, "fft_size"),
    )


def scale_grid_from_config(cfg: dict, signal: RealSignal) -> "ScaleGrid":
    return make_scale_grid(
        _float_key(cfg, "f_min"),
        _float_key(cfg, "f_max"),
        _int_key(cfg, "n_rows"),
        signal.sample_rate,
        signal.samples.size,
    )


def _focus_spec(cfg: dict):
    return parse_focus_kind(
        cfg["focus"],
        _float_key(cfg, "sigma_max"),
        sigma_ref=_float_key(cfg, "sigma_ref"),
        smooth=_int_key(cfg, "smooth"),
    )


def _cmd_synth(args, cfg: dict, explicit: set) -> int:
    save_signal(synthesize(cfg), args.out)
    return 0


def _cmd_focus(args, cfg: dict, explicit: set) -> int:
    signal = _input_signal(args, cfg)
    spec = _focus_spec(cfg)
    if args.domain == "time":
        profile = time_focus_profile(signal, spec, time_config_from_config(cfg))
        rate = 1.0 / profile.frame_step
    else:
        grid = scale_grid_from_config(cfg, signal)
        profile = entropy_freq_focus(signal, spec, grid, parse_wavelet(cfg["wavelet"]))
        rate = 1.0 / float(grid.u_values[1] - grid.u_values[0])
    write_csv_signal(RealSignal(profile.sigma, rate), args.out)
    return 0


def _cmd_analyze(args, cfg: dict, explicit: set) -> int:
    if args.out is None and args.pgm is None:
        raise UsageError("analyze needs --out and/or --pgm")
    if args.focused and args.mode not in ("time", "freq"):
        raise UsageError("--focused applies to modes time and freq only")
    signal = _input_signal(args, cfg)

    if args.mode in ("time", "stft"):
        tcfg = time_config_from_config(cfg)
        if args.mode == "time" and args.focused:
            profile = time_focus_profile(signal, _focus_spec(cfg), tcfg)
        else:
            profile = constant_profile(tcfg, signal, 1.0)
        matrix = transform_time_focused(signal, profile, tcfg)
    else:
        grid = scale_grid_from_config(cfg, signal)
        wavelet = parse_wavelet(cfg["wavelet"])
        if args.mode == "cqt":
            matrix = cqt_transform(signal, grid, cqt_reference_from_wavelet(wavelet))
        else:
            analytic = signal if np.iscomplexobj(signal.samples) else hardy_project(signal)
            if args.mode == "freq" and args.focused:
                profile = entropy_freq_focus(signal, _focus_spec(cfg), grid, wavelet)
                matrix = transform_freq_focused(analytic, profile, grid, wavelet)
            elif args.mode == "freq":
                matrix = transform_freq_focused(analytic, unit_freq_profile(grid), grid, wavelet)
            else:
                matrix = wavelet_transform(analytic, grid, wavelet)

    if args.out is not None:
        write_matrix_csv(matrix, args.out)
    if args.pgm is not None:
        write_pgm(matrix, args.pgm, db_range=_float_key(cfg, "db_range"))
    return 0


def _cmd_verify(args, cfg: dict, explicit: set) -> int:
    seed = _int_key(cfg, "seed") if "seed" in explicit else 42
    reports = run_suite(seed=seed)
    text = format_report(reports)
    print(text)
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0 if all(r.passed for r in reports) else 1


def _add_config_flags(sub) -> None:
    group = sub.add_argument_group("config overrides")
    group.add_argument("--config", metavar="PATH", help="key = value config file")
    for key in DEFAULTS:
        group.add_argument(
            f"--{key}",
            dest=f"cfg_{key}",
            metavar="V",
            help=f"{KEY_HELP[key]} (default {DEFAULTS[key] or 'empty'})",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="focuslab",
        description="Adaptive time-frequency transforms with signal-dependent focus.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p_synth = sub.add_parser("synth", help="emit a synthetic test signal (WAV or CSV)")
    p_synth.add_argument("--out", required=True, metavar="PATH", help=".wav or signal CSV")
    p_synth.set_defaults(func=_cmd_synth)

    p_focus = sub.add_parser("focus", help="emit a focus profile as CSV")
    p_focus.add_argument("--in", dest="infile", metavar="PATH", help="input signal (.wav or CSV); synthesized when omitted")
    p_focus.add_argument("--domain", choices=("time", "freq"), default="time", help="which transform the profile drives")
    p_focus.add_argument("--out", required=True, metavar="PATH", help="profile CSV")
    p_focus.set_defaults(func=_cmd_focus)

    p_an = sub.add_parser("analyze", help="run a transform, emit matrix CSV / PGM image")
    p_an.add_argument("--mode", choices=("time", "freq", "cqt", "wavelet", "stft"), required=True)
    p_an.add_argument("--focused", action="store_true", help="drive sigma from the focus law instead of sigma = 1")
    p_an.add_argument("--in", dest="infile", metavar="PATH", help="input signal (.wav or CSV); synthesized when omitted")
    p_an.add_argument("--out", metavar="PATH", help="matrix CSV")
    p_an.add_argument("--pgm", metavar="PATH", help="log-magnitude PGM rendering")
    p_an.set_defaults(func=_cmd_analyze)

    p_ver = sub.add_parser("verify", help="run the certification suite, exit 0 iff all checks pass")
    p_ver.add_argument("--out", metavar="PATH", help="also write the report here")
    p_ver.set_defaults(func=_cmd_verify)

    for each in (p_synth, p_focus, p_an, p_ver):
        _add_config_flags(each)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        cfg, explicit = merge_config(args)
        return args.func(args, cfg, explicit)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
