"""File formats: 16-bit mono WAV, signal and matrix CSV, and PGM rendering.

Everything here is byte-deterministic: identical inputs produce identical
files, so outputs can be diffed across runs.
"""

from __future__ import annotations

import wave

import numpy as np

from .signal import RealSignal, TimeFrequencyMatrix

__all__ = [
    "read_wav",
    "write_wav",
    "read_csv_signal",
    "write_csv_signal",
    "read_matrix_csv",
    "write_matrix_csv",
    "write_pgm",
]


def read_wav(path) -> RealSignal:
    """Decode a 16-bit PCM mono little-endian WAV file to floats in [-1, 1].

    Sample values are divided by 32768.  Stereo and non-16-bit encodings are
    rejected rather than silently mixed down.
    """
    with wave.open(str(path), "rb") as fh:
        if fh.getnchannels() != 1:
            raise ValueError("only mono WAV input is supported")
        if fh.getsampwidth() != 2:
            raise ValueError("only 16-bit PCM WAV input is supported")
        if fh.getcomptype() != "NONE":
            raise ValueError(f"unsupported WAV compression {fh.getcomptype()!r}")
        n = fh.getnframes()
        if n == 0:
            raise ValueError("WAV file contains no samples")
        rate = fh.getframerate()
        raw = fh.readframes(n)
    samples = np.frombuffer(raw, dtype="<i2").astype(np.float64) / 32768.0
    return RealSignal(samples, float(rate))


def write_wav(signal: RealSignal, path) -> None:
    """Write a real signal as 16-bit PCM mono WAV.

    Samples are quantized with round-to-nearest at 1/32768 resolution and
    clipped to the representable range, so a round trip of an in-range
    signal moves no sample by more than 1/32768.
    """
    q = np.round(np.asarray(signal.samples) * 32768.0)
    q = np.clip(q, -32768, 32767).astype("<i2")
    with wave.open(str(path), "wb") as fh:
        fh.setnchannels(1)
        fh.setsampwidth(2)
        fh.setframerate(int(round(signal.sample_rate)))
        fh.writeframes(q.tobytes())


def write_csv_signal(signal: RealSignal, path) -> None:
    """One sample per line, preceded by a `# sample_rate=<Hz>` header."""
    lines = [f"# sample_rate={signal.sample_rate!r}"]
    lines.extend(repr(float(x)) for x in signal.samples)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_csv_signal(path) -> RealSignal:
    """Inverse of write_csv_signal; a missing header means sample rate 1."""
    rate = 1.0
    samples = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("sample_rate="):
                    rate = float(body.split("=", 1)[1])
                continue
            try:
                samples.append(float(line))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: non-numeric sample {line!r}") from exc
    if not samples:
        raise ValueError(f"{path}: no samples found")
    return RealSignal(np.array(samples), rate)


def _header_floats(values) -> str:
    return ",".join(repr(float(v)) for v in values)


def write_matrix_csv(matrix: TimeFrequencyMatrix, path) -> None:
    """Transform matrix as CSV with `#` header lines.

    Header declares rows, cols, frame_step, t0, row_axis and row_weights;
    each data line holds one row's coefficients as re,im interleaved pairs,
    rows in ascending row_axis order.  repr() formatting makes the round
    trip exact.
    """
    rows, cols = matrix.values.shape
    lines = [
        f"# rows={rows}",
        f"# cols={cols}",
        f"# frame_step={matrix.frame_step!r}",
        f"# t0={float(matrix.time_axis[0])!r}",
        f"# row_axis={_header_floats(matrix.row_axis)}",
        f"# row_weights={_header_floats(matrix.row_weights)}",
    ]
    for j in range(rows):
        row = matrix.values[j]
        parts = []
        for v in row:
            parts.append(repr(float(v.real)))
            parts.append(repr(float(v.imag)))
        lines.append(",".join(parts))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_matrix_csv(path) -> TimeFrequencyMatrix:
    """Inverse of write_matrix_csv."""
    header = {}
    data_rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" not in body:
                    raise ValueError(f"{path}:{lineno}: malformed header line")
                key, val = body.split("=", 1)
                header[key.strip()] = val.strip()
                continue
            try:
                nums = [float(x) for x in line.split(",")]
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: non-numeric field") from exc
            data_rows.append(nums)
    for key in ("rows", "cols", "frame_step", "t0", "row_axis", "row_weights"):
        if key not in header:
            raise ValueError(f"{path}: missing header key {key!r}")
    rows = int(header["rows"])
    cols = int(header["cols"])
    frame_step = float(header["frame_step"])
    t0 = float(header["t0"])
    row_axis = np.array([float(x) for x in header["row_axis"].split(",")])
    row_weights = np.array([float(x) for x in header["row_weights"].split(",")])
    if len(data_rows) != rows:
        raise ValueError(f"{path}: expected {rows} data rows, found {len(data_rows)}")
    values = np.empty((rows, cols), dtype=np.complex128)
    for j, nums in enumerate(data_rows):
        if len(nums) != 2 * cols:
            raise ValueError(f"{path}: row {j} has {len(nums)} fields, expected {2 * cols}")
        arr = np.asarray(nums)
        values[j] = arr[0::2] + 1j * arr[1::2]
    time_axis = t0 + np.arange(cols) * frame_step
    return TimeFrequencyMatrix(
        values=values,
        row_axis=row_axis,
        time_axis=time_axis,
        frame_step=frame_step,
        row_weights=row_weights,
    )


def write_pgm(matrix: TimeFrequencyMatrix, path, db_range: float = 80.0) -> None:
    """Render log-magnitudes as a binary PGM (P5) image.

    Width is the frame count, height the row count, with the highest
    frequency or scale on the top image row.  Pixels map the top db_range
    decibels below the maximum onto 0..255; an all-zero matrix renders
    black.
    """
    mag = np.abs(matrix.values)
    rows, cols = mag.shape
    if mag.max() == 0.0:
        pixels = np.zeros((rows, cols), dtype=np.uint8)
    else:
        db = 20.0 * np.log10(mag + 1e-300)
        floor = db.max() - db_range
        scaled = np.clip((db - floor) / db_range, 0.0, 1.0)
        pixels = np.round(255.0 * scaled).astype(np.uint8)
    pixels = pixels[::-1]  # ascending row_axis -> top row is the highest
    with open(path, "wb") as fh:
        fh.write(f"P5\n{cols} {rows}\n255\n".encode("ascii"))
        fh.write(pixels.tobytes())
