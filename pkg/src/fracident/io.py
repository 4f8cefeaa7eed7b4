"""CSV and flat config-file helpers.

Signals are written as ``time,value`` rows with 17 significant digits, so a
write/read cycle restores every sample bit for bit.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

from .errors import ConfigError, InputError
from .signal import SampledSignal

FLOAT_FORMAT = ".17g"


def format_float(x) -> str:
    return format(float(x), FLOAT_FORMAT)


def signal_to_csv(signal: SampledSignal) -> str:
    buf = io.StringIO()
    buf.write("time,value\n")
    for t, v in zip(signal.times, signal.samples):
        buf.write(f"{format_float(t)},{format_float(v)}\n")
    return buf.getvalue()


def write_signal(signal: SampledSignal, path) -> None:
    Path(path).write_text(signal_to_csv(signal), encoding="utf-8", newline="\n")


def read_signal(path) -> SampledSignal:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or [c.strip() for c in rows[0]] != ["time", "value"]:
        raise InputError(f"{path}: expected header 'time,value'")
    body = [r for r in rows[1:] if r]
    if len(body) < 2:
        raise InputError(f"{path}: need at least two samples to infer the sample period")
    try:
        data = np.array([[float(a), float(b)] for a, b in body])
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None
    times, values = data[:, 0], data[:, 1]
    n = times.size
    period = (times[-1] - times[0]) / (n - 1)
    if period <= 0:
        raise InputError(f"{path}: time column must increase")
    grid = times[0] + np.arange(n) * period
    if np.max(np.abs(grid - times)) > 1e-6 * period + 1e-12 * np.max(np.abs(times)):
        raise InputError(f"{path}: samples are not uniformly spaced")
    return SampledSignal(values, period, times[0])


def write_table(path, header, rows) -> None:
    """Write a generic delimited table; floats use the signal precision."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_float(v) if isinstance(v, (float, np.floating)) else str(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_config(path) -> dict[str, str]:
    """Parse a flat ``key = value`` file. ``#`` starts a comment."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}", "expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"{path}:{lineno}", "empty key")
        values[key.replace("_", "-")] = value
    return values
