"""CSV / JSON readers and writers used by the command line."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .blaschke import DiskField
from .pdu import PduDecomposition
from .simulator import AhmParams, AhmRealization
from .spectral import RealSignal


class InputFormatError(ValueError):
    """A CSV input could not be parsed into a uniformly sampled signal."""


_FS_KEYS = ("fs", "sample_rate_hz", "sample_rate")


def _fmt(x: float) -> str:
    return repr(float(x))


def _is_number(tok: str) -> bool:
    try:
        float(tok)
    except ValueError:
        return False
    return True


def read_signal_csv(path, fs: float | None = None, spacing_rtol: float = 1e-6):
    """Read a signal from CSV.

    Accepted layouts (header row optional):

    * one value column; the rate comes from ``fs`` or a ``# fs=...`` comment
    * ``t,value`` with uniformly spaced ``t``
    * ``re,im`` or ``t,re,im`` for complex samples (named header required)
    * wider files with a named ``f`` column (``t`` used if present), as
      written by ``unwinding simulate``

    Returns ``(values, fs)`` with ``values`` real or complex.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    header_fs = None
    rows = []
    names = None
    for line in text.splitlines():
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            body = s[1:].strip()
            if "=" in body:
                key, _, val = body.partition("=")
                if key.strip() in _FS_KEYS:
                    try:
                        header_fs = float(val)
                    except ValueError:
                        raise InputFormatError(f"bad sample rate in header: {val!r}") from None
            continue
        toks = [t.strip() for t in s.split(",")]
        if names is None and not rows and not all(_is_number(t) for t in toks):
            names = [t.lower() for t in toks]
            continue
        if not all(_is_number(t) for t in toks):
            raise InputFormatError(f"non-numeric row: {line!r}")
        rows.append([float(t) for t in toks])
    if not rows:
        raise InputFormatError("no data rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputFormatError("ragged rows")
    data = np.array(rows)
    if not np.all(np.isfinite(data)):
        raise InputFormatError("non-finite values")
    names = names or []
    if names and len(names) != width:
        raise InputFormatError("header and data widths differ")

    t = None
    if "re" in names and ("im" in names or "imag" in names):
        values = data[:, names.index("re")] + 1j * data[:, names.index("im" if "im" in names else "imag")]
        if "t" in names:
            t = data[:, names.index("t")]
    elif width > 2 and "f" in names:
        # simulator output: signal column f, the rest is ground truth
        values = data[:, names.index("f")]
        if "t" in names:
            t = data[:, names.index("t")]
    elif width == 1:
        values = data[:, 0]
    elif width == 2:
        t, values = data[:, 0], data[:, 1]
    else:
        raise InputFormatError(f"expected 1 or 2 columns (or a re/im header), got {width}")

    rate = fs if fs is not None else header_fs
    if t is not None:
        if t.size < 2:
            raise InputFormatError("need at least two samples to infer the sample rate")
        dt = np.diff(t)
        step = float(np.mean(dt))
        if step <= 0 or np.max(np.abs(dt - step)) > spacing_rtol * abs(step):
            raise InputFormatError("time column is not uniformly spaced")
        if rate is None:
            rate = 1.0 / step
    if rate is None:
        raise InputFormatError("sample rate unknown; pass --fs or add a '# fs=...' header line")
    if not rate > 0:
        raise InputFormatError("sample rate must be positive")
    return values, float(rate)


def write_signal_csv(path, values, fs: float):
    """Write ``t,value`` (or ``t,re,im``) with a ``# fs=`` header line."""
    v = np.asarray(values)
    t = np.arange(v.size) / fs
    buf = io.StringIO()
    buf.write(f"# fs={_fmt(fs)}\n")
    w = csv.writer(buf, lineterminator="\n")
    if np.iscomplexobj(v):
        w.writerow(["t", "re", "im"])
        w.writerows([_fmt(a), _fmt(z.real), _fmt(z.imag)] for a, z in zip(t, v))
    else:
        w.writerow(["t", "value"])
        w.writerows([_fmt(a), _fmt(z)] for a, z in zip(t, v))
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def write_realization_csv(path, r: AhmRealization, params: AhmParams, preset_name: str | None = None):
    """Signal plus ground truth: ``t, f, A1, A2, phi1, phi2, if1, if2``.

    Comment lines carry the rate, seed and every model parameter.
    """
    meta = {"preset": preset_name, "seed": r.seed, **params.to_dict()}
    buf = io.StringIO()
    buf.write(f"# fs={_fmt(params.fs)}\n")
    for k, v in meta.items():
        if k != "fs":
            buf.write(f"# {k}={v if isinstance(v, (str, int)) or v is None else _fmt(v)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "f", "A1", "A2", "phi1", "phi2", "if1", "if2"])
    cols = [r.times, r.signal.samples, r.A1, r.A2, r.phi1, r.phi2, r.if1, r.if2]
    for row in zip(*cols):
        w.writerow([_fmt(x) for x in row])
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def read_realization_csv(path) -> dict:
    """Columns of a realization CSV as arrays, plus its ``meta`` header dict."""
    meta = {}
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    body = []
    for line in lines:
        if line.startswith("#"):
            k, _, v = line[1:].strip().partition("=")
            meta[k.strip()] = v
        else:
            body.append(line)
    names = body[0].split(",")
    data = np.array([[float(x) for x in row.split(",")] for row in body[1:]])
    out = {n: data[:, i] for i, n in enumerate(names)}
    out["meta"] = meta
    return out


def write_components_csv(path, d: PduDecomposition, fs: float):
    """One ``re``/``im`` column pair per component, then trend and residual."""
    n = len(d.residual)
    cols = {"t": np.arange(n) / fs}
    for i, c in enumerate(d.components, 1):
        cols[f"c{i}_re"] = np.real(c)
        cols[f"c{i}_im"] = np.imag(c)
    for name, arr in (("trend", d.trend), ("residual", d.residual)):
        cols[f"{name}_re"] = np.real(arr)
        cols[f"{name}_im"] = np.imag(arr)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(cols))
    for row in zip(*cols.values()):
        w.writerow([_fmt(x) for x in row])
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def write_json(path, obj):
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def write_disk_field_csv(path, field: DiskField, mask: np.ndarray):
    """Long format ``radius, angle, re, im, mask`` (mask as 0/1)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["radius", "angle", "re", "im", "mask"])
    for i, r in enumerate(field.radii):
        for j, a in enumerate(field.angles):
            v = field.values[i, j]
            w.writerow([_fmt(r), _fmt(a), _fmt(v.real), _fmt(v.imag), int(mask[i, j])])
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def write_mask_csv(path, field: DiskField, mask: np.ndarray):
    """Only the sub-threshold cells: ``radius, angle, abs``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["radius", "angle", "abs"])
    for i, j in zip(*np.nonzero(mask)):
        w.writerow([_fmt(field.radii[i]), _fmt(field.angles[j]), _fmt(abs(field.values[i, j]))])
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def read_mask_csv(path) -> np.ndarray:
    """``(k, 3)`` array of masked ``radius, angle, abs`` rows."""
    rows = Path(path).read_text(encoding="utf-8").splitlines()[1:]
    if not rows:
        return np.zeros((0, 3))
    return np.array([[float(x) for x in r.split(",")] for r in rows])


def to_real_signal(values, fs: float) -> RealSignal:
    if np.iscomplexobj(values):
        raise InputFormatError("expected a real-valued signal")
    return RealSignal(np.asarray(values, dtype=float), fs)
