"""Windowed unwinding: taper, decompose each segment locally, stitch, repeat."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateSignalError
from .pdu import PduConfig, PduDecomposition, decompose_real, from_components
from .spectral import RealSignal, _frozen


@dataclass(frozen=True)
class WindowSpec:
    """Taper of half-support ``T`` seconds with ramps of ``B`` seconds."""

    T: float = 0.25
    B: float = 0.0625

    def __post_init__(self):
        if not (0 < self.B < self.T):
            raise ValueError(f"window needs 0 < B < T, got T={self.T}, B={self.B}")

    @property
    def shift(self) -> float:
        """Distance between consecutive window centers."""
        return 2 * self.T - self.B


@dataclass(frozen=True)
class Segment:
    start_s: float
    end_s: float
    start_index: int
    window_samples: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "window_samples", _frozen(self.window_samples))

    @property
    def stop_index(self) -> int:
        return self.start_index + self.window_samples.size


@dataclass(frozen=True)
class SegmentPlan:
    spec: WindowSpec
    duration_s: float
    sample_rate_hz: float
    segments: tuple

    @property
    def n_samples(self) -> int:
        return int(round(self.duration_s * self.sample_rate_hz))

    def window_sum(self) -> np.ndarray:
        total = np.zeros(self.n_samples)
        for seg in self.segments:
            total[seg.start_index : seg.stop_index] += seg.window_samples
        return total

    def to_dict(self) -> dict:
        return {
            "T": self.spec.T,
            "B": self.spec.B,
            "duration_s": self.duration_s,
            "sample_rate_hz": self.sample_rate_hz,
            "segments": [[seg.start_s, seg.end_s] for seg in self.segments],
        }


def taper_window(spec: WindowSpec, t):
    """Evaluate the taper: sin^2 rise on ``[-T, -T+B]``, flat top, cos^2 fall on ``(T-B, T]``."""
    T, B = spec.T, spec.B
    t = np.asarray(t, dtype=float)
    w = np.zeros_like(t)
    rise = (t >= -T) & (t <= -T + B)
    flat = (t > -T + B) & (t <= T - B)
    fall = (t > T - B) & (t <= T)
    w[rise] = np.sin(np.pi * (t[rise] + T) / (2 * B)) ** 2
    w[flat] = 1.0
    w[fall] = np.cos(np.pi * (t[fall] - T + B) / (2 * B)) ** 2
    return w if w.ndim else float(w)


def _first_index(t_s: float, fs: float) -> int:
    return int(math.ceil(t_s * fs - 1e-9))


def build_partition(spec: WindowSpec, duration_s: float, sample_rate_hz: float) -> SegmentPlan:
    """Shifted copies of the taper covering ``[0, duration_s)`` with unit sum.

    Window ``j`` is centered at ``T + j*(2T - B)``, with as many windows as
    fit a full support before the end (at least two).  The first window is
    held at 1 left of its center and the last one right of its center up to
    ``duration_s``, so the sum is exactly one up to both signal ends.  Segment ``j`` holds the samples
    ``t_k = k / fs`` with ``s_j <= t_k < e_j``.
    """
    if duration_s <= 2 * spec.T:
        raise ValueError("signal must be longer than one window (2T)")
    fs = float(sample_rate_hz)
    n_total = int(round(duration_s * fs))
    # the last window is clamped to 1 up to the end, so no window is allowed
    # to start within T of the end (that segment would be too short)
    n_windows = max(2, math.floor((duration_s - 2 * spec.T) / spec.shift + 1e-12) + 1)
    segments = []
    for j in range(n_windows):
        center = spec.T + j * spec.shift
        start = max(0.0, center - spec.T)
        end = duration_s if j == n_windows - 1 else center + spec.T
        i0 = _first_index(start, fs)
        i1 = min(_first_index(end, fs), n_total)
        t = np.arange(i0, i1) / fs
        w = taper_window(spec, t - center)
        if j == 0:
            w[t <= center] = 1.0
        if j == n_windows - 1:
            w[t >= center] = 1.0
        segments.append(Segment(start, end, i0, w))
    return SegmentPlan(spec, float(duration_s), fs, tuple(segments))


def _check_plan(s: RealSignal, plan: SegmentPlan):
    if abs(s.sample_rate_hz - plan.sample_rate_hz) > 1e-9 * plan.sample_rate_hz or len(s) != plan.n_samples:
        raise ValueError("segment plan does not match the signal duration / sample rate")


def segment_and_dilate(s: RealSignal, plan: SegmentPlan) -> list[RealSignal]:
    """Windowed pieces ``f * w_j`` on their supports.

    Dilation to ``[0, 1)`` is a relabelling of the sample grid: each piece is
    returned as its own sequence, sample ``k`` standing for ``t = k / len``.
    """
    _check_plan(s, plan)
    x = s.samples
    return [
        RealSignal(x[seg.start_index : seg.stop_index] * seg.window_samples, s.sample_rate_hz)
        for seg in plan.segments
    ]


def stitch(pieces, plan: SegmentPlan) -> np.ndarray:
    """Sum per-segment arrays back into global time."""
    out = np.zeros(plan.n_samples, dtype=complex)
    for seg, piece in zip(plan.segments, pieces):
        out[seg.start_index : seg.stop_index] += piece
    return out


def _first_component(piece: RealSignal, cfg: PduConfig) -> np.ndarray:
    if len(piece) < 2 or not np.any(piece.samples):
        return np.zeros(len(piece), dtype=complex)
    try:
        d = decompose_real(piece, replace(cfg, n_components=1))
    except DegenerateSignalError:
        return np.zeros(len(piece), dtype=complex)
    if d.n_components == 0:
        return np.zeros(len(piece), dtype=complex)
    return d.components[0]


def extract_component(
    s: RealSignal, plan: SegmentPlan, cfg: PduConfig = PduConfig(), taper: str = "post"
) -> np.ndarray:
    """First unwinding component of every windowed segment, stitched together.

    Segment trends (the low-pass part) are not included.  Returns the complex
    (analytic) component on the global grid.

    Parameters
    ----------
    taper : {"pre", "post"}
        ``"pre"`` decomposes ``f * w_j``.  ``"post"`` decomposes the raw
        segment and multiplies its component by ``w_j`` before stitching, so
        the low-pass AM never has to follow the window ramps.
    """
    if taper == "pre":
        pieces = segment_and_dilate(s, plan)
        return stitch([_first_component(p, cfg) for p in pieces], plan)
    if taper != "post":
        raise ValueError("taper must be 'pre' or 'post'")
    _check_plan(s, plan)
    comps = []
    for seg in plan.segments:
        raw = RealSignal(s.samples[seg.start_index : seg.stop_index], s.sample_rate_hz)
        comps.append(_first_component(raw, cfg) * seg.window_samples)
    return stitch(comps, plan)


def single_window_plan(spec: WindowSpec, s: RealSignal) -> SegmentPlan:
    """One flat window over the whole signal (windowing degenerates to plain PDU)."""
    seg = Segment(0.0, s.duration_s, 0, np.ones(len(s)))
    return SegmentPlan(spec, s.duration_s, s.sample_rate_hz, (seg,))


def _plan_for(window, s: RealSignal) -> SegmentPlan:
    if isinstance(window, SegmentPlan):
        return window
    if s.duration_s <= 2 * window.T:
        return single_window_plan(window, s)
    return build_partition(window, s.duration_s, s.sample_rate_hz)


def windowed_decompose(
    s: RealSignal, plan, cfg: PduConfig = PduConfig(), n: int | None = None, taper: str = "post"
) -> PduDecomposition:
    """Extract ``n`` components, each from the running residual ``f - Re(sum of previous)``.

    Parameters
    ----------
    plan : SegmentPlan, WindowSpec, or a sequence of them
        A sequence gives the window for each successive extraction (its last
        entry is reused if it is shorter than ``n``).  A window at least as
        long as the signal falls back to a single flat segment.
    n : int, optional
        Number of extractions; defaults to ``cfg.n_components``.
    taper : {"pre", "post"}
        See :func:`extract_component`.

    The trend of the result is zero; ``residual = f - sum(components)``.
    """
    n = cfg.n_components if n is None else n
    if n < 0:
        raise ValueError("n must be nonnegative")
    schedule = list(plan) if isinstance(plan, (list, tuple)) else [plan]
    if not schedule:
        raise ValueError("empty window schedule")
    running = s.samples.copy()
    components = []
    for k in range(n):
        p = _plan_for(schedule[min(k, len(schedule) - 1)], s)
        comp = extract_component(RealSignal(running, s.sample_rate_hz), p, cfg, taper)
        components.append(comp)
        running = running - comp.real
    return from_components(s.samples, components)
