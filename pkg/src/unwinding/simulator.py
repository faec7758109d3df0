"""Seeded two-component adaptive harmonic model (AHM) signals.

Random walks are drawn from :func:`numpy.random.default_rng` (PCG64) seeded
with the realization seed; one generator feeds every draw of a realization,
in the fixed order ``A1, A2, if1, if2`` per attempt.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from .errors import GenerationError
from .spectral import RealSignal


@dataclass(frozen=True)
class AhmParams:
    a1: float
    a2: float
    alpha1: float
    alpha2: float
    xi1: float
    xi2: float
    beta1: float
    beta2: float
    fs: float = 512.0
    T0: float = 16.0
    min_if_gap: float = 0.5

    def __post_init__(self):
        if not (self.fs > 0 and self.T0 > 0):
            raise ValueError("fs and T0 must be positive")
        for name in ("a1", "a2", "alpha1", "alpha2", "beta1", "beta2"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    @property
    def n_samples(self) -> int:
        return int(math.floor(self.fs * self.T0))

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class AhmRealization:
    signal: RealSignal
    A1: np.ndarray
    A2: np.ndarray
    phi1: np.ndarray
    phi2: np.ndarray
    if1: np.ndarray
    if2: np.ndarray
    seed: int

    @property
    def amplitudes(self):
        return (self.A1, self.A2)

    @property
    def phases(self):
        return (self.phi1, self.phi2)

    @property
    def ifs(self):
        return (self.if1, self.if2)

    @property
    def times(self) -> np.ndarray:
        """Sample times ``l / fs`` for ``l = 1..n``."""
        return np.arange(1, len(self.signal) + 1) / self.signal.sample_rate_hz


_PRESETS = {
    "experiment1": dict(a1=2.0, a2=0.8, alpha1=1.0, alpha2=1.0, xi1=2 + math.pi, xi2=8.0, beta1=2.5, beta2=3.0),
    "experiment2": dict(a1=0.8, a2=2.0, alpha1=0.1, alpha2=0.1, xi1=2 + math.pi, xi2=26.0, beta1=2.5, beta2=3.0),
}


def preset(name: str, **overrides) -> AhmParams:
    """Parameters of the two simulated experiments (fs=512 Hz, T0=16 s)."""
    if name not in _PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(_PRESETS)}")
    return AhmParams(**{**_PRESETS[name], **overrides})


def preset_names() -> list[str]:
    return sorted(_PRESETS)


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def gaussian_random_walk(n: int, seed=None) -> np.ndarray:
    """Walk ``W`` with ``W[0] = 0`` and i.i.d. standard normal increments."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = _rng(seed)
    w = np.empty(n)
    w[0] = 0.0
    w[1:] = np.cumsum(rng.standard_normal(n - 1))
    return w


def _loess_row(offsets: np.ndarray) -> np.ndarray:
    """Weights giving the tricube-weighted quadratic fit evaluated at offset 0.

    The bandwidth reaches one sample past the farthest neighbor so every
    point in the span keeps a positive weight (span 3 stays solvable).
    """
    d = np.abs(offsets)
    dmax = d.max() + 1.0
    w = (1 - (d / dmax) ** 3) ** 3
    X = np.vander(offsets / dmax, 3, increasing=True)
    XtW = X.T * w
    return np.linalg.solve(XtW @ X, XtW)[0]


def loess_smooth(x, span: int) -> np.ndarray:
    """Local quadratic regression with tricube weights over ``span`` nearest points.

    Interior points use a centered window; near the ends the window is the
    first/last ``span`` samples, as in MATLAB's ``smooth(..., 'loess')``.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    span = int(span)
    if span < 3 or span > n:
        raise ValueError(f"span must be in [3, {n}]")
    half = span // 2
    out = np.empty(n)
    if span % 2:
        row = _loess_row(np.arange(-half, half + 1, dtype=float))
        out[half : n - half] = np.correlate(x, row, mode="valid")
        head = range(half)
        tail = range(n - half, n)
    else:
        head = range(n)
        tail = range(0)
    for i in head:
        lo = min(max(i - half, 0), n - span)
        out[i] = _loess_row(np.arange(lo, lo + span, dtype=float) - i) @ x[lo : lo + span]
    for i in tail:
        lo = n - span
        out[i] = _loess_row(np.arange(lo, lo + span, dtype=float) - i) @ x[lo : lo + span]
    return out


def odd_span(points: float) -> int:
    """Nearest odd integer to ``points`` (ties go up)."""
    return 2 * int(math.floor(points / 2)) + 1


def _normalized_abs(w: np.ndarray) -> np.ndarray:
    a = np.abs(w)
    m = a.max()
    return a / m if m > 0 else a


def synthesize(p: AhmParams, seed: int = 0, max_attempts: int = 1000) -> AhmRealization:
    """Draw one two-component AHM realization.

    Amplitudes are ``a_i (1 + alpha_i |W_s| / max|W_s|)`` and instantaneous
    frequencies ``xi_i + beta_i |W_s| / max|W_s|`` where ``W_s`` is a loess
    smoothed random walk (span ``2.2 fs`` for the first component, ``2 fs``
    for the second) and every process uses its own walk.  All four walks are
    redrawn until ``min(if2 - if1) > min_if_gap``.  Phases (in cycles) are
    the running sums ``phi(l) = sum_{j<=l} if(j) / fs``.
    """
    n = p.n_samples
    if n < 3:
        raise ValueError("need at least 3 samples")
    rng = _rng(seed)
    span1 = min(odd_span(2.2 * p.fs), n if n % 2 else n - 1)
    span2 = min(odd_span(2.0 * p.fs), n if n % 2 else n - 1)
    for _ in range(max_attempts):
        walks = [gaussian_random_walk(n, rng) for _ in range(4)]
        m_a1 = _normalized_abs(loess_smooth(walks[0], span1))
        m_a2 = _normalized_abs(loess_smooth(walks[1], span2))
        m_f1 = _normalized_abs(loess_smooth(walks[2], span1))
        m_f2 = _normalized_abs(loess_smooth(walks[3], span2))
        if1 = p.xi1 + p.beta1 * m_f1
        if2 = p.xi2 + p.beta2 * m_f2
        if np.min(if2 - if1) > p.min_if_gap:
            break
    else:
        raise GenerationError(f"no realization with IF gap > {p.min_if_gap} Hz in {max_attempts} attempts")
    A1 = p.a1 * (1 + p.alpha1 * m_a1)
    A2 = p.a2 * (1 + p.alpha2 * m_a2)
    phi1 = np.cumsum(if1) / p.fs
    phi2 = np.cumsum(if2) / p.fs
    f = A1 * np.cos(2 * np.pi * phi1) + A2 * np.cos(2 * np.pi * phi2)
    seed_val = int(seed) if not isinstance(seed, np.random.Generator) else -1
    return AhmRealization(RealSignal(f, p.fs), A1, A2, phi1, phi2, if1, if2, seed_val)
