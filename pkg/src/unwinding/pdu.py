"""Phase dynamics unwinding: iterated Blaschke factorization with a low-pass AM."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .blaschke import factorize
from .errors import Converged, DegenerateSignalError
from .spectral import (
    CircleSignal,
    RealSignal,
    analytic_projection,
    derivative_nonperiodic,
    flip_periodize,
    normalized_time,
    polynomial_detrend,
    signed_frequencies,
    upsample,
    upsample_real,
    cumulative_sum,
)

_CONVERGED_RTOL = 1e-12


@dataclass(frozen=True)
class PduConfig:
    """Parameters of an unwinding run.

    ``epsilon`` is relative: each factorization regularizes ``ln|F|`` with
    ``epsilon * max|F|``.  Remainders below ``10 * epsilon`` of the input norm
    are at that floor and are never unwound further.
    """

    lowpass_order: int = 5
    n_components: int = 2
    epsilon: float = 1e-6
    upsample_factor: int = 16
    residual_energy_stop: float = 1e-4

    def __post_init__(self):
        if self.lowpass_order < 0:
            raise ValueError("lowpass_order must be nonnegative")
        if self.n_components < 1:
            raise ValueError("n_components must be at least 1")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.upsample_factor < 1:
            raise ValueError("upsample_factor must be at least 1")
        if not 0 <= self.residual_energy_stop < 1:
            raise ValueError("residual_energy_stop must be in [0, 1)")


@dataclass(frozen=True)
class PduDecomposition:
    """``trend + sum(components) + residual`` reproduces the decomposed signal.

    Each component is ``amplitudes[k] * unimodular_parts[k]``.  All parts are
    complex arrays of the input length.
    """

    trend: np.ndarray
    components: tuple
    amplitudes: tuple
    unimodular_parts: tuple
    residual: np.ndarray

    @property
    def n_components(self) -> int:
        return len(self.components)

    def total(self) -> np.ndarray:
        return reconstruct(self, self.n_components) + self.residual

    def energies(self) -> list[float]:
        return [float(np.sum(np.abs(c) ** 2)) for c in self.components]

    def map(self, fn) -> "PduDecomposition":
        """Apply an array transform to every stored part."""
        return PduDecomposition(
            trend=fn(self.trend),
            components=tuple(fn(c) for c in self.components),
            amplitudes=tuple(fn(a) for a in self.amplitudes),
            unimodular_parts=tuple(fn(u) for u in self.unimodular_parts),
            residual=fn(self.residual),
        )


def lowpass(f: CircleSignal, L: int) -> CircleSignal:
    """Keep Fourier coefficients ``0..L``; every other one (negative included) is zeroed."""
    n = len(f)
    if L < 0 or L >= n:
        raise ValueError(f"lowpass order must be in [0, {n})")
    k = signed_frequencies(n)
    c = np.fft.fft(f.values)
    c[(k < 0) | (k > L)] = 0
    return CircleSignal(np.fft.ifft(c))


def unwind_step(g: CircleSignal, L: int, epsilon: float = 1e-6):
    """One unwinding step: ``g = am + inner * next_g`` with ``am = lowpass(g, L)``.

    ``epsilon`` is relative to ``max|g - am|``.

    Raises
    ------
    Converged
        If ``g`` has nothing beyond its low-pass part.
    """
    am = lowpass(g, L)
    d = g.values - am.values
    scale = max(np.linalg.norm(g.values), np.finfo(float).tiny)
    if np.linalg.norm(d) <= _CONVERGED_RTOL * scale:
        raise Converged
    diff = CircleSignal(d)
    fac = factorize(diff, epsilon * float(np.abs(d).max()))
    return am, fac.inner, fac.outer


def _unit(b: np.ndarray) -> np.ndarray:
    # regularized factorizations give |B| = |F| / (|F| + eps) < 1 near zeros
    mag = np.abs(b)
    return np.where(mag > 0, b / np.where(mag > 0, mag, 1.0), 1.0)


def decompose(f: CircleSignal, cfg: PduConfig = PduConfig()) -> PduDecomposition:
    """Unwind ``f`` into a low-pass trend, ordered components and a remainder.

    Component ``k`` is ``lowpass(G_k, L) * B_1 * ... * B_k`` where
    ``G_{k-1} - lowpass(G_{k-1}, L) = B_k G_k`` and ``G_0 = f``.  Iteration
    stops after ``cfg.n_components`` components, when the remainder carries
    less than ``cfg.residual_energy_stop`` of the input energy, or when the
    remainder is exactly low-pass.
    """
    v = f.values
    energy = float(np.sum(np.abs(v) ** 2))
    if energy == 0.0:
        raise DegenerateSignalError("cannot decompose an identically zero signal")
    L = cfg.lowpass_order
    components, amplitudes, units = [], [], []
    try:
        trend, inner, g = unwind_step(f, L, cfg.epsilon)
    except Converged:
        return PduDecomposition(f.values, (), (), (), np.zeros_like(v))
    product = _unit(inner.values)
    while True:
        am = lowpass(g, L).values
        rest = g.values - am
        components.append(am * product)
        amplitudes.append(am)
        units.append(product)
        residual = rest * product
        if len(components) >= cfg.n_components:
            break
        res_energy = np.sum(np.abs(residual) ** 2)
        if res_energy < max(cfg.residual_energy_stop, (10 * cfg.epsilon) ** 2) * energy:
            break
        if np.linalg.norm(rest) <= _CONVERGED_RTOL * np.linalg.norm(g.values):
            break
        fac = factorize(CircleSignal(rest), cfg.epsilon * float(np.abs(rest).max()))
        product = product * _unit(fac.inner.values)
        g = fac.outer
    # exact bookkeeping; the renormalized phases differ from B_k at O(epsilon)
    residual = v - trend.values - sum(components, np.zeros_like(v))
    return PduDecomposition(trend.values, tuple(components), tuple(amplitudes), tuple(units), residual)


def reconstruct(d: PduDecomposition, k: int) -> np.ndarray:
    """Partial sum ``trend + components[0] + ... + components[k-1]``."""
    if k < 0 or k > d.n_components:
        raise ValueError(f"k must be in [0, {d.n_components}]")
    out = np.array(d.trend, dtype=complex)
    for c in d.components[:k]:
        out = out + c
    return out


def decompose_real(s: RealSignal, cfg: PduConfig = PduConfig()) -> PduDecomposition:
    """Decompose a real sequence: even extension, analytic projection, upsampling.

    The returned parts are complex arrays of the input length; their sum has
    real part equal to the input.
    """
    n = len(s)
    if n < 2:
        raise ValueError("need at least 2 samples")
    circ = upsample(analytic_projection(flip_periodize(s)), cfg.upsample_factor)
    d = decompose(circ, cfg)
    step = cfg.upsample_factor
    return d.map(lambda a: np.asarray(a)[::step][:n].copy())


def _polar(c: np.ndarray):
    mag = np.abs(c)
    unit = np.ones_like(c)
    nz = mag > 0
    unit[nz] = c[nz] / mag[nz]
    return mag.astype(complex), unit


def from_components(signal: np.ndarray, components, trend=None) -> PduDecomposition:
    """Assemble a decomposition from components with polar amplitude/phase parts."""
    signal = np.asarray(signal, dtype=complex)
    trend = np.zeros_like(signal) if trend is None else np.asarray(trend, dtype=complex)
    comps = tuple(np.asarray(c, dtype=complex) for c in components)
    polar = [_polar(c) for c in comps]
    residual = signal - trend - sum(comps, np.zeros_like(signal))
    return PduDecomposition(trend, comps, tuple(p[0] for p in polar), tuple(p[1] for p in polar), residual)


def cumsum_decompose(
    s: RealSignal,
    cfg: PduConfig = PduConfig(),
    strategy: str = "plain",
    window=None,
    detrend_degree: int = 2,
    taper: str = "post",
) -> PduDecomposition:
    """Decompose the detrended antiderivative, then differentiate the parts.

    Integration lifts weak low-frequency modes above strong high-frequency
    ones before unwinding.  Steps: upsample, integrate, remove a polynomial
    trend, decompose (``"plain"`` or ``"windowed"``), differentiate every part,
    downsample.  The derivative of the removed polynomial is added back to the
    trend so that the real part of ``trend + components + residual``
    approximates the input.

    Parameters
    ----------
    window : WindowSpec or sequence of WindowSpec
        Required for ``strategy="windowed"``; a sequence gives one window per
        extraction.
    taper : {"pre", "post"}
        Passed to the windowed strategy.
    """
    from .windowed import windowed_decompose

    if strategy not in ("plain", "windowed"):
        raise ValueError("strategy must be 'plain' or 'windowed'")
    if strategy == "windowed" and window is None:
        raise ValueError("windowed strategy requires a window")
    n = len(s)
    up = upsample_real(s, cfg.upsample_factor)
    fs_up = up.sample_rate_hz
    detrended, coef = polynomial_detrend(cumulative_sum(up), detrend_degree)
    inner_cfg = replace(cfg, upsample_factor=1)
    if strategy == "plain":
        d = decompose_real(detrended, inner_cfg)
    else:
        d = windowed_decompose(detrended, window, inner_cfg, cfg.n_components, taper)
    m = len(up)
    poly_rate = np.polynomial.polynomial.polyval(
        normalized_time(m), np.polynomial.polynomial.polyder(coef)
    ) * (fs_up / max(m - 1, 1))

    def deriv(a):
        return derivative_nonperiodic(np.asarray(a, dtype=complex), fs_up)

    comps = [deriv(c) for c in d.components]
    trend = deriv(d.trend) + poly_rate
    residual = deriv(d.residual)
    step = cfg.upsample_factor
    comps = [c[::step][:n] for c in comps]
    trend = trend[::step][:n]
    residual = residual[::step][:n]
    polar = [_polar(c) for c in comps]
    return PduDecomposition(trend, tuple(comps), tuple(p[0] for p in polar), tuple(p[1] for p in polar), residual)
