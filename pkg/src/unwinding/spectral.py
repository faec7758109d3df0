"""Discrete Fourier machinery shared by the decomposition modules.

Convention: a :class:`CircleSignal` of length ``N`` holds samples of a
function on the grid ``t_k = 2*pi*k/N`` and its Fourier coefficients ``c_k``
satisfy ``f(t) = sum_k c_k exp(i*k*t)`` (so ``c = fft(f) / N``).  Signed
frequencies live in ``[-N/2, N/2)``.  For even ``N`` the bin ``-N/2`` is the
Nyquist bin, shared by ``+N/2`` and ``-N/2`` on the grid; projections onto
nonnegative frequencies keep it with weight one so that the real part of the
projection reproduces the input exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class RealSignal:
    """Uniformly sampled real sequence."""

    samples: np.ndarray
    sample_rate_hz: float

    def __post_init__(self):
        x = np.asarray(self.samples, dtype=float)
        if x.ndim != 1 or x.size == 0:
            raise ValueError("samples must be a nonempty 1-D array")
        if not np.all(np.isfinite(x)):
            raise ValueError("samples must be finite")
        if not (self.sample_rate_hz > 0):
            raise ValueError("sample_rate_hz must be positive")
        object.__setattr__(self, "samples", _frozen(x))
        object.__setattr__(self, "sample_rate_hz", float(self.sample_rate_hz))

    def __len__(self) -> int:
        return self.samples.size

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate_hz

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.samples.size) / self.sample_rate_hz


@dataclass(frozen=True)
class CircleSignal:
    """Complex samples on the uniform grid ``2*pi*k/N`` of the unit circle."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 1 or v.size < 2:
            raise ValueError("a circle signal needs at least 2 samples")
        if not np.all(np.isfinite(v)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "values", _frozen(v))

    def __len__(self) -> int:
        return self.values.size

    @property
    def grid(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.values.size) / self.values.size

    def spectrum(self) -> "Spectrum":
        return Spectrum(np.fft.fft(self.values) / self.values.size)


@dataclass(frozen=True)
class Spectrum:
    """Fourier coefficients ``c_k`` stored in FFT order."""

    coefficients: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _frozen(np.asarray(self.coefficients, dtype=complex)))

    @property
    def frequencies(self) -> np.ndarray:
        """Signed integer frequency of each stored coefficient."""
        return signed_frequencies(self.coefficients.size)

    def to_circle(self) -> CircleSignal:
        return CircleSignal(np.fft.ifft(self.coefficients) * self.coefficients.size)


def signed_frequencies(n: int) -> np.ndarray:
    """Integer frequencies in FFT order, Nyquist reported as ``-n/2``."""
    return np.fft.fftfreq(n, 1.0 / n).astype(int)


def hardy_weights(n: int) -> np.ndarray:
    """Multiplier 1 at k=0, 2 at k>0, 0 at k<0 (Nyquist kept with weight 1)."""
    k = signed_frequencies(n)
    w = np.where(k > 0, 2.0, 0.0)
    w[0] = 1.0
    if n % 2 == 0:
        w[n // 2] = 1.0
    return w


def analytic_projection(s: RealSignal) -> CircleSignal:
    """Analytic signal ``c_0 + 2 * sum_{k>0} c_k e^{ikt}`` of a real sequence.

    The real part of the result equals the input.
    """
    x = s.samples
    if x.size < 2:
        raise ValueError("analytic projection needs at least 2 samples")
    return CircleSignal(np.fft.ifft(np.fft.fft(x) * hardy_weights(x.size)))


def flip_periodize(s: RealSignal) -> RealSignal:
    """Even extension ``[f(1..N), f(N..1)]`` whose periodization has no jump."""
    x = s.samples
    return RealSignal(np.concatenate([x, x[::-1]]), s.sample_rate_hz)


def unflip(s):
    """First half of an even-length signal (left inverse of :func:`flip_periodize`)."""
    if isinstance(s, RealSignal):
        x = s.samples
    elif isinstance(s, CircleSignal):
        x = s.values
    else:
        raise TypeError("expected RealSignal or CircleSignal")
    if x.size % 2:
        raise ValueError("unflip needs an even-length signal")
    half = x[: x.size // 2]
    if isinstance(s, RealSignal):
        return RealSignal(half, s.sample_rate_hz)
    return CircleSignal(half)


def upsample(s: CircleSignal, factor: int) -> CircleSignal:
    """Band-limited interpolation by zero padding in frequency.

    Every Fourier coefficient of the input is kept at its signed frequency,
    so the original grid points are reproduced.
    """
    factor = int(factor)
    if factor < 1:
        raise ValueError("upsample factor must be a positive integer")
    if factor == 1:
        return s
    n = len(s)
    m = n * factor
    c = np.fft.fft(s.values) / n
    k = signed_frequencies(n)
    padded = np.zeros(m, dtype=complex)
    padded[k % m] = c
    return CircleSignal(np.fft.ifft(padded) * m)


def downsample(s: CircleSignal, factor: int) -> CircleSignal:
    """Keep every ``factor``-th grid sample."""
    factor = int(factor)
    if factor < 1 or len(s) % factor:
        raise ValueError(f"factor {factor} does not divide the grid size {len(s)}")
    return CircleSignal(s.values[::factor])


def upsample_real(s: RealSignal, factor: int) -> RealSignal:
    """Upsample a non-periodic real sequence through its even extension."""
    factor = int(factor)
    if factor == 1:
        return s
    circ = upsample(CircleSignal(flip_periodize(s).samples.astype(complex)), factor)
    return RealSignal(unflip(circ).values.real, s.sample_rate_hz * factor)


def _first_derivative(x: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order finite differences (one-sided 5-point stencils at the ends)."""
    d = np.empty_like(x)
    d[2:-2] = (x[:-4] - 8 * x[1:-3] + 8 * x[3:-1] - x[4:]) / (12 * h)
    d[0] = (-25 * x[0] + 48 * x[1] - 36 * x[2] + 16 * x[3] - 3 * x[4]) / (12 * h)
    d[1] = (-3 * x[0] - 10 * x[1] + 18 * x[2] - 6 * x[3] + x[4]) / (12 * h)
    d[-1] = (25 * x[-1] - 48 * x[-2] + 36 * x[-3] - 16 * x[-4] + 3 * x[-5]) / (12 * h)
    d[-2] = (3 * x[-1] + 10 * x[-2] - 18 * x[-3] + 6 * x[-4] - x[-5]) / (12 * h)
    return d


def cumulative_sum(s: RealSignal) -> RealSignal:
    """Discrete antiderivative, scaled by the sampling interval.

    Trapezoid running integral with the Euler-Maclaurin end correction
    ``-h**2/12 * (x'(t) - x'(0))``, anchored so that the first output is
    ``samples[0] / fs``.  A constant ``c`` maps to ``c/fs * [1, 2, 3, ...]``.
    The error is fourth order and smooth (no odd/even ripple as with
    Simpson), which keeps :func:`spectral_derivative` an inverse to ~1e-7 for
    content below ``fs/64``.
    """
    x = s.samples
    h = 1.0 / s.sample_rate_hz
    if x.size < 5:
        out = np.cumsum(x) * h
    else:
        d = _first_derivative(x, h)
        out = x[0] * h + cumulative_trapezoid(x, dx=h, initial=0.0) - h * h / 12 * (d - d[0])
    return RealSignal(out, s.sample_rate_hz)


def spectral_derivative(s: CircleSignal, duration_s: float) -> CircleSignal:
    """Multiply each coefficient ``c_k`` by ``i*k*2*pi/duration_s``.

    The Nyquist bin has no well defined derivative and is dropped.
    """
    n = len(s)
    k = signed_frequencies(n).astype(float)
    mult = 1j * k * (2 * np.pi / duration_s)
    if n % 2 == 0:
        mult[n // 2] = 0.0
    return CircleSignal(np.fft.ifft(np.fft.fft(s.values) * mult))


def derivative_nonperiodic(x: np.ndarray, sample_rate_hz: float) -> np.ndarray:
    """Derivative of a non-periodic sequence by fourth-order finite differences.

    A spectral derivative would see the jump at the wrap (or the kink of an
    even extension) and ring near both ends.  On an upsampled grid the
    stencil error is far below that ringing.
    """
    x = np.asarray(x)
    if x.size < 5:
        return np.gradient(x, 1.0 / sample_rate_hz) if x.size > 1 else np.zeros_like(x)
    return _first_derivative(x.astype(np.result_type(x, float)), 1.0 / sample_rate_hz)


def polynomial_detrend(s: RealSignal, degree: int):
    """Remove the least-squares polynomial trend of the given degree.

    The fit is done on the sample times normalized to ``[0, 1]``.

    Returns
    -------
    detrended : RealSignal
    coefficients : np.ndarray
        Polynomial coefficients in increasing power of normalized time, so
        ``np.polynomial.polynomial.polyval(u, coefficients)`` rebuilds the
        removed trend with ``u = arange(N) / (N - 1)``.
    """
    if degree not in (2, 3):
        raise ValueError("degree must be 2 or 3")
    x = s.samples
    n = x.size
    if n <= degree:
        raise ValueError(f"need more than {degree} samples to fit a degree-{degree} trend")
    u = normalized_time(n)
    vander = np.polynomial.polynomial.polyvander(u, degree)
    coef, *_ = np.linalg.lstsq(vander, x, rcond=None)
    trend = vander @ coef
    return RealSignal(x - trend, s.sample_rate_hz), coef


def normalized_time(n: int) -> np.ndarray:
    return np.arange(n) / (n - 1) if n > 1 else np.zeros(1)
