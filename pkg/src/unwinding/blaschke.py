"""Blaschke factorization, Blaschke products and disk diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CurveThroughOriginError, DegenerateSignalError
from .spectral import CircleSignal, _frozen, hardy_weights, signed_frequencies


@dataclass(frozen=True)
class BlaschkeFactorization:
    """Boundary values of the inner factor ``B`` and outer factor ``G``."""

    inner: CircleSignal
    outer: CircleSignal


@dataclass(frozen=True)
class RootSet:
    """Zeros of a finite Blaschke product: ``m`` at the origin plus ``roots``."""

    zero_multiplicity: int = 0
    roots: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if int(self.zero_multiplicity) != self.zero_multiplicity or self.zero_multiplicity < 0:
            raise ValueError("zero_multiplicity must be a nonnegative integer")
        roots = tuple(complex(a) for a in np.atleast_1d(np.asarray(self.roots, dtype=complex)))
        if any(abs(a) >= 1 for a in roots):
            raise ValueError("every root must lie strictly inside the unit disk")
        object.__setattr__(self, "zero_multiplicity", int(self.zero_multiplicity))
        object.__setattr__(self, "roots", roots)

    @property
    def degree(self) -> int:
        return self.zero_multiplicity + len(self.roots)


@dataclass(frozen=True)
class DiskField:
    """Values of a holomorphic function on a polar grid of the unit disk.

    ``values[i, j]`` is the value at radius ``radii[i]`` and angle ``angles[j]``.
    """

    radii: np.ndarray
    angles: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        for name in ("radii", "angles", "values"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))


def default_epsilon(f: CircleSignal) -> float:
    return 1e-6 * float(np.max(np.abs(f.values)))


def factorize(f: CircleSignal, epsilon: float | None = None) -> BlaschkeFactorization:
    """Split boundary values ``F`` into inner and outer parts, ``F = B * G``.

    ``G = exp(P(ln(|F| + eps)))`` where ``P`` keeps the mean, doubles positive
    frequencies and drops negative ones (the Herglotz multiplier), so that
    ``|G| = |F| + eps`` on the circle.  ``B = F / G`` entrywise.

    Parameters
    ----------
    f : CircleSignal
        Boundary samples of a holomorphic function.
    epsilon : float, optional
        Regularizer for ``ln`` near zeros of ``|F|``; defaults to
        ``1e-6 * max|F|``.
    """
    mag = np.abs(f.values)
    peak = float(mag.max())
    if peak == 0.0:
        raise DegenerateSignalError("cannot factorize an identically zero signal")
    if epsilon is None:
        epsilon = 1e-6 * peak
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    log_mag = np.log(mag + epsilon)
    outer = np.exp(np.fft.ifft(np.fft.fft(log_mag) * hardy_weights(mag.size)))
    return BlaschkeFactorization(CircleSignal(f.values / outer), CircleSignal(outer))


def _unit_circle(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


def eval_blaschke_product(r: RootSet, n: int) -> CircleSignal:
    """``B(e^{it}) = e^{imt} prod_k (e^{it} - a_k) / (1 - conj(a_k) e^{it})`` on ``n`` grid points."""
    z = _unit_circle(n)
    b = z ** r.zero_multiplicity
    for a in r.roots:
        b = b * (z - a) / (1 - np.conj(a) * z)
    return CircleSignal(b)


def blaschke_if(r: RootSet, n: int) -> np.ndarray:
    """Phase derivative ``m + sum_k (1 - |a_k|^2) / |e^{it} - a_k|^2`` (radians per radian)."""
    z = _unit_circle(n)
    phi = np.full(n, float(r.zero_multiplicity))
    for a in r.roots:
        phi += (1 - abs(a) ** 2) / np.abs(z - a) ** 2
    return phi


def blaschke_template(alpha: complex, power: int, n: int) -> CircleSignal:
    """``f_alpha(t)**power`` with ``f_alpha(t) = (e^{i2pi t} - alpha) / (1 - conj(alpha) e^{i2pi t})``, t in [0, 1)."""
    return eval_blaschke_product(RootSet(0, (alpha,) * power), n)


def unwrap_phase(values: np.ndarray) -> np.ndarray:
    """Unwrapped argument, scanning left to right and anchored at the first sample."""
    return np.unwrap(np.angle(values))


def winding_number(f: CircleSignal, floor: float = 1e-9, max_step: float = np.pi / 2) -> int:
    """Number of turns the closed curve ``f`` makes around the origin.

    Parameters
    ----------
    floor : float
        Relative magnitude (w.r.t. ``max|f|``) below which the curve is
        considered to pass through the origin.
    max_step : float
        Largest phase increment between consecutive samples that is trusted;
        coarser sampling makes the count ambiguous and is rejected.
    """
    v = f.values
    mag = np.abs(v)
    if mag.max() == 0 or mag.min() < floor * mag.max():
        raise CurveThroughOriginError("curve passes through (or too close to) the origin")
    closed = np.append(v, v[0])
    steps = np.angle(closed[1:] / closed[:-1])
    if np.max(np.abs(steps)) > max_step:
        raise CurveThroughOriginError("phase step too large between samples; refine the grid")
    return int(np.rint(steps.sum() / (2 * np.pi)))


def poisson_extend(f: CircleSignal, radii) -> DiskField:
    """Harmonic extension ``sum_k c_k r^{|k|} e^{ik theta}`` into the disk."""
    radii = np.asarray(radii, dtype=float)
    if radii.ndim != 1 or np.any(radii < 0) or np.any(radii >= 1):
        raise ValueError("radii must lie in [0, 1)")
    n = len(f)
    c = np.fft.fft(f.values) / n
    k = np.abs(signed_frequencies(n))
    vals = np.empty((radii.size, n), dtype=complex)
    for i, r in enumerate(radii):
        vals[i] = np.fft.ifft(c * r ** k) * n
    return DiskField(radii, f.grid, vals)


def hardy_projection(f: CircleSignal) -> CircleSignal:
    """Keep the nonnegative-frequency part ``sum_{k>=0} c_k e^{ikt}`` of a complex signal."""
    n = len(f)
    k = signed_frequencies(n)
    c = np.fft.fft(f.values)
    c[k < 0] = 0
    return CircleSignal(np.fft.ifft(c))


def root_region_map(field: DiskField, threshold: float) -> np.ndarray:
    """Boolean mask of grid cells where ``|value| < threshold``."""
    if threshold < 0:
        raise ValueError("threshold must be nonnegative")
    return np.abs(field.values) < threshold
