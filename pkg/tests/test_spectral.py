import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from unwinding.spectral import (
    CircleSignal,
    RealSignal,
    Spectrum,
    analytic_projection,
    cumulative_sum,
    derivative_nonperiodic,
    downsample,
    flip_periodize,
    polynomial_detrend,
    spectral_derivative,
    unflip,
    upsample,
)

finite = st.floats(-1e3, 1e3, allow_nan=False)


def grid(n):
    return 2 * np.pi * np.arange(n) / n


# --- value types -----------------------------------------------------------

def test_real_signal_rejects_bad_input():
    with pytest.raises(ValueError):
        RealSignal(np.array([]), 1.0)
    with pytest.raises(ValueError):
        RealSignal(np.ones(3), 0.0)
    with pytest.raises(ValueError):
        RealSignal(np.array([1.0, np.nan]), 1.0)


def test_circle_signal_needs_two_points():
    with pytest.raises(ValueError):
        CircleSignal(np.ones(1))


def test_arrays_are_read_only():
    s = RealSignal(np.ones(4), 2.0)
    with pytest.raises(ValueError):
        s.samples[0] = 3.0


def test_spectrum_roundtrip(rng):
    z = CircleSignal(rng.standard_normal(64) + 1j * rng.standard_normal(64))
    back = z.spectrum().to_circle()
    assert np.linalg.norm(back.values - z.values) <= 1e-12 * np.linalg.norm(z.values)


def test_spectrum_frequencies_are_signed():
    k = Spectrum(np.zeros(8, complex)).frequencies
    assert k.min() == -4 and k.max() == 3


# --- analytic projection -----------------------------------------------------

def test_analytic_cos_is_exponential():
    t = grid(256)
    z = analytic_projection(RealSignal(np.cos(t), 1.0))
    np.testing.assert_allclose(z.values, np.exp(1j * t), atol=1e-12)


def test_analytic_constant_passes():
    z = analytic_projection(RealSignal(np.ones(16), 1.0))
    np.testing.assert_allclose(z.values, 1.0, atol=1e-14)


def test_analytic_two_tones():
    t = grid(256)
    z = analytic_projection(RealSignal(np.cos(t) + np.cos(2 * t), 1.0))
    assert np.max(np.abs(z.values - np.exp(1j * t) - np.exp(2j * t))) < 1e-10


@given(arrays(np.float64, st.integers(2, 200), elements=finite))
def test_analytic_real_part_and_no_negative_frequencies(x):
    z = analytic_projection(RealSignal(x, 1.0))
    scale = max(np.linalg.norm(x), 1e-300)
    assert np.linalg.norm(z.values.real - x) <= 1e-10 * scale + 1e-300
    sp = z.spectrum()
    neg = sp.frequencies < 0
    if x.size % 2 == 0:
        neg &= sp.frequencies != -x.size // 2  # Nyquist bin is its own mirror
    assert np.all(np.abs(sp.coefficients[neg]) <= 1e-12 * (np.abs(sp.coefficients).max() + 1e-300))


# --- flip / unflip -------------------------------------------------------------

def test_flip_example():
    np.testing.assert_array_equal(flip_periodize(RealSignal(np.array([1.0, 2, 3]), 1.0)).samples, [1, 2, 3, 3, 2, 1])


def test_flip_constant():
    out = flip_periodize(RealSignal(np.full(5, 2.5), 3.0))
    assert len(out) == 10 and np.all(out.samples == 2.5)


def test_unflip_example_and_odd_length():
    np.testing.assert_array_equal(unflip(RealSignal(np.array([1.0, 2, 3, 3, 2, 1]), 1.0)).samples, [1, 2, 3])
    with pytest.raises(ValueError):
        unflip(RealSignal(np.ones(5), 1.0))


@given(arrays(np.float64, st.integers(1, 100), elements=finite))
def test_flip_is_even_palindrome_and_unflip_inverts(x):
    s = RealSignal(x, 1.0)
    f = flip_periodize(s).samples
    assert f.size % 2 == 0
    np.testing.assert_array_equal(f, f[::-1])
    np.testing.assert_array_equal(unflip(flip_periodize(s)).samples, x)


# --- resampling ----------------------------------------------------------------

def test_upsample_exponential():
    z = upsample(CircleSignal(np.exp(1j * grid(64))), 4)
    assert len(z) == 256
    np.testing.assert_allclose(z.values, np.exp(1j * grid(256)), atol=1e-12)


def test_upsample_factor_one_and_zero(rng):
    z = CircleSignal(rng.standard_normal(10) + 0j)
    np.testing.assert_allclose(upsample(z, 1).values, z.values)
    with pytest.raises(ValueError):
        upsample(z, 0)


def test_downsample_examples():
    np.testing.assert_allclose(downsample(CircleSignal(np.full(12, 3.0 + 0j)), 3).values, 3.0)
    z = downsample(CircleSignal(np.exp(1j * grid(256))), 4)
    np.testing.assert_allclose(z.values, np.exp(1j * grid(64)), atol=1e-12)
    with pytest.raises(ValueError):
        downsample(CircleSignal(np.ones(256) + 0j), 3)


@given(arrays(np.complex128, st.integers(2, 64), elements=st.complex_numbers(max_magnitude=100, allow_nan=False, allow_infinity=False)))
def test_upsample_roundtrip_and_coefficients(v):
    z = CircleSignal(v)
    up = upsample(z, 16)
    scale = np.linalg.norm(v) + 1e-300
    assert np.linalg.norm(downsample(up, 16).values - v) <= 1e-10 * scale + 1e-300
    # every input coefficient survives at the same signed frequency
    a, b = z.spectrum(), up.spectrum()
    lookup = dict(zip(b.frequencies.tolist(), b.coefficients))
    for k, c in zip(a.frequencies, a.coefficients):
        assert abs(lookup[int(k)] - c) <= 1e-12 * (np.abs(a.coefficients).max() + 1e-300)


# --- cumulative sum / derivative -------------------------------------------------

def test_cumsum_zero_and_constant():
    assert np.all(cumulative_sum(RealSignal(np.zeros(9), 4.0)).samples == 0)
    np.testing.assert_allclose(cumulative_sum(RealSignal(np.ones(6), 1.0)).samples, [1, 2, 3, 4, 5, 6])


def test_cumsum_tone_matches_antiderivative():
    fs, xi = 512.0, 5.0
    t = np.arange(int(4 * fs)) / fs
    out = cumulative_sum(RealSignal(np.cos(2 * np.pi * xi * t), fs)).samples
    # anchored so that out[0] = x[0] / fs
    exact = np.sin(2 * np.pi * xi * t) / (2 * np.pi * xi) + 1 / fs
    assert np.linalg.norm(out - exact) / np.linalg.norm(exact) < 1e-3


def test_derivative_examples():
    assert np.allclose(spectral_derivative(CircleSignal(np.full(8, 2.0 + 0j)), 1.0).values, 0)
    t = grid(64)
    d = spectral_derivative(CircleSignal(np.exp(1j * t)), 2 * np.pi)
    np.testing.assert_allclose(d.values, 1j * np.exp(1j * t), atol=1e-12)


@given(st.integers(1, 16), st.integers(0, 2**31 - 1))
def test_derivative_inverts_cumsum(kmax, seed):
    # content up to fs/64
    rng = np.random.default_rng(seed)
    fs, n = 256.0, 1024
    t = np.arange(n) / fs
    dur = n / fs
    x = np.zeros(n)
    for k in range(1, kmax + 1):
        a, ph = rng.standard_normal(2)
        x += a * np.cos(2 * np.pi * k * t / dur + ph)
    back = spectral_derivative(CircleSignal(cumulative_sum(RealSignal(x, fs)).samples + 0j), dur).values
    assert np.linalg.norm(back.real - x) <= 1e-6 * np.linalg.norm(x)


# --- polynomial detrend ----------------------------------------------------------

def test_detrend_exact_quadratic_and_zero():
    u = np.linspace(0, 1, 50)
    r, coef = polynomial_detrend(RealSignal(3 - 2 * u + 5 * u**2, 1.0), 2)
    assert np.max(np.abs(r.samples)) < 1e-10
    np.testing.assert_allclose(coef, [3, -2, 5], atol=1e-10)
    r, coef = polynomial_detrend(RealSignal(np.zeros(10), 1.0), 3)
    assert np.all(r.samples == 0) and np.all(coef == 0)


def test_detrend_recovers_tone():
    n = 4096
    u = np.arange(n) / (n - 1)
    tone = np.cos(2 * np.pi * 40 * u) - np.mean(np.cos(2 * np.pi * 40 * u))
    r, _ = polynomial_detrend(RealSignal(1 + 4 * u - 3 * u**2 + tone, 100.0), 2)
    # oracle: the tone minus its own (small) quadratic component
    V = np.vander(u, 3, increasing=True)
    tone_perp = tone - V @ np.linalg.lstsq(V, tone, rcond=None)[0]
    assert np.linalg.norm(r.samples - tone_perp) / np.linalg.norm(tone_perp) < 1e-6


@given(st.sampled_from([2, 3]), st.integers(0, 2**31 - 1))
def test_detrend_residual_orthogonal(degree, seed):
    x = np.random.default_rng(seed).standard_normal(64)
    r, coef = polynomial_detrend(RealSignal(x, 1.0), degree)
    u = np.arange(64) / 63
    V = np.vander(u, degree + 1, increasing=True)
    assert np.max(np.abs(V.T @ r.samples)) < 1e-8
    np.testing.assert_allclose(r.samples + V @ coef, x, atol=1e-10)


def test_detrend_errors():
    with pytest.raises(ValueError):
        polynomial_detrend(RealSignal(np.ones(3), 1.0), 3)
    with pytest.raises(ValueError):
        polynomial_detrend(RealSignal(np.ones(10), 1.0), 4)


def test_nonperiodic_derivative_exact_on_quartics():
    fs = 50.0
    t = np.arange(40) / fs
    x = 1 - 2 * t + 3 * t**2 + 0.5j * t**4
    np.testing.assert_allclose(derivative_nonperiodic(x, fs), -2 + 6 * t + 2j * t**3, atol=1e-9)


def test_nonperiodic_derivative_no_end_ringing():
    fs = 1024.0
    t = np.arange(1000) / fs
    d = derivative_nonperiodic(np.sin(2 * np.pi * 3.3 * t), fs)
    assert np.max(np.abs(d - 2 * np.pi * 3.3 * np.cos(2 * np.pi * 3.3 * t))) < 1e-6
