"""Scores against AHM ground truth and the paired signed-rank test."""

from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np
from scipy.stats import norm, rankdata

from .errors import UndefinedMetricError


@dataclass(frozen=True)
class DecompMetrics:
    """``delta1``/``delta2`` per matched component, ``delta3`` for the reconstruction."""

    delta1: tuple
    delta2: tuple
    delta3: float

    def as_row(self) -> list[float]:
        """``[d1_1, d1_2, ..., d2_1, d2_2, ..., d3]``."""
        return [*self.delta1, *self.delta2, self.delta3]


@dataclass(frozen=True)
class PairedTestResult:
    statistic: float
    p_value: float
    n: int
    bonferroni_m: int = 1
    alpha: float = 0.05

    @property
    def significant(self) -> bool:
        return self.p_value < self.alpha / self.bonferroni_m

    def to_dict(self) -> dict:
        return {**asdict(self), "significant": self.significant}


def am_nrmse(component, truth_am) -> float:
    """``|| |component| - A ||_2 / ||A||_2``."""
    c = np.asarray(component)
    a = np.asarray(truth_am, dtype=float)
    if c.shape != a.shape:
        raise ValueError("component and truth must have equal lengths")
    na = np.linalg.norm(a)
    if na == 0:
        raise ValueError("truth amplitude has zero norm")
    return float(np.linalg.norm(np.abs(c) - a) / na)


def circular_sd(angles) -> float:
    """Angular deviation ``sqrt(2 (1 - R))`` with ``R`` the mean resultant length.

    Agrees with the ordinary standard deviation for tight spreads and is
    unaffected by wrap-around; a uniform spread gives ``sqrt(2)``.
    """
    a = np.asarray(angles, dtype=float)
    if a.size == 0:
        raise UndefinedMetricError("no angles")
    R = np.abs(np.mean(np.exp(1j * a)))
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - R))))


def phase_sd(component, truth_phase_cycles, rel_floor: float = 1e-12) -> float:
    """Spread of ``angle(component/|component| * exp(-i 2 pi phi))``.

    Samples with ``|component| < rel_floor * max|component|`` have no phase
    and are dropped.
    """
    c = np.asarray(component, dtype=complex)
    phi = np.asarray(truth_phase_cycles, dtype=float)
    if c.shape != phi.shape:
        raise ValueError("component and truth must have equal lengths")
    mag = np.abs(c)
    peak = mag.max() if mag.size else 0.0
    keep = mag >= rel_floor * peak if peak > 0 else np.zeros(mag.shape, bool)
    if not np.any(keep):
        raise UndefinedMetricError("component vanishes everywhere; phase undefined")
    p = c[keep] / mag[keep]
    return circular_sd(np.angle(p * np.exp(-2j * np.pi * phi[keep])))


def recon_nrmse(f, components) -> float:
    """``|| f - Re(sum components) ||_2 / ||f||_2``."""
    f = np.asarray(f, dtype=float)
    nf = np.linalg.norm(f)
    if nf == 0:
        raise ValueError("signal has zero norm")
    total = np.zeros(f.shape, dtype=complex)
    for c in components:
        c = np.asarray(c)
        if c.shape != f.shape:
            raise ValueError("component and signal must have equal lengths")
        total = total + c
    return float(np.linalg.norm(f - total.real) / nf)


def mean_frequency(component, sample_rate_hz: float) -> float:
    """Mean phase derivative of a complex component, in Hz (amplitude weighted)."""
    c = np.asarray(component, dtype=complex)
    if c.size < 2:
        return 0.0
    step = np.angle(c[1:] * np.conj(c[:-1]))
    w = np.abs(c[1:]) * np.abs(c[:-1])
    if w.sum() == 0:
        return 0.0
    return float(np.sum(step * w) / w.sum() * sample_rate_hz / (2 * np.pi))


def match_components(components, ground_truth_ifs, sample_rate_hz: float = 1.0) -> list[int]:
    """Assign each component the index of the truth whose mean IF is nearest.

    Assignment is greedy over the (component, truth) distance table, closest
    pairs first, ties to the lower index, and injective on the smaller side.
    Returns one truth index per component (``-1`` if left unassigned).
    """
    comp_f = [mean_frequency(c, sample_rate_hz) for c in components]
    truth_f = [float(np.mean(f)) for f in ground_truth_ifs]
    pairs = sorted(
        (abs(cf - tf), i, j) for i, cf in enumerate(comp_f) for j, tf in enumerate(truth_f)
    )
    out = [-1] * len(comp_f)
    used = set()
    for _, i, j in pairs:
        if out[i] == -1 and j not in used:
            out[i] = j
            used.add(j)
    return out


def score(f, components, amplitudes, phases, assignment=None) -> DecompMetrics:
    """All indices for components scored against truths.

    ``assignment[l]`` is the component index scored against truth ``l``;
    default is extraction order.  A missing component scores as zero.
    """
    f = np.asarray(f, dtype=float)
    comps = [np.asarray(c) for c in components]
    if assignment is None:
        assignment = list(range(len(amplitudes)))
    d1, d2 = [], []
    for l, (A, phi) in enumerate(zip(amplitudes, phases)):
        k = assignment[l]
        c = comps[k] if 0 <= k < len(comps) else np.zeros(f.shape, dtype=complex)
        d1.append(am_nrmse(c, A))
        try:
            d2.append(phase_sd(c, phi))
        except UndefinedMetricError:
            d2.append(float(np.sqrt(2.0)))
    used = [comps[k] for k in assignment if 0 <= k < len(comps)]
    return DecompMetrics(tuple(d1), tuple(d2), recon_nrmse(f, used))


def _signed_rank_exact_p(ranks2: np.ndarray, w2: int) -> float:
    """Two-sided exact p for the doubled statistic ``2*W+`` by DP over sign patterns."""
    total = int(ranks2.sum())
    dist = np.zeros(total + 1)
    dist[0] = 1.0
    for r in ranks2:
        r = int(r)
        shifted = np.zeros_like(dist)
        shifted[r:] = dist[: total + 1 - r]
        dist = dist + shifted
    dist /= dist.sum()
    lower = dist[: w2 + 1].sum()
    upper = dist[w2:].sum()
    return float(min(1.0, 2.0 * min(lower, upper)))


def wilcoxon_signed_rank(x, y, bonferroni_m: int = 1, exact_max_n: int = 25) -> PairedTestResult:
    """Two-sided Wilcoxon signed-rank test of paired samples.

    Zero differences are dropped and ties get midranks.  Up to
    ``exact_max_n`` nonzero pairs the null distribution is enumerated exactly;
    above it the normal approximation with tie and continuity corrections is
    used.  The statistic is ``W+``, the rank sum of positive differences.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d with equal lengths")
    if x.size < 5:
        raise ValueError("need at least 5 pairs")
    d = x - y
    d = d[d != 0]
    n = d.size
    if n == 0:
        return PairedTestResult(0.0, 1.0, 0, bonferroni_m)
    ranks = rankdata(np.abs(d))
    w_plus = float(ranks[d > 0].sum())
    if n <= exact_max_n:
        ranks2 = np.rint(2 * ranks).astype(int)
        p = _signed_rank_exact_p(ranks2, int(round(2 * w_plus)))
    else:
        mean = n * (n + 1) / 4.0
        _, counts = np.unique(ranks, return_counts=True)
        var = n * (n + 1) * (2 * n + 1) / 24.0 - np.sum(counts**3 - counts) / 48.0
        z = max(abs(w_plus - mean) - 0.5, 0.0) / np.sqrt(var)
        p = float(min(1.0, 2.0 * norm.sf(z)))
    return PairedTestResult(w_plus, p, n, bonferroni_m)
