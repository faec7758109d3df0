"""Paired Monte-Carlo comparison of decomposition methods on simulated signals."""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

import numpy as np

from .config import SIM_WINDOW, RunConfig
from .metrics import score, wilcoxon_signed_rank
from .pdu import PduDecomposition, cumsum_decompose, decompose_real
from .simulator import AhmParams, AhmRealization, synthesize
from .spectral import RealSignal
from .windowed import windowed_decompose

METHODS = ("pdu", "windowed", "pdu+cumsum", "windowed+cumsum")
INDEX_NAMES = ("d1_1", "d1_2", "d2_1", "d2_2", "d3")


def parse_method(name: str):
    """``"windowed+cumsum"`` -> ``("windowed", True)``."""
    if name not in METHODS:
        raise ValueError(f"unknown method {name!r}; choose from {METHODS}")
    base, _, extra = name.partition("+")
    return base, extra == "cumsum"


def decompose_signal(s: RealSignal, run: RunConfig) -> PduDecomposition:
    """Run the method variant described by ``run`` on one signal."""
    cfg = run.pdu_config()
    windows = run.windows()
    if run.method == "pdu":
        if run.use_cumsum:
            return cumsum_decompose(s, cfg, "plain", detrend_degree=run.detrend_degree)
        return decompose_real(s, cfg)
    if run.use_cumsum:
        return cumsum_decompose(s, cfg, "windowed", windows, run.detrend_degree, run.taper)
    return windowed_decompose(s, windows, cfg, cfg.n_components, run.taper)


def realization_hash(r: AhmRealization) -> str:
    h = hashlib.sha256()
    for a in (r.signal.samples, r.A1, r.A2, r.phi1, r.phi2):
        h.update(np.ascontiguousarray(a, dtype=np.float64).tobytes())
    h.update(repr(r.signal.sample_rate_hz).encode())
    return h.hexdigest()


def _run_for(run: RunConfig, method: str) -> RunConfig:
    base, cumsum = parse_method(method)
    window = run.window
    if base == "windowed" and window is None and not run.window_schedule:
        window = dict(SIM_WINDOW)
    return replace(run, method=base, use_cumsum=cumsum, window=window)


def _one_seed(args):
    params, seed, run, methods = args
    r = synthesize(params, seed)
    digest = realization_hash(r)
    rows = []
    for m in methods:
        d = decompose_signal(r.signal, _run_for(run, m))
        if realization_hash(r) != digest:
            raise RuntimeError("realization changed while being decomposed")
        met = score(r.signal.samples, d.components, r.amplitudes, r.phases)
        rows.append({"seed": seed, "method": m, "hash": digest, **dict(zip(INDEX_NAMES, met.as_row()))})
    return rows


def run_benchmark(
    params: AhmParams,
    n: int,
    methods=("pdu", "windowed"),
    seed0: int = 0,
    run: RunConfig | None = None,
    jobs: int = 1,
    progress=None,
) -> list[dict]:
    """Score every method on realizations ``seed0 .. seed0+n-1``.

    Every method sees the same realization of a given seed; each record
    carries the realization's SHA-256 so the pairing can be audited.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    for m in methods:
        parse_method(m)
    run = run or RunConfig()
    tasks = [(params, seed0 + i, run, tuple(methods)) for i in range(n)]
    records = []
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            for rows in ex.map(_one_seed, tasks):
                records.extend(rows)
                if progress:
                    progress(rows[0]["seed"])
    else:
        for t in tasks:
            rows = _one_seed(t)
            records.extend(rows)
            if progress:
                progress(rows[0]["seed"])
    return records


def _matrix(records, method):
    rows = sorted((r for r in records if r["method"] == method), key=lambda r: r["seed"])
    return [r["seed"] for r in rows], [r["hash"] for r in rows], np.array([[r[k] for k in INDEX_NAMES] for r in rows])


def compare(records, baseline: str, challenger: str, alpha: float = 0.05) -> dict:
    """Five paired signed-rank tests, Bonferroni ``m = 5``.

    ``tests`` is ``None`` when fewer than 5 pairs are available.
    """
    s0, h0, a = _matrix(records, baseline)
    s1, h1, b = _matrix(records, challenger)
    if s0 != s1 or h0 != h1:
        raise ValueError("methods were not run on identical realizations")
    out = {"baseline": baseline, "challenger": challenger, "n": len(s0), "indices": {}}
    if len(s0) == 0:
        return out
    for j, name in enumerate(INDEX_NAMES):
        entry = {
            "median_baseline": float(np.median(a[:, j])),
            "median_challenger": float(np.median(b[:, j])),
        }
        entry["challenger_lower"] = entry["median_challenger"] < entry["median_baseline"]
        if len(s0) >= 5:
            t = wilcoxon_signed_rank(b[:, j], a[:, j], bonferroni_m=len(INDEX_NAMES))
            entry.update(t.to_dict())
        else:
            entry["skipped"] = "fewer than 5 paired realizations"
        out["indices"][name] = entry
    out["challenger_wins_all"] = all(
        e["challenger_lower"] and e.get("significant", False) for e in out["indices"].values()
    )
    return out


def default_comparisons(methods) -> list[tuple[str, str]]:
    """Windowed against plain PDU, within each preprocessing variant."""
    pairs = []
    for suffix in ("", "+cumsum"):
        a, b = "pdu" + suffix, "windowed" + suffix
        if a in methods and b in methods:
            pairs.append((a, b))
    return pairs
