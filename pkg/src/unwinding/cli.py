"""Command line: ``unwinding {decompose,simulate,benchmark,rootmap}``.

Exit codes: 0 success, 2 usage or configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

import numpy as np

from . import fileio
from .benchmark import INDEX_NAMES, METHODS, compare, default_comparisons, run_benchmark
from .blaschke import hardy_projection, poisson_extend, root_region_map
from .config import RunConfig, load_config
from .errors import CurveThroughOriginError, DegenerateSignalError, GenerationError
from .metrics import recon_nrmse
from .pdu import reconstruct
from .simulator import preset, preset_names, synthesize
from .spectral import CircleSignal, RealSignal, analytic_projection
from .windowed import WindowSpec, taper_window

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


class UsageError(Exception):
    pass


def _parse_schedule(text: str) -> list[dict]:
    """``"0.25:0.0625,1:0.25"`` -> window blocks."""
    out = []
    for part in text.split(","):
        T, _, B = part.partition(":")
        try:
            block = {"T": float(T)}
            if B:
                block["B"] = float(B)
        except ValueError:
            raise UsageError(f"bad window schedule entry {part!r}") from None
        out.append(block)
    return out


def _add_run_flags(p: argparse.ArgumentParser):
    g = p.add_argument_group("decomposition (override the JSON config)")
    g.add_argument("--config", help="JSON config file")
    g.add_argument("--method", choices=["pdu", "windowed"])
    g.add_argument("--cumsum", dest="use_cumsum", action="store_const", const=True)
    g.add_argument("--no-cumsum", dest="use_cumsum", action="store_const", const=False)
    g.add_argument("--L", type=int)
    g.add_argument("--n-components", type=int)
    g.add_argument("--epsilon", type=float)
    g.add_argument("--upsample", dest="upsample_factor", type=int)
    g.add_argument("--energy-stop", dest="residual_energy_stop", type=float)
    g.add_argument("--T", type=float, help="window half-support, seconds")
    g.add_argument("--B", type=float, help="window ramp length, seconds (default T/4)")
    g.add_argument("--window-schedule", help="per-extraction windows, e.g. 0.25:0.0625,1:0.25")
    g.add_argument("--taper", choices=["pre", "post"])
    g.add_argument("--detrend-degree", type=int, choices=[2, 3])


def _run_config(args, **fixed) -> RunConfig:
    d = load_config(args.config) if getattr(args, "config", None) else {}
    for key in ("method", "use_cumsum", "L", "n_components", "epsilon", "upsample_factor",
                "residual_energy_stop", "taper", "detrend_degree"):
        v = getattr(args, key, None)
        if v is not None:
            d[key] = v
    if args.T is not None:
        d["window"] = {"T": args.T, "B": args.B if args.B is not None else args.T / 4}
    elif args.B is not None:
        raise UsageError("--B needs --T")
    if args.window_schedule:
        d["window_schedule"] = _parse_schedule(args.window_schedule)
    d.update(fixed)
    return RunConfig.from_dict(d)


def cmd_decompose(args) -> int:
    values, fs = fileio.read_signal_csv(args.input, args.fs)
    s = fileio.to_real_signal(values, fs)
    run = _run_config(args)
    from .benchmark import decompose_signal

    d = decompose_signal(s, run)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    fileio.write_components_csv(out / "components.csv", d, fs)
    summary = {
        "config": run.to_dict(),
        "n_samples": len(s),
        "sample_rate_hz": fs,
        "n_components": d.n_components,
        "component_energy": d.energies(),
        "recon_nrmse": recon_nrmse(s.samples, d.components),
        "recon_nrmse_with_trend": recon_nrmse(s.samples, [*d.components, d.trend]),
    }
    if args.subtract_k is not None:
        k = args.subtract_k
        if not 0 <= k <= d.n_components:
            raise UsageError(f"--subtract-k must be in [0, {d.n_components}]")
        rest = s.samples - (reconstruct(d, k) - d.trend).real
        fileio.write_signal_csv(out / "subtracted.csv", rest, fs)
        summary["subtract_k"] = k
    fileio.write_json(out / "summary.json", summary)
    print(f"{d.n_components} components, recon NRMSE {summary['recon_nrmse']:.4g} -> {out}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    overrides = {k: v for k, v in (("fs", args.fs), ("T0", args.T0)) if v is not None}
    try:
        p = preset(args.preset, **overrides)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    r = synthesize(p, args.seed)
    fileio.write_realization_csv(args.out, r, p, args.preset)
    print(f"{args.preset} seed {args.seed}: {len(r.signal)} samples -> {args.out}")
    return EXIT_OK


def cmd_benchmark(args) -> int:
    overrides = {k: v for k, v in (("fs", args.fs), ("T0", args.T0)) if v is not None}
    try:
        p = preset(args.preset, **overrides)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    methods = args.methods.split(",")
    for m in methods:
        if m not in METHODS:
            raise UsageError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
    if args.n < 1:
        raise UsageError("-n must be at least 1")
    run = _run_config(args, preset=args.preset, realizations=args.n, seed=args.seed0)

    def tick(seed):
        if args.verbose:
            print(f"seed {seed} done", file=sys.stderr)

    records = run_benchmark(p, args.n, methods, args.seed0, run, args.jobs, tick)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["seed", "method", *INDEX_NAMES, "hash"])
    for r in records:
        w.writerow([r["seed"], r["method"], *(repr(r[k]) for k in INDEX_NAMES), r["hash"]])
    (out / "metrics.csv").write_text(buf.getvalue(), encoding="utf-8")
    report = {
        "preset": args.preset,
        "params": p.to_dict(),
        "n": args.n,
        "seed0": args.seed0,
        "methods": methods,
        "config": run.to_dict(),
        "comparisons": [compare(records, a, b) for a, b in default_comparisons(methods)],
    }
    fileio.write_json(out / "report.json", report)
    for c in report["comparisons"]:
        meds = " ".join(
            f"{k}:{e['median_baseline']:.3f}/{e['median_challenger']:.3f}" for k, e in c["indices"].items()
        )
        print(f"{c['challenger']} vs {c['baseline']} (n={c['n']}): {meds}  wins_all={c.get('challenger_wins_all')}")
    return EXIT_OK


def rootmap_field(values, fs: float, center: float, spec: WindowSpec, n_radii: int):
    """Window one segment, dilate it to the circle, Poisson-extend its Hardy part.

    The field is normalized by ``max|f_w|``.
    """
    values = np.asarray(values)
    t = np.arange(values.size) / fs
    lo, hi = center - spec.T, center + spec.T
    tol = 0.5 / fs
    if lo < -tol or hi > values.size / fs + tol:
        raise UsageError("window must lie inside the signal duration")
    idx = np.nonzero((t >= lo - 1e-12) & (t < hi - 1e-12))[0]
    if idx.size < 2:
        raise UsageError("window holds fewer than 2 samples")
    fw = values[idx] * taper_window(spec, t[idx] - center)
    peak = float(np.max(np.abs(fw)))
    if peak == 0:
        raise DegenerateSignalError("windowed signal is identically zero")
    if np.iscomplexobj(fw):
        F = hardy_projection(CircleSignal(fw / peak))
    else:
        F = analytic_projection(RealSignal(fw / peak, fs))
    radii = np.linspace(0.0, 1.0, n_radii, endpoint=False)
    return poisson_extend(F, radii)


def cmd_rootmap(args) -> int:
    values, fs = fileio.read_signal_csv(args.input, args.fs)
    try:
        spec = WindowSpec(args.T, args.B if args.B is not None else args.T / 4)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.radii < 1 or args.threshold < 0:
        raise UsageError("--radii must be positive and --threshold nonnegative")
    field = rootmap_field(values, fs, args.center, spec, args.radii)
    mask = root_region_map(field, args.threshold)
    out = Path(args.out)
    fileio.write_disk_field_csv(out, field, mask)
    mask_path = out.with_name(out.stem + "_mask.csv")
    fileio.write_mask_csv(mask_path, field, mask)
    rmax = float(field.radii[np.any(mask, axis=1)].max()) if mask.any() else None
    print(f"{int(mask.sum())} cells below {args.threshold}; max radius {rmax} -> {out}, {mask_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="unwinding", description="Phase dynamics unwinding toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose a CSV signal")
    p.add_argument("input")
    p.add_argument("--fs", type=float, help="sample rate if the CSV has no time column")
    p.add_argument("--out", default="decomposition", help="output directory")
    p.add_argument("--subtract-k", type=int, help="also write input minus the first k components")
    _add_run_flags(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("simulate", help="write one AHM realization with ground truth")
    p.add_argument("--preset", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fs", type=float)
    p.add_argument("--T0", type=float)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("benchmark", help="paired Monte-Carlo comparison on a preset")
    p.add_argument("--preset", required=True, choices=preset_names())
    p.add_argument("-n", type=int, default=100, help="number of realizations")
    p.add_argument("--methods", default="pdu,windowed", help=f"comma list from {','.join(METHODS)}")
    p.add_argument("--seed0", type=int, default=0)
    p.add_argument("--fs", type=float)
    p.add_argument("--T0", type=float)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="benchmark", help="output directory")
    p.add_argument("-v", "--verbose", action="store_true")
    _add_run_flags(p)
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("rootmap", help="root-region map of one windowed segment")
    p.add_argument("input")
    p.add_argument("--fs", type=float)
    p.add_argument("--center", type=float, required=True, help="window center, seconds")
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--B", type=float)
    p.add_argument("--radii", type=int, default=200)
    p.add_argument("--threshold", type=float, default=0.005)
    p.add_argument("--out", required=True, help="field CSV; the mask goes next to it")
    p.set_defaults(func=cmd_rootmap)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (DegenerateSignalError, CurveThroughOriginError, GenerationError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, ValueError) as exc:
        # ConfigError, InputFormatError and argument checks deeper down
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
