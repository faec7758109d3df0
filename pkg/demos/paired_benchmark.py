"""A small paired Monte-Carlo comparison with the signed-rank test (Bonferroni m = 5).

Uses a 2 s window; see windowed_experiment1.py for why the 1/4 s simulation
window does not separate the tones.  Ten realizations at fs = 256 Hz, 8 s
keep this under a minute.
"""

from unwinding.benchmark import compare, run_benchmark
from unwinding.config import RunConfig
from unwinding.simulator import preset

p = preset("experiment1", fs=256.0, T0=8.0)
records = run_benchmark(p, 10, ("pdu", "windowed"), seed0=100, run=RunConfig(window={"T": 2.0, "B": 0.5}))
c = compare(records, "pdu", "windowed")
for name, e in c["indices"].items():
    print(f"{name}: pdu {e['median_baseline']:.3f}  windowed {e['median_challenger']:.3f}  "
          f"p {e['p_value']:.4f}  significant {e['significant']}")
print("windowed better on all five:", c["challenger_wins_all"])
