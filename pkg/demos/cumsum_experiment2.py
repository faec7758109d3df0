"""Second simulated experiment: a weak low tone under a strong high one.

Integration divides each tone by its frequency, so after cumsum the 3-5 Hz
component dominates and is unwound first.
"""

import numpy as np

from unwinding import cumsum_decompose, decompose_real, preset, synthesize
from unwinding.metrics import score
from unwinding.windowed import WindowSpec, windowed_decompose

p = preset("experiment2")
r = synthesize(p, 0)
f = r.signal.samples


def row(d):
    return np.round(score(f, d.components, r.amplitudes, r.phases).as_row(), 3)


print("                    d1_1   d1_2   d2_1   d2_2   d3")
print("pdu               ", row(decompose_real(r.signal)))
print("windowed T=2      ", row(windowed_decompose(r.signal, WindowSpec(2.0, 0.5), n=2)))
print("pdu + cumsum      ", row(cumsum_decompose(r.signal)))
for T in (0.25, 2.0):
    d = cumsum_decompose(r.signal, strategy="windowed", window=WindowSpec(T, T / 4))
    print(f"windowed+cumsum T={T:<4}", row(d))
