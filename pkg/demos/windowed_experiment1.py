"""One realization of the first simulated experiment: plain vs windowed unwinding.

The simulation window (T = 1/4 s) is compared with longer windows.  A 0.5 s
segment holds the ~3 Hz gap between the two tones as only a few Fourier bins,
fewer than the low-pass order L = 5, so short windows mix the tones.
"""

import numpy as np

from unwinding import decompose_real, preset, synthesize
from unwinding.metrics import score
from unwinding.windowed import WindowSpec, windowed_decompose

p = preset("experiment1")
r = synthesize(p, 0)
f = r.signal.samples
print(f"{len(f)} samples at {p.fs} Hz, IF gap min {np.min(r.if2 - r.if1):.2f} Hz")


def row(components):
    return np.round(score(f, components, r.amplitudes, r.phases).as_row(), 3)


print("                 d1_1   d1_2   d2_1   d2_2   d3")
print("pdu            ", row(decompose_real(r.signal).components))
for T in (0.25, 1.0, 2.0, 4.0):
    for taper in ("pre", "post"):
        d = windowed_decompose(r.signal, WindowSpec(T, T / 4), n=2, taper=taper)
        print(f"windowed T={T:<4} {taper:4}", row(d.components))
