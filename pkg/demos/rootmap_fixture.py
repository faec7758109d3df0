"""Where the zeros of a windowed Blaschke template sit inside the disk.

f = f_alpha^5 with alpha = (9 - 18i)/(10 sqrt 5), |alpha| = 0.9, window centered
at 0.82.  The true zeros of the windowed segment's holomorphic extension are
located from the Taylor coefficients of its Hardy part.
"""

import numpy as np

from unwinding import CircleSignal, blaschke_template, hardy_projection, poisson_extend, root_region_map
from unwinding.windowed import WindowSpec, taper_window

n = 4096
alpha = (9 - 18j) / (10 * np.sqrt(5))
f = blaschke_template(alpha, 5, n).values
t = np.arange(n) / n
print("|alpha| =", abs(alpha), " root angle / 2pi =", (np.angle(alpha) / (2 * np.pi)) % 1)

for label, spec in (
    ("half-support 0.0225, ramp 0.01125", WindowSpec(0.0225, 0.01125)),
    ("half-support 0.0225, ramp 0.005625", WindowSpec(0.0225, 0.005625)),
    ("half-support 0.045,  ramp 0.01125", WindowSpec(0.045, 0.01125)),
):
    idx = np.nonzero((t >= 0.82 - spec.T) & (t < 0.82 + spec.T))[0]
    fw = f[idx] * taper_window(spec, t[idx] - 0.82)
    F = hardy_projection(CircleSignal(fw / np.abs(fw).max()))
    coef = np.fft.fft(F.values) / len(F)
    coef = coef[: len(F) // 2]
    coef = coef[: np.max(np.nonzero(np.abs(coef) > 1e-10 * np.abs(coef).max())) + 1]
    zeros = np.roots(coef[::-1])
    inside = np.sort(np.abs(zeros[np.abs(zeros) < 0.95]))
    field = poisson_extend(F, np.linspace(0, 1, 200, endpoint=False))
    mask = root_region_map(field, 0.005)
    rmax = field.radii[np.any(mask, axis=1)].max() if mask.any() else None
    print(f"{label}: {len(idx)} samples, zeros with |z|<0.95 at {np.round(inside, 3)}, mask max radius {rmax}")
