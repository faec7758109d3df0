"""Inner/outer factorization on the circle, winding numbers and the IF of a Blaschke product."""

import numpy as np

from unwinding import CircleSignal, RootSet, blaschke_if, eval_blaschke_product, factorize, winding_number
from unwinding.spectral import upsample

n = 256
z = np.exp(2j * np.pi * np.arange(n) / n)

# A cubic with two zeros inside the disk and one outside
roots = np.array([0.4 + 0.3j, -0.6j, 1.8])
F = upsample(CircleSignal(np.polyval(np.poly(roots), z)), 16)
fac = factorize(F, 1e-14 * np.abs(F.values).max())
print("max ||B| - 1|     :", np.abs(np.abs(fac.inner.values) - 1).max())
print("rel ||BG - F||    :", np.linalg.norm(fac.inner.values * fac.outer.values - F.values) / np.linalg.norm(F.values))
print("winding of B      :", winding_number(fac.inner), "(zeros inside: 2)")
print("winding of G      :", winding_number(fac.outer))

# the two curves used as winding examples
zz = np.exp(2j * np.pi * np.arange(4096) / 4096)
print("z(1+3z^2) winds", winding_number(CircleSignal(zz * (1 + 3 * zz**2))), "times")
print("z(3+z^4)  winds", winding_number(CircleSignal(zz * (3 + zz**4))), "time")

# A zero close to the boundary gives a sharp IF peak at its angle
r = RootSet(0, (0.9 * np.exp(1j * np.pi / 3),))
phi = blaschke_if(r, 4096)
print("IF peak %.2f at angle %.3f (root angle %.3f)" % (phi.max(), 2 * np.pi * phi.argmax() / 4096, np.pi / 3))
print("closed form (1+|a|)/(1-|a|) =", (1 + 0.9) / (1 - 0.9))

B = eval_blaschke_product(r, 4096)
print("product is unimodular:", np.allclose(np.abs(B.values), 1))
