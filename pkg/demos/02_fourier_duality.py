"""The discrete transform under the counting convention.

Point masses and characters swap roles, applying the transform twice
reflects the signal, and the finite Gaussian window reproduces itself up to
the sqrt(|G|) factor that the convention forces.
"""

import numpy as np

from mildspec import (
    GroupSpec,
    dft,
    dirac,
    finite_gaussian,
    idft,
    pure_frequency,
    random_signal,
)

G = GroupSpec((24,))
rng = np.random.default_rng(0)

d0 = dirac(G, G.zero())
print(f"transform of the point mass at 0 is the constant 1: "
      f"max deviation {np.max(np.abs(dft(d0).values - 1.0)):.2e}")

r = G.element(5)
hat = dft(pure_frequency(G, r)).values
target = G.order * dirac(G, r).values
print(f"transform of the character at r=5 is |G| times the point mass there: "
      f"residual {np.max(np.abs(hat - target)):.2e}")
print()

f = random_signal(G, rng)
back = idft(dft(f))
print(f"inversion residual on a random signal: "
      f"{np.max(np.abs(back.values - f.values)):.2e}")

twice = dft(dft(f)).values
reflected = G.order * f.values[G.negation_permutation()]
print(f"double transform reflects and scales: "
      f"residual {np.max(np.abs(twice - reflected)):.2e}")

energy = np.sum(np.abs(dft(f).values) ** 2) - G.order * np.sum(np.abs(f.values) ** 2)
print(f"energy identity defect: {abs(energy):.2e}")
print()

# the distinguished window: a periodized Gaussian that the transform fixes
for n in (16, 64, 256, 1024):
    H = GroupSpec((n,))
    g0 = finite_gaussian(H)
    resid = np.max(np.abs(dft(g0).values - np.sqrt(n) * g0.values))
    print(f"self-duality of the Gaussian window on Z{n}: "
          f"|dft(g0) - sqrt(n) g0| = {resid:.2e}")
