"""Fixing a skewness value restores transitivity of <=_3.

Run with ``python demos/04_skewness_sets.py``.
"""

# %%
import itertools
import math

from kurtord import (LocationScale, Weibull, gamma_d, gamma_mode, leq_k,
                     same_transitivity_set, transitivity_probe)
from kurtord.distributions import CubicMap, Pushforward
from kurtord.functionals import TMode

# %% [markdown]
# Bending Weibull(2) with x + a (x - m)^3 around its mode m keeps the density
# and its slope at m, so the mode and the mode-based skewness are unchanged.

# %%
w = Weibull(2.0)
m = math.sqrt(0.5)
bent = [Pushforward(w, CubicMap(a, m)) for a in (0.3, 1.0, 3.0)]
laws = [w, *bent, LocationScale(bent[1], 1.5, 2.0)]
for i, d in enumerate(laws):
    print(f"law {i}: gamma_Mode = {gamma_mode(d).value:.12f}   {d.name}")
print("same set:", same_transitivity_set(laws, TMode(2 * math.exp(-0.5) - 1)))

# %%
rep = transitivity_probe(laws, "k3")
chains = [(a, b, c) for a, b, c in itertools.permutations(range(len(laws)), 3)
          if rep.verdicts[a, b].holds and rep.verdicts[b, c].holds]
print(f"{len(chains)} chains A <=3 B <=3 C, {len(rep.violations)} violations")

# %% [markdown]
# The Weibull triple below mixes mode skewness values, and there the chain
# breaks.

# %%
triple = [Weibull(1.0), Weibull(1.5), Weibull(0.7)]
print([round(gamma_mode(d).value, 4) for d in triple])
print("violations:", len(transitivity_probe(triple, "k3").violations))

# %% [markdown]
# The density-based value f'/f^2 moves opposite to <=_2: for the exponential
# law against Weibull(1/2) the map t^2 is convex, and f'/f^2 is larger for F.

# %%
f, g = Weibull(1.0), Weibull(0.5)
print("F <=2 G:", leq_k(f, g, 2).status)
for p in (0.1, 0.3, 0.5, 0.7):
    print(f"p = {p}: F {gamma_d(f, p).value:+.4f}   G {gamma_d(g, p).value:+.4f}")
