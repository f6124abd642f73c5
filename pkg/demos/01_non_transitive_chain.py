"""Three laws on the unit interval where <=_3 chains but does not compose.

Run with ``python demos/01_non_transitive_chain.py``.
"""

# %%
import math

import numpy as np

from kurtord import PowerUnit, ReflectedCubeRoot, TransportMap, leq_k
from kurtord.orders import sign_changes

F, G, H = PowerUnit(3), PowerUnit(1), ReflectedCubeRoot(1)

# %% [markdown]
# F has cdf t^3, G is uniform and H has cdf 1 - (1 - t)^(1/3). The third
# derivative of each transport map decides <=_3.

# %%
for a, b, label in ((F, G, "F <=3 G"), (G, H, "G <=3 H"), (F, H, "F <=3 H"), (H, F, "H <=3 F")):
    v = leq_k(a, b, 3)
    line = f"{label}: {v.status:5s} margin {v.margin:+.4f}"
    if v.witness is not None:
        line += f"  witness t = {v.witness.t:.6f}"
    print(line)

# %% [markdown]
# The failure of F <=3 H lives on an interval. Its ends are the real roots of
# 28 t^6 - 20 t^3 + 1, and the sign-change search finds them from the grid.

# %%
roots = sign_changes(F, H, 3)
closed = [((5 - 3 * math.sqrt(2)) / 14) ** (1 / 3), ((5 + 3 * math.sqrt(2)) / 14) ** (1 / 3)]
for r, c in zip(roots, closed):
    print(f"root {r:.12f}   closed form {c:.12f}   diff {abs(r - c):.1e}")

# %%
t = np.linspace(0.05, 0.95, 10)
r3 = TransportMap(F, H).r_derivs(t)[2]
for ti, v in zip(t, r3):
    print(f"t = {ti:.2f}   R_FH''' = {v:+9.3f}")
