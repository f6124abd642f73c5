"""Weibull shapes act through the monomial map t -> t**(k/l).

Run with ``python demos/02_weibull_and_monomials.py``.
"""

# %%
import numpy as np

from kurtord import PowerUnit, Weibull, equiv_3, leq_k, transitivity_probe
from kurtord.families import monomial_order_predicate, weibull_order_predicate

# %% [markdown]
# A monomial map t^p is 3-convex or 3-concave depending only on where p
# sits relative to 1/2, 1 and 2. The grid verdicts follow that pattern.

# %%
for p in (0.3, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0):
    num = equiv_3(PowerUnit(p), PowerUnit(1)).status
    want = monomial_order_predicate(p).equiv3
    print(f"p = {p:3.1f}   equiv3 {num:9s} predicate {want}")

# %% [markdown]
# A small shape matrix. Rows are F = W(k), columns G = W(l); "=" marks
# equivalence, "<" a one-way <=_3 and "." no relation.

# %%
shapes = np.round(np.geomspace(0.4, 4.0, 6), 3)
print("k \\ l " + " ".join(f"{l:6.3f}" for l in shapes))
for k in shapes:
    cells = []
    for l in shapes:
        f, g = Weibull(k), Weibull(l)
        mark = "=" if equiv_3(f, g).holds else "<" if leq_k(f, g, 3).holds else "."
        assert (mark != ".") == weibull_order_predicate(k, l).leq3
        cells.append(f"{mark:>6s}")
    print(f"{k:6.3f} " + " ".join(cells))

# %% [markdown]
# W(1) <=3 W(1.5) and W(1.5) =3 W(0.7), yet W(1) and W(0.7) are not ordered.

# %%
rep = transitivity_probe([Weibull(1), Weibull(1.5), Weibull(0.7)], "k3")
for v in rep.violations:
    print(f"violation ({v.a}, {v.b}, {v.c}): witness t = {v.ac.witness.t:.4f}, "
          f"slack {v.ac.witness.value:.3g}")
