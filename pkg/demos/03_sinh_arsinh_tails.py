"""Sinh-arsinh laws: <=_3 is decided by tail weight alone.

Run with ``python demos/03_sinh_arsinh_tails.py``. Writes ``sas_r2.csv``
(R'' curves for a few reduced pairs) next to the working directory.
"""

# %%
import csv

import numpy as np

from kurtord import SinhArsinh, kappa_qf, leq_gs, leq_k
from kurtord.families import SasReduced, sas_r_derivs, sas_table1_row

# %% [markdown]
# For every skewness nu, SAS(nu_F, tau_F) <=3 SAS(nu_G, tau_G) exactly when
# tau_F >= 2 tau_G. A sweep over nu at a few tail weights shows the boundary.

# %%
nus = (-2.0, 0.0, 2.0)
for tf, tg in ((1.5, 1.0), (1.9, 1.0), (2.1, 1.0), (3.0, 1.0)):
    verdicts = {leq_k(SinhArsinh(a, tf), SinhArsinh(b, tg), 3).status for a in nus for b in nus}
    print(f"tau_F/tau_G = {tf / tg:.1f}: <=3 verdicts over nu pairs {sorted(verdicts)}")

# %% [markdown]
# <=_gs with threshold 0 needs only tau_F > tau_G.

# %%
for tf in (0.8, 1.2, 1.8):
    v = leq_gs(SinhArsinh(1.0, tf), SinhArsinh(-1.0, 1.0), 0.0)
    print(f"tau_F = {tf}: <=gs(0) {v.status}")

# %% [markdown]
# Shape classification of R'' per reduced tail weight.

# %%
for tau in (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0):
    row = sas_table1_row(SasReduced(0.5, tau))
    print(f"tau~ = {tau:3.1f}  sign {row.sign_change:7s} R'' {row.monotonicity:10s} "
          f"growth {row.limit:11s} <=3 {row.leq3:3s} <=gs {row.leq_gs}")

# %% [markdown]
# Where <=3 holds the kurtosis comparison kappa_QF is non-negative, and it
# stays so whatever the skewness parameters are.

# %%
for a in (0.05, 0.1, 0.25):
    vals = [kappa_qf(SinhArsinh(n1, 3.0), SinhArsinh(n2, 1.0), a) for n1 in nus for n2 in nus]
    print(f"alpha = {a}: kappa_QF in [{min(vals):.4f}, {max(vals):.4f}]")

# %%
t = np.linspace(-10, 10, 201)
with open("sas_r2.csv", "w", newline="", encoding="utf-8") as fh:
    w = csv.writer(fh)
    taus = (1.5, 2.0, 2.5, 3.0)
    w.writerow(["t"] + [f"r2_tau{tau}" for tau in taus])
    cols = [sas_r_derivs(SasReduced(0.0, tau), t)[1] for tau in taus]
    for i, ti in enumerate(t):
        w.writerow([repr(float(ti))] + [repr(float(c[i])) for c in cols])
print("wrote sas_r2.csv")
