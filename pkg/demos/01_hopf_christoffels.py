# %% [markdown]
# # Christoffel symbols of the Hopf metric
#
# The Hopf metric on C^n \ {0} is g_{i jbar} = delta_ij / |z|^2.  Its Christoffel
# symbols come straight out of Wirtinger jets of the metric entries; here we
# compare them with the hand-derived closed forms and look at the trace that
# decides cosymplecticity.

# %%
import numpy as np

from pluriharm import catalog_metric, christoffel, cosymplectic_trace, metric_at

hopf = catalog_metric("hopf", 2)
z = np.array([1.0, 0.0])
jet = metric_at(hopf, z)
print("G at (1, 0):\n", jet.G.real)
print("d_1 g_{1 1bar} =", jet.dG[0, 0, 0].real)

# %% [markdown]
# `mixed[k, i, j]` is Gamma^k_{i jbar} and `mixed_bar[k, i, j]` is Gamma^{kbar}_{i jbar}.

# %%
t = christoffel(hopf, z)
print("Gamma^1_{2 2bar}    =", t.mixed[0, 1, 1].real)
print("Gamma^2_{1 2bar}    =", t.mixed[1, 0, 1].real)
print("Gamma^{2bar}_{1 2bar} =", t.mixed_bar[1, 0, 1].real)
print("Gamma^{1bar}_{2 2bar} =", t.mixed_bar[0, 1, 1].real)

# %%
# closed forms at a random point
rng = np.random.default_rng(3)
w = rng.normal(size=3) + 1j * rng.normal(size=3)
m3 = catalog_metric("hopf", 3)
r2 = np.vdot(w, w).real
d = np.eye(3)
mixed = (np.einsum("ij,k->kij", d, w) - np.einsum("ik,j->kij", d, w)) / (2 * r2)
print("max deviation from closed form:", np.max(np.abs(christoffel(m3, w).mixed - mixed)))

# %% [markdown]
# Contracting Gamma^a_{l mbar} with the inverse metric gives (n-1) z^a / 2, which
# is nonzero away from the origin: the Hopf metric is not cosymplectic.

# %%
print("T at (1, 0)      :", cosymplectic_trace(hopf, z))
print("T at (0, 1, 0)   :", cosymplectic_trace(m3, [0, 1, 0]))
print("T / ((n-1) w/2)  :", cosymplectic_trace(m3, w) / w)
