# %% [markdown]
# # Pluriharmonic is not the same as harmonic on the Hopf manifold
#
# A holomorphic function is pluriharmonic on any Hermitian manifold.  On the
# Hopf manifold the coordinate function z1 is nonetheless neither
# (1,1)-geodesic nor harmonic, because the source Christoffel correction does
# not vanish.

# %%
import numpy as np

from pluriharm import (
    MapField,
    catalog_metric,
    check_map,
    harmonic_residual,
    identity_map,
    one_one_geodesic_residual,
    pluriharmonic_residual,
)

hopf = catalog_metric("hopf", 2)
phi = MapField.from_strings(2, ["z1"], name="z1")
rep = check_map(phi, source_metric=hopf)
print(rep.verdicts)

# %%
z = np.array([0.8 + 0.1j, -0.5 + 0.9j])
S = one_one_geodesic_residual(phi, hopf, None, z)[0]
print("S_{1 2bar}          :", S[0, 1])
print("z^2 / (2|z|^2)      :", z[1] / (2 * np.vdot(z, z).real))
print("tau                 :", harmonic_residual(phi, hopf, None, z)[0])
print("-(n-1) z^1 / 2      :", -z[0] / 2)

# %% [markdown]
# Into a Hopf *target* even the identity fails to be pluriharmonic: only the
# target Christoffel term survives, and at (1, 0) it equals 1/2.

# %%
print(pluriharmonic_residual(identity_map(2), hopf, [1, 0])[0].real)
