# %% [markdown]
# # Pluriharmonic morphisms and the chain rule
#
# A map is a pluriharmonic morphism exactly when it is +-holomorphic and
# pluriharmonic.  We test a few maps, check the chain rule for the
# pluriharmonic operator through a Hopf chart, and pull back a function built
# from a prescribed 2-jet.

# %%
import numpy as np

from pluriharm import (
    MapField,
    catalog_metric,
    chain_rule_check,
    compose,
    is_pluriharmonic_morphism,
    jet_test_function,
    pullback_check,
)
from pluriharm.maps import pluriharmonic_residual

for comps in (["z1^2", "z1*z2"], ["z1", "conj(z2)"], ["conj(z1)*conj(z2)"]):
    v = is_pluriharmonic_morphism(MapField.from_strings(2, comps))
    print(f"{str(comps):28s} holo={v.holomorphic} anti={v.antiholomorphic} ph={v.pluriharmonic} morphism={v.morphism}")

# %%
hopf = catalog_metric("hopf", 2)
psi = MapField.from_strings(1, ["1 + z1", "z1^2"], name="curve")
phi = MapField.from_strings(2, ["z1*conj(z2) + z2^2"], name="phi")
for w in ([0.3 + 0.2j], [-0.7j], [1.1]):
    res = chain_rule_check(psi, phi, hopf, None, w)
    print(f"w={w[0]!s:10s} |lhs - rhs| = {res.max_difference:.2e}")

# %%
# h = z1 + 0.5 conj(z2) + (z1)^2 - conj(z2)^2 / 2: a holomorphic plus an antiholomorphic part
h = jet_test_function([1, 0, 0, 0.5], np.diag([2, 0, 0, -1]))
morph = MapField.from_strings(2, ["z1*z2 + 1", "z2^3 - z1"])
rep = pullback_check(morph, h)
print("composed residual:", rep.composed_max_residual)
print("residual of h after a non-morphism:",
      np.max(np.abs(pluriharmonic_residual(compose(h, MapField.from_strings(2, ["abs2(z1)", "z2"])), None, [0.5, 1j]))))
