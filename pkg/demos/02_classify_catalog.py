# %% [markdown]
# # Which metrics are Kaehler?
#
# `classify` samples 32 points and thresholds three residuals: the mixed
# Christoffel blocks (Kaehler), the conjugate mixed block alone ((1,2)-symplectic)
# and the cosymplectic trace.  The exterior derivative of the fundamental form
# gives an independent check of the (1,2)-symplectic residual.

# %%
import numpy as np

from pluriharm import catalog_metric, christoffel, classify, fundamental_form_residuals

for name, n in [("flat", 3), ("fubini_study", 1), ("fubini_study", 2), ("hopf", 2), ("hopf", 3)]:
    rep = classify(catalog_metric(name, n))
    flags = ", ".join(f"{k}={v}" for k, v in rep.verdicts.items())
    print(f"{rep.metric:15s} {flags}")

# %%
# a conformal metric (1 + |z1 - 3|^2) delta_ij is not Kaehler in dimension 2
conf = catalog_metric("conformal", 2, factor="1 + abs2(z1 - 3)")
print(classify(conf).verdicts)

# %%
z = np.array([0.4 - 0.3j, 1.2j])
r12, _ = fundamental_form_residuals(conf, z)
print("max |(d omega)^{1,2}|       :", np.max(np.abs(r12)))
print("max |Gamma^{kbar}_{i jbar}| :", np.max(np.abs(christoffel(conf, z).mixed_bar)))
