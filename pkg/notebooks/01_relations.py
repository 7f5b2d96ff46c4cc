# %% [markdown]
# # Clifford actions on the exterior algebra
#
# Every matrix here is an exact 16x16 endomorphism of the exterior algebra of R^4,
# with entries in Q(i)(a0, b0).  We check the deformed anticommutation rules on a
# few random covectors, then look at what the leading symbol of the nonminimal
# Laplacian looks like.

# %%
import random

from spectral_torsion.fiber_algebra import c, c_bar, c_tilde, e, eps, iota
from spectral_torsion.sampling import random_covector
from spectral_torsion.scalar_ring import A0, B0

rng = random.Random(1)
u, v = random_covector(rng), random_covector(rng)
print("u =", [x.to_text() for x in u.components])

# %% [markdown]
# The weighted action c_t(u) = a0 eps(u) - b0 iota(u) anticommutes with the
# ordinary c(v) up to a scalar:

# %%
anti = c_tilde(u) @ c(v) + c(v) @ c_tilde(u)
print(anti.scalar_value().to_text(), "=", (-(A0 + B0) * u.dot(v)).to_text())

# %% [markdown]
# Squaring c_bar gives a scalar too, which is what makes the adjoint symbol
# invertible by a one-line formula.

# %%
print((c_bar(u) @ c_bar(u)).scalar_value().to_text())
print("trace of eps(e1) iota(e1):", (eps(e(1)) @ iota(e(1))).trace().to_text())
