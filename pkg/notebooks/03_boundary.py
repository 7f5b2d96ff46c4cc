# %% [markdown]
# # The boundary term
#
# Near the boundary the symbols become rational in xi_n with poles only at +i and
# -i.  The pi+ projection keeps the +i poles; the xi_n integral is a residue; the
# remaining S^2 integral is a monomial formula.

# %%
from fractions import Fraction

from spectral_torsion import boundary_residue as br
from spectral_torsion.scalar_ring import A0, GaussRat

one = GaussRat(1)
r = br.XiNRational.from_fraction({0: one}, 1, 1)      # 1/(1 + x^2)
print("pi+ of 1/(1+x^2):", br.pi_plus(r).poles)
print("integral of 1/(1+x^2)^2:", br.integrate_xi_n(br.XiNRational.from_fraction({0: one}, 2, 2)))

# %% [markdown]
# Only one combination of symbol orders survives the boundary formula in
# dimension four:

# %%
print(br.surviving_indices())

# %%
bd, report = br.boundary_torsion()
print("k_u =", bd.k_u.to_text(), "(times pi^2)")
print("k_u at a0=b0:", bd.k_u.subs(b0=A0).to_text())

# %% [markdown]
# Unlike the interior coefficients, k_u does not vanish when a0 = b0, while the
# claimed numerator does.  The comparison table shows the gap.

# %%
for comp in report.comparisons:
    print(f"{comp.label}: {comp.verdict}  delta={comp.delta}")
