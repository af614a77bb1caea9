# %% [markdown]
# # Essential-dimension certificates
#
# `incompressibility_verdict` gathers upper bounds (kernel rank, degree-one
# witness, product splitting) and lower bounds (the subtorus/kernel bound,
# the scalar-product rule, the surface rule, the iterate rule) and reports
# which hypotheses each one needed.

# %%
from isotorus import Assumptions, VerdictOptions, incompressibility_verdict, endo_power
from isotorus.constructions import diag_2_3, gaussian_scalar, h1_times_h2, swap_map, zeta8_torus

cert = incompressibility_verdict(gaussian_scalar(2), Assumptions(is_product_of_elliptic_curves=True))
print(cert.report())

# %%
a = Assumptions(factors_pairwise_nonisogenous=True, is_product_of_elliptic_curves=True)
print(incompressibility_verdict(diag_2_3(), a).report())

# %%
print(incompressibility_verdict(h1_times_h2()).report())

# %% [markdown]
# The swap map has a cyclic kernel (so `ed <= 1`); its square is the scalar
# `n i` and is incompressible.

# %%
print(incompressibility_verdict(swap_map(2)).report())
print(incompressibility_verdict(endo_power(swap_map(2), 2),
                                Assumptions(is_product_of_elliptic_curves=True)).report())

# %% [markdown]
# `q = 2` on a surface asserted simple: the surface rule is withheld.

# %%
cert = incompressibility_verdict(zeta8_torus(), Assumptions(is_simple=True), VerdictOptions(height=0))
print(cert.verdict, cert.notes)

# %% [markdown]
# In dimension 3 the iterate threshold needs a Jordan constant from the user.

# %%
f = gaussian_scalar(3)
for J in (None, 24, 10 ** 6):
    c = incompressibility_verdict(f, Assumptions(is_product_of_elliptic_curves=True, jordan_constant=J),
                                  VerdictOptions(height=0))
    print(J, c.iterate_threshold, c.notes)
