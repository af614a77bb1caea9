# %% [markdown]
# # Kernels of self-isogenies
#
# A torus is given by a lattice over a multi-quadratic field; an endomorphism
# by a complex matrix `M`. Everything downstream works with the integer matrix
# `L` describing how `M` acts on lattice coordinates.

# %%
from isotorus import kernel_group, rank_index_search, brute_force_kernel_oracle, endo_power
from isotorus.constructions import GAUSS, e_n, mult_ni, gaussian_scalar, h1_times_h2, swap_map

E2 = e_n(2)
print(E2)
f = mult_ni(2)
print("L =", f.L, " degree", f.degree)

# %% [markdown]
# The kernel is read off the Smith form of `L`. Multiplication by `n i` on
# `C/(Z + n i Z)` has a cyclic kernel:

# %%
for n in range(2, 7):
    print(n, kernel_group(mult_ni(n)))

# %% [markdown]
# A brute-force count of the points `v in (Z/D)^{2n}` with `L v = 0 mod D`
# gives the same group and serves as an oracle.

# %%
for e in (mult_ni(3), gaussian_scalar(1), h1_times_h2()):
    print(kernel_group(e), "|", brute_force_kernel_oracle(e))

# %% [markdown]
# ## Ranks of iterates
#
# The scalar `4 + 3i` on `(C/Z[i])^2` already has 5-rank 2. The cyclic
# example `(1 + 2i) x (1 + sqrt-2)` never reaches 5-rank 2, whatever the power.

# %%
print(rank_index_search(gaussian_scalar(2), 5).to_json())
print(rank_index_search(swap_map(2), 2).to_json())
res = rank_index_search(h1_times_h2(), 5, s_max=6)
print(res.found, [row[1] for row in res.table])
for s in range(1, 5):
    print(s, kernel_group(endo_power(h1_times_h2(), s)))
