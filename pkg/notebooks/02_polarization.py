# %% [markdown]
# # Polarization classes
#
# The test is exact: diagonalizability through the radical of the
# characteristic polynomial, equal moduli through a reciprocity and
# trace-transform reduction decided with Sturm sequences. An interval
# computation of the roots runs alongside as a cross-check.

# %%
from isotorus import classify_polarization, endo_power
from isotorus.constructions import family_map, h1_times_h2, integer_matrix_on_square, swap_map

for n in range(2, 7):
    print(f"swap, n = {n}:", classify_polarization(swap_map(n)).describe())

# %%
for t in (2, 3, 5, 10):
    r = classify_polarization(family_map(t))
    print(f"t = {t}:", r.describe(), " charpoly(L) =", r.char_poly_L)

# %% [markdown]
# Two different moduli: int-amplified but not polarized.

# %%
r = classify_polarization(h1_times_h2())
print(r.describe())
print(r.numeric_check)

# %% [markdown]
# `[[1, 1], [1, -1]]` squares to `2 I`; iterating multiplies `q`.

# %%
f = integer_matrix_on_square([[1, 1], [1, -1]])
for s in (1, 2, 3):
    print(s, classify_polarization(endo_power(f, s)).q)

# %% [markdown]
# ## Shioda-Mitani tori and the eigenvalue ratio

# %%
from fractions import Fraction
from isotorus import shioda_mitani_make, eigenratio_gamma_check, endo_make
from isotorus.polarization import eigenratio, eigenratio_numeric

T = shioda_mitani_make(1, 0, 1)
print(T)
print(eigenratio_gamma_check(endo_make(T, [[3, 0], [0, 3]]), 1).to_json())
K = T.spec
e = endo_make(T, [[2 + K.i, 1], [-1, 3 * K.i]])
print("exact:", eigenratio(e))
print("interval:", eigenratio_numeric(e, 128))
