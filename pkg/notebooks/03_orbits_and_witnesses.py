# %% [markdown]
# # Subtorus orbits and degree-one witnesses
#
# For `M = [[0, 1], [-t, 1]]` acting on `E x E` the first factor is never
# preperiodic, yet every iterate has a 1-subtorus on which it restricts with
# degree one. That caps the essential dimension of each iterate at 1.

# %%
from math import gcd

from isotorus import endo_power, incompressibility_verdict
from isotorus.constructions import family_map
from isotorus.dynamics import counterexample_sequence, find_1subtori, orbit_analysis, degree_one_witness
from isotorus.torus import delta_subtorus

t = 3
f = family_map(t)
B = delta_subtorus(f.torus, 1, 0)
r = orbit_analysis(f, B, cutoff=12)
print(r.outcome, r.restricted_degrees)

# %%
seq = counterexample_sequence(t, 12)
print(seq)
print(all(gcd(m, n) == 1 and (m + n) % t == 1 for m, n in seq[1:]))

# %% [markdown]
# The 1-subtori of `E x E` up to height 1, and the witness for a few iterates.

# %%
subs = find_1subtori(f.torus, 1)
print(len(subs))
for s in (1, 2, 5, 20):
    e = endo_power(f, s)
    w = degree_one_witness(e, 1)
    cert = incompressibility_verdict(e)
    print(s, w, cert.lo, cert.hi, cert.verdict)

# %% [markdown]
# ## Content of matrix powers
#
# If `content(M^n) = 1` for an `n x n` integer matrix then every power has
# content 1. `[[1, 1], [1, -1]]` fails the hypothesis (its square is `2 I`).

# %%
from isotorus.dynamics import gcd_power_test

print(gcd_power_test([[0, 1], [-3, 1]], 10).to_json())
print(gcd_power_test([[1, 1], [1, -1]], 4).to_json())
