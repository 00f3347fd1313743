# %% [markdown]
# # OWA, IOWA, WA and OWAWA on small vectors
#
# The ordered weighted average sorts its arguments from largest to smallest
# and applies a fixed positional weight vector. `w[0]` always multiplies the
# largest argument.

# %%
import numpy as np

from owaloss import iowa, owa, owawa, wa

a = np.array([3.0, 7.0, 5.0])
print("max selector :", owa([1, 0, 0], a))
print("min selector :", owa([0, 0, 1], a))
print("mean         :", owa(np.full(3, 1 / 3), a))

# %% [markdown]
# Induced OWA orders by a second vector `u` instead of `a` itself.
# With `u = a` it is plain OWA again.

# %%
w = np.array([0.5, 0.3, 0.2])
print("iowa, u reversed:", iowa(w, [1, 2, 3], [3, 2, 1]))
print("iowa, u = a     :", iowa(w, a, a), "== owa", owa(w, a))

# %% [markdown]
# OWAWA mixes positional weights `w` with fixed per-argument weights `v`.
# `beta` slides between the two.

# %%
w, v, a = [0.75, 0.25], [0.4, 0.6], [2.0, 10.0]
for beta in (0.0, 0.25, 0.5, 0.75, 1.0):
    print(f"beta={beta:4.2f}  owawa={owawa(w, v, a, beta):6.3f}")
print("wa  =", wa(v, a), " owa =", owa(w, a))
