# %% [markdown]
# # Quantifier-generated weights
#
# A monotone quantifier `Q` on [0, 1] yields OWA weights from its increments
# `Q(c/C) - Q((c-1)/C)`. The three families behave very differently, and this
# decides which classes get emphasised once losses are sorted.

# %%
import numpy as np

from owaloss import QuantifierSpec, owa_weights

C = 5
for family in ("basic", "quadratic", "exponential"):
    for alpha in (0.2, 0.8):
        w = owa_weights(QuantifierSpec(family, alpha), C)
        print(f"{family:<12} alpha={alpha:<4}", np.array2string(w, precision=3))

# %% [markdown]
# Basic with `alpha < 1` puts most mass on position 0, i.e. the largest class
# loss. Exponential and quadratic grow toward the last position.
#
# The quadratic family has a pole at `r = 1/alpha**2`. For `alpha > 1` the
# denominator is floored and a warning is raised, or an error with `strict=True`.

# %%
import warnings

with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    w = owa_weights(QuantifierSpec("quadratic", 1.2), 10)
print(caught[0].message)
print(np.array2string(w, precision=6))
