# %% [markdown]
# # Quantifier family x alpha sweep
#
# A reduced version of `owaloss sweep`: three families, a few alphas, three
# seeds. The long-format rows are what a plotting tool would consume.

# %%
import io
from dataclasses import replace

import numpy as np

from owaloss.experiment import DESK_PRESET, imbalance_task, owa_loss, prepare, train_and_evaluate
from owaloss.network import TrainConfig

rows = []
for seed in (8, 9, 10):
    train, test = prepare(imbalance_task(seed), 0.8, seed)
    cfg = TrainConfig(**DESK_PRESET, seed=seed)
    for family in ("basic", "quadratic", "exponential"):
        for alpha in (0.2, 0.5, 0.9):
            m = train_and_evaluate(train, test, replace(cfg, loss=owa_loss(family, alpha))).test
            rows.append((family, alpha, seed, m.f1_macro, m.min_recall))

# %%
buf = io.StringIO()
buf.write("family,alpha,seed,f1_macro,min_recall\n")
for r in rows:
    buf.write(",".join(map(str, r)) + "\n")
print(buf.getvalue().splitlines()[:4])

for family in ("basic", "quadratic", "exponential"):
    meds = [np.median([r[3] for r in rows if r[0] == family and r[1] == a]) for a in (0.2, 0.5, 0.9)]
    print(f"{family:<12}", " ".join(f"{m:.3f}" for m in meds))
