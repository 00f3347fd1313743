# %% [markdown]
# # Training on imbalanced Gaussian blobs
#
# Three classes with proportions 90/9/1 percent. We compare plain
# cross-entropy with OWA-aggregated cross-entropy on the held-out split.

# %%
from dataclasses import replace

from owaloss.experiment import DESK_PRESET, imbalance_task, owa_loss, prepare, train_and_evaluate
from owaloss.losses import LossConfig
from owaloss.network import TrainConfig

ds = imbalance_task(seed=10)
train, test = prepare(ds, 0.8, seed=10)
print("train counts:", train.class_counts().tolist(), " test counts:", test.class_counts().tolist())

cfg = TrainConfig(**DESK_PRESET, seed=10)
for loss in (LossConfig(), owa_loss("exponential", 0.8), owa_loss("basic", 0.5)):
    res = train_and_evaluate(train, test, replace(cfg, loss=loss))
    m = res.test
    print(f"{loss.label:<30} acc={m.accuracy:.3f} f1={m.f1_macro:.3f} min_recall={m.min_recall:.3f} recall={[round(r, 2) for r in m.recall]}")

# %% [markdown]
# The per-epoch history is a list of flat records, ready for a CSV writer.

# %%
print(res.history[-1])
