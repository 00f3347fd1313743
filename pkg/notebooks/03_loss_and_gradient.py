# %% [markdown]
# # Class-level losses, OWA aggregation and a gradient check
#
# Per-class losses `F[c]` are sorted and aggregated with OWA weights. The
# weights are held fixed in the backward pass, so the gradient is a weighted
# sum of the per-class cross-entropy gradients.

# %%
import numpy as np

from owaloss import LossConfig, QuantifierSpec, aggregate_loss, class_losses, softmax
from owaloss.losses import loss_and_gradient, loss_value

rng = np.random.default_rng(0)
scores = rng.normal(size=(8, 3))
y = np.array([0, 0, 0, 0, 0, 1, 1, 2])
F = class_losses("ce", softmax(scores), y).values
print("class losses:", F.round(4))

for cfg in (LossConfig(), LossConfig(aggregation="owa", quantifier=QuantifierSpec("basic", 0.2))):
    loss, w_hat = aggregate_loss(cfg, F)
    print(f"{cfg.label:<28} loss={loss:.4f} weights={w_hat.round(3)}")

# %% [markdown]
# Central differences against the analytic gradient.

# %%
cfg = LossConfig(base="focal", gamma=2.0, aggregation="owa", quantifier=QuantifierSpec("exponential", 0.8))
_, _, grad, _ = loss_and_gradient(cfg, scores, y)
h, fd = 1e-5, np.zeros_like(scores)
for idx in np.ndindex(scores.shape):
    e = np.zeros_like(scores)
    e[idx] = h
    fd[idx] = (loss_value(cfg, scores + e, y) - loss_value(cfg, scores - e, y)) / (2 * h)
print("max |analytic - numeric| =", np.abs(grad - fd).max())
