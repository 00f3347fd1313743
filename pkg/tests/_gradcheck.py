"""Central finite-difference oracle shared by the loss and acceptance tests."""

import itertools

import numpy as np

from owaloss.aggregation import Family, QuantifierSpec
from owaloss.losses import aggregate_loss, config_class_losses, loss_and_gradient, softmax, LossConfig

STEP = 1e-5


def all_configs(n_classes):
    """Every base x aggregation x family combination (plus mean and weighted-CE variants)."""
    bases = [("ce", 0.0), ("focal", 0.5), ("focal", 2.0)]
    costs = np.arange(1, n_classes + 1, dtype=float)
    costs /= costs.sum()
    out = []
    for base, gamma in bases:
        out.append(LossConfig(base=base, gamma=gamma))
        out.append(LossConfig(base=base, gamma=gamma, sum_over_classes=True))
        out.append(LossConfig(base=base, gamma=gamma, class_weights=np.linspace(0.5, 2.0, n_classes)))
        for fam, alpha in itertools.product(Family, (0.3, 0.8)):
            q = QuantifierSpec(fam, alpha)
            out.append(LossConfig(base=base, gamma=gamma, aggregation="owa", quantifier=q))
            out.append(LossConfig(base=base, gamma=gamma, aggregation="owawa", quantifier=q, costs=costs, beta=0.4))
    return out


def pinned_loss(cfg, scores, y, order):
    F = config_class_losses(cfg, softmax(scores), y).values
    return aggregate_loss(cfg, F, order)[0]


def relative_error(cfg, scores, y):
    from owaloss.aggregation import descending_order

    F = config_class_losses(cfg, softmax(scores), y).values
    order = descending_order(F)
    _, _, grad, _ = loss_and_gradient(cfg, scores, y, order)
    fd = np.zeros_like(scores)
    for idx in np.ndindex(scores.shape):
        plus, minus = scores.copy(), scores.copy()
        plus[idx] += STEP
        minus[idx] -= STEP
        fd[idx] = (pinned_loss(cfg, plus, y, order) - pinned_loss(cfg, minus, y, order)) / (2 * STEP)
    scale = max(np.linalg.norm(grad) + np.linalg.norm(fd), 1e-12)
    return float(np.linalg.norm(grad - fd) / scale)


def random_batch(rng):
    m = int(rng.integers(1, 9))
    C = int(rng.integers(2, 7))
    scores = rng.normal(0.0, 2.0, size=(m, C))
    y = rng.integers(0, C, size=m)
    return scores, y
