"""Class-level classification losses and their adaptive OWA / OWAWA aggregation.

A batch of ``m`` samples is reduced to one loss value per class,
``F[c] = -(1/m) * sum_{i: y_i = c} phi(p_ic) * log(p_ic)``, where ``phi = 1`` for
cross-entropy and ``phi = (1 - p)^gamma`` for focal loss.  The scalar loss is
then a weighted sum ``sum_c w_hat[c] * F[c]``:

* ``mean``  -- ``w_hat = 1/C`` (or ``1`` with ``sum_over_classes``);
* ``owa``   -- quantifier weights assigned by the descending rank of ``F``,
  re-sorted on every call, so the worst classes get the leading weights;
* ``owawa`` -- ``beta * owa_weight + (1 - beta) * cost`` per class.

Gradients hold ``w_hat`` fixed at its current assignment: the sort is
piecewise constant and contributes no derivative.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .aggregation import QuantifierSpec, check_weights, descending_order, owa_weights

LOG_EPS = 1e-12


class Base(str, enum.Enum):
    CROSS_ENTROPY = "ce"
    FOCAL = "focal"


class Aggregation(str, enum.Enum):
    MEAN = "mean"
    OWA = "owa"
    OWAWA = "owawa"


@dataclass(frozen=True)
class LossConfig:
    """Which base loss to compute per class and how to aggregate it.

    ``owa_weights`` overrides the quantifier with an explicit positional
    weight vector.  ``class_weights`` turns the base loss into weighted
    cross-entropy (each ``F[c]`` multiplied by its weight before aggregation).
    """

    base: Base = Base.CROSS_ENTROPY
    gamma: float = 0.0
    aggregation: Aggregation = Aggregation.MEAN
    quantifier: QuantifierSpec | None = None
    owa_weights: tuple[float, ...] | None = None
    costs: tuple[float, ...] | None = None
    beta: float = 1.0
    class_weights: tuple[float, ...] | None = None
    sum_over_classes: bool = False
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "base", Base(self.base))
        object.__setattr__(self, "aggregation", Aggregation(self.aggregation))
        for name in ("owa_weights", "costs", "class_weights"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, tuple(float(x) for x in value))
        if self.gamma < 0:
            raise ValueError("focal gamma must be >= 0")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError("beta must lie in [0, 1]")
        if self.aggregation is not Aggregation.MEAN:
            if self.quantifier is None and self.owa_weights is None:
                raise ValueError(f"{self.aggregation.value} aggregation needs a quantifier or owa_weights")
            if self.owa_weights is not None:
                check_weights(self.owa_weights, name="owa_weights")
        if self.aggregation is Aggregation.OWAWA:
            if self.costs is None:
                raise ValueError("owawa aggregation needs a cost vector")
            check_weights(self.costs, name="costs")
        if self.class_weights is not None and any(w < 0 for w in self.class_weights):
            raise ValueError("class weights must be non-negative")

    def positional_weights(self, n_classes: int) -> np.ndarray:
        """The quantifier weight vector, computed once per class count."""
        if self.owa_weights is not None:
            return check_weights(self.owa_weights, n_classes, "owa_weights")
        if n_classes not in self._cache:
            self._cache[n_classes] = owa_weights(self.quantifier, n_classes)
        return self._cache[n_classes]

    @property
    def label(self) -> str:
        base = "ce" if self.base is Base.CROSS_ENTROPY else f"focal(gamma={self.gamma:g})"
        if self.aggregation is Aggregation.MEAN:
            return base
        q = self.quantifier
        agg = "owa" if self.aggregation is Aggregation.OWA else f"owawa(beta={self.beta:g})"
        return f"{agg}[{q.family.value},alpha={q.alpha:g}]/{base}" if q else f"{agg}/{base}"


@dataclass
class ClassLosses:
    values: np.ndarray
    counts: np.ndarray


def _check_batch(p, y):
    p = np.asarray(p, dtype=float)
    y = np.asarray(y)
    if p.ndim != 2 or y.ndim != 1 or p.shape[0] != y.shape[0] or y.size == 0:
        raise ValueError(f"probabilities {p.shape} and labels {y.shape} are inconsistent")
    if not np.issubdtype(y.dtype, np.integer) or y.min() < 0 or y.max() >= p.shape[1]:
        raise ValueError("labels must be integer class indices in [0, C)")
    return p, y


def true_class_probs(p, y) -> np.ndarray:
    return p[np.arange(y.size), y]


def class_losses(base, p, y, gamma: float = 0.0) -> ClassLosses:
    """Per-class loss ``F[c]``; classes absent from the batch get ``F[c] = 0``.

    >>> class_losses("ce", np.full((3, 3), 1 / 3), np.array([0, 1, 2])).values.round(6)
    array([0.366204, 0.366204, 0.366204])
    """
    p, y = _check_batch(p, y)
    m, n_classes = p.shape
    pt = true_class_probs(p, y)
    per_sample = -np.log(np.clip(pt, LOG_EPS, 1.0))
    if Base(base) is Base.FOCAL:
        per_sample = per_sample * (1.0 - pt) ** gamma
    values = np.bincount(y, weights=per_sample, minlength=n_classes) / m
    counts = np.bincount(y, minlength=n_classes)
    return ClassLosses(values, counts)


def config_class_losses(cfg: LossConfig, p, y) -> ClassLosses:
    """``class_losses`` for a config, with weighted-CE class weights applied."""
    cl = class_losses(cfg.base, p, y, cfg.gamma)
    if cfg.class_weights is not None:
        cw = np.asarray(cfg.class_weights)
        if cw.size != cl.values.size:
            raise ValueError("class_weights length does not match the number of classes")
        cl.values = cl.values * cw
    return cl


def effective_weights(cfg: LossConfig, F, order=None) -> np.ndarray:
    """Per-class weights ``w_hat`` aligned to the original class indexing.

    ``order`` (indices, largest loss first) defaults to the descending sort of ``F``.
    """
    F = np.asarray(F, dtype=float)
    n = F.size
    if cfg.aggregation is Aggregation.MEAN:
        return np.ones(n) if cfg.sum_over_classes else np.full(n, 1.0 / n)
    if order is None:
        order = descending_order(F)
    w_sorted = cfg.positional_weights(n)
    if cfg.aggregation is Aggregation.OWAWA:
        costs = check_weights(cfg.costs, n, "costs")
        w_sorted = cfg.beta * w_sorted + (1.0 - cfg.beta) * costs[order]
    w_hat = np.empty(n)
    w_hat[order] = w_sorted
    return w_hat


def aggregate_loss(cfg: LossConfig, F, order=None) -> tuple[float, np.ndarray]:
    """Aggregate class losses; returns ``(loss, w_hat)`` with ``loss = w_hat @ F``."""
    F = np.asarray(F, dtype=float)
    if F.ndim != 1:
        raise ValueError("class losses must be a 1-d vector")
    for name in ("owa_weights", "costs"):
        vec = getattr(cfg, name)
        if vec is not None and len(vec) != F.size:
            raise ValueError(f"{name} has length {len(vec)} but there are {F.size} classes")
    w_hat = effective_weights(cfg, F, order)
    return float(np.dot(w_hat, F)), w_hat


def _base_score_gradient(cfg: LossConfig, p, y) -> np.ndarray:
    """d(per-sample loss)/d(scores), rows not yet scaled by class weight or 1/m."""
    pt = true_class_probs(p, y)
    onehot = np.zeros_like(p)
    onehot[np.arange(y.size), y] = 1.0
    if cfg.base is Base.CROSS_ENTROPY or cfg.gamma == 0.0:
        coef = np.where(pt >= LOG_EPS, -1.0, 0.0)
    else:
        g = cfg.gamma
        q = 1.0 - pt
        logp = np.log(np.clip(pt, LOG_EPS, 1.0))
        # d/dp[-(1-p)^g log p] * p, written to stay finite at p = 1 and g < 1
        with np.errstate(divide="ignore", invalid="ignore"):
            mod_term = np.where(q > 0, g * pt * q ** (g - 1.0) * logp, 0.0)
        coef = mod_term - np.where(pt >= LOG_EPS, q**g, 0.0)
    # dp_t/dz = p_t (e_t - p)
    return coef[:, None] * (onehot - p)


def loss_gradient(cfg: LossConfig, p, y, weights=None) -> np.ndarray:
    """Gradient of the aggregated loss with respect to the pre-softmax scores.

    ``p`` must be ``softmax(scores)``.  ``weights`` are the per-class ``w_hat``
    from the forward pass; recomputed from ``p`` when omitted.
    """
    p, y = _check_batch(p, y)
    if weights is None:
        _, weights = aggregate_loss(cfg, config_class_losses(cfg, p, y).values)
    mult = np.asarray(weights, dtype=float)
    if cfg.class_weights is not None:
        mult = mult * np.asarray(cfg.class_weights)
    return _base_score_gradient(cfg, p, y) * (mult[y] / y.size)[:, None]


def softmax(scores) -> np.ndarray:
    """Row-wise softmax with max subtraction."""
    z = np.asarray(scores, dtype=float)
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def loss_and_gradient(cfg: LossConfig, scores, y, order=None):
    """Forward and backward through softmax and the aggregated loss.

    Returns ``(loss, w_hat, dL/dscores, class_losses)``.
    """
    p = softmax(scores)
    cl = config_class_losses(cfg, p, y)
    loss, w_hat = aggregate_loss(cfg, cl.values, order)
    return loss, w_hat, loss_gradient(cfg, p, y, w_hat), cl


def loss_value(cfg: LossConfig, scores, y) -> float:
    p = softmax(scores)
    return aggregate_loss(cfg, config_class_losses(cfg, p, y).values)[0]
