"""Small fully connected softmax classifier trained with SGD + momentum.

Each step: forward pass, softmax, per-class losses, adaptive aggregation
(quantifier weights re-assigned to classes by current loss rank), gradient
with the assignment held fixed, backpropagation, momentum update::

    velocity = momentum * velocity - lr * grad
    param    = param + velocity
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field

import numpy as np

from . import metrics as _metrics
from .aggregation import descending_order
from .losses import LossConfig, config_class_losses, loss_and_gradient, softmax
from .rng import Stream

__all__ = [
    "Activation",
    "NetworkParams",
    "TrainConfig",
    "TrainingError",
    "init_params",
    "softmax",
    "forward",
    "backward",
    "predict",
    "train_step",
    "fit",
    "save_checkpoint",
    "load_checkpoint",
]

logger = logging.getLogger(__name__)

CHECKPOINT_MAGIC = "OWALOSS-CHECKPOINT"
CHECKPOINT_VERSION = 1


class Activation(str, enum.Enum):
    RELU = "relu"
    TANH = "tanh"


class TrainingError(RuntimeError):
    """Loss became non-finite; carries the step index and a parameter snapshot."""

    def __init__(self, message, step=None, params=None):
        super().__init__(message)
        self.step = step
        self.params = params


@dataclass
class NetworkParams:
    weights: list[np.ndarray]
    biases: list[np.ndarray]
    activation: Activation = Activation.RELU

    def __post_init__(self):
        self.activation = Activation(self.activation)
        if len(self.weights) != len(self.biases) or not self.weights:
            raise ValueError("need one bias per weight matrix and at least one layer")
        for k, (W, b) in enumerate(zip(self.weights, self.biases)):
            if W.ndim != 2 or b.shape != (W.shape[1],):
                raise ValueError(f"layer {k}: weight {W.shape} and bias {b.shape} do not match")
            if k and self.weights[k - 1].shape[1] != W.shape[0]:
                raise ValueError(f"layer {k} input width {W.shape[0]} does not chain")

    @property
    def sizes(self) -> list[int]:
        return [self.weights[0].shape[0]] + [W.shape[1] for W in self.weights]

    @property
    def n_classes(self) -> int:
        return self.weights[-1].shape[1]

    def copy(self) -> "NetworkParams":
        return NetworkParams([W.copy() for W in self.weights], [b.copy() for b in self.biases], self.activation)

    def arrays(self) -> list[np.ndarray]:
        return [a for pair in zip(self.weights, self.biases) for a in pair]


def init_params(sizes, activation="relu", seed: int = 0) -> NetworkParams:
    """Uniform init in +-sqrt(6 / (d_in + d_out)); biases start at zero."""
    sizes = [int(s) for s in sizes]
    if len(sizes) < 2 or min(sizes) < 1:
        raise ValueError(f"invalid layer sizes {sizes}")
    stream = Stream(seed)
    weights, biases = [], []
    for d_in, d_out in zip(sizes[:-1], sizes[1:]):
        limit = np.sqrt(6.0 / (d_in + d_out))
        weights.append((2.0 * stream.uniform((d_in, d_out)) - 1.0) * limit)
        biases.append(np.zeros(d_out))
    return NetworkParams(weights, biases, activation)


def _act(kind, z):
    return np.maximum(z, 0.0) if kind is Activation.RELU else np.tanh(z)


def _act_grad(kind, z, a):
    return (z > 0.0).astype(float) if kind is Activation.RELU else 1.0 - a * a


def forward(params: NetworkParams, X):
    """Scores (pre-softmax) for a batch; the cache holds layer inputs and pre-activations."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != params.weights[0].shape[0]:
        raise ValueError(f"input shape {X.shape} does not match first layer width {params.weights[0].shape[0]}")
    inputs, pre = [], []
    h = X
    last = len(params.weights) - 1
    for k, (W, b) in enumerate(zip(params.weights, params.biases)):
        inputs.append(h)
        z = h @ W + b
        pre.append(z)
        h = z if k == last else _act(params.activation, z)
    return h, (inputs, pre)


def backward(params: NetworkParams, cache, dscores):
    """Parameter gradients (list of ``(dW, db)``) given dL/dscores."""
    inputs, pre = cache
    grads = [None] * len(params.weights)
    delta = np.asarray(dscores, dtype=float)
    for k in range(len(params.weights) - 1, -1, -1):
        grads[k] = (inputs[k].T @ delta, delta.sum(axis=0))
        if k:
            a = inputs[k]
            delta = (delta @ params.weights[k].T) * _act_grad(params.activation, pre[k - 1], a)
    return grads


def predict_proba(params: NetworkParams, X) -> np.ndarray:
    return softmax(forward(params, X)[0])


def predict(params: NetworkParams, X) -> np.ndarray:
    return np.argmax(forward(params, X)[0], axis=1)


@dataclass
class TrainConfig:
    learning_rate: float = 0.003
    momentum: float = 0.9
    epochs: int = 5
    batch_size: int = 32
    seed: int = 0
    loss: LossConfig = field(default_factory=LossConfig)
    resort: str = "batch"  # "batch" or "epoch"

    def __post_init__(self):
        if not self.learning_rate >= 0:
            raise ValueError("learning_rate must be non-negative")
        if not 0.0 <= self.momentum < 1.0:
            raise ValueError("momentum must lie in [0, 1)")
        if self.epochs < 0 or self.batch_size < 1:
            raise ValueError("epochs must be >= 0 and batch_size >= 1")
        if self.resort not in ("batch", "epoch"):
            raise ValueError("resort must be 'batch' or 'epoch'")


def zero_velocity(params: NetworkParams) -> list[np.ndarray]:
    return [np.zeros_like(a) for a in params.arrays()]


def train_step(params: NetworkParams, X, y, cfg: TrainConfig, velocity=None, order=None, step=None):
    """One SGD-with-momentum step on a mini-batch.

    Returns ``(new_params, new_velocity, loss, w_hat)``; inputs are not modified.
    ``order`` pins the class ranking used to assign OWA weights.
    """
    if velocity is None:
        velocity = zero_velocity(params)
    with np.errstate(over="ignore", invalid="ignore"):
        scores, cache = forward(params, X)
        loss, w_hat, dscores, _ = loss_and_gradient(cfg.loss, scores, y, order)
    if not np.isfinite(loss) or not np.all(np.isfinite(dscores)):
        raise TrainingError(f"non-finite loss {loss} at step {step}", step=step, params=params.copy())
    grads = [g for pair in backward(params, cache, dscores) for g in pair]
    new_velocity = [cfg.momentum * v - cfg.learning_rate * g for v, g in zip(velocity, grads)]
    with np.errstate(over="ignore", invalid="ignore"):
        arrays = [a + v for a, v in zip(params.arrays(), new_velocity)]
    if not all(np.all(np.isfinite(a)) for a in arrays):
        raise TrainingError(f"parameters overflowed at step {step}", step=step, params=params.copy())
    new_params = NetworkParams(arrays[0::2], arrays[1::2], params.activation)
    return new_params, new_velocity, loss, w_hat


def batch_indices(n: int, batch_size: int, stream: Stream):
    perm = stream.permutation(n)
    return [perm[i : i + batch_size] for i in range(0, n, batch_size)]


def evaluate(params: NetworkParams, X, y) -> _metrics.MetricsReport:
    return _metrics.evaluate(y, predict(params, X), params.n_classes)


def fit(params0: NetworkParams, X, y, cfg: TrainConfig, eval_sets=None, callback=None):
    """Train for ``cfg.epochs`` epochs of shuffled mini-batches (last partial batch kept).

    ``eval_sets`` maps a name to ``(X, y)``; their metrics are added to each
    epoch's history record under ``"<name>_<metric>"``.  Returns
    ``(params, history)``.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    if X.shape[0] == 0 or X.shape[0] != y.shape[0]:
        raise ValueError("dataset must be non-empty with one label per row")
    C = params0.n_classes
    missing = np.setdiff1d(np.arange(C), y)
    if missing.size:
        raise ValueError(f"classes {missing.tolist()} have no training samples")
    params = params0.copy()
    velocity = zero_velocity(params)
    stream = Stream(cfg.seed)
    eval_sets = dict(eval_sets or {})
    history = []
    step = 0
    for epoch in range(cfg.epochs):
        total, order = 0.0, None
        for idx in batch_indices(X.shape[0], cfg.batch_size, stream):
            if cfg.resort == "epoch" and order is None:
                order = _class_order(params, X[idx], y[idx], cfg.loss)
            params, velocity, loss, _ = train_step(params, X[idx], y[idx], cfg, velocity, order, step)
            total += loss * idx.size
            step += 1
        record = {"epoch": epoch + 1, "loss": total / X.shape[0]}
        for name, (Xe, ye) in [("train", (X, y))] + list(eval_sets.items()):
            for key, value in evaluate(params, Xe, ye).summary().items():
                record[f"{name}_{key}"] = value
        history.append(record)
        logger.debug("epoch %d: %s", epoch + 1, record)
        if callback is not None:
            callback(record)
    return params, history


def _class_order(params, X, y, loss_cfg):
    p = softmax(forward(params, X)[0])
    return descending_order(config_class_losses(loss_cfg, p, y).values)


def save_checkpoint(params: NetworkParams, path) -> None:
    """Write parameters as text.

    Layout (one item per line, floats as ``%.17g`` so they round-trip)::

        OWALOSS-CHECKPOINT 1
        activation <relu|tanh>
        layers <L>
        layer <k> <d_in> <d_out>     # then d_in rows of d_out weights,
        <w ...>                      # then one row of d_out biases
        <b ...>
    """
    lines = [f"{CHECKPOINT_MAGIC} {CHECKPOINT_VERSION}", f"activation {params.activation.value}", f"layers {len(params.weights)}"]
    for k, (W, b) in enumerate(zip(params.weights, params.biases)):
        lines.append(f"layer {k} {W.shape[0]} {W.shape[1]}")
        lines.extend(" ".join(f"{x:.17g}" for x in row) for row in W)
        lines.append(" ".join(f"{x:.17g}" for x in b))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_checkpoint(path) -> NetworkParams:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    try:
        magic, version = lines[0].split()
        if magic != CHECKPOINT_MAGIC or int(version) != CHECKPOINT_VERSION:
            raise ValueError(f"unsupported checkpoint header {lines[0]!r}")
        activation = lines[1].split()[1]
        n_layers = int(lines[2].split()[1])
        pos = 3
        weights, biases = [], []
        for k in range(n_layers):
            tag, idx, d_in, d_out = lines[pos].split()
            if tag != "layer" or int(idx) != k:
                raise ValueError(f"expected layer {k} header, got {lines[pos]!r}")
            d_in, d_out = int(d_in), int(d_out)
            rows = [np.array(ln.split(), dtype=float) for ln in lines[pos + 1 : pos + 2 + d_in]]
            W = np.vstack(rows[:d_in]).reshape(d_in, d_out)
            weights.append(W)
            biases.append(rows[d_in].reshape(d_out))
            pos += d_in + 2
    except (IndexError, ValueError) as exc:
        raise ValueError(f"malformed checkpoint {path}: {exc}") from exc
    return NetworkParams(weights, biases, activation)
