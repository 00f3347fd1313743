"""Confusion-matrix metrics for imbalanced multiclass problems.

Conventions: precision/recall with a zero denominator are 0, F1 with
``P + R = 0`` is 0.  A class that never occurs in the truth and is never
predicted is left out of the macro mean and the minima.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

SUMMARY_KEYS = ("accuracy", "f1_macro", "min_recall", "min_f1")


def confusion(y_true, y_pred, n_classes: int) -> np.ndarray:
    """``counts[t, p]`` = number of samples of true class ``t`` predicted as ``p``.

    >>> confusion([0, 0, 1, 1], [0, 1, 1, 1], 2)
    array([[1, 1],
           [0, 2]])
    """
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if y_true.shape != y_pred.shape or y_true.ndim != 1:
        raise ValueError(f"label vectors differ in shape: {y_true.shape} vs {y_pred.shape}")
    for y in (y_true, y_pred):
        if y.size and (y.min() < 0 or y.max() >= n_classes):
            raise ValueError(f"labels must lie in [0, {n_classes})")
    flat = np.bincount(y_true * n_classes + y_pred, minlength=n_classes * n_classes)
    return flat.reshape(n_classes, n_classes)


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    f1_macro: float
    min_recall: float
    min_f1: float
    precision: tuple[float, ...]
    recall: tuple[float, ...]
    f1: tuple[float, ...]
    support: tuple[int, ...]
    present: tuple[bool, ...]

    def summary(self) -> dict:
        return {k: getattr(self, k) for k in SUMMARY_KEYS}

    def to_dict(self) -> dict:
        d = self.summary()
        d["per_class"] = [
            {"precision": p, "recall": r, "f1": f, "support": s, "present": pr}
            for p, r, f, s, pr in zip(self.precision, self.recall, self.f1, self.support, self.present)
        ]
        return d

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict) -> "MetricsReport":
        pc = d["per_class"]
        return cls(
            accuracy=float(d["accuracy"]),
            f1_macro=float(d["f1_macro"]),
            min_recall=float(d["min_recall"]),
            min_f1=float(d["min_f1"]),
            precision=tuple(float(c["precision"]) for c in pc),
            recall=tuple(float(c["recall"]) for c in pc),
            f1=tuple(float(c["f1"]) for c in pc),
            support=tuple(int(c["support"]) for c in pc),
            present=tuple(bool(c["present"]) for c in pc),
        )

    @classmethod
    def from_json(cls, text: str) -> "MetricsReport":
        return cls.from_dict(json.loads(text))


def _safe_div(num, den):
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    return np.divide(num, den, out=np.zeros_like(num), where=den > 0)


def report(cm) -> MetricsReport:
    cm = np.asarray(cm)
    if cm.ndim != 2 or cm.shape[0] != cm.shape[1] or np.any(cm < 0):
        raise ValueError("confusion matrix must be square with non-negative counts")
    total = cm.sum()
    if total <= 0:
        raise ValueError("confusion matrix is empty")
    tp = np.diag(cm).astype(float)
    rows = cm.sum(axis=1)
    cols = cm.sum(axis=0)
    precision = _safe_div(tp, cols)
    recall = _safe_div(tp, rows)
    f1 = _safe_div(2 * precision * recall, precision + recall)
    present = (rows + cols) > 0
    return MetricsReport(
        accuracy=float(tp.sum() / total),
        f1_macro=float(f1[present].mean()),
        min_recall=float(recall[present].min()),
        min_f1=float(f1[present].min()),
        precision=tuple(precision.tolist()),
        recall=tuple(recall.tolist()),
        f1=tuple(f1.tolist()),
        support=tuple(int(r) for r in rows),
        present=tuple(bool(p) for p in present),
    )


def evaluate(y_true, y_pred, n_classes: int) -> MetricsReport:
    return report(confusion(y_true, y_pred, n_classes))
