import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from owaloss.metrics import MetricsReport, confusion, evaluate, report


def brute_force(y_true, y_pred, C):
    """Loop-based oracle following the textbook definitions."""
    prec, rec, f1, present = [], [], [], []
    for c in range(C):
        tp = sum(1 for t, p in zip(y_true, y_pred) if t == c and p == c)
        fp = sum(1 for t, p in zip(y_true, y_pred) if t != c and p == c)
        fn = sum(1 for t, p in zip(y_true, y_pred) if t == c and p != c)
        P = tp / (tp + fp) if tp + fp else 0.0
        R = tp / (tp + fn) if tp + fn else 0.0
        prec.append(P)
        rec.append(R)
        f1.append(2 * P * R / (P + R) if P + R else 0.0)
        present.append(tp + fp + fn > 0)
    keep = [c for c in range(C) if present[c]]
    acc = sum(t == p for t, p in zip(y_true, y_pred)) / len(y_true)
    return acc, np.mean([f1[c] for c in keep]), min(rec[c] for c in keep), min(f1[c] for c in keep), rec, f1


def test_confusion_examples():
    assert confusion([0, 0, 1, 1], [0, 1, 1, 1], 2).tolist() == [[1, 1], [0, 2]]
    y = [0, 1, 2, 2, 1]
    assert np.array_equal(confusion(y, y, 3), np.diag([1, 2, 2]))
    cm = confusion(y, [0] * 5, 3)
    assert np.count_nonzero(cm.sum(axis=0)) == 1 and cm[:, 0].sum() == 5


def test_report_hand_example():
    r = report([[1, 1], [0, 2]])
    assert r.recall == pytest.approx((0.5, 1.0))
    assert r.precision == pytest.approx((1.0, 2 / 3))
    assert r.f1 == pytest.approx((2 / 3, 0.8))
    assert r.f1_macro == pytest.approx(11 / 15)
    assert r.min_recall == 0.5 and r.min_f1 == pytest.approx(2 / 3)


def test_diagonal_report():
    r = report(np.diag([3, 4, 5]))
    assert r.accuracy == 1 and r.min_recall == 1 and r.min_f1 == 1


def test_absent_class_excluded():
    r = report([[3, 1, 0], [1, 2, 0], [0, 0, 0]])
    assert r.present == (True, True, False)
    assert r.f1_macro == pytest.approx(np.mean(r.f1[:2]))
    assert r.min_f1 == min(r.f1[:2])


def test_never_predicted_class_counts_as_zero():
    r = evaluate([0, 0, 1, 2], [0, 0, 0, 0], 3)
    assert r.min_recall == 0.0 and r.min_f1 == 0.0 and r.recall[1] == 0.0


def test_errors():
    with pytest.raises(ValueError):
        confusion([0, 1], [0], 2)
    with pytest.raises(ValueError):
        confusion([0, 3], [0, 1], 3)
    with pytest.raises(ValueError):
        report(np.zeros((2, 2)))


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 6).flatmap(lambda C: st.tuples(st.just(C), st.lists(st.tuples(st.integers(0, C - 1), st.integers(0, C - 1)), min_size=1, max_size=60))))
def test_against_brute_force(case):
    C, pairs = case
    yt, yp = [t for t, _ in pairs], [p for _, p in pairs]
    r = evaluate(yt, yp, C)
    acc, f1m, minr, minf1, rec, f1 = brute_force(yt, yp, C)
    assert r.accuracy == pytest.approx(acc, abs=1e-12)
    assert r.f1_macro == pytest.approx(f1m, abs=1e-12)
    assert r.min_recall == pytest.approx(minr, abs=1e-12)
    assert r.min_f1 == pytest.approx(minf1, abs=1e-12)
    assert np.allclose(r.recall, rec) and np.allclose(r.f1, f1)
    for v in (r.accuracy, r.f1_macro, r.min_recall, r.min_f1):
        assert 0.0 <= v <= 1.0


def test_json_round_trip():
    r = evaluate([0, 1, 2, 2, 1, 0], [0, 2, 2, 2, 1, 1], 3)
    text = r.to_json()
    assert set(json.loads(text)) == {"accuracy", "f1_macro", "min_recall", "min_f1", "per_class"}
    assert MetricsReport.from_json(text) == r
