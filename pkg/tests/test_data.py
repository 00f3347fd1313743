import numpy as np
import pytest

from owaloss.data import (
    Dataset,
    ImbalanceSpec,
    ParseError,
    Standardizer,
    class_sizes,
    load_csv,
    make_gaussian_blobs,
    save_csv,
    stratified_kfold,
    stratified_split,
)


def test_class_sizes():
    assert class_sizes([0.5, 0.5], 100).tolist() == [50, 50]
    assert class_sizes([0.9, 0.09, 0.01], 1000).tolist() == [900, 90, 10]
    assert class_sizes([1 / 3] * 3, 100).sum() == 100


def test_blob_counts_and_determinism():
    ds = make_gaussian_blobs(ImbalanceSpec((0.9, 0.09, 0.01), 1000, seed=3))
    assert ds.class_counts().tolist() == [900, 90, 10]
    again = make_gaussian_blobs(ImbalanceSpec((0.9, 0.09, 0.01), 1000, seed=3))
    assert np.array_equal(ds.features, again.features) and np.array_equal(ds.labels, again.labels)
    other = make_gaussian_blobs(ImbalanceSpec((0.9, 0.09, 0.01), 1000, seed=4))
    assert not np.array_equal(ds.features, other.features)
    assert make_gaussian_blobs(ImbalanceSpec((0.5, 0.5), 100)).class_counts().tolist() == [50, 50]


def test_blob_spread():
    ds = make_gaussian_blobs(ImbalanceSpec((0.5, 0.5), 20000, cluster_spread=0.7, n_features=3, seed=1))
    for c in range(2):
        assert np.allclose(ds.features[ds.labels == c].std(axis=0), 0.7, atol=0.03)


@pytest.mark.parametrize(
    "kwargs",
    [dict(class_proportions=(0.5, 0.6), n_total=10), dict(class_proportions=(0.999, 0.001), n_total=100), dict(class_proportions=(0.5, 0.5), n_total=10, cluster_spread=0.0)],
)
def test_invalid_spec(kwargs):
    with pytest.raises(ValueError):
        ImbalanceSpec(**kwargs)


def test_dataset_is_read_only():
    ds = make_gaussian_blobs(ImbalanceSpec((0.5, 0.5), 10))
    with pytest.raises(ValueError):
        ds.features[0, 0] = 1.0


def test_stratified_split_examples():
    ds = make_gaussian_blobs(ImbalanceSpec((0.5, 0.5), 100))
    tr, te = stratified_split(ds, 0.8)
    assert tr.class_counts().tolist() == [40, 40] and te.class_counts().tolist() == [10, 10]
    ds = make_gaussian_blobs(ImbalanceSpec((0.9, 0.09, 0.01), 1000))
    tr, te = stratified_split(ds, 0.8, seed=7)
    assert tr.class_counts().tolist() == [720, 72, 8] and te.class_counts().tolist() == [180, 18, 2]


def test_split_is_a_partition():
    ds = make_gaussian_blobs(ImbalanceSpec((0.7, 0.2, 0.1), 300, seed=2))
    tr, te = stratified_split(ds, 0.6, seed=1)
    rows = {tuple(r) for r in tr.features} | {tuple(r) for r in te.features}
    assert len(rows) == 300 and len(tr) + len(te) == 300


def test_split_keeps_every_class_on_both_sides():
    ds = Dataset(np.arange(6.0)[:, None], [0, 0, 0, 0, 1, 1], ("a", "b"))
    tr, te = stratified_split(ds, 0.9)
    assert np.all(tr.class_counts() >= 1) and np.all(te.class_counts() >= 1)
    with pytest.raises(ValueError):
        stratified_split(Dataset(np.zeros((3, 1)), [0, 0, 1], ("a", "b")), 0.5)


def test_kfold_partitions():
    ds = make_gaussian_blobs(ImbalanceSpec((0.8, 0.2), 50))
    folds = list(stratified_kfold(ds, 5))
    assert sum(len(v) for _, v in folds) == 50
    for tr, va in folds:
        assert va.class_counts().tolist() == [8, 2]


def test_standardizer():
    X = np.array([[1.0, 5.0], [3.0, 5.0], [5.0, 5.0]])
    Z = Standardizer.fit(X).transform(X)
    assert np.allclose(Z[:, 0].mean(), 0) and np.allclose(Z[:, 0].std(), 1)
    assert np.array_equal(Z[:, 1], [5.0, 5.0, 5.0])


def test_load_csv_first_appearance(tmp_path):
    p = tmp_path / "d.csv"
    p.write_text("x,y,label\n1,2,a\n3,4,b\n5,6,a\n")
    ds = load_csv(p)
    assert ds.labels.tolist() == [0, 1, 0] and ds.class_names == ("a", "b")
    assert load_csv(p, label_column="label").labels.tolist() == [0, 1, 0]
    p.write_text("b,1,2\na,3,4\n")
    ds = load_csv(p, has_header=False, label_column=0)
    assert ds.class_names == ("b", "a") and ds.features.tolist() == [[1, 2], [3, 4]]


@pytest.mark.parametrize(
    "text, row",
    [("", None), ("x,label\n", None), ("x,label\n1,a\n2,b,c\n", 3), ("x,label\n1,a\nfoo,b\n", 3), ("x,label\nnan,a\n", None)],
)
def test_load_csv_errors(tmp_path, text, row):
    p = tmp_path / "bad.csv"
    p.write_text(text)
    with pytest.raises(ParseError) as info:
        load_csv(p)
    assert info.value.row == row


def test_csv_round_trip(tmp_path):
    ds = make_gaussian_blobs(ImbalanceSpec((0.6, 0.3, 0.1), 200, n_features=3, seed=5))
    p = tmp_path / "rt.csv"
    save_csv(ds, p)
    back = load_csv(p)
    assert np.allclose(back.features, ds.features, atol=1e-9, rtol=0)
    # indices follow first appearance, so compare by name
    assert [back.class_names[i] for i in back.labels] == [ds.class_names[i] for i in ds.labels]
