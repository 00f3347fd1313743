"""Datasets: synthetic imbalanced Gaussian blobs, CSV I/O, stratified splits."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .rng import Stream


class ParseError(ValueError):
    def __init__(self, message, row=None):
        super().__init__(f"row {row}: {message}" if row is not None else message)
        self.row = row


@dataclass(frozen=True)
class Dataset:
    features: np.ndarray
    labels: np.ndarray
    class_names: tuple[str, ...]

    def __post_init__(self):
        X = np.asarray(self.features, dtype=float)
        y = np.asarray(self.labels, dtype=np.int64)
        if X.ndim != 2 or y.shape != (X.shape[0],):
            raise ValueError(f"features {X.shape} and labels {y.shape} do not line up")
        if not np.all(np.isfinite(X)):
            raise ValueError("features contain non-finite values")
        C = len(self.class_names)
        if y.size and (y.min() < 0 or y.max() >= C):
            raise ValueError(f"labels must lie in [0, {C})")
        X.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "features", X)
        object.__setattr__(self, "labels", y)
        object.__setattr__(self, "class_names", tuple(str(c) for c in self.class_names))

    def __len__(self):
        return self.labels.size

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def class_counts(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.n_classes)

    def subset(self, idx) -> "Dataset":
        idx = np.asarray(idx, dtype=np.int64)
        return Dataset(self.features[idx], self.labels[idx], self.class_names)


@dataclass(frozen=True)
class ImbalanceSpec:
    """Recipe for ``make_gaussian_blobs``.

    Centers are drawn uniformly from ``[-center_box, center_box]^d``; each
    class is an isotropic Gaussian with standard deviation ``cluster_spread``.
    """

    class_proportions: tuple[float, ...]
    n_total: int
    cluster_spread: float = 1.0
    n_features: int = 2
    seed: int = 0
    center_box: float = 5.0

    def __post_init__(self):
        p = np.asarray(self.class_proportions, dtype=float)
        object.__setattr__(self, "class_proportions", tuple(p.tolist()))
        if p.ndim != 1 or p.size < 1 or np.any(p <= 0):
            raise ValueError("class proportions must be positive")
        if abs(p.sum() - 1.0) > 1e-9:
            raise ValueError(f"class proportions must sum to 1 (got {p.sum()!r})")
        if self.n_total < 1 or self.n_features < 1 or self.cluster_spread <= 0 or self.center_box < 0:
            raise ValueError("n_total, n_features, cluster_spread must be positive")
        if np.any(np.floor(p * self.n_total) < 1):
            raise ValueError("every class needs at least one sample (floor(p_c * n_total) >= 1)")


def class_sizes(proportions, n_total: int) -> np.ndarray:
    """Rounded class sizes that add up to ``n_total`` (largest-remainder correction).

    >>> class_sizes([0.9, 0.09, 0.01], 1000).tolist()
    [900, 90, 10]
    """
    exact = np.asarray(proportions, dtype=float) * n_total
    counts = np.floor(exact + 0.5).astype(np.int64)
    diff = int(n_total - counts.sum())
    if diff:
        resid = exact - counts
        order = np.argsort(-resid if diff > 0 else resid, kind="stable")
        for k in order[: abs(diff)]:
            counts[k] += np.sign(diff)
    return counts


def make_gaussian_blobs(spec: ImbalanceSpec) -> Dataset:
    stream = Stream(spec.seed)
    C = len(spec.class_proportions)
    counts = class_sizes(spec.class_proportions, spec.n_total)
    centers = (2.0 * stream.uniform((C, spec.n_features)) - 1.0) * spec.center_box
    labels = np.repeat(np.arange(C), counts)
    X = centers[labels] + spec.cluster_spread * stream.normal((spec.n_total, spec.n_features))
    perm = stream.permutation(spec.n_total)
    return Dataset(X[perm], labels[perm], tuple(f"class{c}" for c in range(C)))


def stratified_split(ds: Dataset, train_fraction: float, seed: int = 0) -> tuple[Dataset, Dataset]:
    """Split each class separately, keeping ``round(f * n_c)`` samples for training.

    Each side keeps at least one sample of every class.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must lie in (0, 1)")
    counts = ds.class_counts()
    if np.any(counts < 2):
        raise ValueError(f"every class needs at least 2 samples for a split, got counts {counts.tolist()}")
    stream = Stream(seed)
    train_idx, test_idx = [], []
    for c in range(ds.n_classes):
        members = np.flatnonzero(ds.labels == c)
        members = members[stream.permutation(members.size)]
        k = int(np.clip(np.floor(train_fraction * members.size + 0.5), 1, members.size - 1))
        train_idx.append(members[:k])
        test_idx.append(members[k:])
    train_idx = np.sort(np.concatenate(train_idx))
    test_idx = np.sort(np.concatenate(test_idx))
    return ds.subset(train_idx), ds.subset(test_idx)


def stratified_kfold(ds: Dataset, k: int = 3, seed: int = 0):
    """Yield ``(train, validation)`` pairs for stratified ``k``-fold CV."""
    counts = ds.class_counts()
    if k < 2 or np.any(counts < k):
        raise ValueError(f"need k >= 2 and at least k samples per class, got k={k}, counts {counts.tolist()}")
    stream = Stream(seed)
    fold_of = np.empty(len(ds), dtype=np.int64)
    for c in range(ds.n_classes):
        members = np.flatnonzero(ds.labels == c)
        members = members[stream.permutation(members.size)]
        fold_of[members] = np.arange(members.size) % k
    for f in range(k):
        yield ds.subset(np.flatnonzero(fold_of != f)), ds.subset(np.flatnonzero(fold_of == f))


@dataclass(frozen=True)
class Standardizer:
    mean: np.ndarray
    scale: np.ndarray = field(repr=False)

    @classmethod
    def fit(cls, X) -> "Standardizer":
        X = np.asarray(X, dtype=float)
        std = X.std(axis=0)
        mean = X.mean(axis=0)
        const = std == 0
        return cls(np.where(const, 0.0, mean), np.where(const, 1.0, std))

    def transform(self, X) -> np.ndarray:
        return (np.asarray(X, dtype=float) - self.mean) / self.scale

    def apply(self, ds: Dataset) -> Dataset:
        return Dataset(self.transform(ds.features), ds.labels, ds.class_names)


def load_csv(path, has_header: bool = True, label_column: int | str = -1) -> Dataset:
    """Read a comma-delimited UTF-8 file with one label column.

    Labels are mapped to indices in order of first appearance.
    ``label_column`` is a column index (negative counts from the end) or,
    with a header, a column name.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [(n, r) for n, r in enumerate(csv.reader(fh), start=1) if r and any(x.strip() for x in r)]
    if not rows:
        raise ParseError(f"{path} is empty")
    header = None
    if has_header:
        header = [h.strip() for h in rows[0][1]]
        rows = rows[1:]
        if not rows:
            raise ParseError(f"{path} has a header but no data rows")
    width = len(header) if header is not None else len(rows[0][1])
    if isinstance(label_column, str) and not label_column.lstrip("-").isdigit():
        if header is None or label_column not in header:
            raise ParseError(f"unknown label column {label_column!r}")
        col = header.index(label_column)
    else:
        col = int(label_column)
        if not -width <= col < width:
            raise ParseError(f"label column {label_column} out of range for {width} columns")
        col %= width
    features, labels, names = [], [], {}
    for n, row in rows:
        if len(row) != width:
            raise ParseError(f"expected {width} fields, found {len(row)}", row=n)
        name = row[col].strip()
        labels.append(names.setdefault(name, len(names)))
        try:
            features.append([float(x) for j, x in enumerate(row) if j != col])
        except ValueError as exc:
            raise ParseError(f"non-numeric feature ({exc})", row=n) from None
    X = np.array(features, dtype=float).reshape(len(features), width - 1)
    if not np.all(np.isfinite(X)):
        raise ParseError("non-finite feature value")
    return Dataset(X, np.array(labels, dtype=np.int64), tuple(names))


def save_csv(ds: Dataset, path, header: bool = True) -> None:
    """Write features then a ``label`` column holding class names (path or open text file)."""
    if hasattr(path, "write"):
        _write_rows(ds, path, header)
        return
    with open(path, "w", newline="", encoding="utf-8") as fh:
        _write_rows(ds, fh, header)


def _write_rows(ds: Dataset, fh, header: bool) -> None:
    w = csv.writer(fh, lineterminator="\n")
    if header:
        w.writerow([f"x{j}" for j in range(ds.n_features)] + ["label"])
    for x, y in zip(ds.features, ds.labels):
        w.writerow([f"{v:.17g}" for v in x] + [ds.class_names[y]])
