"""Rank-based comparison of several methods over many settings.

Average ranks, the Friedman statistic with its Iman-Davenport F correction,
and Holm's step-down procedure on Nemenyi z statistics against the
best-ranked method (Demsar, JMLR 2006).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np
from scipy import stats as _st

FIXTURE_METRICS = ("accuracy", "f1_macro", "min_recall", "min_f1")


@dataclass(frozen=True)
class ResultTable:
    """``values[i, j]``: metric of method ``j`` in setting ``i``."""

    methods: tuple[str, ...]
    settings: tuple[str, ...]
    values: np.ndarray
    higher_is_better: bool = True

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "methods", tuple(self.methods))
        object.__setattr__(self, "settings", tuple(self.settings))
        if v.ndim != 2 or v.shape != (len(self.settings), len(self.methods)):
            raise ValueError(f"values shape {v.shape} does not match {len(self.settings)} settings x {len(self.methods)} methods")
        if len(self.methods) < 2 or len(self.settings) < 2:
            raise ValueError("need at least 2 methods and 2 settings")
        if not np.all(np.isfinite(v)):
            raise ValueError("result table has missing or non-finite entries")

    @property
    def n(self) -> int:
        return len(self.settings)

    @property
    def k(self) -> int:
        return len(self.methods)

    def drop(self, rows) -> "ResultTable":
        keep = np.setdiff1d(np.arange(self.n), np.atleast_1d(rows))
        return ResultTable(self.methods, [self.settings[i] for i in keep], self.values[keep], self.higher_is_better)

    @classmethod
    def from_csv(cls, source, higher_is_better: bool = True) -> "ResultTable":
        """Parse ``setting,<method>,<method>...`` rows (path or open text file)."""
        if hasattr(source, "read"):
            rows = list(csv.reader(source))
        else:
            with open(source, newline="", encoding="utf-8") as fh:
                rows = list(csv.reader(fh))
        rows = [r for r in rows if r and any(x.strip() for x in r) and not r[0].startswith("#")]
        if len(rows) < 2:
            raise ValueError("result table needs a header and data rows")
        header = [h.strip() for h in rows[0]]
        width = len(header)
        settings, values = [], []
        for n, r in enumerate(rows[1:], start=2):
            if len(r) != width:
                raise ValueError(f"row {n}: expected {width} fields, found {len(r)}")
            settings.append(r[0].strip())
            try:
                values.append([float(x) for x in r[1:]])
            except ValueError:
                raise ValueError(f"row {n}: non-numeric value in {r[1:]}") from None
        return cls(header[1:], settings, np.array(values), higher_is_better)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["setting", *self.methods])
        for s, row in zip(self.settings, self.values):
            w.writerow([s, *(f"{x:.17g}" for x in row)])
        return buf.getvalue()


def load_fixture(metric: str) -> ResultTable:
    """One of the shipped per-metric tables (39 classifier/dataset rows x OWA, CE, FL)."""
    if metric not in FIXTURE_METRICS:
        raise ValueError(f"unknown fixture {metric!r}; choose from {FIXTURE_METRICS}")
    with resources.files("owaloss.fixtures").joinpath(f"{metric}.csv").open(encoding="utf-8") as fh:
        return ResultTable.from_csv(fh)


def rank_rows(table: ResultTable) -> np.ndarray:
    """Per-row ranks, 1 = best; ties share the mean of their positions."""
    v = table.values if not table.higher_is_better else -table.values
    return np.apply_along_axis(_st.rankdata, 1, v)


@dataclass(frozen=True)
class RankSummary:
    methods: tuple[str, ...]
    avg_rank: np.ndarray
    avg_metric: np.ndarray
    friedman_chi2: float
    iman_davenport_F: float
    friedman_pvalue: float
    chi2_pvalue: float
    n: int
    k: int
    tie_correction: bool
    degenerate: bool = False


def tie_term(ranks) -> float:
    """Sum over rows and tie groups of ``t^3 - t``."""
    total = 0.0
    for row in np.asarray(ranks):
        _, t = np.unique(row, return_counts=True)
        total += float(np.sum(t**3 - t))
    return total


def summarize(table: ResultTable, tie_correction: bool = True) -> RankSummary:
    """Friedman omnibus test.

    ``chi2 = 12 n / (k (k + 1)) * sum_j (R_j - (k + 1) / 2)^2``, divided by
    ``1 - T / (n k (k^2 - 1))`` when tie-corrected (``T`` from ``tie_term``).
    ``F = (n - 1) chi2 / (n (k - 1) - chi2)`` on ``(k - 1, (k - 1)(n - 1))``
    degrees of freedom.  ``F`` is infinite, with p-value 0 and
    ``degenerate=True``, when every row ranks the methods identically.
    """
    ranks = rank_rows(table)
    n, k = ranks.shape
    R = ranks.mean(axis=0)
    chi2 = 12.0 * n / (k * (k + 1)) * float(np.sum((R - (k + 1) / 2.0) ** 2))
    if tie_correction:
        denom = 1.0 - tie_term(ranks) / (n * k * (k * k - 1))
        chi2 = chi2 / denom if denom > 0 else 0.0
    df1, df2 = k - 1, (k - 1) * (n - 1)
    gap = n * (k - 1) - chi2
    degenerate = gap <= 1e-12 * n * (k - 1)
    if degenerate:
        F, p = math.inf, 0.0
    else:
        F = (n - 1) * chi2 / gap
        p = float(_st.f.sf(F, df1, df2))
    return RankSummary(
        methods=table.methods,
        avg_rank=R,
        avg_metric=table.values.mean(axis=0),
        friedman_chi2=chi2,
        iman_davenport_F=F,
        friedman_pvalue=p,
        chi2_pvalue=float(_st.chi2.sf(chi2, df1)),
        n=n,
        k=k,
        tie_correction=tie_correction,
        degenerate=degenerate,
    )


@dataclass(frozen=True)
class Comparison:
    method: str
    rank: float
    z: float
    p_value: float
    threshold: float
    reject: bool

    @property
    def outcome(self) -> str:
        return "reject" if self.reject else "accept"


@dataclass(frozen=True)
class HolmResult:
    control: str
    control_rank: float
    beta: float
    comparisons: tuple[Comparison, ...]


def holm(table: ResultTable, beta: float = 0.05, two_sided: bool = True) -> HolmResult:
    """Holm step-down test of the best-ranked method against each other one.

    ``z_j = (R_j - R_best) / sqrt(k (k + 1) / (6 n))``.  Comparisons are sorted
    by ascending p-value; the ``i``-th (1-based) is tested at
    ``beta / (k - i)``, i.e. ``beta / (j - 1)`` for the method in rank
    position ``j``.  Once one comparison is accepted, all later ones are too.
    """
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0, 1)")
    R = rank_rows(table).mean(axis=0)
    n, k = table.n, table.k
    best = int(np.argmin(R))
    se = math.sqrt(k * (k + 1) / (6.0 * n))
    others = [j for j in range(k) if j != best]
    z = {j: (R[j] - R[best]) / se for j in others}
    p = {j: float(_st.norm.sf(z[j]) * (2.0 if two_sided else 1.0)) for j in others}
    ordered = sorted(others, key=lambda j: (p[j], j))
    comparisons, still_rejecting = [], True
    for i, j in enumerate(ordered, start=1):
        threshold = beta / (k - i)
        still_rejecting = still_rejecting and p[j] < threshold
        comparisons.append(Comparison(table.methods[j], float(R[j]), float(z[j]), p[j], threshold, still_rejecting))
    return HolmResult(table.methods[best], float(R[best]), beta, tuple(comparisons))


def format_report(title: str, summary: RankSummary, holm_result: HolmResult) -> str:
    """Text block: one line per method (control first, then by rank) plus the omnibus statistics."""
    lines = [title, f"{'Method':<10}{'A. Rank':>9}{'A. Metric':>11}{'p-value':>10}{'beta/(j-1)':>12}  Outcome"]
    idx = {m: i for i, m in enumerate(summary.methods)}
    c = idx[holm_result.control]
    lines.append(f"{holm_result.control:<10}{summary.avg_rank[c]:>9.3f}{summary.avg_metric[c]:>11.3f}{'-':>10}{'-':>12}  -")
    for cmp in sorted(holm_result.comparisons, key=lambda x: x.rank):
        i = idx[cmp.method]
        lines.append(
            f"{cmp.method:<10}{summary.avg_rank[i]:>9.3f}{summary.avg_metric[i]:>11.3f}"
            f"{cmp.p_value:>10.3f}{cmp.threshold:>12.3g}  {cmp.outcome}"
        )
    tie = "tie-corrected" if summary.tie_correction else "uncorrected"
    F = "inf" if math.isinf(summary.iman_davenport_F) else f"{summary.iman_davenport_F:.5f}"
    lines.append(
        f"Friedman chi2 ({tie}) = {summary.friedman_chi2:.5f} (p = {summary.chi2_pvalue:.3g}); "
        f"Iman-Davenport F = {F} (p = {summary.friedman_pvalue:.3g}, df = {summary.k - 1}, {(summary.k - 1) * (summary.n - 1)})"
    )
    return "\n".join(lines)


def report_dict(summary: RankSummary, holm_result: HolmResult) -> dict:
    return {
        "methods": list(summary.methods),
        "avg_rank": summary.avg_rank.tolist(),
        "avg_metric": summary.avg_metric.tolist(),
        "friedman_chi2": summary.friedman_chi2,
        "chi2_pvalue": summary.chi2_pvalue,
        "iman_davenport_F": None if math.isinf(summary.iman_davenport_F) else summary.iman_davenport_F,
        "friedman_pvalue": summary.friedman_pvalue,
        "degenerate": summary.degenerate,
        "tie_correction": summary.tie_correction,
        "holm": {
            "control": holm_result.control,
            "beta": holm_result.beta,
            "comparisons": [
                {"method": c.method, "rank": c.rank, "z": c.z, "p_value": c.p_value, "threshold": c.threshold, "outcome": c.outcome}
                for c in holm_result.comparisons
            ],
        },
    }
