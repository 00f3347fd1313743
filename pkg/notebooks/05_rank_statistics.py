# %% [markdown]
# # Comparing methods across many settings
#
# Average ranks, the Friedman / Iman-Davenport omnibus test and Holm's
# step-down procedure against the best-ranked method, on the shipped tables.

# %%
from owaloss.stats import FIXTURE_METRICS, format_report, holm, load_fixture, rank_rows, summarize

for metric in FIXTURE_METRICS:
    table = load_fixture(metric)
    print(format_report(metric, summarize(table), holm(table)))
    print()

# %% [markdown]
# Ties share the mean of their positions, and each row's ranks sum to
# `k (k + 1) / 2`.

# %%
table = load_fixture("min_f1")
ranks = rank_rows(table)
print(ranks[:5])
print("row sums:", set(ranks.sum(axis=1).tolist()))
uncorrected = summarize(table, tie_correction=False)
print("F without tie correction:", round(uncorrected.iman_davenport_F, 3))
