"""Command-line front end: ``owaloss {train,sweep,compare,weights,gen-data}``.

Exit codes: 0 success, 2 usage or configuration error, 3 runtime failure.

A JSON config file (``--config``) may hold any of these sections; flags
given on the command line override file values::

    {
      "data":  {"synthetic": "3:0.9,0.09,0.01", "n": 3000, "spread": 1.0,
                "features": 2, "center_box": 5.0, "seed": 0,
                "csv": null, "label_column": "-1", "header": true,
                "train_fraction": 0.8},
      "train": {"preset": "desk", "learning_rate": 0.03, "momentum": 0.9,
                "epochs": 40, "batch_size": 32, "seed": 0, "resort": "batch"},
      "loss":  {"name": "owa", "base": "ce", "family": "exponential",
                "alpha": 0.8, "gamma": 0.0, "beta": 1.0, "costs": null,
                "class_weights": null, "tune": false},
      "model": {"hidden": [64], "activation": "relu"},
      "sweep": {"families": ["basic", "quadratic", "exponential"],
                "alphas": [0.2, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99],
                "gammas": [0, 1, 2, 5], "seeds": [0, 1, 2]},
      "output": "runs"
    }
"""

from __future__ import annotations

import argparse
import copy
import csv
import hashlib
import io
import json
import logging
import math
import os
import sys
import tempfile
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import experiment as ex
from .aggregation import Family, QuantifierSingularityError, QuantifierSpec, owa_weights
from .data import Dataset, ImbalanceSpec, ParseError, load_csv, make_gaussian_blobs, save_csv
from .losses import Aggregation, LossConfig
from .network import TrainConfig, TrainingError, save_checkpoint
from .stats import FIXTURE_METRICS, ResultTable, format_report, holm, load_fixture, report_dict, summarize

logger = logging.getLogger("owaloss")

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 2, 3

PRESETS = {"reference": ex.REFERENCE_PRESET, "desk": ex.DESK_PRESET}

DEFAULTS = {
    "data": {
        "synthetic": "3:0.9,0.09,0.01",
        "n": 3000,
        "spread": 1.0,
        "features": 2,
        "center_box": 5.0,
        "seed": 0,
        "csv": None,
        "label_column": "-1",
        "header": True,
        "train_fraction": 0.8,
    },
    "train": {"preset": "desk", "seed": 0, "resort": "batch"},
    "loss": {
        "name": "ce",
        "base": "ce",
        "family": "exponential",
        "alpha": 0.8,
        "gamma": 0.0,
        "beta": 1.0,
        "costs": None,
        "class_weights": None,
        "tune": False,
    },
    "model": {"hidden": [64], "activation": "relu"},
    "sweep": {
        "families": [f.value for f in ex.FAMILIES],
        "alphas": list(ex.ALPHA_GRID),
        "gammas": list(ex.GAMMA_GRID),
        "seeds": [0, 1, 2],
    },
    "output": "runs",
}

SWEEP_COLUMNS = ["family", "alpha", "seed", "status", "accuracy", "f1_macro", "min_recall", "min_f1", "message"]


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------- helpers


def _floats(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    return [float(x) for x in str(text).split(",") if x.strip()]


def _ints(text) -> list[int]:
    if isinstance(text, (list, tuple)):
        return [int(x) for x in text]
    return [int(x) for x in str(text).split(",") if x.strip()]


def parse_synthetic(text: str) -> tuple[float, ...]:
    """``"C:p1,...,pC"`` (or just ``"p1,...,pC"``) -> proportions."""
    head, sep, tail = str(text).partition(":")
    props = _floats(tail if sep else head)
    if sep and int(head) != len(props):
        raise ConfigError(f"--synthetic declares {head} classes but lists {len(props)} proportions")
    return tuple(props)


def atomic_write(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def _flag_overrides(args) -> dict:
    """Map explicitly given flags (non-None) into config sections."""
    table = {
        "synthetic": ("data", "synthetic"),
        "n": ("data", "n"),
        "spread": ("data", "spread"),
        "features": ("data", "features"),
        "center_box": ("data", "center_box"),
        "data_seed": ("data", "seed"),
        "csv": ("data", "csv"),
        "label_column": ("data", "label_column"),
        "train_fraction": ("data", "train_fraction"),
        "preset": ("train", "preset"),
        "learning_rate": ("train", "learning_rate"),
        "momentum": ("train", "momentum"),
        "epochs": ("train", "epochs"),
        "batch_size": ("train", "batch_size"),
        "seed": ("train", "seed"),
        "resort": ("train", "resort"),
        "loss": ("loss", "name"),
        "base": ("loss", "base"),
        "family": ("loss", "family"),
        "alpha": ("loss", "alpha"),
        "gamma": ("loss", "gamma"),
        "beta": ("loss", "beta"),
        "costs": ("loss", "costs"),
        "class_weights": ("loss", "class_weights"),
        "hidden": ("model", "hidden"),
        "activation": ("model", "activation"),
        "families": ("sweep", "families"),
        "alphas": ("sweep", "alphas"),
        "gammas": ("sweep", "gammas"),
        "seeds": ("sweep", "seeds"),
    }
    out: dict = {}
    for attr, (section, key) in table.items():
        value = getattr(args, attr, None)
        if value is not None:
            out.setdefault(section, {})[key] = value
    if getattr(args, "tune", False):
        out.setdefault("loss", {})["tune"] = True
    if getattr(args, "no_header", False):
        out.setdefault("data", {})["header"] = False
    if getattr(args, "out", None) is not None:
        out["output"] = args.out
    return out


def resolve_config(args) -> dict:
    cfg = copy.deepcopy(DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                cfg = _merge(cfg, json.load(fh))
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {args.config}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {args.config} is not valid JSON: {exc}") from None
    cfg = _merge(cfg, _flag_overrides(args))
    # expand the preset so the resolved config records every optimizer value
    preset = cfg["train"].get("preset") or "desk"
    if preset not in PRESETS:
        raise ConfigError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
    cfg["train"] = {**PRESETS[preset], **cfg["train"]}
    if cfg["data"].get("csv"):
        cfg["data"] = {k: v for k, v in cfg["data"].items() if k in ("csv", "label_column", "header", "train_fraction", "seed")}
    else:
        cfg["data"].pop("csv", None)
        cfg["data"].pop("label_column", None)
        cfg["data"].pop("header", None)
    for key in ("costs", "class_weights"):
        if cfg["loss"].get(key) is not None:
            cfg["loss"][key] = _floats(cfg["loss"][key])
    cfg["model"]["hidden"] = _ints(cfg["model"]["hidden"])
    sw = cfg["sweep"]
    sw["families"] = [Family.parse(f).value for f in (sw["families"].split(",") if isinstance(sw["families"], str) else sw["families"])]
    sw["alphas"], sw["gammas"], sw["seeds"] = _floats(sw["alphas"]), _floats(sw["gammas"]), _ints(sw["seeds"])
    return cfg


def build_dataset(data_cfg: dict) -> Dataset:
    if data_cfg.get("csv"):
        return load_csv(data_cfg["csv"], bool(data_cfg.get("header", True)), str(data_cfg.get("label_column", "-1")))
    spec = ImbalanceSpec(
        parse_synthetic(data_cfg["synthetic"]),
        int(data_cfg["n"]),
        float(data_cfg["spread"]),
        int(data_cfg["features"]),
        int(data_cfg["seed"]),
        float(data_cfg["center_box"]),
    )
    return make_gaussian_blobs(spec)


def build_loss(loss_cfg: dict, n_classes: int, family=None, alpha=None) -> LossConfig:
    name = loss_cfg["name"]
    base = loss_cfg.get("base", "ce")
    gamma = float(loss_cfg.get("gamma", 0.0))
    if name == "ce":
        return LossConfig()
    if name == "focal":
        return LossConfig(base="focal", gamma=gamma)
    if name == "wce":
        cw = loss_cfg.get("class_weights")
        if cw is None:
            raise ConfigError("wce loss needs --class-weights")
        return LossConfig(class_weights=cw)
    if name not in ("owa", "owawa"):
        raise ConfigError(f"unknown loss {name!r}")
    q = QuantifierSpec(family or loss_cfg["family"], float(alpha if alpha is not None else loss_cfg["alpha"]))
    if name == "owa":
        return LossConfig(base=base, gamma=gamma, aggregation=Aggregation.OWA, quantifier=q, class_weights=loss_cfg.get("class_weights"))
    costs = loss_cfg.get("costs")
    if costs is None or len(costs) != n_classes:
        raise ConfigError(f"owawa loss needs --costs with {n_classes} entries")
    return LossConfig(base=base, gamma=gamma, aggregation=Aggregation.OWAWA, quantifier=q, costs=costs, beta=float(loss_cfg["beta"]))


def build_train_config(train_cfg: dict, loss: LossConfig, seed=None) -> TrainConfig:
    return TrainConfig(
        learning_rate=float(train_cfg["learning_rate"]),
        momentum=float(train_cfg["momentum"]),
        epochs=int(train_cfg["epochs"]),
        batch_size=int(train_cfg["batch_size"]),
        seed=int(train_cfg["seed"] if seed is None else seed),
        loss=loss,
        resort=train_cfg.get("resort", "batch"),
    )


def run_id(cfg: dict) -> str:
    """Hash of the resolved config (training seed included, output root excluded)."""
    blob = json.dumps({k: v for k, v in cfg.items() if k != "output"}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def history_csv(history: list[dict]) -> str:
    buf = io.StringIO()
    if history:
        w = csv.DictWriter(buf, fieldnames=list(history[0]), lineterminator="\n")
        w.writeheader()
        for rec in history:
            w.writerow({k: (repr(float(v)) if isinstance(v, float) else v) for k, v in rec.items()})
    return buf.getvalue()


def read_history_csv(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return [{k: (int(v) if k == "epoch" else float(v)) for k, v in row.items()} for row in csv.DictReader(fh)]


# ---------------------------------------------------------------- commands


def cmd_train(args) -> int:
    cfg = resolve_config(args)
    ds = build_dataset(cfg["data"])
    split_seed = int(cfg["data"].get("seed", 0))
    train, test = ex.prepare(ds, float(cfg["data"]["train_fraction"]), split_seed)
    hidden, act = cfg["model"]["hidden"], cfg["model"]["activation"]
    loss = build_loss(cfg["loss"], ds.n_classes)
    tcfg = build_train_config(cfg["train"], loss)
    selection = None
    if cfg["loss"].get("tune"):
        loss, selection = _tune(cfg, train, tcfg, hidden, act)
        tcfg = replace(tcfg, loss=loss)
    rid = run_id(cfg)
    outdir = Path(cfg["output"]) / rid
    result = ex.train_and_evaluate(train, test, tcfg, hidden, act, record_test=True)
    metrics = {
        "run_id": rid,
        "loss": loss.label,
        "test": result.test.to_dict(),
        "train": result.train.to_dict(),
        "class_names": list(ds.class_names),
    }
    if selection is not None:
        metrics["selection"] = selection
    atomic_write(outdir / "metrics.json", json.dumps(metrics, indent=2, sort_keys=True) + "\n")
    atomic_write(outdir / "history.csv", history_csv(result.history))
    atomic_write(outdir / "config-resolved.json", json.dumps(cfg, indent=2, sort_keys=True) + "\n")
    tmp = outdir / ".checkpoint.tmp"
    save_checkpoint(result.params, tmp)
    os.replace(tmp, outdir / "checkpoint")
    summary = {k: round(100 * v, 2) for k, v in result.test.summary().items()}
    print(f"run {rid} [{loss.label}] test (%): {json.dumps(summary)}")
    print(f"outputs in {outdir}")
    return EXIT_OK


def _tune(cfg, train, tcfg, hidden, act):
    """Validation-F1 selection of alpha (OWA losses) or gamma (focal)."""
    name = cfg["loss"]["name"]
    if name in ("owa", "owawa"):
        grid = cfg["sweep"]["alphas"]
        candidates = [build_loss(cfg["loss"], train.n_classes, alpha=a) for a in grid]
    elif name == "focal":
        grid = cfg["sweep"]["gammas"]
        candidates = [LossConfig(base="focal", gamma=g) for g in grid]
    else:
        raise ConfigError(f"--tune is only meaningful for owa, owawa and focal losses, not {name!r}")
    best, scores = ex.select_loss(train, candidates, tcfg, hidden, act, seed=tcfg.seed)
    return best, {"grid": grid, "validation_f1_macro": scores, "chosen": best.label}


def _sweep_cell(cell):
    family, alpha, seed, cfg = cell
    row = {"family": family, "alpha": alpha, "seed": seed, "status": "ok", "message": ""}
    try:
        data_cfg = dict(cfg["data"], seed=seed)
        ds = build_dataset(data_cfg)
        train, test = ex.prepare(ds, float(cfg["data"]["train_fraction"]), seed)
        loss = LossConfig(aggregation=Aggregation.OWA, quantifier=QuantifierSpec(family, alpha))
        tcfg = build_train_config(cfg["train"], loss, seed=seed)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            res = ex.train_and_evaluate(train, test, tcfg, cfg["model"]["hidden"], cfg["model"]["activation"])
        row.update({k: repr(v) for k, v in res.test.summary().items()})
    except (TrainingError, ArithmeticError, ValueError, RuntimeError) as exc:
        row.update(status="failed", message=str(exc).replace("\n", " "))
    return row


def cmd_sweep(args) -> int:
    cfg = resolve_config(args)
    sw = cfg["sweep"]
    if not (sw["families"] and sw["alphas"] and sw["seeds"]):
        raise ConfigError("sweep grid is empty")
    cells = [(f, a, s, cfg) for f in sw["families"] for a in sw["alphas"] for s in sw["seeds"]]
    jobs = max(1, int(args.jobs or 1))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_cell, cells))
    else:
        rows = [_sweep_cell(c) for c in cells]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n", restval="")
    w.writeheader()
    w.writerows(rows)
    out = Path(args.output) if args.output else Path(cfg["output"]) / f"sweep-{run_id(cfg)}.csv"
    atomic_write(out, buf.getvalue())
    failed = sum(r["status"] != "ok" for r in rows)
    print(f"{len(rows)} cells ({failed} failed) -> {out}")
    for (family, alpha), med in sweep_medians(read_sweep_csv(out)).items():
        print(f"  {family:<12} alpha={alpha:<5g} median f1_macro={med:.4f}")
    return EXIT_OK


def read_sweep_csv(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    for r in rows:
        r["alpha"] = float(r["alpha"])
        r["seed"] = int(r["seed"])
        for k in ("accuracy", "f1_macro", "min_recall", "min_f1"):
            r[k] = float(r[k]) if r.get(k) not in (None, "") else math.nan
    return rows


def sweep_medians(rows, metric: str = "f1_macro") -> dict:
    groups: dict = {}
    for r in rows:
        if r["status"] == "ok":
            groups.setdefault((r["family"], r["alpha"]), []).append(r[metric])
    return {k: float(np.median(v)) for k, v in groups.items()}


def _load_table(path, metric, lower_is_better) -> ResultTable:
    with open(path, newline="", encoding="utf-8") as fh:
        text = fh.read()
    header = next(csv.reader(io.StringIO(text)), [])
    if "method" in header and "setting" in header:
        # long format: one row per (setting, method) with a column named after the metric
        rows = list(csv.DictReader(io.StringIO(text)))
        settings = list(dict.fromkeys(r["setting"] for r in rows))
        methods = list(dict.fromkeys(r["method"] for r in rows))
        cell = {(r["setting"], r["method"]): float(r[metric]) for r in rows}
        missing = [(s, m) for s in settings for m in methods if (s, m) not in cell]
        if missing:
            raise ConfigError(f"{path}: ragged table, missing {missing[:3]}")
        values = np.array([[cell[s, m] for m in methods] for s in settings])
        return ResultTable(methods, settings, values, not lower_is_better)
    return ResultTable.from_csv(io.StringIO(text), not lower_is_better)


def cmd_compare(args) -> int:
    sources = []
    if args.fixtures or not args.tables:
        metrics = [args.metric] if args.metric else list(FIXTURE_METRICS)
        sources += [(f"{m} (shipped fixture)", load_fixture(m)) for m in metrics]
    for path in args.tables or []:
        try:
            sources.append((f"{args.metric or 'value'} ({path})", _load_table(path, args.metric or "value", args.lower_is_better)))
        except (ValueError, KeyError) as exc:
            raise ConfigError(f"cannot read result table {path}: {exc}") from None
    blocks, payload = [], {}
    for title, table in sources:
        summary = summarize(table, tie_correction=not args.no_tie_correction)
        hres = holm(table, args.beta, two_sided=not args.one_sided)
        blocks.append(format_report(title, summary, hres))
        payload[title] = report_dict(summary, hres)
    text = "\n\n".join(blocks)
    print(text)
    if args.json:
        atomic_write(args.json, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def cmd_weights(args) -> int:
    spec = QuantifierSpec(args.family, args.alpha)
    # the warning is printed below; keep the logger from repeating it
    lib_logger = logging.getLogger("owaloss.aggregation")
    level = lib_logger.level
    lib_logger.setLevel(logging.ERROR)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            w = owa_weights(spec, args.classes, strict=args.strict)
    finally:
        lib_logger.setLevel(level)
    for warning in caught:
        print(f"warning: {warning.message}", file=sys.stderr)
    print(f"{'c':>4} {'w_c':>14} {'cumulative':>14}")
    for c, (wc, cum) in enumerate(zip(w, np.cumsum(w)), start=1):
        print(f"{c:>4} {wc:>14.10f} {cum:>14.10f}")
    return EXIT_OK


def cmd_gen_data(args) -> int:
    cfg = resolve_config(args)
    ds = build_dataset(cfg["data"])
    out = args.output
    if out in (None, "-"):
        save_csv(ds, sys.stdout)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        save_csv(ds, out)
        print(f"{len(ds)} rows, class counts {ds.class_counts().tolist()} -> {out}")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _add_data_flags(p):
    g = p.add_argument_group("data")
    g.add_argument("--synthetic", help="class proportions, e.g. 3:0.9,0.09,0.01")
    g.add_argument("--n", type=int, help="number of synthetic samples (default 3000)")
    g.add_argument("--spread", type=float, help="cluster standard deviation (default 1.0)")
    g.add_argument("--features", type=int, help="feature dimension (default 2)")
    g.add_argument("--center-box", type=float, help="centers drawn from [-b, b]^d (default 5.0)")
    g.add_argument("--data-seed", type=int, help="seed for data generation and the train/test split")
    g.add_argument("--csv", help="load a CSV dataset instead of generating one")
    g.add_argument("--label-column", help="label column index or name (default -1)")
    g.add_argument("--no-header", action="store_true", help="CSV has no header row")
    g.add_argument("--train-fraction", type=float, help="stratified train share (default 0.8)")


def _add_train_flags(p):
    g = p.add_argument_group("training")
    g.add_argument("--preset", choices=sorted(PRESETS), help="reference: lr 0.003, momentum 0.9, 5 epochs; desk (default): lr 0.03, 40 epochs")
    g.add_argument("--learning-rate", "--lr", type=float)
    g.add_argument("--momentum", type=float)
    g.add_argument("--epochs", type=int)
    g.add_argument("--batch-size", type=int)
    g.add_argument("--seed", type=int, help="training seed (init and shuffling)")
    g.add_argument("--resort", choices=["batch", "epoch"], help="re-rank class losses every batch (default) or once per epoch")
    g.add_argument("--hidden", help="hidden layer widths, e.g. 64 or 64,32")
    g.add_argument("--activation", choices=["relu", "tanh"])


def _add_loss_flags(p, with_name=True):
    g = p.add_argument_group("loss")
    if with_name:
        g.add_argument("--loss", choices=["ce", "wce", "focal", "owa", "owawa"])
        g.add_argument("--tune", action="store_true", help="choose alpha (owa/owawa) or gamma (focal) by validation macro-F1")
    g.add_argument("--base", choices=["ce", "focal"], help="base loss aggregated by owa/owawa")
    g.add_argument("--family", help="quantifier: basic, quadratic or exponential")
    g.add_argument("--alpha", type=float)
    g.add_argument("--gamma", type=float, help="focal loss exponent")
    g.add_argument("--beta", type=float, help="owawa trade-off: 1 = pure OWA, 0 = fixed costs")
    g.add_argument("--costs", help="owawa cost vector, comma separated, sums to 1")
    g.add_argument("--class-weights", help="weighted-CE class weights, comma separated")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="owaloss", description="Class-imbalance losses built on OWA aggregation, plus rank-based method comparison.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train one model and write metrics, history and checkpoint")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--out", help="output root directory (default runs/)")
    _add_data_flags(p)
    _add_train_flags(p)
    _add_loss_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("sweep", help="OWA quantifier family x alpha x seed grid")
    p.add_argument("--config")
    p.add_argument("--out")
    p.add_argument("--output", help="sweep CSV path (default <out>/sweep-<id>.csv)")
    p.add_argument("--families", help="comma separated quantifier families")
    p.add_argument("--alphas", help="comma separated alpha grid")
    p.add_argument("--gammas", help=argparse.SUPPRESS)
    p.add_argument("--seeds", help="comma separated replicate seeds")
    p.add_argument("--jobs", type=int, default=1)
    _add_data_flags(p)
    _add_train_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", help="average ranks, Friedman / Iman-Davenport and Holm tests")
    p.add_argument("tables", nargs="*", help="result CSVs (setting,<method>,...); default: shipped fixtures")
    p.add_argument("--fixtures", action="store_true", help="include the shipped fixtures")
    p.add_argument("--metric", help=f"fixture name ({', '.join(FIXTURE_METRICS)}) or value column of long-format tables")
    p.add_argument("--beta", type=float, default=0.05, help="Holm significance level")
    p.add_argument("--no-tie-correction", action="store_true")
    p.add_argument("--one-sided", action="store_true", help="one-sided Nemenyi p-values")
    p.add_argument("--lower-is-better", action="store_true")
    p.add_argument("--json", help="also write the statistics as JSON")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("weights", help="print quantifier-generated OWA weights")
    p.add_argument("--family", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--classes", "-C", type=int, required=True)
    p.add_argument("--strict", action="store_true", help="fail instead of clamping at the quadratic pole")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("gen-data", help="write a synthetic imbalanced dataset as CSV")
    p.add_argument("--output", "-o", help="CSV path (default stdout)")
    _add_data_flags(p)
    p.set_defaults(func=cmd_gen_data)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except TrainingError as exc:
        print(f"error: training diverged: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except (ConfigError, ParseError, QuantifierSingularityError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
