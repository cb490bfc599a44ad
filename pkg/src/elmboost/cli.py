"""Command-line experiment harness.

Subcommands: ``baseline`` (conventional single-model sweeps over hidden
node counts), ``train`` (one partitioned-pipeline run, persisting model,
metrics and manifest), ``sweep`` (parameter-grid accuracy matrices),
``speedup`` (wall-time scaling over split counts), ``stability``
(mean/std of accuracy over repeated seeded runs) and ``predict`` (apply a
saved model to an svmlight file).

Every command writes CSV files plus a JSON run manifest into ``--out``.
Option precedence is CLI flag over ``--config`` file over built-in
defaults; the effective configuration is echoed into the manifest, and a
manifest can itself be passed back as ``--config`` to reproduce a run.

Exit codes: 0 success, 1 usage error, 2 data error, 3 training failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .boost import AlphaVariant, BoostConfig, WeightingMode
from .dataio import (
    Dataset,
    align_to,
    load_svmlight,
    minmax_params,
    parse_features,
    scale_datasets,
)
from .elm import Activation, elm_predict, elm_train
from .engine import (
    ExperimentConfig,
    GlobalEnsemble,
    available_parallelism,
    global_predict,
    speedup_report,
    train_pipeline,
)
from .errors import DataError, TrainingError
from .metrics import (
    METRICS_CSV_HEADER,
    MetricsReport,
    evaluate,
    format_report,
    metrics_csv_row,
    stability_stats,
)
from .seeding import BASELINE_STREAM, REPEAT_STREAM, SYNTHETIC_STREAM, derive_seed
from .serialize import (
    global_record,
    load_record,
    parse_record,
    record_label_map,
    save_record,
)
from .synthetic import gaussian_mixture

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_TRAINING = 3

DEFAULTS = {
    "seed": 42,
    "ridge": 1e-8,
    "activation": "sigmoid",
    "scale": "none",
    "repeats": 5,
    "weighting": "weighted_solve",
    "alpha_variant": "samme",
    "out": ".",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; the harness reserves 2 for data errors.
    def error(self, message):
        raise UsageError(message)


def nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise UsageError(f"expected a non-negative integer, got {text!r}")
    return value


def parse_int_list(text: str) -> list[int]:
    """Accept ``a,b,c`` or a ``start:stop:step`` range (stop exclusive)."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise UsageError(f"bad range {text!r}; expected start:stop[:step]")
        start, stop = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) == 3 else 1
        values = list(range(start, stop, step))
    else:
        values = [int(v) for v in text.split(",") if v.strip()]
    if not values:
        raise UsageError(f"empty value list {text!r}")
    if any(v < 1 for v in values):
        raise UsageError(f"values must be positive, got {values}")
    return values


def parse_synthetic_spec(text: str) -> dict:
    """Parse ``n=500000,p=18,k=2`` style synthetic-dataset specs."""
    spec = {}
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"bad synthetic spec item {item!r}; expected key=value")
        spec[key.strip()] = int(value)
    missing = {"n", "p", "k"} - spec.keys()
    if missing:
        raise UsageError(f"synthetic spec missing {sorted(missing)}")
    return spec


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def _load_dataset(path: str, expected_dims: int | None = None) -> Dataset:
    try:
        return load_svmlight(path, expected_dims=expected_dims)
    except OSError as exc:
        raise DataError(f"{path}: {exc}") from exc
    except DataError as exc:
        raise DataError(f"{path}: {exc}") from exc


def _load_pair(train_path: str, test_path: str) -> tuple[Dataset, Dataset]:
    """Load train and test files, forcing the test set into the train
    feature width and label space."""
    train = _load_dataset(train_path)
    test = _load_dataset(test_path, expected_dims=train.n_features)
    try:
        test = align_to(train, test)
    except DataError as exc:
        raise DataError(f"{test_path}: {exc}") from exc
    return train, test


def _dataset_entry(path: str, ds: Dataset) -> dict:
    return {
        "path": str(path),
        "sha256": _sha256(path),
        "n": ds.n_samples,
        "p": ds.n_features,
        "k": ds.n_classes,
    }


def _write_csv(path: Path, header: str, rows: Sequence[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(header + "\n")
        for row in rows:
            handle.write(row + "\n")


def _write_manifest(
    out_dir: Path,
    command: str,
    effective: dict,
    datasets: dict,
    results: dict,
    timing: dict,
    outputs: Sequence[str],
) -> Path:
    manifest = {
        "software_version": __version__,
        "command": command,
        "effective_config": effective,
        "datasets": datasets,
        "results": results,
        "timing": timing,
        "outputs": list(outputs),
    }
    path = out_dir / "manifest.json"
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return path


def _merge_config(args: argparse.Namespace, keys: Sequence[str]) -> dict:
    """Flag > config file > default, for every key the command understands."""
    from_file = {}
    recorded_datasets = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, "r", encoding="utf-8") as handle:
                loaded = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            raise DataError(f"{args.config}: {exc}") from exc
        # A manifest doubles as a config file through its echoed config.
        from_file = loaded.get("effective_config", loaded)
        recorded_datasets = loaded.get("datasets", {})
    effective = {}
    for key in keys:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            effective[key] = flag_value
        elif key in from_file and from_file[key] is not None:
            effective[key] = from_file[key]
        elif key in DEFAULTS:
            effective[key] = DEFAULTS[key]
        else:
            effective[key] = None
    _verify_recorded_hashes(recorded_datasets, effective)
    return effective


def _verify_recorded_hashes(recorded: dict, effective: dict) -> None:
    """Replaying a manifest requires the same dataset bytes it recorded."""
    for entry in recorded.values():
        if not isinstance(entry, dict) or "sha256" not in entry:
            continue
        path = entry.get("path")
        if path and path in (effective.get("train"), effective.get("test")):
            try:
                actual = _sha256(path)
            except OSError as exc:
                raise DataError(f"{path}: {exc}") from exc
            if actual != entry["sha256"]:
                raise DataError(
                    f"{path}: contents changed since the manifest was written "
                    f"(sha256 {actual[:16]}... != recorded {entry['sha256'][:16]}...)"
                )


def _require(effective: dict, keys: Sequence[str], command: str) -> None:
    missing = [k for k in keys if effective.get(k) is None]
    if missing:
        raise UsageError(f"{command}: missing required option(s): " + ", ".join(f"--{k}" for k in missing))


def _experiment_config(effective: dict, workers: int) -> ExperimentConfig:
    boost = BoostConfig(
        n_rounds=int(effective["t"]),
        n_hidden=int(effective["nh"]),
        activation=Activation(effective["activation"]),
        ridge=float(effective["ridge"]),
        weighting=WeightingMode(effective["weighting"]),
        alpha_variant=AlphaVariant(effective["alpha_variant"]),
        seed=int(effective["seed"]),
    )
    return ExperimentConfig(
        n_splits=int(effective["m"]),
        boost=boost,
        seed=int(effective["seed"]),
        repeats=int(effective.get("repeats") or 1),
        workers=workers,
    )


def _out_dir(effective: dict) -> Path:
    out = Path(effective["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _workers(args: argparse.Namespace) -> int:
    return args.workers if getattr(args, "workers", None) else available_parallelism()


# ---------------------------------------------------------------------------
# subcommands


def cmd_baseline(args: argparse.Namespace) -> int:
    keys = ["train", "test", "nh", "activation", "ridge", "repeats", "seed", "scale", "out"]
    effective = _merge_config(args, keys)
    _require(effective, ["train", "test", "nh"], "baseline")
    nh_values = effective["nh"] if isinstance(effective["nh"], list) else parse_int_list(str(effective["nh"]))
    effective["nh"] = nh_values

    started = time.time()
    train_ds, test_ds = _load_pair(effective["train"], effective["test"])
    train_ds, test_ds = scale_datasets(effective["scale"], train_ds, test_ds)
    dataset_name = Path(effective["train"]).stem
    seed = int(effective["seed"])
    repeats = int(effective["repeats"])

    rows = []
    results = {}
    for nh in nh_values:
        reports = []
        for repeat in range(repeats):
            model = elm_train(
                train_ds,
                nh,
                activation=Activation(effective["activation"]),
                ridge=float(effective["ridge"]),
                seed=derive_seed(BASELINE_STREAM, seed, nh, repeat),
            )
            predicted = elm_predict(model, test_ds.features)
            reports.append(evaluate(test_ds.labels, predicted, test_ds.n_classes))
        mean = _mean_report(reports)
        rows.append(
            f"{nh},{mean.accuracy!r},{mean.precision_macro!r},{mean.recall_macro!r},{mean.f1!r}"
        )
        results[str(nh)] = {"accuracy": mean.accuracy, "f1": mean.f1}
        log.info("baseline %s nh=%d accuracy=%.4f f1=%.4f", dataset_name, nh, mean.accuracy, mean.f1)

    out = _out_dir(effective)
    _write_csv(out / "baseline.csv", "nh,accuracy,precision_macro,recall_macro,f1", rows)
    _write_manifest(
        out,
        "baseline",
        effective,
        {
            "train": _dataset_entry(effective["train"], train_ds),
            "test": _dataset_entry(effective["test"], test_ds),
        },
        results,
        {"total_seconds": time.time() - started},
        ["baseline.csv"],
    )
    return EXIT_OK


def _mean_report(reports: Sequence[MetricsReport]) -> MetricsReport:
    per_class_count = len(reports[0].per_class)
    return MetricsReport(
        accuracy=float(np.mean([r.accuracy for r in reports])),
        precision_macro=float(np.mean([r.precision_macro for r in reports])),
        recall_macro=float(np.mean([r.recall_macro for r in reports])),
        f1=float(np.mean([r.f1 for r in reports])),
        per_class=tuple(
            (
                float(np.mean([r.per_class[c][0] for r in reports])),
                float(np.mean([r.per_class[c][1] for r in reports])),
            )
            for c in range(per_class_count)
        ),
    )


def cmd_train(args: argparse.Namespace) -> int:
    keys = [
        "train", "test", "m", "t", "nh", "activation", "ridge", "seed",
        "scale", "weighting", "alpha_variant", "out",
    ]
    effective = _merge_config(args, keys)
    _require(effective, ["train", "test", "m", "t", "nh"], "train")

    started = time.time()
    raw_train, raw_test = _load_pair(effective["train"], effective["test"])
    scaling = None
    if effective["scale"] == "minmax":
        lo, hi = minmax_params(raw_train)
        scaling = {"mode": "minmax", "min": lo.tolist(), "max": hi.tolist()}
    train_ds, test_ds = scale_datasets(effective["scale"], raw_train, raw_test)
    dataset_name = Path(effective["train"]).stem

    cfg = _experiment_config(effective, _workers(args))
    ensemble = train_pipeline(train_ds, cfg)
    predicted = global_predict(ensemble, test_ds.features)
    report = evaluate(test_ds.labels, predicted, test_ds.n_classes)

    out = _out_dir(effective)
    _write_csv(
        out / "metrics.csv",
        METRICS_CSV_HEADER,
        [
            metrics_csv_row(
                dataset_name, cfg.n_splits, cfg.boost.n_rounds, cfg.boost.n_hidden,
                cfg.seed, report,
            )
        ],
    )
    record = global_record(ensemble, label_map=train_ds.label_map)
    if scaling is not None:
        record["scaling"] = scaling
    save_record(out / "model.json", record)
    _write_manifest(
        out,
        "train",
        effective,
        {
            "train": _dataset_entry(effective["train"], train_ds),
            "test": _dataset_entry(effective["test"], test_ds),
        },
        {
            "accuracy": report.accuracy,
            "precision_macro": report.precision_macro,
            "recall_macro": report.recall_macro,
            "f1": report.f1,
            "realized_chunks": len(ensemble.chunks),
        },
        {"total_seconds": time.time() - started, "reduce_seconds": ensemble.reduce_seconds},
        ["metrics.csv", "model.json"],
    )
    print(format_report(report))
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    keys = [
        "train", "test", "m", "t", "nh", "activation", "ridge", "seed",
        "repeats", "scale", "weighting", "alpha_variant", "out",
    ]
    effective = _merge_config(args, keys)
    _require(effective, ["train", "test", "m", "t", "nh"], "sweep")
    m_values = _as_int_list(effective, "m")
    t_values = _as_int_list(effective, "t")
    nh_values = _as_int_list(effective, "nh")

    started = time.time()
    train_ds, test_ds = _load_pair(effective["train"], effective["test"])
    train_ds, test_ds = scale_datasets(effective["scale"], train_ds, test_ds)
    dataset_name = Path(effective["train"]).stem
    seed = int(effective["seed"])
    repeats = int(effective["repeats"])
    workers = _workers(args)

    long_rows = []
    accuracies: dict[tuple[int, int, int], list[float]] = {}
    for m in m_values:
        for t in t_values:
            for nh in nh_values:
                cell = []
                for repeat in range(repeats):
                    run_seed = derive_seed(REPEAT_STREAM, seed, m, t, nh, repeat)
                    run_effective = dict(effective, m=m, t=t, nh=nh, seed=run_seed)
                    cfg = _experiment_config(run_effective, workers)
                    try:
                        ensemble = train_pipeline(train_ds, cfg)
                    except TrainingError as exc:
                        log.warning(
                            "sweep run failed (m=%d t=%d nh=%d repeat=%d): %s",
                            m, t, nh, repeat, exc,
                        )
                        continue
                    predicted = global_predict(ensemble, test_ds.features)
                    report = evaluate(test_ds.labels, predicted, test_ds.n_classes)
                    cell.append(report.accuracy)
                    long_rows.append(
                        f"{dataset_name},{m},{t},{nh},{repeat},{run_seed},"
                        f"{len(ensemble.chunks)},{report.accuracy!r},"
                        f"{report.precision_macro!r},{report.recall_macro!r},{report.f1!r}"
                    )
                accuracies[(m, t, nh)] = cell
                if not cell:
                    log.warning("sweep cell (m=%d, t=%d, nh=%d): every run failed", m, t, nh)

    def matrix_rows(row_values, col_values, select) -> list[str]:
        rows = []
        for rv in row_values:
            cells = []
            for cv in col_values:
                pool = [
                    acc
                    for key, accs in accuracies.items()
                    for acc in accs
                    if select(key) == (rv, cv)
                ]
                cells.append(repr(float(np.mean(pool))) if pool else "nan")
            rows.append(",".join([str(rv)] + cells))
        return rows

    out = _out_dir(effective)
    _write_csv(
        out / "sweep_long.csv",
        "dataset,m,t,nh,repeat,seed,realized_chunks,accuracy,precision_macro,recall_macro,f1",
        long_rows,
    )
    _write_csv(
        out / "heatmap_m_t.csv",
        ",".join(["m"] + [str(t) for t in t_values]),
        matrix_rows(m_values, t_values, lambda key: (key[0], key[1])),
    )
    _write_csv(
        out / "heatmap_m_nh.csv",
        ",".join(["m"] + [str(nh) for nh in nh_values]),
        matrix_rows(m_values, nh_values, lambda key: (key[0], key[2])),
    )
    _write_csv(
        out / "heatmap_t_nh.csv",
        ",".join(["t"] + [str(nh) for nh in nh_values]),
        matrix_rows(t_values, nh_values, lambda key: (key[1], key[2])),
    )
    best = max(
        ((np.mean(v), k) for k, v in accuracies.items() if v),
        default=(float("nan"), None),
    )
    _write_manifest(
        out,
        "sweep",
        dict(effective, m=m_values, t=t_values, nh=nh_values),
        {
            "train": _dataset_entry(effective["train"], train_ds),
            "test": _dataset_entry(effective["test"], test_ds),
        },
        {"best_mean_accuracy": float(best[0]), "best_cell": best[1]},
        {"total_seconds": time.time() - started},
        ["sweep_long.csv", "heatmap_m_t.csv", "heatmap_m_nh.csv", "heatmap_t_nh.csv"],
    )
    return EXIT_OK


def _as_int_list(effective: dict, key: str) -> list[int]:
    value = effective[key]
    if isinstance(value, list):
        return [int(v) for v in value]
    return parse_int_list(str(value))


def cmd_speedup(args: argparse.Namespace) -> int:
    keys = [
        "train", "synthetic", "m", "t", "nh", "activation", "ridge", "seed",
        "scale", "weighting", "alpha_variant", "out",
    ]
    effective = _merge_config(args, keys)
    _require(effective, ["m", "t", "nh"], "speedup")
    split_counts = _as_int_list(effective, "m")
    if len(split_counts) < 2:
        raise UsageError("speedup: need at least two --m values")

    started = time.time()
    if effective.get("synthetic"):
        spec = parse_synthetic_spec(str(effective["synthetic"]))
        train_ds = gaussian_mixture(
            spec["n"], spec["p"], spec["k"],
            derive_seed(SYNTHETIC_STREAM, int(effective["seed"])),
        )
        datasets = {"train": {"synthetic": spec}}
        dataset_name = "synthetic"
    elif effective.get("train"):
        train_ds = _load_dataset(effective["train"])
        (train_ds,) = scale_datasets(effective["scale"], train_ds)
        datasets = {"train": _dataset_entry(effective["train"], train_ds)}
        dataset_name = Path(effective["train"]).stem
    else:
        raise UsageError("speedup: need --train or --synthetic")

    cfg_base = _experiment_config(dict(effective, m=split_counts[0]), 1)
    rows = speedup_report(train_ds, cfg_base, split_counts, max_workers=getattr(args, "workers", None))

    out = _out_dir(effective)
    _write_csv(
        out / "speedup.csv",
        "M,wall_seconds,speedup",
        [f"{r.n_splits},{r.wall_seconds!r},{r.speedup!r}" for r in rows],
    )
    _write_manifest(
        out,
        "speedup",
        dict(effective, m=split_counts),
        datasets,
        {str(r.n_splits): {"wall_seconds": r.wall_seconds, "speedup": r.speedup} for r in rows},
        {"total_seconds": time.time() - started},
        ["speedup.csv"],
    )
    print(f"speedup over {dataset_name}: " + ", ".join(f"M={r.n_splits}:{r.speedup:.2f}x" for r in rows))
    return EXIT_OK


def cmd_stability(args: argparse.Namespace) -> int:
    keys = [
        "train", "test", "vary", "values", "m", "t", "nh", "activation", "ridge",
        "seed", "repeats", "scale", "weighting", "alpha_variant", "out",
    ]
    effective = _merge_config(args, keys)
    _require(effective, ["train", "test", "vary", "values", "nh"], "stability")
    vary = effective["vary"]
    if vary not in ("m", "t"):
        raise UsageError(f"stability: --vary must be m or t, got {vary!r}")
    fixed_key = "t" if vary == "m" else "m"
    _require(effective, [fixed_key], "stability")
    values = _as_int_list(effective, "values")
    repeats = int(effective["repeats"])
    if repeats < 2:
        raise UsageError(f"stability: need repeats >= 2, got {repeats}")

    started = time.time()
    train_ds, test_ds = _load_pair(effective["train"], effective["test"])
    train_ds, test_ds = scale_datasets(effective["scale"], train_ds, test_ds)
    seed = int(effective["seed"])
    workers = _workers(args)

    accuracies: list[float] = []
    groups: list[int] = []
    for value in values:
        for repeat in range(repeats):
            run_seed = derive_seed(REPEAT_STREAM, seed, int(vary == "t"), value, repeat)
            run_effective = dict(effective, seed=run_seed, **{vary: value})
            cfg = _experiment_config(run_effective, workers)
            ensemble = train_pipeline(train_ds, cfg)
            predicted = global_predict(ensemble, test_ds.features)
            report = evaluate(test_ds.labels, predicted, test_ds.n_classes)
            accuracies.append(report.accuracy)
            groups.append(value)

    stats = stability_stats(accuracies, groups)
    rows = []
    for value in values:
        mean, std = stats[value]
        if std == 0.0:
            log.warning(
                "stability %s=%d: identical accuracy across %d repeats "
                "(were the seeds distinct?)", vary, value, repeats,
            )
        rows.append(f"{value},{mean!r},{std!r}")

    out = _out_dir(effective)
    _write_csv(out / "stability.csv", "value,mean_acc,std_acc", rows)
    _write_manifest(
        out,
        "stability",
        dict(effective, values=values),
        {
            "train": _dataset_entry(effective["train"], train_ds),
            "test": _dataset_entry(effective["test"], test_ds),
        },
        {str(v): {"mean": stats[v][0], "std": stats[v][1]} for v in values},
        {"total_seconds": time.time() - started},
        ["stability.csv"],
    )
    return EXIT_OK


def cmd_predict(args: argparse.Namespace) -> int:
    keys = ["model", "data", "out"]
    effective = _merge_config(args, keys)
    _require(effective, ["model", "data"], "predict")

    try:
        record = load_record(effective["model"])
    except OSError as exc:
        raise DataError(f"{effective['model']}: {exc}") from exc
    model = parse_record(record)
    label_map = record_label_map(record)

    n_features = model.n_features
    try:
        with open(effective["data"], "rb") as handle:
            features = parse_features(handle, expected_dims=n_features)
    except OSError as exc:
        raise DataError(f"{effective['data']}: {exc}") from exc

    scaling = record.get("scaling")
    if scaling and scaling.get("mode") == "minmax":
        lo = np.asarray(scaling["min"], dtype=np.float64)
        hi = np.asarray(scaling["max"], dtype=np.float64)
        features = (features - lo) / np.where(hi > lo, hi - lo, 1.0)

    if isinstance(model, GlobalEnsemble):
        predicted = global_predict(model, features)
    else:
        from .boost import ChunkEnsemble, chunk_predict

        if isinstance(model, ChunkEnsemble):
            predicted = chunk_predict(model, features)
        else:
            predicted = elm_predict(model, features)

    if label_map is not None:
        emitted = np.asarray(label_map, dtype=np.int64)[predicted]
    else:
        emitted = predicted

    out = _out_dir(effective)
    _write_csv(
        out / "predictions.csv",
        "index,label",
        [f"{i},{int(v)}" for i, v in enumerate(emitted)],
    )
    log.info("wrote %d predictions", len(emitted))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="elmboost", description=__doc__, add_help=True)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, lists: Sequence[str] = ()) -> None:
        p.add_argument("--config", help="JSON config file or a previous run manifest")
        p.add_argument("--seed", type=nonneg_int)
        p.add_argument("--out")
        p.add_argument("--scale", choices=["none", "minmax"])
        p.add_argument("--workers", type=int)
        p.add_argument("--activation", choices=[a.value for a in Activation])
        p.add_argument("--ridge", type=float)
        p.add_argument("--weighting", choices=[w.value for w in WeightingMode])
        p.add_argument("--alpha-variant", dest="alpha_variant", choices=[v.value for v in AlphaVariant])
        for name in lists:
            p.add_argument(f"--{name}", type=parse_int_list)

    p = sub.add_parser("baseline", help="conventional single-model hidden-node sweep")
    p.add_argument("--train")
    p.add_argument("--test")
    p.add_argument("--repeats", type=int)
    common(p, lists=["nh"])
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("train", help="one partitioned-pipeline run")
    p.add_argument("--train")
    p.add_argument("--test")
    p.add_argument("--m", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--nh", type=int)
    common(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("sweep", help="accuracy over an m x t x nh grid")
    p.add_argument("--train")
    p.add_argument("--test")
    p.add_argument("--repeats", type=int)
    common(p, lists=["m", "t", "nh"])
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("speedup", help="reduce wall time across split counts")
    p.add_argument("--train")
    p.add_argument("--synthetic", help="generate data, e.g. n=500000,p=18,k=2")
    p.add_argument("--t", type=int)
    p.add_argument("--nh", type=int)
    common(p, lists=["m"])
    p.set_defaults(func=cmd_speedup)

    p = sub.add_parser("stability", help="accuracy mean/std over repeated runs")
    p.add_argument("--train")
    p.add_argument("--test")
    p.add_argument("--vary", choices=["m", "t"])
    p.add_argument("--values", type=parse_int_list)
    p.add_argument("--m", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--nh", type=int)
    p.add_argument("--repeats", type=int)
    common(p)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("predict", help="apply a saved model to an svmlight file")
    p.add_argument("--model")
    p.add_argument("--data")
    p.add_argument("--config")
    p.add_argument("--out")
    p.set_defaults(func=cmd_predict)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(
        level=logging.INFO, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except TrainingError as exc:
        print(f"training error: {exc}", file=sys.stderr)
        return EXIT_TRAINING


if __name__ == "__main__":
    sys.exit(main())
