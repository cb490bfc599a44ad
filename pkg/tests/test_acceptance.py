"""Acceptance suite.

Each test pins one release criterion at its frozen tolerance; the summary
block at the end of the pytest run echoes one PASS/FAIL/SKIP line per
criterion together with the measured values.

Quantitative criteria target the published reference results for the
benchmark datasets.  Benchmark files are looked up under ``data/`` (see
``scripts/fetch_datasets.py``); criteria whose files are absent skip with
instructions.  The waveform benchmark is itself synthetic data from the
classic three-class generator, so when its files are missing an
equally-distributed generated sample stands in and the criterion still
runs; the summary notes which source was used.

Accuracy bands absorb two sources of play: the random hidden layers and
the unknown preprocessing of the reference runs.  Each quantitative
criterion therefore evaluates both raw and min-max-scaled features and
passes if either variant lands in band.
"""

import math

import numpy as np
import pytest

from elmboost import (
    BoostConfig,
    ChunkEnsemble,
    Dataset,
    ExperimentConfig,
    WeakHypothesis,
    elm_predict,
    elm_train,
    evaluate,
    global_predict,
    map_assign,
    macro_metrics,
    confusion,
    parse_svmlight,
    dump_svmlight,
    solve_output_weights,
    train_pipeline,
    update_distribution,
)
from elmboost import synthetic
from elmboost.boost import adaboost_train, chunk_predict
from elmboost.elm import ElmModel
from elmboost.engine import GlobalEnsemble, available_parallelism, speedup_report
from elmboost.metrics import ConfusionMatrix
from elmboost.seeding import BASELINE_STREAM, REPEAT_STREAM, derive_seed
from elmboost.serialize import canonical_json, global_record

from conftest import acceptance_note, require_benchmark
from oracles import normal_equations_solve
from test_boost import constant_class_model

SCALES = ("none", "minmax")
NH_SWEEP = list(range(150, 501, 50))
REPEATS = 5
MASTER_SEED = 20_240_817

# published reference results and frozen tolerance bands
PENDIGITS_BASELINE = (0.8407, 0.04)
WAVEFORM_BASELINE_ACC = (0.8376, 0.04)
WAVEFORM_BASELINE_F1 = (0.8372, 0.04)
PAGE_BLOCKS_BASELINE = (0.9977, 0.02)
PENDIGITS_PIPELINE = (0.8256, 0.05)          # M=20, T=10, nh=21
WAVEFORM_PIPELINE_ACC = (0.8620, 0.05)       # M=19, T=6,  nh=40
WAVEFORM_PIPELINE_F1 = (0.8642, 0.05)
SKIN_PIPELINE = (0.9892, 0.02)               # M=21, T=5,  nh=21


def in_band(value: float, band: tuple[float, float]) -> bool:
    target, tolerance = band
    return abs(value - target) <= tolerance


def load_pair(train_path, test_path):
    """Benchmark pair in one label space and feature width."""
    from elmboost.dataio import align_to

    with open(train_path, "rb") as fh:
        train = parse_svmlight(fh)
    with open(test_path, "rb") as fh:
        test = parse_svmlight(fh, expected_dims=train.n_features)
    return train, align_to(train, test)


def scaled_variants(train: Dataset, test: Dataset):
    from elmboost.dataio import scale_datasets

    return {mode: scale_datasets(mode, train, test) for mode in SCALES}


def baseline_best(train: Dataset, test: Dataset, nh_values, repeats=REPEATS, seed=MASTER_SEED):
    """Best mean (accuracy, f1) over the hidden-node sweep, mirroring the CLI."""
    best = (-1.0, -1.0)
    for nh in nh_values:
        accs, f1s = [], []
        for repeat in range(repeats):
            model = elm_train(train, nh, seed=derive_seed(BASELINE_STREAM, seed, nh, repeat))
            report = evaluate(test.labels, elm_predict(model, test.features), test.n_classes)
            accs.append(report.accuracy)
            f1s.append(report.f1)
        if np.mean(accs) > best[0]:
            best = (float(np.mean(accs)), float(np.mean(f1s)))
    return best


def pipeline_mean(train, test, m, t, nh, repeats=REPEATS, seed=MASTER_SEED):
    """Mean (accuracy, f1) over repeated pipeline runs, mirroring the CLI sweep."""
    accs, f1s = [], []
    for repeat in range(repeats):
        run_seed = derive_seed(REPEAT_STREAM, seed, m, t, nh, repeat)
        cfg = ExperimentConfig(
            n_splits=m,
            boost=BoostConfig(n_rounds=t, n_hidden=nh, seed=run_seed),
            seed=run_seed,
            workers=available_parallelism(),
        )
        ensemble = train_pipeline(train, cfg)
        report = evaluate(test.labels, global_predict(ensemble, test.features), test.n_classes)
        accs.append(report.accuracy)
        f1s.append(report.f1)
    return float(np.mean(accs)), float(np.mean(f1s))


@pytest.fixture(scope="module")
def waveform_data(data_dir):
    train_path = data_dir / "waveform"
    test_path = data_dir / "waveform.t"
    if train_path.exists() and test_path.exists():
        train, test = load_pair(train_path, test_path)
        return train, test, "benchmark files"
    return (
        synthetic.waveform(4400, seed=94301),
        synthetic.waveform(600, seed=94302),
        "generated sample",
    )


@pytest.fixture(scope="module")
def waveform_baselines(waveform_data):
    train, test, source = waveform_data
    return {
        mode: baseline_best(tr, te, NH_SWEEP)
        for mode, (tr, te) in scaled_variants(train, test).items()
    }, source


# -- quantitative criteria --------------------------------------------------


def test_criterion_01_pendigits_baseline(data_dir):
    train_path, test_path = require_benchmark(data_dir, "pendigits", "pendigits.t")
    train, test = load_pair(train_path, test_path)
    assert (train.n_samples, train.n_features, train.n_classes) == (7494, 16, 10)
    assert test.n_samples == 3498

    results = {
        mode: baseline_best(tr, te, NH_SWEEP)
        for mode, (tr, te) in scaled_variants(train, test).items()
    }
    acceptance_note(
        "test_criterion_01_pendigits_baseline",
        "accuracy " + ", ".join(f"{m}={a:.4f}" for m, (a, _) in results.items()),
    )
    assert any(in_band(acc, PENDIGITS_BASELINE) for acc, _ in results.values()), (
        f"no scale variant reached {PENDIGITS_BASELINE[0]} +/- {PENDIGITS_BASELINE[1]}: {results}"
    )


def test_criterion_02_waveform_baseline(waveform_baselines):
    results, source = waveform_baselines
    acceptance_note(
        "test_criterion_02_waveform_baseline",
        f"{source}; " + ", ".join(f"{m}: acc={a:.4f} f1={f:.4f}" for m, (a, f) in results.items()),
    )
    assert any(
        in_band(acc, WAVEFORM_BASELINE_ACC) and in_band(f1, WAVEFORM_BASELINE_F1)
        for acc, f1 in results.values()
    ), f"no scale variant matched accuracy and F1 bands: {results}"


def test_criterion_03_page_blocks_baseline(data_dir):
    train_path, test_path = require_benchmark(data_dir, "page_blocks", "page_blocks.t")
    train, test = load_pair(train_path, test_path)
    results = {
        mode: baseline_best(tr, te, NH_SWEEP)
        for mode, (tr, te) in scaled_variants(train, test).items()
    }
    acceptance_note(
        "test_criterion_03_page_blocks_baseline",
        "accuracy " + ", ".join(f"{m}={a:.4f}" for m, (a, _) in results.items()),
    )
    assert any(in_band(acc, PAGE_BLOCKS_BASELINE) for acc, _ in results.values()), (
        f"no scale variant reached {PAGE_BLOCKS_BASELINE[0]} +/- {PAGE_BLOCKS_BASELINE[1]}: {results}"
    )


def test_criterion_04_pendigits_pipeline(data_dir):
    train_path, test_path = require_benchmark(data_dir, "pendigits", "pendigits.t")
    train, test = load_pair(train_path, test_path)
    results = {
        mode: pipeline_mean(tr, te, m=20, t=10, nh=21)
        for mode, (tr, te) in scaled_variants(train, test).items()
    }
    acceptance_note(
        "test_criterion_04_pendigits_pipeline",
        "accuracy " + ", ".join(f"{m}={a:.4f}" for m, (a, _) in results.items()),
    )
    assert any(in_band(acc, PENDIGITS_PIPELINE) for acc, _ in results.values()), (
        f"no scale variant reached {PENDIGITS_PIPELINE[0]} +/- {PENDIGITS_PIPELINE[1]}: {results}"
    )


def test_criterion_05_waveform_pipeline(waveform_data, waveform_baselines):
    train, test, source = waveform_data
    baselines, _ = waveform_baselines
    verdicts = {}
    for mode, (tr, te) in scaled_variants(train, test).items():
        acc, f1 = pipeline_mean(tr, te, m=19, t=6, nh=40)
        conventional_acc = baselines[mode][0]
        verdicts[mode] = {
            "acc": acc,
            "f1": f1,
            "in_band": in_band(acc, WAVEFORM_PIPELINE_ACC) and in_band(f1, WAVEFORM_PIPELINE_F1),
            "ordering": acc >= conventional_acc - 0.01,
        }
    acceptance_note(
        "test_criterion_05_waveform_pipeline",
        f"{source}; "
        + ", ".join(f"{m}: acc={v['acc']:.4f} f1={v['f1']:.4f}" for m, v in verdicts.items()),
    )
    assert any(v["in_band"] and v["ordering"] for v in verdicts.values()), (
        f"no scale variant satisfied the accuracy/F1 bands and the "
        f"proposed-vs-conventional ordering: {verdicts}"
    )


def test_criterion_06_skin_pipeline(data_dir):
    train_path, test_path = require_benchmark(data_dir, "skin_nonskin", "skin_nonskin.t")
    train, test = load_pair(train_path, test_path)
    note = ""
    if train.n_samples > 50_000:
        keep = np.random.default_rng(MASTER_SEED).choice(train.n_samples, 50_000, replace=False)
        train = train.subset(np.sort(keep))
        note = "subsampled to 50k training rows; "
    results = {
        mode: pipeline_mean(tr, te, m=21, t=5, nh=21)
        for mode, (tr, te) in scaled_variants(train, test).items()
    }
    acceptance_note(
        "test_criterion_06_skin_pipeline",
        note + "accuracy " + ", ".join(f"{m}={a:.4f}" for m, (a, _) in results.items()),
    )
    assert any(in_band(acc, SKIN_PIPELINE) for acc, _ in results.values()), (
        f"no scale variant reached {SKIN_PIPELINE[0]} +/- {SKIN_PIPELINE[1]}: {results}"
    )


def test_criterion_07_speedup_scaling():
    cores = available_parallelism()
    if cores < 4:
        pytest.skip(f"requires >= 4 cores to observe scaling; found {cores}")
    ds = synthetic.gaussian_mixture(500_000, 18, 2, seed=MASTER_SEED)
    cfg = ExperimentConfig(
        n_splits=4, boost=BoostConfig(n_rounds=2, n_hidden=20, seed=MASTER_SEED), seed=MASTER_SEED
    )
    rows = speedup_report(ds, cfg, [4, 8, 16, 32])
    acceptance_note(
        "test_criterion_07_speedup_scaling",
        ", ".join(f"M={r.n_splits}: {r.wall_seconds:.2f}s ({r.speedup:.2f}x)" for r in rows),
    )
    walls = [r.wall_seconds for r in rows]
    speedups = [r.speedup for r in rows]
    assert all(b < a for a, b in zip(walls, walls[1:])), f"wall times not decreasing: {walls}"
    assert all(b > a for a, b in zip(speedups, speedups[1:])), f"speedups not increasing: {speedups}"


# -- property criteria ------------------------------------------------------


def test_criterion_08_solver_matches_bruteforce_oracle():
    rng = np.random.default_rng(800)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 9))
        hidden = int(rng.integers(1, 6))
        classes = int(rng.integers(2, 4))
        H = rng.normal(size=(n, hidden))
        T = rng.normal(size=(n, classes))
        ridge = float(10 ** rng.uniform(-3, 0))
        weights = rng.uniform(0.1, 2.0, size=n) if rng.random() < 0.5 else None
        beta = solve_output_weights(H, T, ridge=ridge, sample_weights=weights).output_weights
        expected = normal_equations_solve(
            H.tolist(), T.tolist(), ridge, weights.tolist() if weights is not None else None
        )
        worst = max(worst, float(np.max(np.abs(beta - np.asarray(expected)))))
    acceptance_note(
        "test_criterion_08_solver_matches_bruteforce_oracle", f"max |delta| = {worst:.2e}"
    )
    assert worst < 1e-9


def test_criterion_09_distribution_validity_and_focus():
    rng = np.random.default_rng(900)
    for _ in range(1000):
        n = int(rng.integers(2, 40))
        k = int(rng.integers(2, 5))
        weights = rng.dirichlet(np.ones(n))
        predictions = rng.integers(0, k, size=n)
        truth = rng.integers(0, k, size=n)
        alpha = float(rng.uniform(1e-6, 3.0))
        updated = update_distribution(weights, alpha, predictions, truth)
        assert np.all(updated >= 0.0)
        assert abs(float(updated.sum()) - 1.0) <= 1e-9
        wrong = np.flatnonzero(predictions != truth)
        right = np.flatnonzero(predictions == truth)
        if len(wrong) and len(right):
            i, j = int(wrong[0]), int(right[0])
            assert updated[i] / updated[j] > weights[i] / weights[j]


def test_criterion_10_argmax_invariances():
    ds = synthetic.waveform(150, seed=MASTER_SEED)
    ensemble = adaboost_train(ds, BoostConfig(n_rounds=4, n_hidden=10, seed=3))
    base = chunk_predict(ensemble, ds.features)
    for factor in (2.0, 0.5, 1.7):
        scaled = ChunkEnsemble(
            hypotheses=tuple(
                WeakHypothesis(model=h.model, alpha=h.alpha * factor) for h in ensemble.hypotheses
            ),
            n_classes=ensemble.n_classes,
            chunk_id=ensemble.chunk_id,
        )
        assert np.array_equal(base, chunk_predict(scaled, ds.features))

    model = elm_train(ds, 12, seed=4)
    base_labels = elm_predict(model, ds.features)
    for factor in (2.0, 0.25, 3.5):
        scaled_model = ElmModel(
            input_weights=model.input_weights,
            biases=model.biases,
            output_weights=model.output_weights * factor,
            activation=model.activation,
            n_classes=model.n_classes,
            n_features=model.n_features,
            ridge=model.ridge,
        )
        assert np.array_equal(base_labels, elm_predict(scaled_model, ds.features))

    # constructed exact ties at every level resolve to the lowest index
    template = elm_train(ds, 6, seed=5)
    tied_model = ElmModel(
        input_weights=template.input_weights,
        biases=template.biases,
        output_weights=np.ones((template.n_hidden, 3)),
        activation=template.activation,
        n_classes=3,
        n_features=template.n_features,
        ridge=template.ridge,
    )
    assert np.all(elm_predict(tied_model, ds.features) == 0)

    hypo = lambda cls: WeakHypothesis(model=constant_class_model(template, cls), alpha=1.0)
    tied_chunk = ChunkEnsemble(hypotheses=(hypo(2), hypo(1)), n_classes=3, chunk_id=0)
    assert np.all(chunk_predict(tied_chunk, ds.features) == 1)

    cfg = ExperimentConfig(n_splits=2, boost=BoostConfig(n_rounds=1, n_hidden=4, seed=0), seed=0)
    tied_global = GlobalEnsemble(
        chunks=(
            ChunkEnsemble(hypotheses=(hypo(2),), n_classes=3, chunk_id=0),
            ChunkEnsemble(hypotheses=(hypo(1),), n_classes=3, chunk_id=1),
        ),
        n_classes=3,
        provenance=cfg,
    )
    assert np.all(global_predict(tied_global, ds.features) == 1)


def test_criterion_11_worker_count_determinism():
    train = synthetic.waveform(2000, seed=MASTER_SEED + 1)
    test = synthetic.waveform(500, seed=MASTER_SEED + 2)
    encodings = {}
    reports = {}
    for workers in (1, 8):
        cfg = ExperimentConfig(
            n_splits=8,
            boost=BoostConfig(n_rounds=3, n_hidden=16, seed=MASTER_SEED),
            seed=MASTER_SEED,
            workers=workers,
        )
        ensemble = train_pipeline(train, cfg)
        encodings[workers] = canonical_json(global_record(ensemble)).encode()
        reports[workers] = evaluate(
            test.labels, global_predict(ensemble, test.features), test.n_classes
        )
    assert encodings[1] == encodings[8], "serialized ensembles differ across worker counts"
    assert reports[1] == reports[8]
    acceptance_note(
        "test_criterion_11_worker_count_determinism",
        f"{len(encodings[1])} identical bytes, accuracy {reports[1].accuracy:.4f}",
    )


def test_criterion_12_partition_property():
    rng = np.random.default_rng(1200)
    for _ in range(500):
        n = int(rng.integers(2, 400))
        m = int(rng.integers(1, 25))
        labels = np.zeros(n, dtype=np.int64)
        labels[n // 2 :] = 1
        ds = Dataset(np.zeros((n, 1)), labels, 2, (0, 1))
        sets = map_assign(ds, m, seed=int(rng.integers(0, 1 << 62)))
        assert len(sets) == m
        joined = np.concatenate(sets)
        assert len(joined) == n, "assignment lost or duplicated rows"
        assert np.array_equal(np.sort(joined), np.arange(n))


def test_criterion_13_metrics_identities():
    rng = np.random.default_rng(1300)
    for _ in range(500):
        k = int(rng.integers(2, 7))
        counts = rng.integers(0, 40, size=(k, k))
        if counts.sum() == 0:
            counts[0, 0] = 1
        cm = ConfusionMatrix(counts, n=int(counts.sum()))
        report = macro_metrics(cm)
        row_sums = counts.sum(axis=1)
        weighted_recall = sum(
            recall * (share / cm.n)
            for (_, recall), share in zip(report.per_class, row_sums)
        )
        assert abs(report.accuracy - weighted_recall) < 1e-12

        # consistent class permutation leaves macro values unchanged
        n = int(counts.sum())
        truth = np.repeat(np.arange(k), row_sums)
        predictions = np.concatenate([np.repeat(np.arange(k), counts[t]) for t in range(k)])
        perm = rng.permutation(k)
        base = macro_metrics(confusion(truth, predictions, k))
        permuted = macro_metrics(confusion(perm[truth], perm[predictions], k))
        assert math.isclose(base.accuracy, permuted.accuracy, abs_tol=1e-12)
        assert math.isclose(base.precision_macro, permuted.precision_macro, abs_tol=1e-12)
        assert math.isclose(base.recall_macro, permuted.recall_macro, abs_tol=1e-12)
        assert math.isclose(base.f1, permuted.f1, abs_tol=1e-12)


def test_companion_stability_trend(waveform_data):
    """Informational companion, not a gated criterion: accuracy std over
    repeated seeded runs is expected to shrink as the split count grows.
    Reported, softly checked (a reversed trend logs in the summary)."""
    train, test, source = waveform_data
    stds = {}
    for n_splits in (5, 20, 60):
        accs = []
        for repeat in range(REPEATS):
            run_seed = derive_seed(REPEAT_STREAM, MASTER_SEED, 0, n_splits, repeat)
            cfg = ExperimentConfig(
                n_splits=n_splits,
                boost=BoostConfig(n_rounds=6, n_hidden=40, seed=run_seed),
                seed=run_seed,
                workers=available_parallelism(),
            )
            ensemble = train_pipeline(train, cfg)
            accs.append(
                evaluate(test.labels, global_predict(ensemble, test.features), test.n_classes).accuracy
            )
        stds[n_splits] = float(np.std(accs, ddof=1))
    trend = "decreasing" if stds[60] <= stds[5] else "NOT decreasing"
    acceptance_note(
        "test_companion_stability_trend",
        f"{source}; std " + ", ".join(f"M={m}: {s:.4f}" for m, s in stds.items()) + f"; {trend}",
    )
    assert all(s >= 0 for s in stds.values())


def test_criterion_14_parser_round_trips(data_dir):
    checked = []
    for name in (
        "pendigits", "pendigits.t",
        "waveform", "waveform.t",
        "shuttle", "shuttle.t",
        "page_blocks", "page_blocks.t",
        "skin_nonskin", "skin_nonskin.t",
    ):
        path = data_dir / name
        if not path.exists():
            continue
        with open(path, "rb") as fh:
            ds = parse_svmlight(fh)
        again = parse_svmlight(dump_svmlight(ds), expected_dims=ds.n_features)
        assert np.array_equal(ds.features, again.features), name
        assert np.array_equal(ds.labels, again.labels), name
        assert ds.label_map == again.label_map, name
        checked.append(name)

    rng = np.random.default_rng(1400)
    for _ in range(100):
        n = int(rng.integers(3, 12))
        p = int(rng.integers(1, 8))
        features = np.round(rng.normal(size=(n, p)) * 10.0 ** rng.integers(-3, 4), 6)
        features[rng.random(size=(n, p)) < 0.4] = 0.0
        features[0, p - 1] = float(rng.integers(1, 9))
        labels = rng.integers(0, 3, size=n)
        labels[:3] = [0, 1, 2]
        ds = Dataset(features, labels, 3, (0, 1, 2))
        again = parse_svmlight(dump_svmlight(ds), expected_dims=p)
        assert np.array_equal(ds.features, again.features)
        assert np.array_equal(ds.labels, again.labels)

    acceptance_note(
        "test_criterion_14_parser_round_trips",
        f"100 fuzzed files; benchmark files: {checked if checked else 'none present'}",
    )
