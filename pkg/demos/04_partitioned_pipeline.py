"""The full pipeline: random partitioning, parallel per-chunk boosting,
plurality voting, and the determinism guarantees it rests on.

Run:  python demos/04_partitioned_pipeline.py
"""

import numpy as np

from elmboost import (
    BoostConfig,
    ExperimentConfig,
    evaluate,
    global_predict,
    map_assign,
    synthetic,
    train_pipeline,
)
from elmboost.boost import chunk_predict
from elmboost.metrics import format_report
from elmboost.seeding import MAP_STREAM, derive_seed
from elmboost.serialize import canonical_json, global_record

train = synthetic.waveform(6000, seed=20)
test = synthetic.waveform(1000, seed=21)

cfg = ExperimentConfig(
    n_splits=12,
    boost=BoostConfig(n_rounds=4, n_hidden=30, seed=99),
    seed=99,
    workers=2,
)

# Map phase: every row lands in a uniformly random split.
assignment = map_assign(train, cfg.n_splits, derive_seed(MAP_STREAM, cfg.seed))
sizes = [len(s) for s in assignment]
print(f"map phase: {cfg.n_splits} splits, sizes {min(sizes)}..{max(sizes)}")

# Reduce phase trains one boosted ensemble per split, in parallel.
ensemble = train_pipeline(train, cfg)
print(f"reduce phase: {len(ensemble.chunks)} chunk ensembles in {ensemble.reduce_seconds:.2f}s")

# Each chunk casts one vote; the global label is the plurality winner.
votes = np.zeros((test.n_samples, test.n_classes), dtype=int)
for chunk in ensemble.chunks:
    votes[np.arange(test.n_samples), chunk_predict(chunk, test.features)] += 1
print("vote rows always sum to the chunk count:", set(votes.sum(axis=1).tolist()))

predicted = global_predict(ensemble, test.features)
print("\n" + format_report(evaluate(test.labels, predicted, test.n_classes)))

# Same seed, different worker counts: byte-identical model.
again = train_pipeline(train, ExperimentConfig(
    n_splits=12, boost=cfg.boost, seed=99, workers=1,
))
identical = canonical_json(global_record(ensemble)) == canonical_json(global_record(again))
print("\nworkers=2 vs workers=1 serialize identically:", identical)
