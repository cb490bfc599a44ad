"""Wall-time scaling over split counts, and accuracy stability over seeds.

Run:  python demos/05_speedup_and_stability.py
"""

import numpy as np

from elmboost import (
    BoostConfig,
    ExperimentConfig,
    evaluate,
    global_predict,
    speedup_report,
    stability_stats,
    synthetic,
    train_pipeline,
)
from elmboost.engine import available_parallelism

# --- speedup: more splits means more parallel chunks (up to the core count)
data = synthetic.gaussian_mixture(150_000, 12, 2, seed=30)
cfg = ExperimentConfig(n_splits=2, boost=BoostConfig(n_rounds=2, n_hidden=24, seed=5), seed=5)

print(f"speedup on {available_parallelism()} cores (baseline = smallest split count):")
print("M,wall_seconds,speedup")
for row in speedup_report(data, cfg, [2, 4, 8, 16]):
    print(f"{row.n_splits},{row.wall_seconds:.3f},{row.speedup:.2f}")

# --- stability: repeated runs, varying only the seed, per split count
train = synthetic.waveform(4000, seed=31)
test = synthetic.waveform(800, seed=32)

accuracies, groups = [], []
for n_splits in (2, 8, 24):
    for repeat in range(5):
        run = ExperimentConfig(
            n_splits=n_splits,
            boost=BoostConfig(n_rounds=3, n_hidden=25, seed=1000 + repeat),
            seed=1000 + repeat,
            workers=available_parallelism(),
        )
        ensemble = train_pipeline(train, run)
        report = evaluate(test.labels, global_predict(ensemble, test.features), test.n_classes)
        accuracies.append(report.accuracy)
        groups.append(n_splits)

print("\naccuracy stability over 5 seeded repeats:")
for n_splits, (mean, std) in stability_stats(accuracies, groups).items():
    print(f"  splits={n_splits:2d}: mean {mean:.4f}  std {std:.4f}")
print("(more chunks vote, so accuracy varies less run to run)")
