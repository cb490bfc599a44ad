"""Boosting mechanics on one data chunk, built from the public primitives.

Each round trains a weak classifier under the current sample distribution,
weights it by quality, and shifts distribution mass onto the mistakes.
The same loop is packaged as `adaboost_train`.

Run:  python demos/03_boosted_chunk.py
"""

import numpy as np

from elmboost import (
    BoostConfig,
    adaboost_train,
    alpha_from_error,
    chunk_predict,
    elm_predict,
    elm_train,
    update_distribution,
    weighted_error,
    synthetic,
)

train = synthetic.waveform(400, seed=10)
test = synthetic.waveform(400, seed=11)
n = train.n_samples

print("manual boosting loop (weak learners kept deliberately small):")
dist = np.full(n, 1.0 / n)
hypotheses = []
for round_index in range(5):
    model = elm_train(train, n_hidden=8, seed=100 + round_index, sample_weights=dist * n)
    predicted = elm_predict(model, train.features)
    eps = weighted_error(predicted, train.labels, dist)
    alpha = alpha_from_error(eps, train.n_classes)
    hypotheses.append((alpha, model))
    concentration = float((dist**2).sum()) * n  # 1.0 = uniform, grows as mass focuses
    print(
        f"  round {round_index}: weighted error {eps:.3f}  alpha {alpha:.3f}  "
        f"distribution concentration {concentration:.2f}"
    )
    dist = update_distribution(dist, alpha, predicted, train.labels)

single = elm_train(train, n_hidden=8, seed=100)
single_acc = float(np.mean(elm_predict(single, test.features) == test.labels))

ensemble = adaboost_train(train, BoostConfig(n_rounds=5, n_hidden=8, seed=100))
boosted_acc = float(np.mean(chunk_predict(ensemble, test.features) == test.labels))

print(f"\nsingle 8-node classifier: test accuracy {single_acc:.3f}")
print(f"boosted x{len(ensemble.hypotheses)} ensemble:  test accuracy {boosted_acc:.3f}")
print("ensemble weights:", [round(h.alpha, 3) for h in ensemble.hypotheses])
