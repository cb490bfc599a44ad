"""One random-hidden-layer classifier: train, inspect, predict, save.

The classifier draws its hidden layer at random and solves the output
weights in closed form, so "training" is a single least-squares solve.

Run:  python demos/02_single_classifier.py
"""

import numpy as np

from elmboost import Activation, elm_predict, elm_predict_scores, elm_train, evaluate, synthetic
from elmboost.serialize import model_record, parse_model_record

train = synthetic.waveform(2000, seed=1)
test = synthetic.waveform(600, seed=2)

print("hidden nodes vs test accuracy (sigmoid activation):")
for n_hidden in (5, 20, 80, 320):
    model = elm_train(train, n_hidden, seed=7)
    report = evaluate(test.labels, elm_predict(model, test.features), test.n_classes)
    print(f"  {n_hidden:4d} nodes: accuracy {report.accuracy:.3f}  f1 {report.f1:.3f}")

print("\nactivation families at 80 hidden nodes:")
for activation in Activation:
    model = elm_train(train, 80, activation=activation, seed=7)
    report = evaluate(test.labels, elm_predict(model, test.features), test.n_classes)
    print(f"  {activation.value:9s}: accuracy {report.accuracy:.3f}")

# Scores are per-class; the predicted label is the argmax.
model = elm_train(train, 80, seed=7)
scores = elm_predict_scores(model, test.features[:3])
print("\nfirst three score rows:\n", np.round(scores, 3))
print("argmax labels:", elm_predict(model, test.features[:3]).tolist())

# Models serialize to versioned JSON records and come back identical.
clone = parse_model_record(model_record(model))
assert np.array_equal(elm_predict(clone, test.features), elm_predict(model, test.features))
print("\nserialized model round-trips to identical predictions")
