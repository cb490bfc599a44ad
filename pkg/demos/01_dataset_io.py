"""Dataset handling: svmlight parsing, label remapping, scaling, resampling.

Run:  python demos/01_dataset_io.py
"""

import numpy as np

from elmboost import (
    dump_svmlight,
    minmax_apply,
    minmax_params,
    parse_svmlight,
    weighted_resample,
)

# svmlight text: "<label> <index>:<value> ...", 1-based sparse indices.
text = """\
# four samples, three attributes, labels as they appear in the file
7  1:0.5 3:2.0
-1 2:-1.0
7  1:1.5 2:0.25 3:-0.75
3  3:4.0
"""

ds = parse_svmlight(text)
print("parsed", ds.n_samples, "samples,", ds.n_features, "attributes,", ds.n_classes, "classes")
print("original labels", ds.original_labels().tolist(), "-> internal", ds.labels.tolist())
print("label_map (internal index -> file label):", ds.label_map)
print("dense features:\n", ds.features)

# Round trip: writing omits zeros and keeps the original label space.
print("\nserialized back to svmlight:")
print(dump_svmlight(ds))

# Column-wise min-max scaling, fitted on one dataset, applied to another.
params = minmax_params(ds)
scaled = minmax_apply(ds, params)
print("scaled to [0,1]:\n", np.round(scaled.features, 3))

# Seeded resampling by a probability vector over the rows.
weights = np.array([0.7, 0.1, 0.1, 0.1])
sample = weighted_resample(ds, weights, m=8, seed=42)
print("\nresampled labels (row 0 dominates):", sample.original_labels().tolist())
