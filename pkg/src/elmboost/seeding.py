"""Deterministic seed derivation for parallel and repeated work.

Every randomized stage of the library owns a seed derived from the user's
master seed plus a stream tag and the integers identifying the task
(chunk id, round, retry, repeat index...).  Derivation goes through
``numpy.random.SeedSequence``, which mixes the inputs with a fixed hash, so
the resulting streams are stable across runs, platforms and worker
scheduling order.
"""

import numpy as np

# Stream tags keep seeds for unrelated purposes in disjoint families even
# when the remaining key integers coincide.
MAP_STREAM = 1
WEAK_STREAM = 2
RESAMPLE_STREAM = 3
REPEAT_STREAM = 4
BASELINE_STREAM = 5
SYNTHETIC_STREAM = 6


def derive_seed(*parts: int) -> int:
    """Collapse a tuple of non-negative integers into one 64-bit seed."""
    key = [int(p) for p in parts]
    if any(p < 0 for p in key):
        raise ValueError(f"seed parts must be non-negative, got {key}")
    return int(np.random.SeedSequence(key).generate_state(1, np.uint64)[0])
