"""Versioned JSON records for trained models and ensembles.

Layout (format_version 1):

* elm_model: ``{"kind": "elm_model", "format_version": 1, "activation",
  "n_features", "n_classes", "ridge", "solver_fallback",
  "input_weights": [[...]], "biases": [...], "output_weights": [[...]]}``
  with matrices as row-major nested lists.
* chunk_ensemble: ``{"kind": "chunk_ensemble", ..., "chunk_id",
  "n_classes", "hypotheses": [{"alpha": float, "model": <elm_model>}]}``
* global_ensemble: ``{"kind": "global_ensemble", ..., "n_classes",
  "chunks": [<chunk_ensemble>...], "provenance": {...},
  "label_map": [...] | null}``

Provenance records the experiment configuration except the worker count,
which is an execution detail that must not change the bytes of a model
(equal-seed runs serialize identically for every worker count).  Floats
are written with shortest round-trip ``repr`` and keys are sorted, so
encoding is canonical: equal objects produce byte-identical files.
"""

from __future__ import annotations

import json
import os
from typing import Optional, Union

import numpy as np

from .boost import AlphaVariant, BoostConfig, ChunkEnsemble, WeakHypothesis, WeightingMode
from .elm import Activation, ElmModel
from .engine import ExperimentConfig, GlobalEnsemble
from .errors import DataError

FORMAT_VERSION = 1


def canonical_json(record: dict) -> str:
    """Stable text encoding: sorted keys, compact separators, repr floats."""
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def model_record(model: ElmModel) -> dict:
    return {
        "kind": "elm_model",
        "format_version": FORMAT_VERSION,
        "activation": model.activation.value,
        "n_features": model.n_features,
        "n_classes": model.n_classes,
        "ridge": model.ridge,
        "solver_fallback": model.solver_fallback,
        "input_weights": model.input_weights.tolist(),
        "biases": model.biases.tolist(),
        "output_weights": model.output_weights.tolist(),
    }


def parse_model_record(record: dict) -> ElmModel:
    _check(record, "elm_model")
    return ElmModel(
        input_weights=np.asarray(record["input_weights"], dtype=np.float64),
        biases=np.asarray(record["biases"], dtype=np.float64),
        output_weights=np.asarray(record["output_weights"], dtype=np.float64),
        activation=Activation(record["activation"]),
        n_classes=int(record["n_classes"]),
        n_features=int(record["n_features"]),
        ridge=float(record["ridge"]),
        solver_fallback=bool(record["solver_fallback"]),
    )


def chunk_record(chunk: ChunkEnsemble) -> dict:
    return {
        "kind": "chunk_ensemble",
        "format_version": FORMAT_VERSION,
        "chunk_id": chunk.chunk_id,
        "n_classes": chunk.n_classes,
        "hypotheses": [
            {"alpha": h.alpha, "model": model_record(h.model)} for h in chunk.hypotheses
        ],
    }


def parse_chunk_record(record: dict) -> ChunkEnsemble:
    _check(record, "chunk_ensemble")
    hypotheses = tuple(
        WeakHypothesis(model=parse_model_record(h["model"]), alpha=float(h["alpha"]))
        for h in record["hypotheses"]
    )
    return ChunkEnsemble(
        hypotheses=hypotheses,
        n_classes=int(record["n_classes"]),
        chunk_id=int(record["chunk_id"]),
    )


def provenance_record(cfg: ExperimentConfig) -> dict:
    # workers intentionally absent: see module docstring.
    return {
        "n_splits": cfg.n_splits,
        "seed": cfg.seed,
        "repeats": cfg.repeats,
        "boost": {
            "n_rounds": cfg.boost.n_rounds,
            "n_hidden": cfg.boost.n_hidden,
            "activation": cfg.boost.activation.value,
            "ridge": cfg.boost.ridge,
            "weighting": cfg.boost.weighting.value,
            "alpha_variant": cfg.boost.alpha_variant.value,
            "seed": cfg.boost.seed,
        },
    }


def parse_provenance_record(record: dict) -> ExperimentConfig:
    boost = record["boost"]
    return ExperimentConfig(
        n_splits=int(record["n_splits"]),
        seed=int(record["seed"]),
        repeats=int(record["repeats"]),
        workers=1,
        boost=BoostConfig(
            n_rounds=int(boost["n_rounds"]),
            n_hidden=int(boost["n_hidden"]),
            activation=Activation(boost["activation"]),
            ridge=float(boost["ridge"]),
            weighting=WeightingMode(boost["weighting"]),
            alpha_variant=AlphaVariant(boost["alpha_variant"]),
            seed=int(boost["seed"]),
        ),
    )


def global_record(
    ensemble: GlobalEnsemble, label_map: Optional[tuple[int, ...]] = None
) -> dict:
    return {
        "kind": "global_ensemble",
        "format_version": FORMAT_VERSION,
        "n_classes": ensemble.n_classes,
        "chunks": [chunk_record(chunk) for chunk in ensemble.chunks],
        "provenance": provenance_record(ensemble.provenance),
        "label_map": list(label_map) if label_map is not None else None,
    }


def parse_global_record(record: dict) -> GlobalEnsemble:
    _check(record, "global_ensemble")
    return GlobalEnsemble(
        chunks=tuple(parse_chunk_record(c) for c in record["chunks"]),
        n_classes=int(record["n_classes"]),
        provenance=parse_provenance_record(record["provenance"]),
    )


def record_label_map(record: dict) -> Optional[tuple[int, ...]]:
    value = record.get("label_map")
    return tuple(int(v) for v in value) if value is not None else None


def parse_record(record: dict) -> Union[ElmModel, ChunkEnsemble, GlobalEnsemble]:
    """Dispatch on the record's ``kind`` field."""
    kind = record.get("kind")
    parser = {
        "elm_model": parse_model_record,
        "chunk_ensemble": parse_chunk_record,
        "global_ensemble": parse_global_record,
    }.get(kind)
    if parser is None:
        raise DataError(f"unknown record kind {kind!r}")
    return parser(record)


def save_record(path: Union[str, os.PathLike], record: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(canonical_json(record))
        handle.write("\n")


def load_record(path: Union[str, os.PathLike]) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        record = json.load(handle)
    if not isinstance(record, dict):
        raise DataError(f"{path}: expected a JSON object")
    version = record.get("format_version")
    if version != FORMAT_VERSION:
        raise DataError(f"{path}: unsupported format_version {version!r}")
    return record


def _check(record: dict, kind: str) -> None:
    if record.get("kind") != kind:
        raise DataError(f"expected kind {kind!r}, got {record.get('kind')!r}")
    if record.get("format_version") != FORMAT_VERSION:
        raise DataError(f"unsupported format_version {record.get('format_version')!r}")
