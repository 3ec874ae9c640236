"""
Model serialization.

A model file is a single JSON document with a versioned header. Count tables
are not stored; they are rebuilt from the token ids and their assignments.
"""
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

import numpy as np

from topic_labeler.errors import ModelFormatError
from topic_labeler.topicmodel.lda import LdaModel, count_tables
from topic_labeler.topicmodel.vocabulary import Vocabulary
from topic_labeler.utils.artifacts import write_json

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

_REQUIRED_KEYS = (
    "format_version",
    "num_topics",
    "num_words",
    "alpha",
    "beta",
    "seed",
    "iterations",
    "vocabulary",
    "phi",
    "theta",
    "doc_ids",
    "tokens",
    "assignments",
)


def model_to_dict(model: LdaModel, extra: dict[str, Any] | None = None) -> dict[str, Any]:
    """Self-describing dict of a model (header fields first)."""
    data: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "num_topics": model.num_topics,
        "num_words": model.num_words,
        "num_docs": model.num_docs,
        "alpha": model.alpha.tolist(),
        "beta": model.beta,
        "seed": model.seed,
        "iterations": model.iterations,
    }
    if extra:
        data.update(extra)
    data.update(
        {
            "vocabulary": model.vocab.to_dict() if model.vocab is not None else None,
            "phi": model.phi.tolist(),
            "theta": model.theta.tolist(),
            "doc_ids": model.doc_ids.tolist(),
            "tokens": [t.tolist() for t in model.tokens],
            "assignments": [a.tolist() for a in model.assignments],
        }
    )
    return data


def model_from_dict(data: dict[str, Any]) -> LdaModel:
    missing = [key for key in _REQUIRED_KEYS if key not in data]
    if missing:
        raise ModelFormatError(f"Model file is missing keys: {', '.join(missing)}")
    if data["format_version"] != FORMAT_VERSION:
        raise ModelFormatError(
            f"Unsupported model format_version {data['format_version']} (expected {FORMAT_VERSION})"
        )

    try:
        num_topics = int(data["num_topics"])
        num_words = int(data["num_words"])
        vocab = None
        if data["vocabulary"] is not None:
            vocab = Vocabulary.from_words(data["vocabulary"]["words"], data["vocabulary"]["doc_freq"])
        tokens = [np.asarray(t, dtype=np.int64) for t in data["tokens"]]
        assignments = [np.asarray(a, dtype=np.int64) for a in data["assignments"]]
        phi = np.asarray(data["phi"], dtype=np.float64)
        theta = np.asarray(data["theta"], dtype=np.float64)
    except (TypeError, ValueError, KeyError) as e:
        raise ModelFormatError(f"Malformed model file: {e}") from e

    if phi.shape != (num_topics, num_words):
        raise ModelFormatError(f"phi has shape {phi.shape}, expected {(num_topics, num_words)}")
    if theta.shape != (len(tokens), num_topics):
        raise ModelFormatError(f"theta has shape {theta.shape}, expected {(len(tokens), num_topics)}")
    if [len(t) for t in tokens] != [len(a) for a in assignments]:
        raise ModelFormatError("tokens and assignments differ in length")

    nkw, nk, ndk = count_tables(tokens, assignments, num_topics, num_words)
    return LdaModel(
        num_topics=num_topics,
        alpha=np.asarray(data["alpha"], dtype=np.float64),
        beta=float(data["beta"]),
        phi=phi,
        theta=theta,
        tokens=tokens,
        assignments=assignments,
        nkw=nkw,
        nk=nk,
        ndk=ndk,
        seed=int(data["seed"]),
        iterations=int(data["iterations"]),
        doc_ids=np.asarray(data["doc_ids"], dtype=np.int64),
        vocab=vocab,
    )


def save_model(model: LdaModel, path: Path | str, extra: dict[str, Any] | None = None) -> Path:
    """Write a model file; ``extra`` adds header fields such as the config hash."""
    path = write_json(path, model_to_dict(model, extra))
    logger.info("Saved model (K=%d, V=%d) to %s", model.num_topics, model.num_words, path)
    return path


def load_model(path: Path | str) -> LdaModel:
    path = Path(path)
    if not path.exists():
        raise ModelFormatError(f"Model file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"{path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ModelFormatError(f"{path} does not hold a model object")
    return model_from_dict(data)
