"""Accuracy, confusion matrix and per-label stats against annotator gold labels."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Union

import numpy as np
import pandas as pd

from topic_labeler.errors import GoldLabelError, MissingPredictionError
from topic_labeler.ingest import GoldLabelSet
from topic_labeler.utils.artifacts import open_artifact

logger = logging.getLogger(__name__)

# Stands in for the empty label of an unlabelable tweet.
UNLABELED = "<unlabeled>"

Predictions = Union[Mapping[int, str], Iterable[tuple[int, str]]]


def normalize_label(label: str | None) -> str:
    text = (label or "").strip().lower()
    return text or UNLABELED


def _pairs(predicted: Predictions, gold: GoldLabelSet) -> list[tuple[str, str]]:
    if len(gold) == 0:
        raise GoldLabelError("Gold label set is empty")
    items = predicted.items() if isinstance(predicted, Mapping) else predicted
    by_id = {int(doc_id): label for doc_id, label in items}
    missing = [doc_id for doc_id, _ in gold.entries if doc_id not in by_id]
    if missing:
        raise MissingPredictionError(missing)
    return [(normalize_label(label), normalize_label(by_id[doc_id])) for doc_id, label in gold.entries]


def accuracy(predicted: Predictions, gold: GoldLabelSet) -> float:
    """Fraction of gold tweets whose predicted label matches (case-insensitive, trimmed)."""
    pairs = _pairs(predicted, gold)
    return sum(g == p for g, p in pairs) / len(pairs)


@dataclass(frozen=True)
class ConfusionMatrix:
    """Rows are gold labels, columns predicted labels."""

    labels: tuple[str, ...]
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def trace(self) -> int:
        return int(np.trace(self.counts))

    @property
    def accuracy(self) -> float:
        return self.trace / self.total

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.counts, index=list(self.labels), columns=list(self.labels))
        frame.index.name = "gold"
        frame.columns.name = "predicted"
        return frame

    def write_csv(self, path: Path | str) -> Path:
        with open_artifact(path, newline="") as handle:
            self.to_frame().to_csv(handle, lineterminator="\n")
        return Path(path)


def confusion(predicted: Predictions, gold: GoldLabelSet) -> ConfusionMatrix:
    """counts[g][p] = number of tweets with gold label g predicted as p."""
    pairs = _pairs(predicted, gold)
    labels = tuple(sorted({g for g, _ in pairs} | {p for _, p in pairs}))
    index = {label: i for i, label in enumerate(labels)}
    counts = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for g, p in pairs:
        counts[index[g], index[p]] += 1
    return ConfusionMatrix(labels=labels, counts=counts)


def per_label_stats(matrix: ConfusionMatrix) -> dict[str, dict[str, float]]:
    """Precision, recall, F1 and support for every label (0.0 when undefined)."""
    stats = {}
    column_sums = matrix.counts.sum(axis=0)
    row_sums = matrix.counts.sum(axis=1)
    for i, label in enumerate(matrix.labels):
        hits = matrix.counts[i, i]
        precision = hits / column_sums[i] if column_sums[i] else 0.0
        recall = hits / row_sums[i] if row_sums[i] else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        stats[label] = {
            "precision": float(precision),
            "recall": float(recall),
            "f1": float(f1),
            "support": int(row_sums[i]),
        }
    return stats


def evaluation_report(predicted: Predictions, gold: GoldLabelSet) -> dict:
    """Accuracy, label order and per-label stats; the matrix itself goes to CSV."""
    matrix = confusion(predicted, gold)
    acc = accuracy(predicted, gold)
    logger.info("Accuracy %.4f over %d gold tweets", acc, matrix.total)
    return {
        "accuracy": acc,
        "total": matrix.total,
        "correct": matrix.trace,
        "labels": list(matrix.labels),
        "matrix": matrix.counts.tolist(),
        "per_label": per_label_stats(matrix),
        "per_label_note": "convenience statistics; accuracy is the headline metric",
    }


def load_predictions(path: Path | str) -> dict[int, str]:
    """Read an ``assigned.csv`` (tweet_id,topic,label) into id -> label."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Assignment file not found: {path}")
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    missing = {"tweet_id", "label"} - set(frame.columns)
    if missing:
        raise ValueError(f"{path} lacks columns: {', '.join(sorted(missing))}")
    return {int(doc_id): label for doc_id, label in zip(frame["tweet_id"], frame["label"])}
