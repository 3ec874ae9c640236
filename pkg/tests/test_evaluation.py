from __future__ import annotations

import random

import numpy as np
import pytest

from topic_labeler.errors import GoldLabelError, MissingPredictionError
from topic_labeler.evaluation import (
    UNLABELED,
    accuracy,
    confusion,
    evaluation_report,
    load_predictions,
    per_label_stats,
)
from topic_labeler.ingest import GoldLabelSet, load_gold_labels
from topic_labeler.labeling import TweetAssignment, write_assignments


def gold_of(*labels: str) -> GoldLabelSet:
    return GoldLabelSet(entries=tuple(enumerate(labels)))


def test_identical_labels():
    gold = gold_of("store", "food")
    assert accuracy({0: "store", 1: "food"}, gold) == 1.0


def test_half_right():
    assert accuracy([(0, "store"), (1, "price")], gold_of("store", "food")) == 0.5


def test_matching_ignores_case_and_whitespace():
    assert accuracy({0: " Store "}, gold_of("store")) == 1.0


def test_missing_predictions_are_listed():
    with pytest.raises(MissingPredictionError) as info:
        accuracy({0: "store"}, gold_of("store", "food", "price"))
    assert info.value.missing_ids == [1, 2]


def test_empty_gold():
    with pytest.raises(GoldLabelError):
        accuracy({0: "store"}, GoldLabelSet())


def test_confusion_counts():
    matrix = confusion({0: "a", 1: "b", 2: "b"}, gold_of("a", "a", "b"))
    assert matrix.labels == ("a", "b")
    assert matrix.counts.tolist() == [[1, 1], [0, 1]]


def test_perfect_predictions_are_diagonal():
    matrix = confusion({0: "a", 1: "b", 2: "c"}, gold_of("a", "b", "c"))
    assert np.array_equal(matrix.counts, np.eye(3, dtype=np.int64))


def test_trace_over_total_is_accuracy():
    rng = random.Random(0)
    for _ in range(100):
        n = rng.randint(1, 40)
        gold = gold_of(*[rng.choice("abcd") for _ in range(n)])
        predicted = {i: rng.choice("abcde") for i in range(n)}
        matrix = confusion(predicted, gold)
        assert matrix.trace / matrix.total == accuracy(predicted, gold)
        assert matrix.counts.sum(axis=1).tolist() == [
            sum(label == g for _, g in gold.entries) for label in matrix.labels
        ]
        assert matrix.counts.sum(axis=0).tolist() == [
            sum(label == p for p in predicted.values()) for label in matrix.labels
        ]


def test_unlabelable_prediction_is_a_miss():
    matrix = confusion({0: "", 1: "food"}, gold_of("store", "food"))
    assert UNLABELED in matrix.labels
    assert matrix.accuracy == 0.5


def test_per_label_stats():
    stats = per_label_stats(confusion({0: "a", 1: "b", 2: "b"}, gold_of("a", "a", "b")))
    assert stats["a"] == {"precision": 1.0, "recall": 0.5, "f1": pytest.approx(2 / 3), "support": 2}
    assert stats["b"]["precision"] == 0.5


def test_report_and_csv(tmp_path, gold_csv):
    gold = load_gold_labels(gold_csv)
    assignments = [TweetAssignment(doc_id=i, topic=0, label=label) for i, label in gold.entries]
    assignments[0] = TweetAssignment(doc_id=0)
    path = write_assignments(assignments, tmp_path / "assigned.csv")

    predicted = load_predictions(path)
    report = evaluation_report(predicted, gold)
    assert report["total"] == 50
    assert report["correct"] == 49
    assert report["accuracy"] == pytest.approx(0.98)

    matrix = confusion(predicted, gold)
    csv_path = matrix.write_csv(tmp_path / "confusion.csv")
    header = csv_path.read_text(encoding="utf-8").splitlines()[0]
    assert header.startswith("gold,")
