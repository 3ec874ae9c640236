from __future__ import annotations

import math
import random

import numpy as np
import pytest

from conftest import planted_docs, planted_topics
from topic_labeler.coherence import (
    CoherenceReport,
    ContextIndex,
    choose_k,
    cv_coherence,
    sweep_k,
    umass_coherence,
)
from topic_labeler.errors import SweepError
from topic_labeler.preprocess import CleanDoc
from topic_labeler.topicmodel import build_vocabulary
from topic_labeler.topicmodel.lda import TrainerConfig


def docs_of(*token_lists: list[str]) -> list[CleanDoc]:
    return [CleanDoc(id=i, tokens=list(tokens)) for i, tokens in enumerate(token_lists)]


def brute_force_windows(docs: list[CleanDoc], window: int) -> list[set[str]]:
    contexts = []
    for doc in docs:
        tokens = doc.tokens
        if doc.dropped or not tokens:
            continue
        if len(tokens) <= window:
            contexts.append(set(tokens))
        else:
            contexts.extend(set(tokens[i:i + window]) for i in range(len(tokens) - window + 1))
    return contexts


def brute_force_cv(top_words: list[str], docs: list[CleanDoc], window: int, eps: float = 1e-12) -> float:
    contexts = brute_force_windows(docs, window)
    n = len(contexts)

    def p(*words: str) -> float:
        return sum(all(w in c for w in words) for c in contexts) / n

    def npmi(a: str, b: str) -> float:
        p_a, p_b, p_ab = p(a), p(b), p(a, b)
        if p_a == 0 or p_b == 0:
            return 0.0
        denominator = -math.log(p_ab + eps)
        if denominator <= 0:
            return 1.0
        return math.log((p_ab + eps) / (p_a * p_b)) / denominator

    vectors = [[npmi(a, b) for b in top_words] for a in top_words]
    total = [sum(column) for column in zip(*vectors)]
    total_norm = math.sqrt(sum(x * x for x in total))
    cosines = []
    for vector in vectors:
        norm = math.sqrt(sum(x * x for x in vector))
        dot = sum(x * y for x, y in zip(vector, total))
        cosines.append(0.0 if norm == 0 or total_norm == 0 else dot / (norm * total_norm))
    return sum(cosines) / len(cosines)


def test_umass_always_together():
    docs = docs_of(*[["alpha", "beta"]] * 10)
    assert umass_coherence(["alpha", "beta"], docs) == pytest.approx(math.log(11 / 10))


def test_umass_never_together():
    docs = docs_of(*([["alpha"]] * 10 + [["beta"]] * 10))
    assert umass_coherence(["alpha", "beta"], docs) == pytest.approx(math.log(1 / 10))


def test_umass_ignores_document_order():
    rng = random.Random(2)
    docs = docs_of(*[[rng.choice("abcdef") for _ in range(5)] for _ in range(30)])
    shuffled = list(docs)
    rng.shuffle(shuffled)
    words = ["a", "b", "c", "d"]
    assert umass_coherence(words, docs) == pytest.approx(umass_coherence(words, shuffled))


def test_umass_absent_word_uses_epsilon_floor():
    docs = docs_of(["alpha"], ["alpha"])
    assert umass_coherence(["alpha", "ghost"], docs, epsilon=1e-3) == pytest.approx(math.log(1 / 1e-3))


def test_cv_matches_brute_force():
    docs = docs_of(["a", "b", "c"], ["a", "c"], ["b", "d", "a", "e"], ["c"])
    expected = brute_force_cv(["a", "b", "c"], docs, window=2)
    assert cv_coherence(["a", "b", "c"], docs, window=2) == pytest.approx(expected, abs=1e-9)


def test_sliding_window_counts_match_enumeration():
    rng = random.Random(7)
    docs = docs_of(*[[rng.choice("abcdefg") for _ in range(rng.randint(1, 15))] for _ in range(25)])
    words = list("abcdefg")
    for window in (1, 3, 5, 20):
        contexts = brute_force_windows(docs, window)
        index = ContextIndex.sliding_windows(docs, window)
        assert index.num_contexts == len(contexts)
        expected = np.array([[sum(a in c and b in c for c in contexts) for b in words] for a in words])
        assert np.array_equal(index.cooccurrence(words), expected)


def test_cv_colinear_words_score_one():
    docs = docs_of(*([["x", "y"]] * 5 + [["z"]] * 5))
    assert cv_coherence(["x", "y"], docs, window=10) == pytest.approx(1.0, abs=1e-9)


def test_cv_stays_in_range_on_random_corpora():
    rng = random.Random(3)
    for _ in range(50):
        docs = docs_of(*[[rng.choice("abcdefghij") for _ in range(rng.randint(0, 12))] for _ in range(20)])
        words = rng.sample(list("abcdefghijk"), 4)
        score = cv_coherence(words, docs, window=rng.randint(1, 8))
        assert -1.0 <= score <= 1.0


def test_needs_two_words():
    with pytest.raises(ValueError):
        cv_coherence(["a"], docs_of(["a"]))
    with pytest.raises(ValueError):
        umass_coherence(["a"], docs_of(["a"]))


def test_choose_k_prefers_smaller_on_ties():
    assert choose_k([(10, 0.5), (4, 0.5), (6, 0.2)]) == 4


def small_corpus():
    phi = planted_topics(3, 8, seed=1)
    docs = planted_docs(phi, 60, 20, seed=1)
    return docs, build_vocabulary(docs, min_df=1, max_df_fraction=1.0)


def test_single_candidate_is_chosen():
    docs, vocab = small_corpus()
    report = sweep_k(docs, [20], "cv", TrainerConfig(iterations=10, seed=1), vocab=vocab)
    assert report.chosen_k == 20
    assert report.per_k[0][0] == 20
    assert len(report.per_topic[20]) == 20


def test_sweep_is_reproducible_and_sorted(tmp_path):
    docs, vocab = small_corpus()
    trainer = TrainerConfig(iterations=15, seed=2)
    first = sweep_k(docs, [4, 2, 3], "umass", trainer, vocab=vocab, top_n=5)
    second = sweep_k(docs, [3, 4, 2], "umass", trainer, vocab=vocab, top_n=5, workers=3)
    assert [k for k, _ in first.per_k] == [2, 3, 4]
    assert first.per_k == second.per_k
    assert first.chosen_k in (2, 3, 4)

    path = first.write_curve(tmp_path / "curve.csv")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "k,score"
    assert len(lines) == 4


def test_sweep_rejects_bad_candidates():
    docs, vocab = small_corpus()
    with pytest.raises(ValueError):
        sweep_k(docs, [], vocab=vocab)
    with pytest.raises(ValueError):
        sweep_k(docs, [1, 2], vocab=vocab)


def test_sweep_attaches_k_to_failures():
    docs, vocab = small_corpus()
    with pytest.raises(SweepError) as info:
        sweep_k(docs, [3], "cv", TrainerConfig(iterations=2), vocab=vocab, top_n=1)
    assert info.value.k == 3


def test_report_dict():
    report = CoherenceReport(metric="cv", per_k=[(2, 0.1), (3, 0.3)], chosen_k=3, top_n=20)
    data = report.to_dict()
    assert data["chosen_k"] == 3
    assert data["per_k"] == [{"k": 2, "score": 0.1}, {"k": 3, "score": 0.3}]


@pytest.mark.slow
def test_cv_prefers_planted_topic_count():
    wins = 0
    for seed in range(5):
        phi = planted_topics(5, 10, seed=seed)
        docs = planted_docs(phi, 500, 100, seed=seed)
        vocab = build_vocabulary(docs, min_df=1, max_df_fraction=1.0)
        report = sweep_k(
            docs,
            [2, 5],
            "cv",
            TrainerConfig(iterations=200, seed=seed),
            vocab=vocab,
            top_n=10,
            workers=2,
        )
        scores = dict(report.per_k)
        wins += scores[5] > scores[2]
    assert wins >= 4
