from __future__ import annotations

import numpy as np
import pytest

from conftest import planted_docs, planted_topics
from topic_labeler.errors import CountConservationError, UnassignableDocumentError
from topic_labeler.preprocess import CleanDoc
from topic_labeler.topicmodel import (
    BowDoc,
    build_corpus,
    build_vocabulary,
    dominant_topic,
    infer_theta,
    train_lda,
)
from topic_labeler.topicmodel.lda import dominant_from_theta, expand_tokens


def fit_planted(num_topics, words_per_topic, num_docs, doc_length, iterations, seed=0, doc_alpha=0.3):
    phi_true = planted_topics(num_topics, words_per_topic, seed=seed)
    docs = planted_docs(phi_true, num_docs, doc_length, seed=seed, doc_alpha=doc_alpha)
    vocab = build_vocabulary(docs, min_df=1, max_df_fraction=1.0)
    corpus = build_corpus(docs, vocab)
    model = train_lda(corpus, num_topics, iterations=iterations, seed=seed, vocab=vocab)
    # Reorder the generating distributions into vocabulary id order.
    truth = np.zeros((num_topics, len(vocab)))
    for word, i in vocab.word_to_id.items():
        truth[:, i] = phi_true[:, int(word[1:])]
    truth /= truth.sum(axis=1, keepdims=True)
    return model, truth, corpus


def matched_tv(model, truth) -> list[float]:
    """Greedy matching of each true topic to its closest unused recovered topic."""
    distances = 0.5 * np.abs(truth[:, None, :] - model.phi[None, :, :]).sum(axis=2)
    used: set[int] = set()
    result = []
    for k in np.argsort(distances.min(axis=1)):
        order = [j for j in np.argsort(distances[k]) if j not in used]
        used.add(order[0])
        result.append(float(distances[k, order[0]]))
    return result


def test_single_topic_is_exact():
    docs = [CleanDoc(0, ["a", "b", "b"]), CleanDoc(1, ["b", "c"]), CleanDoc(2, [], dropped=True)]
    vocab = build_vocabulary(docs, min_df=1, max_df_fraction=1.0)
    corpus = build_corpus(docs, vocab)
    model = train_lda(corpus, 1, beta=0.01, iterations=5, seed=3, vocab=vocab)
    assert np.allclose(model.theta, 1.0)
    counts = np.array([1, 3, 1], dtype=float)
    expected = (counts + 0.01) / (counts.sum() + 3 * 0.01)
    assert np.allclose(model.phi[0], expected, atol=1e-12)
    assert dominant_topic(model, 0).topic == 0
    assert dominant_topic(model, 1).proportion == pytest.approx(1.0)


def test_distributions_are_normalized():
    model, _, _ = fit_planted(3, 8, 60, 30, iterations=30)
    assert np.allclose(model.phi.sum(axis=1), 1.0, atol=1e-9)
    assert np.allclose(model.theta.sum(axis=1), 1.0, atol=1e-9)
    assert (model.phi >= 0).all() and (model.theta >= 0).all()


def test_count_conservation():
    model, _, corpus = fit_planted(4, 5, 40, 20, iterations=20)
    model.check_counts()
    assert int(model.ndk.sum()) == sum(doc.length for doc in corpus)
    assert np.array_equal(model.nkw.sum(axis=1), model.nk)


def test_count_drift_is_detected():
    model, _, _ = fit_planted(2, 5, 20, 10, iterations=5)
    model.nk[0] += 1
    with pytest.raises(CountConservationError):
        model.check_counts()


def test_same_seed_same_sample():
    first, _, _ = fit_planted(3, 6, 50, 20, iterations=25, seed=11)
    second, _, _ = fit_planted(3, 6, 50, 20, iterations=25, seed=11)
    for a, b in zip(first.assignments, second.assignments):
        assert np.array_equal(a, b)
    assert np.array_equal(first.phi, second.phi)


def test_planted_two_topics_are_recovered():
    model, truth, _ = fit_planted(2, 10, 200, 50, iterations=200)
    assert max(matched_tv(model, truth)) <= 0.1


@pytest.mark.slow
def test_planted_five_topics_are_recovered():
    model, truth, _ = fit_planted(5, 10, 500, 100, iterations=500)
    assert np.mean(matched_tv(model, truth)) <= 0.15


def test_pure_document_gets_its_topic():
    model, truth, _ = fit_planted(2, 10, 200, 50, iterations=200)
    # Topic of the recovered model that owns the first planted topic's words.
    words_a = np.flatnonzero(truth[0] > 0)
    topic_a = int(np.argmax(model.phi[:, words_a].sum(axis=1)))
    doc = BowDoc(doc_id=999, counts={int(w): 2 for w in words_a})
    assert int(np.argmax(infer_theta(model, doc, 50, seed=1))) == topic_a

    pure_rows = [
        i for i, tokens in enumerate(model.tokens) if len(tokens) and np.isin(tokens, words_a).all()
    ]
    if pure_rows:
        assert dominant_topic(model, int(model.doc_ids[pure_rows[0]])).topic == topic_a


def test_dominant_topic_unassignable():
    docs = [CleanDoc(0, ["a", "b"]), CleanDoc(1, [], dropped=True)]
    vocab = build_vocabulary(docs, min_df=1, max_df_fraction=1.0)
    model = train_lda(build_corpus(docs, vocab), 2, iterations=3, vocab=vocab)
    with pytest.raises(UnassignableDocumentError):
        dominant_topic(model, 1)
    with pytest.raises(UnassignableDocumentError, match="not part of the training corpus"):
        dominant_topic(model, 42)


def test_argmax_ties_go_to_lowest_topic():
    assert dominant_from_theta(0, np.array([0.1, 0.7, 0.2])).topic == 1
    tied = dominant_from_theta(0, np.array([0.4, 0.4, 0.2]))
    assert (tied.topic, tied.proportion) == (0, 0.4)


def test_infer_theta_empty_doc_returns_prior():
    model, _, _ = fit_planted(4, 5, 40, 20, iterations=10)
    theta = infer_theta(model, BowDoc(doc_id=1), 50, seed=0)
    assert np.allclose(theta, np.full(4, 0.25))


def test_infer_theta_is_deterministic():
    model, _, corpus = fit_planted(3, 6, 50, 20, iterations=20)
    doc = corpus[0]
    first = infer_theta(model, doc, 30, seed=5)
    assert np.array_equal(first, infer_theta(model, doc, 30, seed=5))
    assert first.sum() == pytest.approx(1.0)


def test_expand_tokens_orders_ids():
    assert expand_tokens(BowDoc(0, {3: 1, 1: 2})).tolist() == [1, 1, 3]


@pytest.mark.parametrize(
    "kwargs, message",
    [
        ({"num_topics": 0}, "num_topics"),
        ({"num_topics": 2, "iterations": 0}, "iterations"),
    ],
)
def test_invalid_arguments(kwargs, message):
    with pytest.raises(ValueError, match=message):
        train_lda([BowDoc(0, {0: 1})], **kwargs)


def test_corpus_without_tokens():
    with pytest.raises(ValueError, match="without tokens"):
        train_lda([BowDoc(0)], 2)


def test_top_words_use_vocabulary():
    model, _, _ = fit_planted(2, 5, 40, 20, iterations=20)
    words = model.top_words(0, 3)
    assert len(words) == 3
    assert all(w.startswith("w") for w in words)
