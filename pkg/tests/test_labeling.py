from __future__ import annotations

import pandas as pd
import pytest

from topic_labeler.aspect import AspectTerm
from topic_labeler.labeling import (
    AspectCluster,
    TopicLabel,
    assign_labels,
    assignments_frame,
    cluster_aspect_terms,
    display_label,
    label_tweet,
    labels_report,
    ranked_unigrams,
    sample_tweets,
    write_assignments,
)
from topic_labeler.preprocess import CleanDoc
from topic_labeler.topicmodel import BowDoc, build_corpus, build_vocabulary, doc2bow, train_lda
from topic_labeler.topicmodel.lda import DominantAssignment


def term(doc: int, *unigrams: str) -> AspectTerm:
    return AspectTerm(phrase=" ".join(unigrams), unigrams=list(unigrams), source_doc=doc)


def test_cluster_single_doc():
    clusters = cluster_aspect_terms([DominantAssignment(0, 3, 0.9)], [term(0, "store", "price")], 5)
    assert len(clusters) == 5
    assert clusters[3].unigram_counts == {"store": 1, "price": 1}
    assert all(c.total == 0 for c in clusters if c.topic != 3)


def test_cluster_counts_across_docs():
    assignments = [DominantAssignment(0, 0, 0.6), DominantAssignment(1, 0, 0.8)]
    clusters = cluster_aspect_terms(assignments, [term(0, "food"), term(1, "food")], 2)
    assert clusters[0].unigram_counts == {"food": 2}


def test_cluster_skips_unassigned_docs():
    clusters = cluster_aspect_terms([DominantAssignment(0, 1, 0.5)], [term(0, "soap"), term(9, "store")], 2)
    assert sum(c.total for c in clusters) == 1


def test_presence_mode_counts_once_per_tweet():
    aspects = [term(0, "store"), term(0, "store", "shelves"), term(1, "store")]
    assignments = [DominantAssignment(0, 0, 0.5), DominantAssignment(1, 0, 0.5)]
    raw = cluster_aspect_terms(assignments, aspects, 1, "raw")
    presence = cluster_aspect_terms(assignments, aspects, 1, "presence")
    assert raw[0].unigram_counts == {"store": 3, "shelves": 1}
    assert presence[0].unigram_counts == {"store": 2, "shelves": 1}
    with pytest.raises(ValueError):
        cluster_aspect_terms(assignments, aspects, 1, "tfidf")


def test_ranked_unigrams():
    assert ranked_unigrams(AspectCluster(0, {"price": 20, "scam": 50})) == [("scam", 50), ("price", 20)]
    assert ranked_unigrams(AspectCluster(0, {"b": 2, "a": 2})) == [("a", 2), ("b", 2)]
    assert ranked_unigrams(AspectCluster(0)) == []


def test_conflict_goes_to_higher_count():
    labels = assign_labels([AspectCluster(0, {"shopping": 10}), AspectCluster(1, {"shopping": 7, "store": 5})])
    assert [(lab.label, lab.label_count, lab.rank_used) for lab in labels] == [("shopping", 10, 0), ("store", 5, 1)]


def test_conflict_when_lower_topic_loses():
    labels = assign_labels([AspectCluster(0, {"shopping": 3, "food": 1}), AspectCluster(1, {"shopping": 9})])
    assert [lab.label for lab in labels] == ["food", "shopping"]


def test_scam_and_shopping_clusters():
    clusters = [AspectCluster(k) for k in range(8)]
    clusters[7] = AspectCluster(7, {"scam": 50, "price": 20})
    clusters[6] = AspectCluster(6, {"shopping": 40, "online": 12})
    labels = {lab.topic: lab.label for lab in assign_labels(clusters)}
    assert labels[7] == "scam"
    assert labels[6] == "shopping"


def test_empty_clusters_fall_back():
    labels = assign_labels([AspectCluster(k) for k in range(3)])
    assert [lab.label for lab in labels] == ["topic-0", "topic-1", "topic-2"]
    assert all(lab.is_fallback and lab.label_count == 0 for lab in labels)


def test_exhausted_queue_falls_back():
    labels = assign_labels([AspectCluster(0, {"store": 4}), AspectCluster(1, {"store": 2})])
    assert labels[1] == TopicLabel(topic=1, label="topic-1", label_count=0, rank_used=1)


def test_three_way_cascade_keeps_labels_distinct():
    clusters = [
        AspectCluster(0, {"store": 5, "food": 4}),
        AspectCluster(1, {"store": 6, "food": 5, "price": 1}),
        AspectCluster(2, {"food": 9}),
    ]
    labels = assign_labels(clusters)
    assert [lab.label for lab in labels] == ["topic-0", "store", "food"]
    assert len({lab.label for lab in labels}) == 3


def test_labels_match_cluster_counts():
    clusters = [AspectCluster(0, {"a": 3, "b": 3}), AspectCluster(1, {"a": 3, "c": 1})]
    for label in assign_labels(clusters):
        if not label.is_fallback:
            assert clusters[label.topic].unigram_counts[label.label] == label.label_count


def test_labels_report_lists_top_unigrams():
    clusters = [AspectCluster(0, {"store": 3, "food": 1})]
    records = labels_report(clusters, assign_labels(clusters), top_n=1)
    assert records == [
        {
            "topic": 0,
            "label": "store",
            "label_count": 3,
            "rank_used": 0,
            "top_unigrams": [{"word": "store", "count": 3}],
        }
    ]


def test_sample_tweet_mentions_the_label():
    assignments = [
        DominantAssignment(0, 0, 0.6),
        DominantAssignment(1, 0, 0.9),
        DominantAssignment(2, 0, 0.95),
        DominantAssignment(3, 1, 0.7),
        DominantAssignment(4, 0, 0.9),
    ]
    aspects = [term(0, "store"), term(1, "store", "shelves"), term(2, "price"), term(3, "soap"), term(4, "store")]
    labels = [TopicLabel(0, "store", 3, 0), TopicLabel(1, "topic-1", 0, 1)]
    assert sample_tweets(assignments, aspects, labels) == {0: 1, 1: None}


def test_labels_report_with_samples():
    clusters = [AspectCluster(0, {"store": 1}), AspectCluster(1)]
    labels = assign_labels(clusters)
    records = labels_report(clusters, labels, samples={0: 7, 1: None}, texts={7: "Store shelves empty"})
    assert (records[0]["sample_tweet_id"], records[0]["sample_tweet"]) == (7, "Store shelves empty")
    assert (records[1]["sample_tweet_id"], records[1]["sample_tweet"]) == (None, None)
    untexted = labels_report(clusters, labels, samples={0: 7, 1: None})
    assert untexted[0]["sample_tweet"] is None


def test_display_label():
    assert display_label("store") == "Store"
    assert display_label("") == ""


@pytest.fixture
def single_topic():
    docs = [CleanDoc(0, ["store", "food"]), CleanDoc(1, ["store"]), CleanDoc(2, [], dropped=True)]
    vocab = build_vocabulary(docs, min_df=1, max_df_fraction=1.0)
    model = train_lda(build_corpus(docs, vocab), 1, iterations=3, vocab=vocab)
    labels = [TopicLabel(0, "store", 2, 0)]
    return model, labels, vocab


def test_single_topic_labels_every_tweet(single_topic):
    model, labels, _ = single_topic
    for doc_id in (0, 1):
        assignment = label_tweet(model, labels, BowDoc(doc_id))
        assert (assignment.topic, assignment.label) == (0, "store")


def test_empty_and_oov_tweets_are_unlabelable(single_topic):
    model, labels, vocab = single_topic
    assert label_tweet(model, labels, BowDoc(2)).unlabelable
    unseen = doc2bow(CleanDoc(10, ["zzz", "qqq"]), vocab)
    assignment = label_tweet(model, labels, unseen, in_corpus=False)
    assert assignment.unlabelable
    assert assignment.reason == "no in-vocabulary tokens"


def test_unseen_tweet_is_folded_in(single_topic):
    model, labels, vocab = single_topic
    assignment = label_tweet(model, labels, doc2bow(CleanDoc(10, ["food"]), vocab), in_corpus=False)
    assert (assignment.topic, assignment.label) == (0, "store")


def test_assignment_csv(tmp_path, single_topic):
    model, labels, _ = single_topic
    assignments = [label_tweet(model, labels, BowDoc(i)) for i in (0, 1, 2)]
    frame = assignments_frame(assignments)
    assert frame.to_dict("records")[2] == {"tweet_id": 2, "topic": "", "label": ""}

    path = write_assignments(assignments, tmp_path / "assigned.csv")
    written = pd.read_csv(path, dtype=str, keep_default_na=False)
    assert list(written.columns) == ["tweet_id", "topic", "label"]
    assert written["label"].tolist() == ["store", "store", ""]
