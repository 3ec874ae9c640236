"""
Topic labels from aspect terms.

Aspect unigrams are pooled per dominant topic, and each topic is labeled with
its most frequent unigram. When two topics want the same unigram, the topic
with the higher count keeps it and the other moves on to its next unigram.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

import pandas as pd

from topic_labeler.aspect import AspectTerm
from topic_labeler.config import COUNT_MODES
from topic_labeler.errors import UnassignableDocumentError
from topic_labeler.topicmodel.lda import (
    DominantAssignment,
    LdaModel,
    dominant_from_theta,
    dominant_topic,
    infer_theta,
)
from topic_labeler.topicmodel.vocabulary import BowDoc
from topic_labeler.utils.artifacts import open_artifact

logger = logging.getLogger(__name__)

FALLBACK_PREFIX = "topic-"


@dataclass
class AspectCluster:
    """Aspect unigram counts of the tweets dominated by one topic."""

    topic: int
    unigram_counts: dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.unigram_counts.values())


@dataclass(frozen=True)
class TopicLabel:
    topic: int
    label: str
    label_count: int
    rank_used: int

    @property
    def is_fallback(self) -> bool:
        return self.label == fallback_label(self.topic)

    def to_dict(self) -> dict:
        return {
            "topic": self.topic,
            "label": self.label,
            "label_count": self.label_count,
            "rank_used": self.rank_used,
        }


@dataclass(frozen=True)
class TweetAssignment:
    """Dominant topic and label of one tweet, or why it has none."""

    doc_id: int
    topic: Optional[int] = None
    label: Optional[str] = None
    proportion: float = 0.0
    reason: Optional[str] = None

    @property
    def unlabelable(self) -> bool:
        return self.topic is None


def fallback_label(topic: int) -> str:
    return f"{FALLBACK_PREFIX}{topic}"


def display_label(label: str) -> str:
    """Presentation casing: 'store' -> 'Store'."""
    return label[:1].upper() + label[1:]


def cluster_aspect_terms(
    assignments: Iterable[DominantAssignment],
    aspects: Iterable[AspectTerm],
    num_topics: int,
    count_mode: str = "raw",
) -> list[AspectCluster]:
    """
    Count aspect unigrams per dominant topic.

    Aspects of tweets without a dominant assignment are skipped. With
    ``count_mode="presence"`` a unigram counts once per tweet.
    """
    if count_mode not in COUNT_MODES:
        raise ValueError(f"Unknown count_mode: {count_mode}. Must be 'raw' or 'presence'")
    topic_of = {a.doc_id: a.topic for a in assignments}
    counters: list[Counter] = [Counter() for _ in range(num_topics)]
    seen: set[tuple[int, str]] = set()
    skipped = 0
    for term in aspects:
        topic = topic_of.get(term.source_doc)
        if topic is None:
            skipped += 1
            continue
        for word in term.unigrams:
            if count_mode == "presence":
                if (term.source_doc, word) in seen:
                    continue
                seen.add((term.source_doc, word))
            counters[topic][word] += 1
    if skipped:
        logger.debug("Skipped %d aspect terms of unassigned tweets", skipped)
    return [AspectCluster(topic=k, unigram_counts=dict(c)) for k, c in enumerate(counters)]


def ranked_unigrams(cluster: AspectCluster) -> list[tuple[str, int]]:
    """Unigrams by count descending, then alphabetically."""
    return sorted(cluster.unigram_counts.items(), key=lambda item: (-item[1], item[0]))


def assign_labels(clusters: Sequence[AspectCluster]) -> list[TopicLabel]:
    """
    Give every topic a distinct label.

    Each round looks at the front candidate of every unlabeled topic and takes
    the one with the highest count (ties: lower topic). An unclaimed unigram
    becomes that topic's label; a claimed one sends the topic to its next
    ranked unigram. Topics that run out of unigrams get ``topic-<k>``.
    """
    queues = {c.topic: ranked_unigrams(c) for c in clusters}
    position = {topic: 0 for topic in queues}
    claimed: set[str] = set()
    labels: dict[int, TopicLabel] = {}

    while True:
        fronts = []
        for topic, queue in queues.items():
            if topic in labels:
                continue
            if position[topic] >= len(queue):
                labels[topic] = TopicLabel(topic, fallback_label(topic), 0, len(queue))
                continue
            word, count = queue[position[topic]]
            fronts.append((-count, topic, word))
        if not fronts:
            break
        neg_count, topic, word = min(fronts)
        if word in claimed:
            position[topic] += 1
        else:
            claimed.add(word)
            labels[topic] = TopicLabel(topic, word, -neg_count, position[topic])

    result = [labels[topic] for topic in sorted(labels)]
    fallbacks = sum(label.is_fallback for label in result)
    logger.info("Assigned %d topic labels (%d fallbacks)", len(result), fallbacks)
    return result


def sample_tweets(
    assignments: Iterable[DominantAssignment],
    aspects: Iterable[AspectTerm],
    labels: Sequence[TopicLabel],
) -> dict[int, Optional[int]]:
    """
    A representative tweet id per topic.

    Among the tweets dominated by a topic whose aspect unigrams contain the
    topic's label, the one with the highest topic proportion wins (ties: lower
    id). Fallback labels have no sample.
    """
    unigrams_of: dict[int, set[str]] = {}
    for term in aspects:
        unigrams_of.setdefault(term.source_doc, set()).update(term.unigrams)
    label_of = {label.topic: label for label in labels}
    best: dict[int, DominantAssignment] = {}
    for assignment in assignments:
        label = label_of.get(assignment.topic)
        if label is None or label.is_fallback:
            continue
        if label.label not in unigrams_of.get(assignment.doc_id, ()):
            continue
        current = best.get(assignment.topic)
        if current is None or (-assignment.proportion, assignment.doc_id) < (
            -current.proportion,
            current.doc_id,
        ):
            best[assignment.topic] = assignment
    return {
        label.topic: best[label.topic].doc_id if label.topic in best else None for label in labels
    }


def labels_report(
    clusters: Sequence[AspectCluster],
    labels: Sequence[TopicLabel],
    model: LdaModel | None = None,
    top_n: int = 20,
    top_words: int = 10,
    *,
    samples: Optional[Mapping[int, Optional[int]]] = None,
    texts: Optional[Mapping[int, str]] = None,
) -> list[dict]:
    """
    Per-topic label records with the top aspect unigrams (and LDA top words).

    With ``samples`` each record also carries ``sample_tweet_id``, and
    ``sample_tweet`` holds its text when ``texts`` has it.
    """
    by_topic = {c.topic: c for c in clusters}
    records = []
    for label in labels:
        record = label.to_dict()
        cluster = by_topic.get(label.topic, AspectCluster(label.topic))
        record["top_unigrams"] = [
            {"word": word, "count": count} for word, count in ranked_unigrams(cluster)[:top_n]
        ]
        if model is not None:
            record["top_words"] = model.top_words(label.topic, top_words)
        if samples is not None:
            sample_id = samples.get(label.topic)
            record["sample_tweet_id"] = sample_id
            record["sample_tweet"] = (texts or {}).get(sample_id) if sample_id is not None else None
        records.append(record)
    return records


def label_tweet(
    model: LdaModel,
    labels: Sequence[TopicLabel],
    doc: BowDoc,
    *,
    in_corpus: bool = True,
    fold_in_iterations: int = 50,
    seed: int = 0,
) -> TweetAssignment:
    """
    Dominant topic and label of one tweet.

    Training tweets use their trained topic mixture; unseen tweets are folded
    in. A tweet with no in-vocabulary token is unlabelable.
    """
    label_of = {label.topic: label.label for label in labels}
    if in_corpus:
        try:
            dominant = dominant_topic(model, doc.doc_id)
        except UnassignableDocumentError as e:
            return TweetAssignment(doc_id=doc.doc_id, reason=str(e))
    else:
        if doc.is_empty():
            return TweetAssignment(doc_id=doc.doc_id, reason="no in-vocabulary tokens")
        theta = infer_theta(model, doc, fold_in_iterations, seed)
        dominant = dominant_from_theta(doc.doc_id, theta)
    return TweetAssignment(
        doc_id=doc.doc_id,
        topic=dominant.topic,
        label=label_of.get(dominant.topic, fallback_label(dominant.topic)),
        proportion=dominant.proportion,
    )


def assignments_frame(assignments: Iterable[TweetAssignment]) -> pd.DataFrame:
    """``tweet_id,topic,label`` rows; unlabelable tweets have empty topic and label."""
    rows = [
        {
            "tweet_id": a.doc_id,
            "topic": "" if a.topic is None else str(a.topic),
            "label": a.label or "",
        }
        for a in assignments
    ]
    return pd.DataFrame(rows, columns=["tweet_id", "topic", "label"])


def write_assignments(assignments: Iterable[TweetAssignment], path: Path | str) -> Path:
    frame = assignments_frame(assignments)
    with open_artifact(path, newline="") as handle:
        frame.to_csv(handle, index=False, lineterminator="\n")
    unlabelable = int((frame["topic"] == "").sum())
    logger.info("Wrote %d assignments to %s (%d unlabelable)", len(frame), path, unlabelable)
    return Path(path)
