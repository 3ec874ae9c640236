"""Dictionary and bag-of-words corpus built from cleaned tweets."""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from topic_labeler.errors import EmptyVocabularyError
from topic_labeler.preprocess import CleanDoc

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Vocabulary:
    """Bijection between kept words and dense ids 0..V-1."""

    word_to_id: dict[str, int]
    id_to_word: tuple[str, ...]
    doc_freq: np.ndarray

    def __post_init__(self) -> None:
        if len(self.word_to_id) != len(self.id_to_word):
            raise ValueError("word_to_id and id_to_word disagree in size")
        for i, word in enumerate(self.id_to_word):
            if self.word_to_id.get(word) != i:
                raise ValueError(f"Vocabulary id mismatch for {word!r}")

    def __len__(self) -> int:
        return len(self.id_to_word)

    def __contains__(self, word: object) -> bool:
        return word in self.word_to_id

    def to_dict(self) -> dict:
        return {"words": list(self.id_to_word), "doc_freq": [int(x) for x in self.doc_freq]}

    @classmethod
    def from_words(cls, words: Iterable[str], doc_freq: Iterable[int] | None = None) -> "Vocabulary":
        words = tuple(words)
        df = np.asarray(list(doc_freq) if doc_freq is not None else [0] * len(words), dtype=np.int64)
        return cls(word_to_id={w: i for i, w in enumerate(words)}, id_to_word=words, doc_freq=df)


@dataclass(frozen=True)
class BowDoc:
    """Sparse word-id counts of one document."""

    doc_id: int
    counts: dict[int, int] = field(default_factory=dict)

    @property
    def length(self) -> int:
        return sum(self.counts.values())

    def is_empty(self) -> bool:
        return not self.counts


def build_vocabulary(
    docs: Iterable[CleanDoc],
    min_df: int = 2,
    max_df_fraction: float = 0.5,
) -> Vocabulary:
    """
    Keep words whose document frequency lies in [min_df, max_df_fraction * D].

    D counts the non-dropped documents. Ids follow first occurrence.

    Raises:
        EmptyVocabularyError: If no word survives the filters
    """
    doc_freq: Counter[str] = Counter()
    first_seen: dict[str, int] = {}
    num_docs = 0
    for doc in docs:
        if doc.dropped:
            continue
        num_docs += 1
        for word in doc.tokens:
            first_seen.setdefault(word, len(first_seen))
        doc_freq.update(set(doc.tokens))

    if num_docs == 0:
        raise EmptyVocabularyError("No documents left after preprocessing")
    max_df = max_df_fraction * num_docs
    kept = [w for w in sorted(first_seen, key=first_seen.get) if min_df <= doc_freq[w] <= max_df]
    if not kept:
        raise EmptyVocabularyError(
            f"All {len(first_seen)} words filtered out (min_df={min_df}, "
            f"max_df_fraction={max_df_fraction}, documents={num_docs})"
        )
    logger.info("Vocabulary: kept %d of %d words over %d documents", len(kept), len(first_seen), num_docs)
    return Vocabulary.from_words(kept, (doc_freq[w] for w in kept))


def doc2bow(doc: CleanDoc, vocab: Vocabulary) -> BowDoc:
    """Count in-vocabulary tokens; unknown tokens are dropped."""
    counts: Counter[int] = Counter()
    if not doc.dropped:
        for word in doc.tokens:
            word_id = vocab.word_to_id.get(word)
            if word_id is not None:
                counts[word_id] += 1
    return BowDoc(doc_id=doc.id, counts=dict(sorted(counts.items())))


def build_corpus(docs: Iterable[CleanDoc], vocab: Vocabulary) -> list[BowDoc]:
    """One BowDoc per cleaned tweet, in input order."""
    return [doc2bow(doc, vocab) for doc in docs]
