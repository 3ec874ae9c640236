from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from topic_labeler.config import PipelineConfig
from topic_labeler.preprocess import CleanDoc

FIXTURES = Path(__file__).resolve().parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def tweets_csv() -> Path:
    return FIXTURES / "tweets_sample.csv"


@pytest.fixture
def gold_csv() -> Path:
    return FIXTURES / "gold_sample.csv"


@pytest.fixture
def cfg() -> PipelineConfig:
    return PipelineConfig()


def planted_topics(num_topics: int, words_per_topic: int, seed: int = 0) -> np.ndarray:
    """Topic-word distributions over disjoint vocabularies, skewed within each topic."""
    rng = np.random.default_rng(seed)
    vocab_size = num_topics * words_per_topic
    phi = np.zeros((num_topics, vocab_size))
    for k in range(num_topics):
        weights = rng.dirichlet(np.full(words_per_topic, 2.0))
        phi[k, k * words_per_topic:(k + 1) * words_per_topic] = weights
    return phi


def planted_docs(
    phi: np.ndarray,
    num_docs: int,
    doc_length: int,
    seed: int = 0,
    doc_alpha: float | None = 0.3,
) -> list[CleanDoc]:
    """
    Sample CleanDocs from known topics; word j is spelled ``w<j>``.

    With ``doc_alpha=None`` every document is drawn from a single topic,
    chosen round-robin.
    """
    rng = np.random.default_rng(seed)
    num_topics, vocab_size = phi.shape
    docs = []
    for d in range(num_docs):
        if doc_alpha is None:
            mixture = np.eye(num_topics)[d % num_topics]
        else:
            mixture = rng.dirichlet(np.full(num_topics, doc_alpha))
        topics = rng.choice(num_topics, size=doc_length, p=mixture)
        words = [int(rng.choice(vocab_size, p=phi[k])) for k in topics]
        docs.append(CleanDoc(id=d, tokens=[f"w{j}" for j in words]))
    return docs
