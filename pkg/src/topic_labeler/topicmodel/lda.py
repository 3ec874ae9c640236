"""
Latent Dirichlet Allocation trained by collapsed Gibbs sampling.

Tokens are visited in a fixed order (documents in corpus order, then each
document's word ids ascending, repeated by count), and every random draw
comes from a single seeded numpy Generator, so a run is bit-reproducible
given the corpus, K, priors, iteration count and seed. The inner loops are
numba kernels that release the GIL, which lets independent trainings share
a thread pool.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from numba import njit

from topic_labeler.errors import CountConservationError, UnassignableDocumentError
from topic_labeler.topicmodel.vocabulary import BowDoc, Vocabulary

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[str, str], None]


@njit(nogil=True, cache=True)
def _gibbs_sweep(words, docs, z, nkw, nk, ndk, alpha, beta, u):  # pragma: no cover - compiled
    num_topics = nk.shape[0]
    vbeta = nkw.shape[1] * beta
    cumulative = np.empty(num_topics)
    for i in range(words.shape[0]):
        w = words[i]
        d = docs[i]
        k = z[i]
        nkw[k, w] -= 1
        nk[k] -= 1
        ndk[d, k] -= 1
        total = 0.0
        for t in range(num_topics):
            total += (ndk[d, t] + alpha[t]) * (nkw[t, w] + beta) / (nk[t] + vbeta)
            cumulative[t] = total
        target = u[i] * total
        k = 0
        while k < num_topics - 1 and cumulative[k] <= target:
            k += 1
        z[i] = k
        nkw[k, w] += 1
        nk[k] += 1
        ndk[d, k] += 1


@njit(nogil=True, cache=True)
def _fold_in_sweep(words, z, nd, phi, alpha, u):  # pragma: no cover - compiled
    num_topics = nd.shape[0]
    cumulative = np.empty(num_topics)
    for i in range(words.shape[0]):
        w = words[i]
        nd[z[i]] -= 1
        total = 0.0
        for t in range(num_topics):
            total += (nd[t] + alpha[t]) * phi[t, w]
            cumulative[t] = total
        target = u[i] * total
        k = 0
        while k < num_topics - 1 and cumulative[k] <= target:
            k += 1
        z[i] = k
        nd[k] += 1


@dataclass(frozen=True)
class TrainerConfig:
    """Sampler settings shared by every model of a run or sweep."""

    alpha_sum: float = 5.0
    beta: float = 0.01
    iterations: int = 1000
    seed: int = 0
    check_counts: bool = __debug__

    def to_dict(self) -> dict:
        return {
            "alpha_sum": self.alpha_sum,
            "beta": self.beta,
            "iterations": self.iterations,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class DominantAssignment:
    """The argmax topic of one document and its proportion."""

    doc_id: int
    topic: int
    proportion: float


def expand_tokens(doc: BowDoc) -> np.ndarray:
    """Token word ids of a document: ascending id, each repeated by its count."""
    ids = sorted(doc.counts)
    return np.repeat(
        np.asarray(ids, dtype=np.int64),
        np.asarray([doc.counts[i] for i in ids], dtype=np.int64),
    )


def count_tables(
    tokens: Sequence[np.ndarray],
    assignments: Sequence[np.ndarray],
    num_topics: int,
    num_words: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    words = np.concatenate(tokens) if tokens else np.zeros(0, dtype=np.int64)
    z = np.concatenate(assignments) if assignments else np.zeros(0, dtype=np.int64)
    docs = np.repeat(np.arange(len(tokens), dtype=np.int64), [len(t) for t in tokens])
    nkw = np.zeros((num_topics, num_words), dtype=np.int64)
    ndk = np.zeros((len(tokens), num_topics), dtype=np.int64)
    np.add.at(nkw, (z, words), 1)
    np.add.at(ndk, (docs, z), 1)
    nk = np.bincount(z, minlength=num_topics).astype(np.int64)
    return nkw, nk, ndk


@dataclass
class LdaModel:
    """A trained topic model plus the state of its final Gibbs sample."""

    num_topics: int
    alpha: np.ndarray
    beta: float
    phi: np.ndarray
    theta: np.ndarray
    tokens: list[np.ndarray]
    assignments: list[np.ndarray]
    nkw: np.ndarray
    nk: np.ndarray
    ndk: np.ndarray
    seed: int
    iterations: int
    doc_ids: np.ndarray
    vocab: Optional[Vocabulary] = None
    _doc_index: dict[int, int] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        self._doc_index = {int(d): i for i, d in enumerate(self.doc_ids)}

    @property
    def num_words(self) -> int:
        return int(self.phi.shape[1])

    @property
    def num_docs(self) -> int:
        return int(self.theta.shape[0])

    @property
    def doc_lengths(self) -> np.ndarray:
        return np.asarray([len(t) for t in self.tokens], dtype=np.int64)

    def doc_index(self, doc_id: int) -> int:
        try:
            return self._doc_index[int(doc_id)]
        except KeyError:
            raise UnassignableDocumentError(doc_id, "not part of the training corpus") from None

    def word(self, word_id: int) -> str:
        if self.vocab is not None:
            return self.vocab.id_to_word[word_id]
        return str(word_id)

    def top_word_ids(self, topic: int, n: int = 10) -> list[int]:
        """Highest-probability word ids of a topic (ties: lower id first)."""
        order = np.argsort(-self.phi[topic], kind="stable")
        return [int(i) for i in order[:n]]

    def top_words(self, topic: int, n: int = 10) -> list[str]:
        return [self.word(i) for i in self.top_word_ids(topic, n)]

    def check_counts(self) -> None:
        """Raise CountConservationError if the count tables disagree."""
        check_count_tables(self.nkw, self.nk, self.ndk, self.doc_lengths)


def check_count_tables(nkw: np.ndarray, nk: np.ndarray, ndk: np.ndarray, doc_lengths: np.ndarray) -> None:
    if not np.array_equal(nkw.sum(axis=1), nk):
        raise CountConservationError("Topic-word counts do not sum to topic totals")
    if not np.array_equal(ndk.sum(axis=1), doc_lengths):
        raise CountConservationError("Document-topic counts do not sum to document lengths")
    if int(nk.sum()) != int(doc_lengths.sum()):
        raise CountConservationError("Topic totals do not sum to the token count")
    if (nkw < 0).any() or (ndk < 0).any():
        raise CountConservationError("Negative count in Gibbs tables")


def estimate_phi(nkw: np.ndarray, nk: np.ndarray, beta: float) -> np.ndarray:
    num_words = nkw.shape[1]
    return (nkw + beta) / (nk[:, None] + num_words * beta)


def estimate_theta(ndk: np.ndarray, doc_lengths: np.ndarray, alpha: np.ndarray) -> np.ndarray:
    return (ndk + alpha[None, :]) / (doc_lengths[:, None] + alpha.sum())


def train_lda(
    corpus: Sequence[BowDoc],
    num_topics: int,
    alpha_sum: float = 5.0,
    beta: float = 0.01,
    iterations: int = 1000,
    seed: int = 0,
    *,
    vocab: Vocabulary | None = None,
    check_counts: bool = __debug__,
    progress_callback: ProgressCallback | None = None,
) -> LdaModel:
    """
    Train LDA with a symmetric document-topic prior alpha_k = alpha_sum / K.

    Args:
        corpus: One BowDoc per document; empty documents are kept as rows
        num_topics: K >= 1
        alpha_sum: Total of the document-topic prior
        beta: Topic-word prior
        iterations: Number of full Gibbs sweeps
        seed: Seed of the sampler's random generator
        vocab: Vocabulary the word ids refer to (sets V and names top words)
        check_counts: Verify count conservation after every sweep
        progress_callback: Optional callback for progress updates

    Returns:
        LdaModel holding phi, theta and the final sample

    Raises:
        ValueError: If K < 1, iterations < 1, or the corpus has no tokens
    """
    if num_topics < 1:
        raise ValueError(f"num_topics must be >= 1, got {num_topics}")
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    if not corpus:
        raise ValueError("Cannot train on an empty corpus")

    tokens = [expand_tokens(doc) for doc in corpus]
    words = np.concatenate(tokens)
    if words.size == 0:
        raise ValueError("Cannot train on a corpus without tokens")
    num_words = len(vocab) if vocab is not None else int(words.max()) + 1
    if int(words.max()) >= num_words:
        raise ValueError("Corpus references word ids outside the vocabulary")
    doc_lengths = np.asarray([len(t) for t in tokens], dtype=np.int64)
    docs = np.repeat(np.arange(len(tokens), dtype=np.int64), doc_lengths)
    alpha = np.full(num_topics, alpha_sum / num_topics, dtype=np.float64)

    rng = np.random.default_rng(seed)
    z = rng.integers(0, num_topics, size=words.size, dtype=np.int64)
    splits = np.cumsum(doc_lengths)[:-1]
    nkw, nk, ndk = count_tables(tokens, np.split(z, splits), num_topics, num_words)

    logger.info(
        "Training LDA: K=%d, V=%d, D=%d, N=%d, alpha_sum=%s, beta=%s, iterations=%d, seed=%d",
        num_topics, num_words, len(tokens), words.size, alpha_sum, beta, iterations, seed,
    )
    report_every = max(1, iterations // 10)
    for sweep in range(1, iterations + 1):
        u = rng.random(words.size)
        _gibbs_sweep(words, docs, z, nkw, nk, ndk, alpha, float(beta), u)
        if check_counts:
            check_count_tables(nkw, nk, ndk, doc_lengths)
        if sweep % report_every == 0 or sweep == iterations:
            logger.debug("K=%d: sweep %d/%d", num_topics, sweep, iterations)
            _emit(progress_callback, "step", f"K={num_topics}: sweep {sweep}/{iterations}")

    return LdaModel(
        num_topics=num_topics,
        alpha=alpha,
        beta=float(beta),
        phi=estimate_phi(nkw, nk, beta),
        theta=estimate_theta(ndk, doc_lengths, alpha),
        tokens=tokens,
        assignments=[a.copy() for a in np.split(z, splits)],
        nkw=nkw,
        nk=nk,
        ndk=ndk,
        seed=int(seed),
        iterations=int(iterations),
        doc_ids=np.asarray([doc.doc_id for doc in corpus], dtype=np.int64),
        vocab=vocab,
    )


def dominant_from_theta(doc_id: int, theta_row: np.ndarray) -> DominantAssignment:
    """Argmax of a topic distribution; the lowest index wins ties."""
    topic = int(np.argmax(theta_row))
    return DominantAssignment(doc_id=int(doc_id), topic=topic, proportion=float(theta_row[topic]))


def dominant_topic(model: LdaModel, doc_id: int) -> DominantAssignment:
    """
    Dominant topic of a training document.

    Raises:
        UnassignableDocumentError: If the document has no tokens or is unknown
    """
    idx = model.doc_index(doc_id)
    if len(model.tokens[idx]) == 0:
        raise UnassignableDocumentError(doc_id)
    return dominant_from_theta(doc_id, model.theta[idx])


def infer_theta(
    model: LdaModel,
    doc: BowDoc,
    fold_in_iterations: int = 50,
    seed: int = 0,
) -> np.ndarray:
    """
    Topic distribution of an unseen document by Gibbs fold-in with phi fixed.

    The generator is seeded with (seed, doc.doc_id), so the result depends only
    on the document and the seed. An empty document returns alpha / sum(alpha).
    """
    words = expand_tokens(doc)
    words = words[words < model.num_words]
    if words.size == 0:
        return model.alpha / model.alpha.sum()

    rng = np.random.default_rng([int(seed), int(doc.doc_id)])
    z = rng.integers(0, model.num_topics, size=words.size, dtype=np.int64)
    nd = np.bincount(z, minlength=model.num_topics).astype(np.int64)
    for _ in range(fold_in_iterations):
        _fold_in_sweep(words, z, nd, model.phi, model.alpha, rng.random(words.size))
    return (nd + model.alpha) / (words.size + model.alpha.sum())


def _emit(progress_callback: ProgressCallback | None, event_type: str, message: str) -> None:
    if progress_callback:
        progress_callback(event_type, message)
