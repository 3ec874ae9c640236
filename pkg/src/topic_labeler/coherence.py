"""
Topic coherence (UMass and a C_v-style NPMI/cosine score) and the K sweep.

Both metrics reduce to a term co-occurrence matrix over "contexts": whole
documents for UMass, boolean sliding windows for C_v. A ContextIndex stores,
for every word, the ids of the contexts that contain it, so the matrix for
any list of top words is one boolean product.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np
import pandas as pd

from topic_labeler.errors import SweepError
from topic_labeler.preprocess import CleanDoc
from topic_labeler.topicmodel.lda import LdaModel, TrainerConfig, train_lda
from topic_labeler.topicmodel.vocabulary import Vocabulary, build_corpus, build_vocabulary
from topic_labeler.utils.artifacts import open_artifact

logger = logging.getLogger(__name__)

EPSILON = 1e-12
DEFAULT_WINDOW = 110
DEFAULT_TOP_N = 20
METRICS = ("cv", "umass")


@dataclass
class ContextIndex:
    """Inverted index from words to the contexts that contain them."""

    num_contexts: int
    postings: dict[str, np.ndarray] = field(default_factory=dict)

    @classmethod
    def documents(cls, docs: Iterable[CleanDoc]) -> "ContextIndex":
        """One context per non-dropped document."""
        postings: dict[str, list[int]] = {}
        num_contexts = 0
        for doc in docs:
            if doc.dropped:
                continue
            for word in set(doc.tokens):
                postings.setdefault(word, []).append(num_contexts)
            num_contexts += 1
        return cls(num_contexts, {w: np.asarray(ids, dtype=np.int64) for w, ids in postings.items()})

    @classmethod
    def sliding_windows(cls, docs: Iterable[CleanDoc], window: int = DEFAULT_WINDOW) -> "ContextIndex":
        """
        Boolean sliding windows of ``window`` tokens.

        A document no longer than the window is a single context; a longer
        one yields len - window + 1 overlapping contexts.
        """
        if window < 1:
            raise ValueError(f"window must be >= 1, got {window}")
        postings: dict[str, list[np.ndarray]] = {}
        offset = 0
        for doc in docs:
            tokens = doc.tokens
            if doc.dropped or not tokens:
                continue
            num_windows = max(1, len(tokens) - window + 1)
            positions: dict[str, list[int]] = {}
            for pos, word in enumerate(tokens):
                positions.setdefault(word, []).append(pos)
            for word, pos_list in positions.items():
                covered = np.zeros(num_windows + 1, dtype=np.int64)
                for pos in pos_list:
                    # Windows starting in [pos - window + 1, pos] contain this position.
                    covered[max(0, pos - window + 1)] += 1
                    covered[min(pos, num_windows - 1) + 1] -= 1
                starts = np.flatnonzero(np.cumsum(covered[:-1]) > 0)
                postings.setdefault(word, []).append(starts + offset)
            offset += num_windows
        return cls(offset, {w: np.concatenate(parts) for w, parts in postings.items()})

    def cooccurrence(self, words: Sequence[str]) -> np.ndarray:
        """N x N matrix of context counts; the diagonal holds single-word counts."""
        presence = np.zeros((self.num_contexts, len(words)), dtype=np.int64)
        for j, word in enumerate(words):
            ids = self.postings.get(word)
            if ids is not None:
                presence[ids, j] = 1
        return presence.T @ presence


def _check_top_words(top_words: Sequence[str]) -> None:
    if len(top_words) < 2:
        raise ValueError(f"Coherence needs at least 2 top words, got {len(top_words)}")


def umass_from_index(top_words: Sequence[str], index: ContextIndex, epsilon: float = EPSILON) -> float:
    _check_top_words(top_words)
    counts = index.cooccurrence(top_words)
    scores = []
    for i in range(len(top_words)):
        for j in range(i + 1, len(top_words)):
            denominator = counts[j, j] if counts[j, j] > 0 else epsilon
            scores.append(np.log((counts[i, j] + 1) / denominator))
    return float(np.mean(scores))


def umass_coherence(top_words: Sequence[str], docs: Iterable[CleanDoc], epsilon: float = EPSILON) -> float:
    """
    Mean over pairs i < j of log((D(w_i, w_j) + 1) / D(w_j)).

    D counts the documents containing the word(s); a zero D(w_j) is floored
    at ``epsilon``.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return umass_from_index(top_words, ContextIndex.documents(docs), epsilon)


def npmi_matrix(counts: np.ndarray, num_contexts: int, epsilon: float = EPSILON) -> np.ndarray:
    """NPMI between every pair of words from a co-occurrence matrix."""
    n = counts.shape[0]
    result = np.zeros((n, n), dtype=np.float64)
    if num_contexts == 0:
        return result
    p = counts / num_contexts
    for i in range(n):
        for j in range(n):
            p_i, p_j, p_ij = p[i, i], p[j, j], p[i, j]
            if p_i == 0 or p_j == 0:
                continue
            denominator = -np.log(p_ij + epsilon)
            if denominator <= 0:
                result[i, j] = 1.0
            else:
                result[i, j] = np.log((p_ij + epsilon) / (p_i * p_j)) / denominator
    return result


def cv_from_index(top_words: Sequence[str], index: ContextIndex, epsilon: float = EPSILON) -> float:
    _check_top_words(top_words)
    vectors = npmi_matrix(index.cooccurrence(top_words), index.num_contexts, epsilon)
    total = vectors.sum(axis=0)
    total_norm = np.linalg.norm(total)
    cosines = []
    for vector in vectors:
        norm = np.linalg.norm(vector)
        if norm == 0 or total_norm == 0:
            cosines.append(0.0)
        else:
            cosines.append(float(np.clip(vector @ total / (norm * total_norm), -1.0, 1.0)))
    return float(np.mean(cosines))


def cv_coherence(top_words: Sequence[str], docs: Iterable[CleanDoc], window: int = DEFAULT_WINDOW) -> float:
    """
    C_v-style coherence: NPMI context vectors over boolean sliding windows,
    scored by the mean cosine between each word's vector and their sum.

    Returns:
        Score in [-1, 1]
    """
    return cv_from_index(top_words, ContextIndex.sliding_windows(docs, window))


@dataclass
class CoherenceReport:
    """Mean coherence per candidate K and the selected K."""

    metric: str
    per_k: list[tuple[int, float]]
    chosen_k: int
    top_n: int
    per_topic: dict[int, list[float]] = field(default_factory=dict)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.per_k, columns=["k", "score"])

    def write_curve(self, path: Path | str) -> Path:
        """Write the ``k,score`` curve as CSV."""
        with open_artifact(path, newline="") as handle:
            self.to_frame().to_csv(handle, index=False, float_format="%.10f", lineterminator="\n")
        return Path(path)

    def to_dict(self) -> dict:
        return {
            "metric": self.metric,
            "top_n": self.top_n,
            "chosen_k": self.chosen_k,
            "per_k": [{"k": k, "score": s} for k, s in self.per_k],
            "per_topic": {str(k): scores for k, scores in self.per_topic.items()},
        }


def choose_k(per_k: Sequence[tuple[int, float]]) -> int:
    """Argmax of the curve; the smaller K wins ties."""
    best_k, best_score = None, -np.inf
    for k, score in sorted(per_k):
        if score > best_score:
            best_k, best_score = k, score
    if best_k is None:
        raise ValueError("Empty coherence curve")
    return best_k


def topic_scores(
    model: LdaModel,
    index: ContextIndex,
    metric: str = "cv",
    top_n: int = DEFAULT_TOP_N,
) -> list[float]:
    """Coherence of every topic of a model."""
    score = cv_from_index if metric == "cv" else umass_from_index
    return [score(model.top_words(k, top_n), index) for k in range(model.num_topics)]


def sweep_k(
    docs: Sequence[CleanDoc],
    k_candidates: Iterable[int],
    metric: str = "cv",
    trainer: TrainerConfig | None = None,
    *,
    vocab: Vocabulary | None = None,
    top_n: int = DEFAULT_TOP_N,
    window: int = DEFAULT_WINDOW,
    workers: int = 1,
    progress_callback: Callable[[str, str], None] | None = None,
) -> CoherenceReport:
    """
    Train one model per candidate K (same corpus and seed) and score each by
    its mean topic coherence.

    Args:
        docs: Cleaned documents
        k_candidates: Topic counts to try, each >= 2
        metric: "cv" or "umass"
        trainer: Sampler settings; defaults when omitted
        vocab: Vocabulary to train on; built with default pruning when omitted
        top_n: Words per topic fed to the metric
        window: Sliding window size for "cv"
        workers: Threads training candidates concurrently
        progress_callback: Optional callback for progress updates

    Returns:
        CoherenceReport with the full curve and the argmax K

    Raises:
        SweepError: If training or scoring fails for a candidate
    """
    candidates = sorted(set(int(k) for k in k_candidates))
    if not candidates:
        raise ValueError("k_candidates must be non-empty")
    if candidates[0] < 2:
        raise ValueError(f"Every K candidate must be >= 2, got {candidates[0]}")
    if metric not in METRICS:
        raise ValueError(f"Unknown coherence metric: {metric}. Must be one of {', '.join(METRICS)}")
    trainer = trainer or TrainerConfig()
    vocab = vocab or build_vocabulary(docs)
    corpus = build_corpus(docs, vocab)
    index = ContextIndex.sliding_windows(docs, window) if metric == "cv" else ContextIndex.documents(docs)

    def run_one(k: int) -> list[float]:
        try:
            model = train_lda(
                corpus,
                k,
                trainer.alpha_sum,
                trainer.beta,
                trainer.iterations,
                trainer.seed,
                vocab=vocab,
                check_counts=trainer.check_counts,
            )
            scores = topic_scores(model, index, metric, top_n)
        except Exception as e:
            raise SweepError(k, str(e)) from e
        logger.info("K=%d: mean %s coherence %.6f", k, metric, float(np.mean(scores)))
        if progress_callback:
            progress_callback("step", f"K={k}: {metric}={float(np.mean(scores)):.4f}")
        return scores

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(run_one, candidates))
    else:
        results = [run_one(k) for k in candidates]

    per_topic = dict(zip(candidates, results))
    per_k = [(k, float(np.mean(per_topic[k]))) for k in candidates]
    return CoherenceReport(
        metric=metric,
        per_k=per_k,
        chosen_k=choose_k(per_k),
        top_n=top_n,
        per_topic=per_topic,
    )
