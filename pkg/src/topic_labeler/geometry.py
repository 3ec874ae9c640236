"""
Intertopic distance map: Jensen-Shannon divergence between topic-word
distributions, embedded in 2-D with classical (Torgerson) MDS.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from topic_labeler.topicmodel.lda import LdaModel

logger = logging.getLogger(__name__)

NORMALIZATION_TOLERANCE = 1e-9


def _check_distribution(p: np.ndarray, name: str) -> None:
    if (p < 0).any():
        raise ValueError(f"{name} has negative entries")
    if abs(p.sum() - 1.0) > NORMALIZATION_TOLERANCE:
        raise ValueError(f"{name} sums to {p.sum():.12f}, not 1")


def jsd(p, q) -> float:
    """
    Jensen-Shannon divergence in bits, so the result lies in [0, 1].

    Raises:
        ValueError: On a length mismatch or a vector that is not a distribution
    """
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape or p.ndim != 1:
        raise ValueError(f"jsd needs two vectors of equal length, got {p.shape} and {q.shape}")
    _check_distribution(p, "p")
    _check_distribution(q, "q")
    if not ((p > 0) & (q > 0)).any():
        # Disjoint supports: exactly 1 bit.
        return 1.0
    m = (p + q) / 2

    def kl(a: np.ndarray) -> float:
        support = a > 0
        return float(np.sum(a[support] * np.log2(a[support] / m[support])))

    value = 0.5 * kl(p) + 0.5 * kl(q)
    return float(min(max(value, 0.0), 1.0))


def jsd_matrix(distributions: np.ndarray) -> np.ndarray:
    """Symmetric pairwise JSD matrix with a zero diagonal."""
    k = distributions.shape[0]
    distance = np.zeros((k, k), dtype=np.float64)
    for i in range(k):
        for j in range(i + 1, k):
            distance[i, j] = distance[j, i] = jsd(distributions[i], distributions[j])
    return distance


def classical_mds(distance, dim: int = 2) -> np.ndarray:
    """
    Torgerson scaling: double-center the squared distances, keep the top
    ``dim`` eigenpairs (negative eigenvalues clamped to 0).

    Eigenvector signs are fixed so the largest-magnitude entry is positive,
    which makes the output deterministic. Columns beyond the number of points
    are zero.
    """
    distance = np.asarray(distance, dtype=np.float64)
    if distance.ndim != 2 or distance.shape[0] != distance.shape[1]:
        raise ValueError(f"Distance matrix must be square, got shape {distance.shape}")
    if not np.allclose(distance, distance.T, atol=1e-12):
        raise ValueError("Distance matrix must be symmetric")
    if (distance < 0).any():
        raise ValueError("Distance matrix must be non-negative")

    n = distance.shape[0]
    coords = np.zeros((n, dim), dtype=np.float64)
    if n == 0:
        return coords
    centering = np.eye(n) - np.ones((n, n)) / n
    b = -0.5 * centering @ (distance ** 2) @ centering
    b = (b + b.T) / 2
    evals, evecs = np.linalg.eigh(b)
    order = np.argsort(evals, kind="stable")[::-1]
    evals = np.clip(evals[order], 0.0, None)
    evecs = evecs[:, order]

    kept = min(dim, n)
    for c in range(kept):
        vector = evecs[:, c]
        if vector[np.argmax(np.abs(vector))] < 0:
            vector = -vector
        coords[:, c] = vector * np.sqrt(evals[c])
    return coords - coords.mean(axis=0)


@dataclass
class TopicMap:
    """2-D topic coordinates, prevalence (circle areas) and the JSD matrix."""

    coords: np.ndarray
    prevalence: np.ndarray
    distance: np.ndarray
    labels: Optional[list[str]] = field(default=None)

    def to_dict(self) -> dict:
        data = {
            "num_topics": int(self.coords.shape[0]),
            "coords": self.coords.tolist(),
            "prevalence": self.prevalence.tolist(),
            "distance": self.distance.tolist(),
        }
        if self.labels is not None:
            data["labels"] = list(self.labels)
        return data


def topic_prevalence(model: LdaModel) -> np.ndarray:
    """Share of token mass per topic: sum_d theta[d,k] * len_d / total tokens."""
    lengths = model.doc_lengths.astype(np.float64)
    mass = model.theta.T @ lengths
    total = lengths.sum()
    if total == 0:
        return np.full(model.num_topics, 1.0 / model.num_topics)
    return mass / total


def intertopic_map(model: LdaModel, labels: Optional[list[str]] = None) -> TopicMap:
    distance = jsd_matrix(model.phi)
    coords = classical_mds(distance, 2)
    logger.info("Computed intertopic map for %d topics", model.num_topics)
    return TopicMap(coords=coords, prevalence=topic_prevalence(model), distance=distance, labels=labels)
