"""SVG renderings of the intertopic map, the coherence curve and topic unigrams."""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from topic_labeler.coherence import CoherenceReport  # noqa: E402
from topic_labeler.geometry import TopicMap  # noqa: E402
from topic_labeler.labeling import display_label  # noqa: E402

logger = logging.getLogger(__name__)

# Largest circle area in points^2.
MAX_CIRCLE_AREA = 4000.0


def _save(fig, path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # No date metadata, so reruns produce identical files.
    fig.savefig(path, format="svg", bbox_inches="tight", metadata={"Date": None})
    plt.close(fig)
    logger.info("Rendered %s", path)
    return path


def render_topic_map(topic_map: TopicMap, path: Path | str) -> Path:
    """Circles at the MDS coordinates, area proportional to prevalence."""
    fig, ax = plt.subplots(figsize=(8, 8))
    coords = topic_map.coords
    prevalence = np.asarray(topic_map.prevalence)
    sizes = MAX_CIRCLE_AREA * prevalence / max(float(prevalence.max()), 1e-12)
    ax.scatter(coords[:, 0], coords[:, 1], s=sizes, alpha=0.4, edgecolors="black", linewidths=0.5)
    labels = topic_map.labels or [str(k) for k in range(len(coords))]
    for k, (x, y) in enumerate(coords):
        ax.annotate(f"{k}: {display_label(labels[k])}", (x, y), ha="center", va="center", fontsize=8)
    ax.axhline(0, color="grey", linewidth=0.5)
    ax.axvline(0, color="grey", linewidth=0.5)
    ax.set_xlabel("PC1")
    ax.set_ylabel("PC2")
    ax.set_title("Intertopic distance map (classical MDS on JSD)")
    return _save(fig, path)


def render_coherence_curve(report: CoherenceReport, path: Path | str) -> Path:
    ks = [k for k, _ in report.per_k]
    scores = [s for _, s in report.per_k]
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(ks, scores, marker="o")
    ax.axvline(report.chosen_k, color="red", linestyle="--", linewidth=0.8)
    ax.set_xlabel("Number of topics")
    ax.set_ylabel(f"Coherence ({report.metric})")
    ax.set_title(f"Coherence by number of topics (chosen K={report.chosen_k})")
    return _save(fig, path)


def render_top_unigrams(
    topic: int,
    label: str,
    unigrams: Sequence[tuple[str, int]],
    path: Path | str,
) -> Path:
    """Horizontal bars of a topic's most frequent aspect unigrams."""
    words = [w for w, _ in unigrams][::-1]
    counts = [c for _, c in unigrams][::-1]
    fig, ax = plt.subplots(figsize=(6, max(2.0, 0.3 * len(words) + 1)))
    ax.barh(words, counts)
    ax.set_xlabel("Count")
    ax.set_title(f"Topic {topic}: {display_label(label)}")
    return _save(fig, path)
