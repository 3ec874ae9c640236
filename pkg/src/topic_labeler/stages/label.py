"""Aspect clustering and topic labeling."""
from __future__ import annotations

import logging
from typing import Optional

from topic_labeler.errors import UnassignableDocumentError
from topic_labeler.labeling import (
    assign_labels,
    cluster_aspect_terms,
    labels_report,
    ranked_unigrams,
    sample_tweets,
)
from topic_labeler.stages.base import Stage, StageResult
from topic_labeler.stages.context import RunContext
from topic_labeler.topicmodel.lda import dominant_topic
from topic_labeler.utils.artifacts import write_json

logger = logging.getLogger(__name__)

LABELS_FORMAT_VERSION = 1
TOP_UNIGRAMS = 20


class LabelStage(Stage):
    def __init__(self):
        super().__init__(name="label", description="Cluster aspect unigrams by dominant topic and label topics")

    def tweet_texts(self, ctx: RunContext) -> Optional[dict[int, str]]:
        """Raw tweet texts, when the tweets are loaded or input files are configured."""
        if ctx.tweets is None and not ctx.training_inputs():
            return None
        return {tweet.id: tweet.text for tweet in ctx.require_tweets()}

    def execute(self, ctx: RunContext) -> StageResult:
        cfg = ctx.config
        model = ctx.require_model()
        aspects = ctx.require_aspects()

        dominants = []
        for doc_id in model.doc_ids:
            try:
                dominants.append(dominant_topic(model, int(doc_id)))
            except UnassignableDocumentError:
                continue
        ctx.clusters = cluster_aspect_terms(dominants, aspects, model.num_topics, cfg.count_mode)
        ctx.labels = assign_labels(ctx.clusters)

        payload = {
            "format_version": LABELS_FORMAT_VERSION,
            **ctx.provenance(),
            "seed": model.seed,
            "num_topics": model.num_topics,
            "alpha_sum": float(model.alpha.sum()),
            "beta": model.beta,
            "iterations": model.iterations,
            "count_mode": cfg.count_mode,
            "topics": labels_report(
                ctx.clusters,
                ctx.labels,
                model,
                top_n=TOP_UNIGRAMS,
                samples=sample_tweets(dominants, aspects, ctx.labels),
                texts=self.tweet_texts(ctx),
            ),
        }
        written = [write_json(ctx.path("labels"), payload)]
        if cfg.plots:
            from topic_labeler.plots import render_top_unigrams

            directory = ctx.path("unigrams_svg")
            for cluster, label in zip(ctx.clusters, ctx.labels):
                written.append(
                    render_top_unigrams(
                        label.topic,
                        label.label,
                        ranked_unigrams(cluster)[:TOP_UNIGRAMS],
                        directory / f"topic-{label.topic}.svg",
                    )
                )
        return StageResult(
            success=True,
            output=written,
            metadata={
                "assigned_docs": len(dominants),
                "fallbacks": sum(label.is_fallback for label in ctx.labels),
            },
        )
