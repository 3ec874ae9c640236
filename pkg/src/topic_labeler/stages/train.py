"""Topic model training."""
from __future__ import annotations

import logging

from topic_labeler.stages.base import Stage, StageResult
from topic_labeler.stages.context import RunContext
from topic_labeler.topicmodel.lda import train_lda
from topic_labeler.topicmodel.store import save_model
from topic_labeler.topicmodel.vocabulary import build_corpus, build_vocabulary

logger = logging.getLogger(__name__)


class TrainStage(Stage):
    def __init__(self):
        super().__init__(name="train", description="Build the vocabulary and train LDA by Gibbs sampling")

    def execute(self, ctx: RunContext) -> StageResult:
        cfg = ctx.config
        num_topics = ctx.report.chosen_k if ctx.report is not None else cfg.num_topics
        docs = ctx.require_docs()
        vocab = build_vocabulary(docs, cfg.min_df, cfg.max_df_fraction)
        trainer = ctx.trainer()
        ctx.model = train_lda(
            build_corpus(docs, vocab),
            num_topics,
            trainer.alpha_sum,
            trainer.beta,
            trainer.iterations,
            trainer.seed,
            vocab=vocab,
            check_counts=trainer.check_counts,
            progress_callback=ctx.progress_callback,
        )
        path = save_model(
            ctx.model,
            ctx.path("model"),
            extra={
                "config_hash": cfg.config_hash(),
                "alpha_sum": trainer.alpha_sum,
                "min_df": cfg.min_df,
                "max_df_fraction": cfg.max_df_fraction,
            },
        )
        return StageResult(
            success=True,
            output=[path],
            metadata={"num_topics": num_topics, "vocabulary": len(vocab)},
        )
