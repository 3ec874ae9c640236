"""Coherence sweep over candidate topic counts."""
from __future__ import annotations

import logging

from topic_labeler.coherence import sweep_k
from topic_labeler.stages.base import Stage, StageResult
from topic_labeler.stages.context import RunContext
from topic_labeler.topicmodel.vocabulary import build_vocabulary
from topic_labeler.utils.artifacts import write_json

logger = logging.getLogger(__name__)


class SweepStage(Stage):
    def __init__(self):
        super().__init__(name="sweep-k", description="Train one model per K and score coherence")

    def execute(self, ctx: RunContext) -> StageResult:
        cfg = ctx.config
        docs = ctx.require_docs()
        vocab = build_vocabulary(docs, cfg.min_df, cfg.max_df_fraction)
        trainer = ctx.trainer()
        ctx.report = sweep_k(
            docs,
            cfg.k_candidates(),
            cfg.metric,
            trainer,
            vocab=vocab,
            top_n=cfg.top_n,
            window=cfg.window,
            workers=cfg.workers,
            progress_callback=ctx.progress_callback,
        )
        written = [ctx.report.write_curve(ctx.path("curve"))]
        written.append(
            write_json(
                ctx.path("coherence"),
                {
                    "format_version": 1,
                    **ctx.provenance(),
                    "trainer": trainer.to_dict(),
                    "window": cfg.window,
                    **ctx.report.to_dict(),
                },
            )
        )
        if cfg.plots:
            from topic_labeler.plots import render_coherence_curve

            written.append(render_coherence_curve(ctx.report, ctx.path("curve_svg")))
        logger.info("Coherence sweep chose K=%d", ctx.report.chosen_k)
        return StageResult(success=True, output=written, metadata={"chosen_k": ctx.report.chosen_k})
