"""Per-tweet topic and label assignment."""
from __future__ import annotations

import logging

from topic_labeler.ingest import load_corpus
from topic_labeler.labeling import label_tweet, write_assignments
from topic_labeler.preprocess import preprocess_corpus
from topic_labeler.stages.base import Stage, StageResult
from topic_labeler.stages.context import MissingInputError, RunContext
from topic_labeler.topicmodel.vocabulary import BowDoc, doc2bow

logger = logging.getLogger(__name__)


class AssignStage(Stage):
    """
    Label tweets with their dominant topic.

    Tweets of the training corpus use their trained mixtures. Other files
    (``assign_inputs``, or the later inputs when pooling is off) are folded in.
    """

    def __init__(self):
        super().__init__(name="assign", description="Assign each tweet its dominant topic and label")

    def fold_in_inputs(self, ctx: RunContext) -> list[str]:
        cfg = ctx.config
        if cfg.assign_inputs:
            return list(cfg.assign_inputs)
        if not cfg.pool and len(cfg.inputs) > 1:
            return list(cfg.inputs[1:])
        return []

    def execute(self, ctx: RunContext) -> StageResult:
        model = ctx.require_model()
        labels = ctx.require_labels()
        fold_in = self.fold_in_inputs(ctx)

        if fold_in:
            if model.vocab is None:
                raise MissingInputError("The model has no vocabulary; unseen tweets cannot be folded in")
            tweets = load_corpus(fold_in, ctx.config.text_column, ctx.config.delimiter)
            docs = preprocess_corpus(tweets, ctx.pipeline_config)
            ctx.assignments = [
                label_tweet(
                    model,
                    labels,
                    doc2bow(doc, model.vocab),
                    in_corpus=False,
                    fold_in_iterations=ctx.config.fold_in_iterations,
                    seed=ctx.seed,
                )
                for doc in docs
            ]
        else:
            ctx.assignments = [
                label_tweet(model, labels, BowDoc(doc_id=int(doc_id))) for doc_id in model.doc_ids
            ]

        path = write_assignments(ctx.assignments, ctx.path("assigned"))
        return StageResult(
            success=True,
            output=[path],
            metadata={
                "tweets": len(ctx.assignments),
                "unlabelable": sum(a.unlabelable for a in ctx.assignments),
                "fold_in": bool(fold_in),
            },
        )
