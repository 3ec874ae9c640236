"""Evaluation of assigned labels against gold labels."""
from __future__ import annotations

import logging

from topic_labeler.evaluation import confusion, evaluation_report, load_predictions
from topic_labeler.ingest import load_gold_labels
from topic_labeler.stages.base import Stage, StageResult
from topic_labeler.stages.context import MissingInputError, RunContext
from topic_labeler.utils.artifacts import write_json

logger = logging.getLogger(__name__)


class EvaluateStage(Stage):
    def __init__(self):
        super().__init__(name="evaluate", description="Accuracy and confusion matrix against gold labels")

    def execute(self, ctx: RunContext) -> StageResult:
        if not ctx.config.gold:
            raise MissingInputError("No gold label file given (set gold=... or pass --gold)")
        gold = load_gold_labels(ctx.config.gold)
        if ctx.assignments is not None:
            predicted = {a.doc_id: a.label or "" for a in ctx.assignments}
        else:
            predicted = load_predictions(ctx.existing(ctx.path("assigned")))

        report = evaluation_report(predicted, gold)
        written = [
            write_json(ctx.path("report"), {"format_version": 1, **ctx.provenance(), **report}),
            confusion(predicted, gold).write_csv(ctx.path("confusion")),
        ]
        return StageResult(success=True, output=written, metadata={"accuracy": report["accuracy"]})
