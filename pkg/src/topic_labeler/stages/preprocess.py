"""Stages that turn raw tweets into cleaned documents and aspect terms."""
from __future__ import annotations

import logging

from topic_labeler.aspect import extract_corpus_aspects
from topic_labeler.preprocess import preprocess_corpus
from topic_labeler.stages.base import Stage, StageResult
from topic_labeler.stages.context import RunContext
from topic_labeler.utils.artifacts import write_jsonl

logger = logging.getLogger(__name__)


class PreprocessStage(Stage):
    """Clean every tweet and write clean.jsonl."""

    def __init__(self):
        super().__init__(name="preprocess", description="Normalize, tokenize and filter tweets")

    def execute(self, ctx: RunContext) -> StageResult:
        tweets = ctx.require_tweets()
        ctx.docs = preprocess_corpus(tweets, ctx.pipeline_config)
        path = write_jsonl(ctx.path("clean"), (doc.to_dict() for doc in ctx.docs))
        return StageResult(
            success=True,
            output=[path],
            metadata={
                "tweets": len(ctx.docs),
                "dropped": sum(doc.dropped for doc in ctx.docs),
                "skipped_rows": tweets.skipped_count,
            },
        )


class AspectsStage(Stage):
    """Extract aspect terms from the raw tweets and write aspects.jsonl."""

    def __init__(self):
        super().__init__(name="aspects", description="POS-tag tweets and extract noun chunks")

    def execute(self, ctx: RunContext) -> StageResult:
        ctx.aspects = extract_corpus_aspects(ctx.require_tweets(), ctx.pipeline_config)
        path = write_jsonl(ctx.path("aspects"), (term.to_dict() for term in ctx.aspects))
        return StageResult(success=True, output=[path], metadata={"aspect_terms": len(ctx.aspects)})
