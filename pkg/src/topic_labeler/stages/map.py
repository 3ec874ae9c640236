"""Intertopic distance map export."""
from __future__ import annotations

import logging

from topic_labeler.geometry import intertopic_map
from topic_labeler.stages.base import Stage, StageResult
from topic_labeler.stages.context import MissingInputError, RunContext
from topic_labeler.utils.artifacts import write_json

logger = logging.getLogger(__name__)


class MapStage(Stage):
    def __init__(self):
        super().__init__(name="map", description="JSD distances, MDS coordinates and topic prevalence")

    def execute(self, ctx: RunContext) -> StageResult:
        model = ctx.require_model()
        try:
            labels = [label.label for label in sorted(ctx.require_labels(), key=lambda label: label.topic)]
        except MissingInputError:
            labels = None
        ctx.topic_map = intertopic_map(model, labels)
        written = [
            write_json(ctx.path("map"), {"format_version": 1, **ctx.provenance(), **ctx.topic_map.to_dict()})
        ]
        if ctx.config.plots:
            from topic_labeler.plots import render_topic_map

            written.append(render_topic_map(ctx.topic_map, ctx.path("map_svg")))
        return StageResult(success=True, output=written, metadata={"num_topics": model.num_topics})
