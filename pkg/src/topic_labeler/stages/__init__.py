from topic_labeler.stages.assign import AssignStage
from topic_labeler.stages.base import Stage, StageRegistry, StageResult
from topic_labeler.stages.context import ARTIFACT_NAMES, MissingInputError, RunContext
from topic_labeler.stages.evaluate import EvaluateStage
from topic_labeler.stages.label import LabelStage
from topic_labeler.stages.map import MapStage
from topic_labeler.stages.preprocess import AspectsStage, PreprocessStage
from topic_labeler.stages.sweep import SweepStage
from topic_labeler.stages.train import TrainStage


def default_registry() -> StageRegistry:
    """All stages in pipeline order."""
    registry = StageRegistry()
    for stage in (
        PreprocessStage(),
        AspectsStage(),
        SweepStage(),
        TrainStage(),
        LabelStage(),
        AssignStage(),
        EvaluateStage(),
        MapStage(),
    ):
        registry.register(stage)
    return registry


__all__ = [
    "ARTIFACT_NAMES",
    "AssignStage",
    "AspectsStage",
    "EvaluateStage",
    "LabelStage",
    "MapStage",
    "MissingInputError",
    "PreprocessStage",
    "RunContext",
    "Stage",
    "StageRegistry",
    "StageResult",
    "SweepStage",
    "TrainStage",
    "default_registry",
]
