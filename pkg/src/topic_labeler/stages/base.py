"""Base classes for pipeline stages."""
from __future__ import annotations

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from topic_labeler.stages.context import RunContext

logger = logging.getLogger(__name__)


@dataclass
class StageResult:
    """Result from a stage execution."""

    success: bool
    output: Any = None
    error: str | None = None
    metadata: dict[str, Any] = field(default_factory=dict)

    def __str__(self) -> str:
        if self.success:
            return str(self.output)
        return f"Error: {self.error}"


class Stage(ABC):
    """One step of the pipeline, also exposed as a CLI verb."""

    def __init__(self, name: str, description: str):
        self.name = name
        self.description = description

    @abstractmethod
    def execute(self, ctx: "RunContext") -> StageResult:
        """Run the stage against a run context.

        Args:
            ctx: Shared run state; upstream data is loaded from artifacts on demand

        Returns:
            StageResult whose output lists the artifact paths written
        """
        pass

    def run(self, ctx: "RunContext") -> StageResult:
        """Execute, converting any raised error into a failed StageResult."""
        started = time.perf_counter()
        try:
            result = self.execute(ctx)
        except Exception as e:
            logger.debug("Stage %s failed", self.name, exc_info=True)
            result = StageResult(
                success=False,
                error=str(e) or type(e).__name__,
                metadata={"exception": type(e).__name__},
            )
        result.metadata.setdefault("seconds", round(time.perf_counter() - started, 3))
        return result


class StageRegistry:
    """Registry of the available stages, in pipeline order."""

    def __init__(self):
        self._stages: dict[str, Stage] = {}

    def register(self, stage: Stage) -> None:
        self._stages[stage.name] = stage

    def get(self, name: str) -> Stage | None:
        return self._stages.get(name)

    def list_stages(self) -> list[Stage]:
        return list(self._stages.values())
