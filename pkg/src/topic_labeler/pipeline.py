"""
End-to-end orchestration: ingest, preprocess, aspects, optional K sweep,
train, label, assign, optional evaluation, map, and the run manifest.
"""
from __future__ import annotations

import logging
import platform
from datetime import datetime, timezone
from importlib import metadata
from pathlib import Path
from typing import Callable

from topic_labeler.config import RunConfig
from topic_labeler.errors import StageError
from topic_labeler.stages import RunContext, StageRegistry, StageResult, default_registry
from topic_labeler.utils.artifacts import compute_file_hash, write_json

logger = logging.getLogger(__name__)

MANIFEST_FORMAT_VERSION = 1
_VERSIONED_PACKAGES = ("topic_labeler", "numpy", "numba", "pandas", "matplotlib", "python-dotenv")


def package_versions() -> dict[str, str]:
    versions = {"python": platform.python_version()}
    for name in _VERSIONED_PACKAGES:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = "unknown"
    return versions


class PipelineRunner:
    """Runs the stages of a RunConfig in order and stops at the first failure."""

    def __init__(self, registry: StageRegistry | None = None):
        self.registry = registry or default_registry()

    def stage_names(self, cfg: RunConfig) -> list[str]:
        names = ["preprocess", "aspects"]
        if cfg.sweep:
            names.append("sweep-k")
        names += ["train", "label", "assign"]
        if cfg.gold:
            names.append("evaluate")
        names.append("map")
        return names

    def run(
        self,
        cfg: RunConfig,
        progress_callback: Callable[[str, str], None] | None = None,
    ) -> dict[str, Path]:
        """
        Execute the full pipeline.

        Args:
            cfg: Run configuration (validated before anything is written)
            progress_callback: Optional callback for progress updates

        Returns:
            Mapping of artifact file name to path, manifest included

        Raises:
            ConfigError: If the configuration is invalid
            StageError: If a stage fails; its ``.partial`` files are left in place
        """
        cfg.validate()
        Path(cfg.output_dir).mkdir(parents=True, exist_ok=True)
        ctx = RunContext(config=cfg, progress_callback=progress_callback)
        logger.info("Run %s into %s (seed=%s)", cfg.config_hash()[:12], cfg.output_dir, cfg.seed)

        artifacts: dict[str, Path] = {}
        results: dict[str, StageResult] = {}
        for name in self.stage_names(cfg):
            stage = self.registry.get(name)
            if stage is None:
                raise StageError(name, "stage is not registered")
            self._emit(progress_callback, "step", f"{name}: {stage.description}")
            result = stage.run(ctx)
            results[name] = result
            if not result.success:
                logger.error("Stage %s failed: %s", name, result.error)
                raise StageError(name, result.error or "unknown error")
            for path in result.output or []:
                artifacts[Path(path).name] = Path(path)
            logger.info("Stage %s done in %.2fs", name, result.metadata.get("seconds", 0.0))

        manifest_path = self.write_manifest(ctx, artifacts, results)
        artifacts[manifest_path.name] = manifest_path
        self._emit(progress_callback, "complete", "Pipeline complete")
        return artifacts

    def write_manifest(
        self,
        ctx: RunContext,
        artifacts: dict[str, Path],
        results: dict[str, StageResult],
    ) -> Path:
        files = {}
        for name, path in sorted(artifacts.items()):
            if path.is_file():
                files[name] = compute_file_hash(path)
        manifest = {
            "format_version": MANIFEST_FORMAT_VERSION,
            "created_at": datetime.now(timezone.utc).isoformat(),
            **ctx.provenance(),
            "config": ctx.config.to_dict(),
            "versions": package_versions(),
            "stages": {
                name: {k: v for k, v in result.metadata.items()} for name, result in results.items()
            },
            "artifacts": files,
        }
        return write_json(ctx.path("manifest"), manifest)

    def _emit(
        self,
        progress_callback: Callable[[str, str], None] | None,
        event_type: str,
        message: str,
    ) -> None:
        if progress_callback:
            progress_callback(event_type, message)


def run_pipeline(
    cfg: RunConfig,
    progress_callback: Callable[[str, str], None] | None = None,
) -> dict[str, Path]:
    """Run every stage of ``cfg`` and return the written artifacts."""
    return PipelineRunner().run(cfg, progress_callback)
