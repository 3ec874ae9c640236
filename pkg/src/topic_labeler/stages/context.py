"""
Shared state of a run.

Stages read upstream results from the context. A result that is not in
memory yet is loaded from its artifact file, so each CLI verb can run on
its own against files written by an earlier verb.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from topic_labeler.aspect import AspectTerm, extract_corpus_aspects
from topic_labeler.coherence import CoherenceReport
from topic_labeler.config import PipelineConfig, RunConfig
from topic_labeler.errors import TopicLabelerError
from topic_labeler.geometry import TopicMap
from topic_labeler.ingest import LoadResult, load_corpus
from topic_labeler.labeling import AspectCluster, TopicLabel, TweetAssignment
from topic_labeler.preprocess import CleanDoc, preprocess_corpus
from topic_labeler.topicmodel.lda import LdaModel, TrainerConfig
from topic_labeler.topicmodel.store import load_model
from topic_labeler.utils.artifacts import read_json, read_jsonl

logger = logging.getLogger(__name__)

ARTIFACT_NAMES = {
    "clean": "clean.jsonl",
    "aspects": "aspects.jsonl",
    "curve": "curve.csv",
    "coherence": "coherence.json",
    "model": "model.json",
    "labels": "labels.json",
    "assigned": "assigned.csv",
    "map": "map.json",
    "report": "report.json",
    "confusion": "confusion.csv",
    "manifest": "run-manifest.json",
    "map_svg": "map.svg",
    "curve_svg": "curve.svg",
    "unigrams_svg": "unigrams",
}


class MissingInputError(TopicLabelerError, ValueError):
    """A stage needs data that is neither in memory nor on disk."""


@dataclass
class RunContext:
    """Configuration, artifact locations and in-memory results of one run."""

    config: RunConfig
    paths: dict[str, Path] = field(default_factory=dict)
    progress_callback: Optional[Callable[[str, str], None]] = None

    tweets: Optional[LoadResult] = None
    docs: Optional[list[CleanDoc]] = None
    aspects: Optional[list[AspectTerm]] = None
    report: Optional[CoherenceReport] = None
    model: Optional[LdaModel] = None
    clusters: Optional[list[AspectCluster]] = None
    labels: Optional[list[TopicLabel]] = None
    assignments: Optional[list[TweetAssignment]] = None
    topic_map: Optional[TopicMap] = None
    _pipeline_config: Optional[PipelineConfig] = field(default=None, repr=False)

    @property
    def output_dir(self) -> Path:
        return Path(self.config.output_dir)

    def path(self, name: str) -> Path:
        """Location of an artifact: an explicit override or the run directory."""
        if name in self.paths:
            return Path(self.paths[name])
        return self.output_dir / ARTIFACT_NAMES[name]

    @property
    def pipeline_config(self) -> PipelineConfig:
        if self._pipeline_config is None:
            self._pipeline_config = self.config.pipeline_config()
        return self._pipeline_config

    @property
    def seed(self) -> int:
        if self.config.seed is None:
            raise MissingInputError("A seed is required (set seed=... or pass --seed)")
        return int(self.config.seed)

    def trainer(self) -> TrainerConfig:
        return TrainerConfig(
            alpha_sum=self.config.alpha_sum,
            beta=self.config.beta,
            iterations=self.config.iterations,
            seed=self.seed,
        )

    def provenance(self) -> dict:
        """Seed and config hash recorded in every JSON artifact."""
        return {"seed": self.config.seed, "config_hash": self.config.config_hash()}

    def emit(self, event_type: str, message: str) -> None:
        if self.progress_callback:
            self.progress_callback(event_type, message)

    def training_inputs(self) -> list[str]:
        inputs = list(self.config.inputs)
        return inputs if self.config.pool else inputs[:1]

    def require_tweets(self) -> LoadResult:
        if self.tweets is None:
            inputs = self.training_inputs()
            if not inputs:
                raise MissingInputError("No input CSV given (set inputs=... or pass --input)")
            self.tweets = load_corpus(inputs, self.config.text_column, self.config.delimiter)
        return self.tweets

    def require_docs(self) -> list[CleanDoc]:
        if self.docs is None:
            clean_path = self.path("clean")
            if "clean" in self.paths or (not self.config.inputs and clean_path.exists()):
                self.docs = [CleanDoc.from_dict(r) for r in read_jsonl(self.existing(clean_path))]
            else:
                self.docs = preprocess_corpus(self.require_tweets(), self.pipeline_config)
        return self.docs

    def require_aspects(self) -> list[AspectTerm]:
        if self.aspects is None:
            aspects_path = self.path("aspects")
            if "aspects" in self.paths or (not self.config.inputs and aspects_path.exists()):
                self.aspects = [AspectTerm.from_dict(r) for r in read_jsonl(self.existing(aspects_path))]
            else:
                self.aspects = extract_corpus_aspects(self.require_tweets(), self.pipeline_config)
        return self.aspects

    def require_model(self) -> LdaModel:
        if self.model is None:
            self.model = load_model(self.existing(self.path("model")))
        return self.model

    def require_labels(self) -> list[TopicLabel]:
        if self.labels is None:
            data = read_json(self.existing(self.path("labels")))
            self.labels = [
                TopicLabel(
                    topic=int(t["topic"]),
                    label=str(t["label"]),
                    label_count=int(t["label_count"]),
                    rank_used=int(t["rank_used"]),
                )
                for t in data["topics"]
            ]
        return self.labels

    @staticmethod
    def existing(path: Path) -> Path:
        if not path.exists():
            raise MissingInputError(f"Required artifact not found: {path}")
        return path
