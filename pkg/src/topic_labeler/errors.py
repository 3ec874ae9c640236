"""Exception types raised across the topic labeling pipeline."""
from __future__ import annotations

from typing import Iterable


class TopicLabelerError(Exception):
    """Base class for all package errors."""


class ConfigError(TopicLabelerError, ValueError):
    """Invalid or incomplete run configuration."""


class DatasetError(TopicLabelerError, ValueError):
    """The tweet dataset cannot be read (missing file or column)."""


class GoldLabelError(TopicLabelerError, ValueError):
    """Malformed gold-label file (duplicate or non-integer ids)."""


class EmptyVocabularyError(TopicLabelerError, ValueError):
    """Every word was filtered out while building the vocabulary."""


class UnassignableDocumentError(TopicLabelerError, ValueError):
    """A document has no tokens, so it has no dominant topic."""

    def __init__(self, doc_id: int, reason: str = "document is empty after preprocessing"):
        self.doc_id = doc_id
        super().__init__(f"Document {doc_id} is unassignable: {reason}")


class MissingPredictionError(TopicLabelerError, ValueError):
    """Gold entries without a matching prediction."""

    def __init__(self, missing_ids: Iterable[int]):
        self.missing_ids = sorted(missing_ids)
        shown = ", ".join(str(i) for i in self.missing_ids[:20])
        more = "" if len(self.missing_ids) <= 20 else f" (+{len(self.missing_ids) - 20} more)"
        super().__init__(f"No prediction for gold tweet ids: {shown}{more}")


class ModelFormatError(TopicLabelerError, ValueError):
    """A serialized model file is unreadable or has an unsupported version."""


class CountConservationError(TopicLabelerError, AssertionError):
    """Gibbs count tables drifted out of sync with the token assignments."""


class StageError(TopicLabelerError, RuntimeError):
    """A pipeline stage failed; carries the stage name and the cause."""

    def __init__(self, stage: str, cause: str):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {cause}")


class SweepError(TopicLabelerError, RuntimeError):
    """Training or scoring failed for one candidate K of a sweep."""

    def __init__(self, k: int, cause: str):
        self.k = k
        self.cause = cause
        super().__init__(f"K={k}: {cause}")
