"""Base classes for part-of-speech taggers."""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum


class PosTag(str, Enum):
    """Coarse universal tag set used for aspect chunking."""

    NOUN = "NOUN"
    VERB = "VERB"
    ADJ = "ADJ"
    ADV = "ADV"
    DET = "DET"
    PRON = "PRON"
    PREP = "PREP"
    CONJ = "CONJ"
    NUM = "NUM"
    OTHER = "OTHER"


@dataclass(frozen=True)
class TaggedToken:
    """A lowercase word and its tag."""

    word: str
    tag: PosTag

    def __post_init__(self) -> None:
        if not self.word:
            raise ValueError("TaggedToken.word must be non-empty")


class PosTagger(ABC):
    """Abstract base class for taggers.

    Implementations must be deterministic and assign exactly one tag per token.
    """

    name: str = "tagger"

    @abstractmethod
    def tag(self, tokens: list[str]) -> list[TaggedToken]:
        """Tag a lowercase token sequence.

        Args:
            tokens: Lowercase tokens of one sentence segment

        Returns:
            One TaggedToken per input token, in order
        """
        pass
