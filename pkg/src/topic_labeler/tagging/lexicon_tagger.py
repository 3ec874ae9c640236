"""Rule and lexicon tagger bundled with the package.

Closed-class words come from lexicon files, open-class words from a small
domain lexicon, suffix heuristics and the tag of the previous word.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

from topic_labeler.tagging.base import PosTag, PosTagger, TaggedToken

logger = logging.getLogger(__name__)

LEXICON_DIR = Path(__file__).resolve().parent.parent / "data" / "lexicons"

LEXICON_FILES = (
    "det",
    "pron",
    "possessive",
    "prep",
    "conj",
    "aux",
    "verb_triggers",
    "adv",
    "adj",
    "noun",
    "verb",
    "other",
)

NOUN_SUFFIXES = ("tion", "sion", "ment", "ness", "ity", "ship", "ism", "ance", "ence")
ADJ_SUFFIXES = ("ous", "ful", "ive", "able", "ible", "al", "ic", "less")

# Closed classes, checked in this order.
_CLOSED_CLASSES = (
    ("det", PosTag.DET),
    ("pron", PosTag.PRON),
    ("prep", PosTag.PREP),
    ("conj", PosTag.CONJ),
    ("aux", PosTag.VERB),
    ("adv", PosTag.ADV),
    ("other", PosTag.OTHER),
)


def load_lexicon_file(path: Path) -> frozenset[str]:
    """Read one word per line; blank lines and '#' comments are ignored."""
    words = set()
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            entry = line.strip().lower()
            if entry and not entry.startswith("#"):
                words.add(entry)
    return frozenset(words)


@dataclass(frozen=True)
class Lexicon:
    """Word classes consulted by LexiconTagger."""

    classes: dict[str, frozenset[str]] = field(default_factory=dict)

    def __getitem__(self, name: str) -> frozenset[str]:
        return self.classes.get(name, frozenset())

    @classmethod
    def load(cls, directory: Path | str | None = None) -> "Lexicon":
        """Load every lexicon file, falling back to the bundled copy per file."""
        override = Path(directory) if directory is not None else None
        classes: dict[str, frozenset[str]] = {}
        for name in LEXICON_FILES:
            path = LEXICON_DIR / f"{name}.txt"
            if override is not None and (override / f"{name}.txt").exists():
                path = override / f"{name}.txt"
            classes[name] = load_lexicon_file(path) if path.exists() else frozenset()
        logger.debug("Loaded lexicon classes: %s", {k: len(v) for k, v in classes.items()})
        return cls(classes=classes)


class LexiconTagger(PosTagger):
    """Deterministic left-to-right tagger driven by lexicons and suffix rules."""

    name = "lexicon"

    def __init__(self, lexicon: Lexicon | None = None):
        self.lexicon = lexicon or Lexicon.load()

    def tag(self, tokens: list[str]) -> list[TaggedToken]:
        tagged: list[TaggedToken] = []
        for i, word in enumerate(tokens):
            tag = self._tag_word(word, tokens, tagged, i)
            tagged.append(TaggedToken(word=word, tag=tag))
        return tagged

    def _closed_class(self, word: str) -> PosTag | None:
        for name, tag in _CLOSED_CLASSES:
            if word in self.lexicon[name]:
                return tag
        return None

    def _noun_cue(self, tokens: list[str], tagged: list[TaggedToken], i: int) -> bool:
        if i == 0:
            return False
        prev_word, prev_tag = tokens[i - 1], tagged[i - 1].tag
        if prev_tag in (PosTag.DET, PosTag.ADJ, PosTag.NUM):
            return True
        return prev_word in self.lexicon["possessive"] or prev_word in ("more", "of")

    def _verb_cue(self, tokens: list[str], i: int) -> bool:
        triggers = self.lexicon["verb_triggers"]
        if i >= 1 and tokens[i - 1] in triggers:
            return True
        return i >= 2 and tokens[i - 1] in ("not", "never") and tokens[i - 2] in triggers

    def _tag_word(
        self,
        word: str,
        tokens: list[str],
        tagged: list[TaggedToken],
        i: int,
    ) -> PosTag:
        lex = self.lexicon
        if word.isdigit():
            return PosTag.NUM

        closed = self._closed_class(word)
        if closed is not None:
            return closed

        noun_cue = self._noun_cue(tokens, tagged, i)
        verb_cue = self._verb_cue(tokens, i)
        in_noun, in_verb = word in lex["noun"], word in lex["verb"]

        if word.endswith("ing") and len(word) > 4 and word not in lex["adj"]:
            if noun_cue:
                return PosTag.NOUN
            if i > 0 and tagged[i - 1].tag in (PosTag.PREP, PosTag.PRON, PosTag.VERB):
                return PosTag.VERB
            return PosTag.NOUN if in_noun else PosTag.VERB

        if in_noun and in_verb:
            return PosTag.VERB if verb_cue else PosTag.NOUN
        if in_noun:
            return PosTag.NOUN
        if word in lex["adj"]:
            return PosTag.ADJ
        if in_verb:
            return PosTag.NOUN if noun_cue else PosTag.VERB
        if verb_cue:
            return PosTag.VERB

        if word.endswith("ly") and len(word) > 4:
            return PosTag.ADV
        if any(word.endswith(s) and len(word) > len(s) + 2 for s in NOUN_SUFFIXES):
            return PosTag.NOUN
        if any(word.endswith(s) and len(word) > len(s) + 2 for s in ADJ_SUFFIXES):
            return PosTag.ADJ
        if word.endswith("ed") and len(word) > 4:
            return PosTag.VERB
        return PosTag.NOUN
