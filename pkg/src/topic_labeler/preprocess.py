"""
Tweet normalization, tokenization and token filtering.

normalize_text applies, in order: lowercase, link removal, mention removal,
hashtag removal, contraction expansion, punctuation to space, whitespace
trimming, and finally non-ASCII handling. Contractions must be expanded
before punctuation is replaced, otherwise the apostrophes are gone.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from topic_labeler.config import PipelineConfig
from topic_labeler.ingest import RawTweet

logger = logging.getLogger(__name__)

URL_RE = re.compile(r"https?:\S*|www\.\S+|\bt\.co/\S*")
MENTION_RE = re.compile(r"@\w+")
HASHTAG_RE = re.compile(r"#\w+")
# Everything ASCII that is not a lowercase letter or whitespace; non-ASCII is left for step 10.
PUNCT_RE = re.compile(r"[^a-z\s\u0080-\U0010FFFF]")
NON_ASCII_RE = re.compile(r"[^\x00-\x7f]")
WHITESPACE_RE = re.compile(r"\s+")
APOSTROPHES = "'’"


@dataclass(frozen=True)
class CleanDoc:
    """A tweet after cleaning, aligned with its RawTweet by id."""

    id: int
    tokens: list[str] = field(default_factory=list)
    dropped: bool = False

    def to_dict(self) -> dict:
        return {"id": self.id, "tokens": list(self.tokens), "dropped": self.dropped}

    @classmethod
    def from_dict(cls, data: dict) -> "CleanDoc":
        return cls(id=int(data["id"]), tokens=list(data["tokens"]), dropped=bool(data["dropped"]))


@lru_cache(maxsize=16)
def _contraction_pattern(contractions: tuple[tuple[str, str], ...]) -> tuple[re.Pattern, dict]:
    table = {pattern: expansion for pattern, expansion in contractions}
    ordered = sorted(table, key=lambda p: (-len(p), p))
    alternation = "|".join(re.escape(p).replace("'", f"[{APOSTROPHES}]") for p in ordered)
    return re.compile(rf"(?<!\w)(?:{alternation})(?!\w)"), table


def expand_contractions(text: str, contractions: tuple[tuple[str, str], ...]) -> str:
    """Replace known contractions, longest pattern first."""
    if not contractions:
        return text
    pattern, table = _contraction_pattern(contractions)
    return pattern.sub(lambda m: table[m.group(0).replace("’", "'")], text)


def _collapse(text: str) -> str:
    return WHITESPACE_RE.sub(" ", text).strip()


def strip_social_markup(text: str) -> str:
    """Lowercase and drop links, mentions and hashtags (steps 1-4)."""
    text = text.lower()
    text = URL_RE.sub("", text)
    text = MENTION_RE.sub("", text)
    return HASHTAG_RE.sub("", text)


def _normalize(text: str, cfg: PipelineConfig) -> tuple[str, bool]:
    text = strip_social_markup(text)
    text = expand_contractions(text, cfg.contractions)
    text = PUNCT_RE.sub(" ", text)
    text = _collapse(text)
    if NON_ASCII_RE.search(text):
        if cfg.non_ascii_policy == "drop_tweet":
            return "", True
        text = _collapse(NON_ASCII_RE.sub("", text))
    return text, False


def normalize_text(text: str, cfg: PipelineConfig) -> str:
    """
    Normalize one tweet to a lowercase ASCII string of space-separated words.

    Under the ``drop_tweet`` policy a tweet containing any non-ASCII character
    normalizes to the empty string.
    """
    return _normalize(text, cfg)[0]


def tokenize(normalized: str) -> list[str]:
    """Split on whitespace, keeping order."""
    return normalized.split()


def filter_tokens(tokens: list[str], cfg: PipelineConfig) -> list[str]:
    """Drop short tokens, then stopwords."""
    kept = [t for t in tokens if len(t) >= cfg.min_token_len]
    return [t for t in kept if t not in cfg.stopwords]


def preprocess_tweet(tweet: RawTweet, cfg: PipelineConfig) -> CleanDoc:
    normalized, policy_dropped = _normalize(tweet.text, cfg)
    tokens = filter_tokens(tokenize(normalized), cfg)
    if policy_dropped or len(tokens) < cfg.min_tokens_keep:
        return CleanDoc(id=tweet.id, tokens=[], dropped=True)
    return CleanDoc(id=tweet.id, tokens=tokens, dropped=False)


def preprocess_corpus(tweets: Iterable[RawTweet], cfg: PipelineConfig) -> list[CleanDoc]:
    """Clean every tweet; dropped tweets stay in the output as markers."""
    docs = [preprocess_tweet(t, cfg) for t in tweets]
    dropped = sum(d.dropped for d in docs)
    logger.info("Preprocessed %d tweets (%d dropped)", len(docs), dropped)
    return docs
