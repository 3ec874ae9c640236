"""
Aspect term extraction: POS-tag lightly cleaned tweet text and collect
noun chunks of the form (ADJ|NOUN)* NOUN.

Extraction keeps function words in place (chunking needs them), so it runs
on its own cleaning path instead of the stopword-filtered LDA tokens. The
unigrams of each chunk are its NOUN words, filtered by the same length and
stopword rules as the LDA vocabulary.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

from topic_labeler.config import PipelineConfig
from topic_labeler.ingest import RawTweet
from topic_labeler.preprocess import NON_ASCII_RE, expand_contractions, strip_social_markup
from topic_labeler.tagging import Lexicon, LexiconTagger, PosTag, PosTagger, TaggedToken

logger = logging.getLogger(__name__)

POSSESSIVE_RE = re.compile(r"['’]s\b")
APOSTROPHE_RE = re.compile(r"['’]")
NON_ASCII_WORD_RE = re.compile(r"\S*[^\x00-\x7f]\S*")
# Anything that is not a letter, digit or whitespace ends a segment.
SEGMENT_BREAK_RE = re.compile(r"[^a-z0-9\s]+")

_CHUNK_TAGS = (PosTag.ADJ, PosTag.NOUN)


@dataclass(frozen=True)
class AspectTerm:
    """A noun chunk found in one tweet."""

    phrase: str
    unigrams: list[str] = field(default_factory=list)
    source_doc: int = 0

    def __post_init__(self) -> None:
        if not self.unigrams:
            raise ValueError(f"AspectTerm {self.phrase!r} has no unigrams")

    def to_dict(self) -> dict:
        return {"phrase": self.phrase, "unigrams": list(self.unigrams), "source_doc": self.source_doc}

    @classmethod
    def from_dict(cls, data: dict) -> "AspectTerm":
        return cls(
            phrase=str(data["phrase"]),
            unigrams=[str(u) for u in data["unigrams"]],
            source_doc=int(data["source_doc"]),
        )


@lru_cache(maxsize=8)
def _tagger_for(lexicon_dir: Optional[str]) -> LexiconTagger:
    return LexiconTagger(Lexicon.load(lexicon_dir))


def default_tagger(lexicon_dir: Optional[str] = None) -> PosTagger:
    """The bundled lexicon tagger, cached per lexicon directory."""
    return _tagger_for(lexicon_dir)


def pos_tag(tokens: list[str], tagger: PosTagger | None = None) -> list[TaggedToken]:
    """Tag lowercase tokens, one tag per token."""
    return (tagger or default_tagger()).tag(list(tokens))


def light_clean(text: str, cfg: PipelineConfig) -> list[list[str]]:
    """
    Lowercase, drop social markup and expand contractions, then split the
    text into word segments at punctuation.

    Words carrying non-ASCII characters are removed (under ``drop_tweet`` the
    whole tweet yields nothing), so every kept word occurs verbatim in the
    lowercased tweet.
    """
    text = strip_social_markup(text)
    if cfg.non_ascii_policy == "drop_tweet" and NON_ASCII_RE.search(text):
        return []
    text = expand_contractions(text, cfg.contractions)
    text = NON_ASCII_WORD_RE.sub(" . ", text)
    text = POSSESSIVE_RE.sub("", text)
    text = APOSTROPHE_RE.sub(" ", text)
    segments = (segment.split() for segment in SEGMENT_BREAK_RE.split(text))
    return [words for words in segments if words]


def noun_chunks(tagged: list[TaggedToken]) -> list[list[TaggedToken]]:
    """Maximal runs of ADJ/NOUN words, each cut after its last NOUN."""
    chunks: list[list[TaggedToken]] = []
    run: list[TaggedToken] = []
    for token in [*tagged, None]:
        if token is not None and token.tag in _CHUNK_TAGS:
            run.append(token)
            continue
        last_noun = max((i for i, t in enumerate(run) if t.tag == PosTag.NOUN), default=-1)
        if last_noun >= 0:
            chunks.append(run[: last_noun + 1])
        run = []
    return chunks


def extract_aspect_terms(
    text: str,
    cfg: PipelineConfig,
    *,
    source_doc: int = 0,
    tagger: PosTagger | None = None,
) -> list[AspectTerm]:
    """
    Extract the aspect terms (nouns and noun phrases) of one tweet.

    Args:
        text: Raw tweet text
        cfg: Cleaning parameters (contractions, stopwords, min token length)
        source_doc: Id of the tweet, recorded on each term
        tagger: POS tagger; the bundled lexicon tagger by default

    Returns:
        Terms in text order; empty when the tweet has no usable noun
    """
    tagger = tagger or default_tagger(cfg.lexicon_dir)
    terms: list[AspectTerm] = []
    for words in light_clean(text, cfg):
        for chunk in noun_chunks(tagger.tag(words)):
            unigrams = [
                t.word
                for t in chunk
                if t.tag == PosTag.NOUN
                and len(t.word) >= cfg.min_token_len
                and t.word not in cfg.stopwords
            ]
            if unigrams:
                phrase = " ".join(t.word for t in chunk)
                terms.append(AspectTerm(phrase=phrase, unigrams=unigrams, source_doc=source_doc))
    return terms


def extract_corpus_aspects(
    tweets: Iterable[RawTweet],
    cfg: PipelineConfig,
    tagger: PosTagger | None = None,
) -> list[AspectTerm]:
    """Aspect terms of every tweet, ordered by tweet id."""
    tagger = tagger or default_tagger(cfg.lexicon_dir)
    terms: list[AspectTerm] = []
    for tweet in sorted(tweets, key=lambda t: t.id):
        terms.extend(extract_aspect_terms(tweet.text, cfg, source_doc=tweet.id, tagger=tagger))
    logger.info("Extracted %d aspect terms", len(terms))
    return terms
