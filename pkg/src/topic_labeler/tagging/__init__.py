from topic_labeler.tagging.base import PosTag, PosTagger, TaggedToken
from topic_labeler.tagging.lexicon_tagger import Lexicon, LexiconTagger

__all__ = [
    "PosTag",
    "PosTagger",
    "TaggedToken",
    "Lexicon",
    "LexiconTagger",
]
