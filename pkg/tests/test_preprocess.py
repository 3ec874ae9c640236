from __future__ import annotations

import random

import pytest

from topic_labeler.config import PipelineConfig
from topic_labeler.ingest import RawTweet
from topic_labeler.preprocess import (
    CleanDoc,
    expand_contractions,
    filter_tokens,
    normalize_text,
    preprocess_corpus,
    preprocess_tweet,
    tokenize,
)

GOLDEN = [
    ("Hi @john see https://t.co/xyz #Covid19 NOW", "hi see now"),
    ("can't won't I'm", "cannot will not i am"),
    ("café Ǝ ok", "caf ok"),
    ("Visit www.example.com today!", "visit today"),
    ("Check http://foo.bar/baz?x=1 now", "check now"),
    ("#StayHome #StaySafe", ""),
    ("@user1 @user2 thanks!!!", "thanks"),
    ("Don't panic-buy, please.", "do not panic buy please"),
    ("It's 5pm... stores CLOSED", "it is pm stores closed"),
    ("  Multiple   spaces\tand\nlines  ", "multiple spaces and lines"),
    ("Prices ↑ 20%!!", "prices"),
    ("Hand-sanitizer: SOLD OUT", "hand sanitizer sold out"),
    ("They're saying we'll be fine", "they are saying we will be fine"),
    ("I’m home", "i am home"),
    ("https://t.co/abc", ""),
    ("t.co/xyz only", "only"),
    ("COVID-19 lockdown", "covid lockdown"),
    ("Mask & gloves > nothing", "mask gloves nothing"),
    ("Stay home, save lives. #COVID19 @WHO", "stay home save lives"),
    ("\U0001f637 wear a mask \U0001f637", "wear a mask"),
    ("", ""),
    ("ALL CAPS TWEET", "all caps tweet"),
    ("Let's go", "let us go"),
    ("y'all stay safe", "you all stay safe"),
]


@pytest.mark.parametrize("raw, expected", GOLDEN)
def test_normalize_golden(cfg, raw, expected):
    assert normalize_text(raw, cfg) == expected


def test_normalize_output_is_lowercase_ascii(cfg):
    for raw, _ in GOLDEN:
        text = normalize_text(raw, cfg)
        assert text == text.lower()
        assert text.isascii()
        assert "  " not in text
        assert text == text.strip()


def test_normalize_is_idempotent_on_random_strings(cfg):
    rng = random.Random(0)
    alphabet = list("abcXYZ09 .,!?'@#:/-_\t\n") + ["é", "Ǝ", "’", "\U0001f637"]
    pieces = ["http://x.y/z", "www.a.b", "t.co/q", "can't", "i'm", "#tag", "@who", "won't"]
    for _ in range(10_000):
        parts = [
            rng.choice(pieces) if rng.random() < 0.1 else rng.choice(alphabet)
            for _ in range(rng.randint(0, 40))
        ]
        once = normalize_text("".join(parts), cfg)
        assert normalize_text(once, cfg) == once


def test_drop_tweet_policy_empties_text():
    cfg = PipelineConfig(non_ascii_policy="drop_tweet")
    assert normalize_text("café ok", cfg) == ""
    assert normalize_text("plain ok", cfg) == "plain ok"


def test_contractions_before_punctuation(cfg):
    assert expand_contractions("didn't", cfg.contractions) == "did not"
    assert expand_contractions("couldn't've", cfg.contractions) == "could not have"
    # Only whole words are expanded.
    assert expand_contractions("xcan't", cfg.contractions) == "xcan't"


def test_tokenize():
    assert tokenize("hi see now") == ["hi", "see", "now"]
    assert tokenize("") == []
    assert tokenize("  a  b ") == ["a", "b"]


def test_filter_tokens(cfg):
    assert filter_tokens(["i", "x", "go", "the", "store"], cfg) == ["go", "store"]
    assert filter_tokens([], cfg) == []
    assert filter_tokens(["coronavirus", "is", "a", "virus"], cfg) == ["coronavirus", "virus"]


def test_preprocess_table_example(cfg):
    doc = preprocess_tweet(
        RawTweet(7, "Hi coronavirus. Thanks for making me do more online shopping."), cfg
    )
    assert doc == CleanDoc(
        id=7, tokens=["hi", "coronavirus", "thanks", "making", "online", "shopping"], dropped=False
    )


def test_url_only_tweet_is_dropped(cfg):
    doc = preprocess_tweet(RawTweet(0, "https://t.co/abc"), cfg)
    assert doc.dropped
    assert doc.tokens == []


def test_min_tokens_keep_zero_keeps_empty_docs():
    cfg = PipelineConfig(min_tokens_keep=0)
    assert not preprocess_tweet(RawTweet(0, "https://t.co/abc"), cfg).dropped


def test_drop_tweet_policy_marks_dropped():
    cfg = PipelineConfig(non_ascii_policy="drop_tweet", min_tokens_keep=0)
    assert preprocess_tweet(RawTweet(0, "store café"), cfg).dropped


def test_corpus_keeps_order_and_count(cfg):
    tweets = [RawTweet(i, text) for i, text in enumerate(["store open", "#only", "food prices"])]
    docs = preprocess_corpus(tweets, cfg)
    assert [d.id for d in docs] == [0, 1, 2]
    assert [d.dropped for d in docs] == [False, True, False]
    assert preprocess_corpus(tweets, cfg) == docs


def test_clean_doc_dict_round_trip():
    doc = CleanDoc(id=3, tokens=["store"], dropped=False)
    assert CleanDoc.from_dict(doc.to_dict()) == doc
