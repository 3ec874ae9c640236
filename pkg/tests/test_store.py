from __future__ import annotations

import json

import numpy as np
import pytest

from topic_labeler.errors import ModelFormatError
from topic_labeler.preprocess import CleanDoc
from topic_labeler.topicmodel import build_corpus, build_vocabulary, load_model, save_model, train_lda
from topic_labeler.utils.artifacts import partial_path


@pytest.fixture
def model():
    docs = [
        CleanDoc(0, ["store", "shelves", "store"]),
        CleanDoc(1, ["price", "food"]),
        CleanDoc(2, [], dropped=True),
        CleanDoc(3, ["store", "food", "price"]),
    ]
    vocab = build_vocabulary(docs, min_df=1, max_df_fraction=1.0)
    return train_lda(build_corpus(docs, vocab), 2, iterations=10, seed=4, vocab=vocab)


def test_save_and_load(tmp_path, model):
    path = save_model(model, tmp_path / "model.json", extra={"config_hash": "abc"})
    assert not partial_path(path).exists()
    loaded = load_model(path)

    assert loaded.num_topics == model.num_topics
    assert loaded.vocab.id_to_word == model.vocab.id_to_word
    assert np.array_equal(loaded.phi, model.phi)
    assert np.array_equal(loaded.theta, model.theta)
    assert np.array_equal(loaded.doc_ids, model.doc_ids)
    assert np.array_equal(loaded.nkw, model.nkw)
    assert np.array_equal(loaded.ndk, model.ndk)
    assert loaded.seed == 4
    loaded.check_counts()

    header = json.loads(path.read_text(encoding="utf-8"))
    assert header["format_version"] == 1
    assert header["config_hash"] == "abc"
    assert header["alpha"] == [2.5, 2.5]


def test_rejects_other_versions(tmp_path, model):
    path = save_model(model, tmp_path / "model.json")
    data = json.loads(path.read_text(encoding="utf-8"))
    data["format_version"] = 2
    path.write_text(json.dumps(data), encoding="utf-8")
    with pytest.raises(ModelFormatError, match="format_version"):
        load_model(path)


def test_rejects_missing_keys_and_bad_shapes(tmp_path, model):
    path = save_model(model, tmp_path / "model.json")
    data = json.loads(path.read_text(encoding="utf-8"))

    broken = dict(data)
    del broken["phi"]
    path.write_text(json.dumps(broken), encoding="utf-8")
    with pytest.raises(ModelFormatError, match="phi"):
        load_model(path)

    data["num_words"] += 1
    path.write_text(json.dumps(data), encoding="utf-8")
    with pytest.raises(ModelFormatError, match="shape"):
        load_model(path)


def test_rejects_non_json(tmp_path):
    path = tmp_path / "model.json"
    path.write_text("not json", encoding="utf-8")
    with pytest.raises(ModelFormatError):
        load_model(path)
    with pytest.raises(ModelFormatError, match="not found"):
        load_model(tmp_path / "missing.json")
