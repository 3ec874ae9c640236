from topic_labeler.topicmodel.lda import (
    DominantAssignment,
    LdaModel,
    dominant_topic,
    infer_theta,
    train_lda,
)
from topic_labeler.topicmodel.store import load_model, save_model
from topic_labeler.topicmodel.vocabulary import (
    BowDoc,
    Vocabulary,
    build_corpus,
    build_vocabulary,
    doc2bow,
)

__all__ = [
    "BowDoc",
    "Vocabulary",
    "build_corpus",
    "build_vocabulary",
    "doc2bow",
    "DominantAssignment",
    "LdaModel",
    "dominant_topic",
    "infer_theta",
    "train_lda",
    "load_model",
    "save_model",
]
