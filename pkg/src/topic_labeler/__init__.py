"""
topic_labeler: aspect-based topic identification and labeling for tweets.

LDA groups tweets by dominant topic; each topic is then named after the most
frequent noun among the aspect terms of its tweets.
"""
__version__ = "0.1.0"

from topic_labeler.aspect import AspectTerm, extract_aspect_terms, extract_corpus_aspects, pos_tag
from topic_labeler.coherence import CoherenceReport, cv_coherence, sweep_k, umass_coherence
from topic_labeler.config import PipelineConfig, RunConfig
from topic_labeler.errors import (
    ConfigError,
    DatasetError,
    StageError,
    TopicLabelerError,
    UnassignableDocumentError,
)
from topic_labeler.evaluation import ConfusionMatrix, accuracy, confusion
from topic_labeler.geometry import TopicMap, classical_mds, intertopic_map, jsd
from topic_labeler.ingest import GoldLabelSet, RawTweet, load_corpus, load_dataset, load_gold_labels
from topic_labeler.labeling import (
    AspectCluster,
    TopicLabel,
    assign_labels,
    cluster_aspect_terms,
    label_tweet,
    ranked_unigrams,
)
from topic_labeler.pipeline import run_pipeline
from topic_labeler.preprocess import CleanDoc, normalize_text, preprocess_corpus, preprocess_tweet
from topic_labeler.topicmodel import (
    BowDoc,
    DominantAssignment,
    LdaModel,
    Vocabulary,
    build_vocabulary,
    doc2bow,
    dominant_topic,
    infer_theta,
    train_lda,
)

__all__ = [
    "__version__",
    "AspectCluster",
    "AspectTerm",
    "BowDoc",
    "CleanDoc",
    "CoherenceReport",
    "ConfigError",
    "ConfusionMatrix",
    "DatasetError",
    "DominantAssignment",
    "GoldLabelSet",
    "LdaModel",
    "PipelineConfig",
    "RawTweet",
    "RunConfig",
    "StageError",
    "TopicLabel",
    "TopicLabelerError",
    "TopicMap",
    "UnassignableDocumentError",
    "Vocabulary",
    "accuracy",
    "assign_labels",
    "build_vocabulary",
    "classical_mds",
    "cluster_aspect_terms",
    "confusion",
    "cv_coherence",
    "doc2bow",
    "dominant_topic",
    "extract_aspect_terms",
    "extract_corpus_aspects",
    "infer_theta",
    "intertopic_map",
    "jsd",
    "label_tweet",
    "load_corpus",
    "load_dataset",
    "load_gold_labels",
    "normalize_text",
    "pos_tag",
    "preprocess_corpus",
    "preprocess_tweet",
    "ranked_unigrams",
    "run_pipeline",
    "sweep_k",
    "train_lda",
    "umass_coherence",
]
