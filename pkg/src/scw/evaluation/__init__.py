"""Measurement suite: rank agreement, text similarity, ratings and reports."""

from scw.evaluation.cosine import HttpEmbeddingProvider, cosine_similarity
from scw.evaluation.ratings import RatingRecord, RatingsError, ingest_ratings
from scw.evaluation.tables import (
    ScoreTable,
    aggregate,
    aggregate_ratings,
    emit_report,
    grade_of,
    half_up,
    interpret,
)
from scw.evaluation.tau import TauUndefined, kendalls_tau

__all__ = [
    "HttpEmbeddingProvider",
    "RatingRecord",
    "RatingsError",
    "ScoreTable",
    "TauUndefined",
    "aggregate",
    "aggregate_ratings",
    "cosine_similarity",
    "emit_report",
    "grade_of",
    "half_up",
    "ingest_ratings",
    "interpret",
    "kendalls_tau",
]
