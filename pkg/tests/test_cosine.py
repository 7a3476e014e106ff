from __future__ import annotations

import json
import math

import httpx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scw.evaluation.cosine import (
    EmbeddingError,
    HttpEmbeddingProvider,
    cosine_similarity,
    tf_vector,
    vector_cosine,
    vectorizer_name,
)


def test_identical_documents():
    assert cosine_similarity("safe system", "safe system") == 1.0


def test_disjoint_vocabularies():
    assert cosine_similarity("alpha beta", "gamma delta") == 0.0


def test_hand_computed_value():
    assert cosine_similarity("safe safe system", "safe system") == pytest.approx(3 / math.sqrt(10), abs=1e-12)


def test_tokenization_lowercases_and_splits():
    assert tf_vector("Safe, SAFE! sys_tem") == {"safe": 2, "sys": 1, "tem": 1}


def test_empty_document_rejected():
    with pytest.raises(ValueError):
        cosine_similarity("...", "safe")


def test_unknown_vectorizer():
    with pytest.raises(ValueError):
        cosine_similarity("a", "a", "bm25")


words = st.lists(st.sampled_from(["safe", "system", "hazard", "goal", "x", "dose", "beam"]), min_size=1, max_size=15)


@settings(max_examples=200, deadline=None)
@given(words, words)
def test_symmetric_and_bounded(a, b):
    da, db = " ".join(a), " ".join(b)
    s = cosine_similarity(da, db)
    assert 0.0 <= s <= 1.0 + 1e-12
    assert abs(s - cosine_similarity(db, da)) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(words, words)
def test_doubling_a_document_is_scale_invariant(a, b):
    da, db = " ".join(a), " ".join(b)
    assert cosine_similarity(da + " " + da, db) == pytest.approx(cosine_similarity(da, db), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(words)
def test_self_similarity_is_one(a):
    d = " ".join(a)
    assert abs(cosine_similarity(d, d) - 1.0) <= 1e-12


def test_vector_cosine():
    assert vector_cosine([1, 0], [-1, 0]) == -1.0
    with pytest.raises(ValueError):
        vector_cosine([1, 2], [1])
    with pytest.raises(ValueError):
        vector_cosine([0, 0], [1, 1])


def provider(handler):
    return HttpEmbeddingProvider("https://embed.test", api_key="k", transport=httpx.MockTransport(handler))


def test_embedding_provider_path():
    def handler(request):
        texts = json.loads(request.content)["texts"]
        assert request.headers["authorization"] == "Bearer k"
        return httpx.Response(200, json={"vectors": [[1.0, 0.0], [1.0, 1.0]][: len(texts)]})

    p = provider(handler)
    assert cosine_similarity("a", "b", p) == pytest.approx(1 / math.sqrt(2))
    assert vectorizer_name(p) == "embedding:https://embed.test"
    assert vectorizer_name("tf") == "term-frequency"


@pytest.mark.parametrize(
    "payload",
    [{"vectors": [[1.0]]}, {"vectors": [[1.0], [1.0, 2.0]]}, {"nope": 1}, [1, 2]],
)
def test_embedding_provider_bad_responses(payload):
    p = provider(lambda r: httpx.Response(200, json=payload))
    with pytest.raises(EmbeddingError):
        cosine_similarity("a", "b", p)


def test_embedding_provider_http_error():
    with pytest.raises(EmbeddingError):
        cosine_similarity("a", "b", provider(lambda r: httpx.Response(502)))
