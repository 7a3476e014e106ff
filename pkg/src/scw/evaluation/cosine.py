"""Cosine similarity between two documents.

The default vectorizer is a plain term-frequency count (lowercased,
split on non-alphanumerics), which is deterministic and dependency free.
An embedding provider can be plugged in instead; reports should say
which one produced a number.
"""

from __future__ import annotations

import math
import os
import re
from collections import Counter
from typing import Optional, Protocol, Sequence, Union

import httpx

EMBED_KEY_ENV = "SCW_EMBED_API_KEY"

_TOKEN_RE = re.compile(r"[^\W_]+")


class EmbeddingError(RuntimeError):
    pass


class EmbeddingProvider(Protocol):
    name: str

    def embed(self, texts: Sequence[str]) -> list[list[float]]: ...


def tf_vector(text: str) -> Counter:
    return Counter(_TOKEN_RE.findall(text.lower()))


def _tf_cosine(doc_a: str, doc_b: str) -> float:
    va, vb = tf_vector(doc_a), tf_vector(doc_b)
    if not va or not vb:
        raise ValueError("document is empty after tokenization")
    dot = sum(count * vb[tok] for tok, count in va.items() if tok in vb)
    na = sum(c * c for c in va.values())
    nb = sum(c * c for c in vb.values())
    # Integer arithmetic up to the single sqrt keeps identical inputs at exactly 1.0.
    return dot / math.sqrt(na * nb)


def vector_cosine(u: Sequence[float], v: Sequence[float]) -> float:
    if len(u) != len(v):
        raise ValueError(f"vector dimensions differ: {len(u)} vs {len(v)}")
    dot = math.fsum(x * y for x, y in zip(u, v))
    nu = math.fsum(x * x for x in u)
    nv = math.fsum(y * y for y in v)
    if nu == 0 or nv == 0:
        raise ValueError("zero vector has no direction")
    return dot / math.sqrt(nu * nv)


def cosine_similarity(
    doc_a: str, doc_b: str, vectorizer: Union[str, EmbeddingProvider] = "tf"
) -> float:
    if isinstance(vectorizer, str):
        if vectorizer != "tf":
            raise ValueError(f"unknown vectorizer {vectorizer!r}")
        return _tf_cosine(doc_a, doc_b)
    vectors = vectorizer.embed([doc_a, doc_b])
    if len(vectors) != 2:
        raise EmbeddingError(f"provider returned {len(vectors)} vectors for 2 texts")
    return vector_cosine(vectors[0], vectors[1])


def vectorizer_name(vectorizer: Union[str, EmbeddingProvider]) -> str:
    if isinstance(vectorizer, str):
        return "term-frequency" if vectorizer == "tf" else vectorizer
    return getattr(vectorizer, "name", type(vectorizer).__name__)


class HttpEmbeddingProvider:
    """POST ``{"texts": [...]}`` and read ``{"vectors": [[...], ...]}``."""

    def __init__(
        self,
        url: str,
        *,
        api_key: Optional[str] = None,
        timeout: float = 60.0,
        transport: Optional[httpx.BaseTransport] = None,
    ):
        if not url:
            raise ValueError("embedding endpoint URL is not configured")
        self.url = url
        self.name = f"embedding:{url}"
        self.api_key = api_key if api_key is not None else os.environ.get(EMBED_KEY_ENV)
        self._client = httpx.Client(timeout=timeout, transport=transport)

    def embed(self, texts: Sequence[str]) -> list[list[float]]:
        headers = {"Authorization": f"Bearer {self.api_key}"} if self.api_key else {}
        try:
            resp = self._client.post(self.url, json={"texts": list(texts)}, headers=headers)
            resp.raise_for_status()
            data = resp.json()
        except (httpx.HTTPError, ValueError) as exc:
            raise EmbeddingError(f"embedding request failed: {exc}") from exc
        vectors = data.get("vectors") if isinstance(data, dict) else None
        if not isinstance(vectors, list) or len(vectors) != len(texts):
            raise EmbeddingError("embedding response must carry one vector per text")
        dims = {len(v) for v in vectors}
        if len(dims) != 1:
            raise EmbeddingError(f"inconsistent vector dimensions {sorted(dims)}")
        return [[float(x) for x in v] for v in vectors]
