"""Completion endpoints.

Any object with ``complete(prompt, params, *, key)`` plus the two flags
below can drive an experiment:

``single_flight``
    True if the client cannot take concurrent calls; the runner then
    issues rounds one at a time.
``deterministic``
    True for replay-style clients; the runner zeroes timestamps so that
    manifests are byte-reproducible.
"""

from __future__ import annotations

import dataclasses
import os
from pathlib import Path
from typing import Any, Mapping, Optional, Protocol

import httpx

LLM_KEY_ENV = "SCW_LLM_API_KEY"
WIRE_SHAPES = ("chat", "prompt")


class CompletionError(RuntimeError):
    pass


@dataclasses.dataclass(frozen=True)
class RoundKey:
    experiment: int
    round: int


class CompletionClient(Protocol):
    single_flight: bool
    deterministic: bool

    def complete(self, prompt: str, params: Mapping[str, Any], *, key: RoundKey) -> str: ...


def replay_filename(seed_label: str, experiment: int, round_index: int) -> str:
    return f"{seed_label}.exp{experiment}.round{round_index}.txt"


class ReplayClient:
    """Returns canned responses from ``<seed_label>.exp<e>.round<r>.txt`` files."""

    single_flight = False
    deterministic = True

    def __init__(self, directory: str | Path, seed_label: str):
        self.directory = Path(directory)
        self.seed_label = seed_label

    def path_for(self, key: RoundKey) -> Path:
        return self.directory / replay_filename(self.seed_label, key.experiment, key.round)

    def complete(self, prompt: str, params: Mapping[str, Any], *, key: RoundKey) -> str:
        path = self.path_for(key)
        try:
            return path.read_bytes().decode("utf-8")
        except FileNotFoundError:
            raise CompletionError(f"no canned response {path.name}") from None
        except (OSError, UnicodeDecodeError) as exc:
            raise CompletionError(f"cannot read canned response {path.name}: {exc}") from exc

    def __repr__(self) -> str:
        return f"ReplayClient(seed_label={self.seed_label!r})"


class HttpCompletionClient:
    """POSTs the prompt as JSON and reads a ``text`` field from the reply.

    ``wire="chat"`` sends ``{"model", "messages": [{"role": "user", ...}],
    "params"}``; ``wire="prompt"`` sends ``{"model", "prompt", "params"}``.
    """

    single_flight = False
    deterministic = False

    def __init__(
        self,
        url: str,
        *,
        model: str = "gpt-4",
        wire: str = "chat",
        api_key: Optional[str] = None,
        timeout: float = 120.0,
        transport: Optional[httpx.BaseTransport] = None,
    ):
        if not url:
            raise ValueError("completion endpoint URL is not configured")
        if wire not in WIRE_SHAPES:
            raise ValueError(f"wire must be one of {WIRE_SHAPES}, got {wire!r}")
        self.url = url
        self.model = model
        self.wire = wire
        self.api_key = api_key if api_key is not None else os.environ.get(LLM_KEY_ENV)
        self._client = httpx.Client(timeout=timeout, transport=transport)

    def payload(self, prompt: str, params: Mapping[str, Any]) -> dict:
        body: dict[str, Any] = {"model": self.model, "params": dict(params)}
        if self.wire == "chat":
            body["messages"] = [{"role": "user", "content": prompt}]
        else:
            body["prompt"] = prompt
        return body

    def complete(self, prompt: str, params: Mapping[str, Any], *, key: RoundKey) -> str:
        headers = {"Authorization": f"Bearer {self.api_key}"} if self.api_key else {}
        try:
            resp = self._client.post(self.url, json=self.payload(prompt, params), headers=headers)
            resp.raise_for_status()
            data = resp.json()
        except (httpx.HTTPError, ValueError) as exc:
            raise CompletionError(f"completion request failed: {exc}") from exc
        text = _extract_text(data)
        if text is None:
            raise CompletionError("completion response has no text field")
        return text

    def __repr__(self) -> str:
        return f"HttpCompletionClient(url={self.url!r}, model={self.model!r}, wire={self.wire!r})"


def _extract_text(data: Any) -> Optional[str]:
    if not isinstance(data, dict):
        return None
    if isinstance(data.get("text"), str):
        return data["text"]
    # OpenAI-style bodies, for endpoints that pass them through unchanged
    choices = data.get("choices")
    if isinstance(choices, list) and choices and isinstance(choices[0], dict):
        first = choices[0]
        msg = first.get("message")
        if isinstance(msg, dict) and isinstance(msg.get("content"), str):
            return msg["content"]
        if isinstance(first.get("text"), str):
            return first["text"]
    return None
