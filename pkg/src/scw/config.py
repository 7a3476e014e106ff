"""``workbench.toml`` loading.

Every key has a default, so an absent file is the same as an empty one::

    [llm]
    url = "https://llm.example/v1/complete"
    model = "gpt-4"
    wire = "chat"          # or "prompt"
    timeout = 120
    [llm.params]
    temperature = 0.7

    [embedding]
    url = ""
    timeout = 60

    [validator]
    allow_multiple_roots = false

    [render]
    wrap = 30

    [paths]
    replay_dir = ""        # empty: bundled demo responses
    output_dir = "runs"

Credentials are never read from this file, only from ``SCW_LLM_API_KEY``
and ``SCW_EMBED_API_KEY``.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import Any, Optional

import tomli

DEFAULT_CONFIG_NAME = "workbench.toml"


class ConfigFileError(ValueError):
    pass


@dataclasses.dataclass
class LlmSettings:
    url: str = ""
    model: str = "gpt-4"
    wire: str = "chat"
    timeout: float = 120.0
    params: dict = dataclasses.field(default_factory=dict)


@dataclasses.dataclass
class EmbeddingSettings:
    url: str = ""
    timeout: float = 60.0


@dataclasses.dataclass
class WorkbenchConfig:
    llm: LlmSettings = dataclasses.field(default_factory=LlmSettings)
    embedding: EmbeddingSettings = dataclasses.field(default_factory=EmbeddingSettings)
    allow_multiple_roots: bool = False
    wrap: int = 30
    replay_dir: str = ""
    output_dir: str = "runs"


_SECTIONS = {
    "llm": {"url": str, "model": str, "wire": str, "timeout": (int, float), "params": dict},
    "embedding": {"url": str, "timeout": (int, float)},
    "validator": {"allow_multiple_roots": bool},
    "render": {"wrap": int},
    "paths": {"replay_dir": str, "output_dir": str},
}


def _check(data: dict[str, Any], source: str) -> None:
    for section, values in data.items():
        if section not in _SECTIONS:
            raise ConfigFileError(f"{source}: unknown section [{section}]")
        if not isinstance(values, dict):
            raise ConfigFileError(f"{source}: [{section}] must be a table")
        for key, value in values.items():
            expected = _SECTIONS[section].get(key)
            if expected is None:
                raise ConfigFileError(f"{source}: unknown key {section}.{key}")
            if not isinstance(value, expected) or (expected is int and isinstance(value, bool)):
                raise ConfigFileError(f"{source}: {section}.{key} has the wrong type")


def parse_config(text: str, source: str = "<config>") -> WorkbenchConfig:
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ConfigFileError(f"{source}: {exc}") from exc
    _check(data, source)
    llm = data.get("llm", {})
    emb = data.get("embedding", {})
    cfg = WorkbenchConfig(
        llm=LlmSettings(**{k: (float(v) if k == "timeout" else v) for k, v in llm.items()}),
        embedding=EmbeddingSettings(**{k: (float(v) if k == "timeout" else v) for k, v in emb.items()}),
        allow_multiple_roots=data.get("validator", {}).get("allow_multiple_roots", False),
        wrap=data.get("render", {}).get("wrap", 30),
        replay_dir=data.get("paths", {}).get("replay_dir", ""),
        output_dir=data.get("paths", {}).get("output_dir", "runs"),
    )
    if cfg.llm.wire not in ("chat", "prompt"):
        raise ConfigFileError(f"{source}: llm.wire must be 'chat' or 'prompt'")
    if cfg.wrap < 1:
        raise ConfigFileError(f"{source}: render.wrap must be positive")
    return cfg


def load_config(path: Optional[str | Path] = None) -> WorkbenchConfig:
    """Load ``path``, or ``./workbench.toml`` when it exists, else defaults."""
    if path is None:
        default = Path(DEFAULT_CONFIG_NAME)
        if not default.exists():
            return WorkbenchConfig()
        path = default
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigFileError(f"cannot read {path}: {exc}") from exc
    return parse_config(text, str(path))
