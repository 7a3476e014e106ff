"""Run one experiment for k rounds and record a manifest."""

from __future__ import annotations

import dataclasses
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Mapping, Optional

from scw.generation.clients import CompletionClient, CompletionError, RoundKey
from scw.generation.prompts import ExperimentConfig, build_prompt
from scw.gsn.model import SafetyCase
from scw.gsn.rules import validate
from scw.prose import LENIENT_RULES_VERSION, parse_lenient

log = logging.getLogger(__name__)

MANIFEST_VERSION = 1
ZERO_TIMESTAMP = "1970-01-01T00:00:00Z"


def _now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclasses.dataclass(frozen=True)
class RoundRecord:
    round: int
    prompt: str
    response: Optional[str]
    error: Optional[str]
    parse: Optional[dict]
    timestamp: str
    case: Optional[SafetyCase] = dataclasses.field(default=None, compare=False, repr=False)

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_dict(self) -> dict:
        return {
            "round": self.round,
            "prompt": self.prompt,
            "response": self.response,
            "error": self.error,
            "parse": self.parse,
            "timestamp": self.timestamp,
        }


@dataclasses.dataclass(frozen=True)
class RunManifest:
    config: dict
    params: dict
    client: str
    rounds: tuple[RoundRecord, ...]
    format_version: int = MANIFEST_VERSION

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rounds)

    @property
    def status(self) -> str:
        return "complete" if self.ok else "partial"

    def to_dict(self) -> dict:
        return {
            "format_version": self.format_version,
            "lenient_rules_version": LENIENT_RULES_VERSION,
            "config": self.config,
            "params": self.params,
            "client": self.client,
            "status": self.status,
            "rounds": [r.to_dict() for r in self.rounds],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_json().encode("utf-8"))


def load_manifest(path: str | Path) -> dict:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if data.get("format_version") != MANIFEST_VERSION:
        raise ValueError(f"{path}: unsupported manifest version {data.get('format_version')!r}")
    return data


def parse_summary(case: SafetyCase, diagnostics) -> dict:
    return {
        "elements": len(case.elements),
        "relationships": len(case.relationships),
        "parse_diagnostics": [d.code for d in diagnostics],
        "validation": [d.code for d in validate(case)],
    }


def run_experiment(
    config: ExperimentConfig,
    client: CompletionClient,
    params: Optional[Mapping[str, Any]] = None,
    *,
    max_workers: Optional[int] = None,
    clock: Optional[Callable[[], str]] = None,
) -> RunManifest:
    """Send the experiment prompt ``config.rounds_k`` times, each as a fresh request.

    A failing round is recorded with its error and the remaining rounds
    still run; check ``manifest.ok``.
    """
    params = dict(params or {})
    prompt = build_prompt(config)
    if clock is None:
        clock = (lambda: ZERO_TIMESTAMP) if getattr(client, "deterministic", False) else _now

    def one_round(index: int) -> RoundRecord:
        key = RoundKey(config.experiment, index)
        stamp = clock()
        try:
            response = client.complete(prompt, params, key=key)
        except CompletionError as exc:
            log.warning("experiment %d round %d failed: %s", config.experiment, index, exc)
            return RoundRecord(index, prompt, None, str(exc), None, stamp)
        outcome = parse_lenient(response)
        return RoundRecord(
            index, prompt, response, None, parse_summary(outcome.case, outcome.diagnostics),
            stamp, outcome.case,
        )

    indices = range(1, config.rounds_k + 1)
    if getattr(client, "single_flight", False) or config.rounds_k == 1:
        records = [one_round(i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=max_workers or min(config.rounds_k, 8)) as pool:
            records = list(pool.map(one_round, indices))

    return RunManifest(
        config=config.to_dict(),
        params=params,
        client=type(client).__name__,
        rounds=tuple(sorted(records, key=lambda r: r.round)),
    )
