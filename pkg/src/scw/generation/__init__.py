"""Prompt building, experiment runs and the question battery."""

from scw.generation.brief import SystemBrief, load_brief
from scw.generation.clients import (
    CompletionClient,
    CompletionError,
    HttpCompletionClient,
    ReplayClient,
    RoundKey,
)
from scw.generation.prompts import ConfigError, ExperimentConfig, build_prompt
from scw.generation.questions import QuestionBank, build_rq1_session, default_bank, load_bank
from scw.generation.runner import RunManifest, run_experiment

__all__ = [
    "CompletionClient",
    "CompletionError",
    "ConfigError",
    "ExperimentConfig",
    "HttpCompletionClient",
    "QuestionBank",
    "ReplayClient",
    "RoundKey",
    "RunManifest",
    "SystemBrief",
    "build_prompt",
    "build_rq1_session",
    "default_bank",
    "load_bank",
    "load_brief",
    "run_experiment",
]
