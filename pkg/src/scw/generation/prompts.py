"""Prompt assembly for the four generation experiments.

==========  ================  ============
experiment  domain knowledge  GSN syntax
==========  ================  ============
1           no                no
2           yes               no
3           no                yes
4           yes               yes
==========  ================  ============
"""

from __future__ import annotations

import dataclasses
import functools
from typing import Optional

from scw import corpus
from scw.generation.brief import SystemBrief

ROLE_STATEMENT = (
    "You are a professional safety case developer assistant. I want you to create a safety case "
    "for the given system in Goal Structuring Notation (GSN) Format."
)
QA_INTRO = "I will give you the following information in the form of Questions and Answers:"
SAFETY_CASE_DEFINITION = (
    "A safety case is a structured argument, supported by evidence, intended to justify that a "
    "system is acceptably safe."
)

DOMAIN_SENTINEL = "What domain knowledge do you have about the system?"
DOMAIN_FOLLOWUP = "What else do you know about the domain of the system?"
SYNTAX_SENTINEL = "What is the GSN syntax that the safety case must follow?"

DEFAULT_ROUNDS = 4

_SYNTAX_RULES = """\
Element kinds and identifiers: Goal (G1, G2, ...) states a claim; Strategy (S1, ...) describes the argument approach that links a goal to its sub-goals; Solution (Sn1, ...) names an item of evidence; Context (C1, ...) references contextual information; Assumption (A1, ...) states an assumption; Justification (J1, ...) gives a rationale.
Relationships: "supportedBy" links Goal to Goal, Goal to Strategy, Goal to Solution, and Strategy to Goal. "inContextOf" links a Goal or a Strategy to a Context, an Assumption or a Justification. No other connections are allowed; Solutions, Contexts, Assumptions and Justifications have no outgoing relationships.
There is exactly one top-level goal. A goal that is not yet developed carries the tag [undeveloped].
Text form: goals, assumptions and justifications are a noun phrase plus a verb phrase; contexts and solutions are noun phrases; a strategy briefly describes the argument approach.
Write one element per line as "<ID>: <text>", then one relationship per line as "<ID> supportedBy <ID>, <ID>" or "<ID> inContextOf <ID>"."""


@functools.lru_cache(maxsize=None)
def default_syntax_block() -> str:
    """Structural rules plus the bundled map-system case as a worked example."""
    example = corpus.corpus_text("map-system").rstrip("\n")
    return f"{_SYNTAX_RULES}\nExample:\n{example}"


class ConfigError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:
    experiment: int
    brief: SystemBrief
    rounds_k: int = DEFAULT_ROUNDS
    syntax_block: Optional[str] = None
    seed_label: str = "run"

    def __post_init__(self) -> None:
        if self.syntax_block is None:
            object.__setattr__(self, "syntax_block", default_syntax_block())
        if self.experiment not in (1, 2, 3, 4):
            raise ConfigError(f"experiment must be 1..4, got {self.experiment}")
        if self.rounds_k < 1:
            raise ConfigError(f"rounds_k must be >= 1, got {self.rounds_k}")
        if self.uses_domain and not self.brief.domain_paragraph:
            raise ConfigError(f"experiment {self.experiment} requires a domain paragraph in the brief")

    @property
    def uses_domain(self) -> bool:
        return self.experiment in (2, 4)

    @property
    def uses_syntax(self) -> bool:
        return self.experiment in (3, 4)

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "rounds_k": self.rounds_k,
            "seed_label": self.seed_label,
            "brief": self.brief.to_dict(),
            "syntax_block": self.syntax_block if self.uses_syntax else None,
        }


def build_prompt(config: ExperimentConfig) -> str:
    brief = config.brief
    pairs = [
        ("What is a safety case?", SAFETY_CASE_DEFINITION),
        ("What is the format of the safety case", "I want you to generate a safety case in GSN Format"),
        ("What is the system for which you need to generate a safety case", brief.system_description),
        ("What is the main objective of the safety case", brief.objective),
    ]
    if config.uses_domain:
        paragraphs = [p.strip() for p in brief.domain_paragraph.split("\n\n") if p.strip()]
        for i, para in enumerate(paragraphs):
            pairs.append((DOMAIN_SENTINEL if i == 0 else DOMAIN_FOLLOWUP, para))
    if config.uses_syntax:
        pairs.append((SYNTAX_SENTINEL, config.syntax_block))

    parts = [ROLE_STATEMENT, "", QA_INTRO, ""]
    for n, (question, answer) in enumerate(pairs, start=1):
        parts.append(f"Question {n}: {question}")
        parts.append(f"Answer: {answer}")
        parts.append("")
    parts.append(f"Create a top-level safety case for the {brief.system_name} in GSN format.")
    return "\n".join(parts)
