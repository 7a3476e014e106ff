"""The GSN proficiency question battery and session builder."""

from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import Iterable

CATEGORIES = ("rule-structural", "rule-semantic", "generation")

PREPARATORY_PROMPT = (
    "You are an assistant that helps me answer questions about Goal structuring notation (GSN). "
    "GSN always refers to Goal Structuring Notation from this point. Your answers should be "
    "concise and to the point. It should not be more than 2-3 lines"
)


@dataclasses.dataclass(frozen=True)
class Question:
    id: str
    category: str
    text: str
    source: str = "reconstructed"

    def __post_init__(self) -> None:
        if self.category not in CATEGORIES:
            raise ValueError(f"question {self.id}: unknown category {self.category!r}")
        if not self.text.strip():
            raise ValueError(f"question {self.id}: empty text")

    @property
    def rule_based(self) -> bool:
        return self.category.startswith("rule-")


@dataclasses.dataclass(frozen=True)
class QuestionBank:
    questions: tuple[Question, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "questions", tuple(self.questions))
        if not self.questions:
            raise ValueError("question bank invariant violated: bank is empty")
        ids = [q.id for q in self.questions]
        if len(set(ids)) != len(ids):
            raise ValueError("question bank invariant violated: duplicate question ids")

    def __len__(self) -> int:
        return len(self.questions)

    def __iter__(self):
        return iter(self.questions)

    @property
    def rule_count(self) -> int:
        return sum(q.rule_based for q in self.questions)

    @property
    def generation_count(self) -> int:
        return sum(q.category == "generation" for q in self.questions)

    @property
    def is_standard(self) -> bool:
        """True for the full battery shape: 13 rule-based plus 6 generation questions."""
        return self.rule_count == 13 and self.generation_count == 6 and len(self) == 19

    def only(self, *categories: str) -> "QuestionBank":
        """Sub-bank of the given categories; ``"rule"`` selects both rule kinds."""
        wanted = set()
        for c in categories:
            wanted.update(x for x in CATEGORIES if x == c or x.startswith(c + "-"))
        return QuestionBank(tuple(q for q in self.questions if q.category in wanted))


def _q(n: int, category: str, text: str, source: str = "reconstructed") -> Question:
    return Question(f"Q{n}", category, text, source)


_S, _M, _G = CATEGORIES

DEFAULT_QUESTIONS: tuple[Question, ...] = (
    _q(1, _S, "How many elements are present in a goal-structure and what are they? "
              "Can a parent element have multiple children?", "paper"),
    _q(2, _S, "Can you explain how each of the six elements of GSN are structurally "
              "represented. i.e., what shapes?", "paper"),
    _q(3, _S, "Which GSN elements can a goal be connected to, and through which relationship?"),
    _q(4, _S, "Which GSN elements can a strategy be connected to?"),
    _q(5, _S, "Can a solution have child elements in a goal structure?"),
    _q(6, _S, "What is the difference between the SupportedBy and InContextOf relationships?"),
    _q(7, _S, "Which elements can be attached to a goal through an InContextOf relationship?"),
    _q(8, _S, "What do the undeveloped, uninstantiated and off-diagram decorators indicate?"),
    _q(9, _M, "Explain what a top-level claim is. Can it be supported by multiple sub-claims?",
       "paper"),
    _q(10, _M, "What grammatical form should the text of a goal take?"),
    _q(11, _M, "What grammatical form should the text of a context or a solution take?"),
    _q(12, _M, "What should the text of a strategy describe?"),
    _q(13, _M, "What should the text of an assumption or a justification express?"),
    _q(14, _G, "Give me a sample goal element connected to 2 sub-goals", "paper"),
    _q(15, _G, "Give me a sample strategy that decomposes a goal into sub-goals."),
    _q(16, _G, "Give me a sample goal supported by a solution."),
    _q(17, _G, "Give me a sample goal with a context and an assumption attached."),
    _q(18, _G, "Give me a sample justification for the choice of a strategy."),
    _q(19, _G, "Give me a short goal structure with one goal, one strategy, two sub-goals "
               "and two solutions."),
)


def default_bank() -> QuestionBank:
    return QuestionBank(DEFAULT_QUESTIONS)


def parse_bank(lines: Iterable[str]) -> QuestionBank:
    """Parse ``<category>|<question>`` lines; blank and ``#`` lines are skipped."""
    questions = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        category, sep, text = line.partition("|")
        if not sep:
            raise ValueError(f"line {lineno}: expected '<category>|<question>'")
        questions.append(Question(f"Q{len(questions) + 1}", category.strip(), text.strip(), "custom"))
    return QuestionBank(tuple(questions))


def load_bank(path: str | Path) -> QuestionBank:
    return parse_bank(Path(path).read_text(encoding="utf-8").splitlines())


@dataclasses.dataclass(frozen=True)
class Rq1Session:
    """Prompts to send, in order, within a single conversation."""

    prompts: tuple[str, ...]
    question_ids: tuple[str, ...]
    single_conversation: bool = True


def build_rq1_session(bank: QuestionBank) -> Rq1Session:
    if not bank.questions:
        raise ValueError("question bank invariant violated: bank is empty")
    return Rq1Session(
        prompts=(PREPARATORY_PROMPT,) + tuple(q.text for q in bank.questions),
        question_ids=tuple(q.id for q in bank.questions),
    )
