"""Scoring of the GSN question battery by two raters.

Input CSV: header ``rater,round,question,score`` with 1..5 scores (1 best).
Per round, the two raters' score vectors over the questions give one
Kendall's tau; per rater, the round means give the assessor table whose
combined average is graded.
"""

from __future__ import annotations

import csv
import dataclasses
import io
from decimal import Decimal
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from scw.evaluation.tables import ScoreTable, aggregate, display, exact_mean, grade_of, grade_percent
from scw.evaluation.tau import kendalls_tau

HEADER = ("rater", "round", "question", "score")


@dataclasses.dataclass(frozen=True)
class Rq1Scores:
    # rater -> round -> question id -> score
    scores: Mapping[str, Mapping[int, Mapping[str, int]]]

    @property
    def raters(self) -> list[str]:
        return list(self.scores)

    @property
    def rounds(self) -> list[int]:
        return sorted({r for by_round in self.scores.values() for r in by_round})

    def vector(self, rater: str, round_index: int, questions: Sequence[str]) -> list[int]:
        by_q = self.scores[rater][round_index]
        return [by_q[q] for q in questions]


def parse_rq1_scores(rows: Iterable[list[str]]) -> Rq1Scores:
    it = iter(rows)
    header = next(it, None)
    if header is None or tuple(h.strip() for h in header) != HEADER:
        raise ValueError(f"malformed header: expected {','.join(HEADER)}")
    scores: dict[str, dict[int, dict[str, int]]] = {}
    errors = []
    for rowno, row in enumerate(it, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 4:
            errors.append(f"row {rowno}: expected 4 fields")
            continue
        rater, rnd, question, score = (c.strip() for c in row)
        try:
            rnd_i, score_i = int(rnd), int(score)
        except ValueError:
            errors.append(f"row {rowno}: round and score must be integers")
            continue
        if score_i not in (1, 2, 3, 4, 5):
            errors.append(f"row {rowno}: score out of 1..5")
            continue
        by_q = scores.setdefault(rater, {}).setdefault(rnd_i, {})
        if question in by_q:
            errors.append(f"row {rowno}: duplicate score for {rater} round {rnd_i} {question}")
            continue
        by_q[question] = score_i
    if errors:
        raise ValueError("; ".join(errors))
    if not scores:
        raise ValueError("no scores")
    return Rq1Scores(scores)


def load_rq1_scores(path: str | Path) -> Rq1Scores:
    return parse_rq1_scores(csv.reader(io.StringIO(Path(path).read_text(encoding="utf-8"))))


def _shared_questions(data: Rq1Scores, round_index: int) -> list[str]:
    sets = [set(data.scores[r].get(round_index, {})) for r in data.raters]
    common = set.intersection(*sets) if sets else set()
    return sorted(common, key=lambda q: (len(q), q))


def tau_table(data: Rq1Scores, title: str = "Kendall's tau between raters per round") -> ScoreTable:
    if len(data.raters) != 2:
        raise ValueError(f"tau needs exactly two raters, got {len(data.raters)}")
    a, b = data.raters
    cells = []
    for rnd in data.rounds:
        qs = _shared_questions(data, rnd)
        cells.append(kendalls_tau(data.vector(a, rnd, qs), data.vector(b, rnd, qs)))
    return aggregate({f"{a} vs {b}": cells}, columns=[f"R{r}" for r in data.rounds], title=title)


@dataclasses.dataclass(frozen=True)
class GradeSummary:
    table: ScoreTable
    combined: Decimal
    percent: Decimal
    grade: str

    def line(self) -> str:
        parts = " and ".join(display(r.avg_exact) for r in self.table.rows)
        return (
            f"Combined average {display(self.combined)} (mean of {parts}), "
            f"{display(self.percent, 1)}% = grade {self.grade}."
        )


def grade_summary(
    rows: Mapping[str, Sequence[float]],
    *,
    columns: Sequence[str] | None = None,
    title: str = "Average score of all questions per round",
) -> GradeSummary:
    """Assessor rows of per-round means; the combined average is the mean of row averages."""
    table = aggregate(rows, columns=columns, title=title, row_header="Assessor", rating_scale=True)
    combined = exact_mean(r.avg_exact for r in table.rows)
    summary = GradeSummary(table, combined, grade_percent(combined), grade_of(combined))
    return dataclasses.replace(
        summary, table=dataclasses.replace(table, notes=table.notes + (summary.line(),))
    )


def assessor_grades(data: Rq1Scores) -> GradeSummary:
    rows = {}
    for rater in data.raters:
        rows[rater] = [
            exact_mean(data.scores[rater][rnd].values()) if rnd in data.scores[rater] else None
            for rnd in data.rounds
        ]
    return grade_summary(rows, columns=[f"R{r}" for r in data.rounds])
