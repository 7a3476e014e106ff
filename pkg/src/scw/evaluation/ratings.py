"""Human rating files.

Ratings CSV: header ``case,experiment,round,rater,measure,score``, one row
per (generated case, rater, measure). Scores are on a 1..5 scale where 1
is best:

ground_truth
    1 totally correct, 2 mostly, 3 moderately, 4 slightly, 5 incorrect
reasonability
    1 totally reasonable, 2 mostly, 3 moderately, 4 slightly, 5 unreasonable
"""

from __future__ import annotations

import csv
import dataclasses
import io
import re
from pathlib import Path
from typing import Iterable

HEADER = ("case", "experiment", "round", "rater", "measure", "score")
MEASURES = ("ground_truth", "reasonability")

SCALE_ANCHORS = {
    "ground_truth": ("Totally correct", "Mostly correct", "Moderately correct", "Slightly correct", "Incorrect"),
    "reasonability": (
        "Totally reasonable",
        "Mostly reasonable",
        "Moderately reasonable",
        "Slightly reasonable",
        "Unreasonable",
    ),
}

_LABEL_RE = re.compile(r"^[A-Za-z0-9_-]+$")


class RatingsError(ValueError):
    def __init__(self, errors: list[str]):
        self.errors = errors
        super().__init__("; ".join(errors[:5]) + (f" (+{len(errors) - 5} more)" if len(errors) > 5 else ""))


@dataclasses.dataclass(frozen=True)
class RatingRecord:
    case_label: str
    experiment: int
    round: int
    rater: str
    measure: str
    score: int

    def __post_init__(self) -> None:
        if not _LABEL_RE.match(self.case_label):
            raise ValueError(f"bad case label {self.case_label!r}")
        if not _LABEL_RE.match(self.rater):
            raise ValueError(f"bad rater label {self.rater!r}")
        if self.experiment not in (1, 2, 3, 4):
            raise ValueError(f"experiment {self.experiment} out of 1..4")
        if self.round < 1:
            raise ValueError(f"round {self.round} must be >= 1")
        if self.measure not in MEASURES:
            raise ValueError(f"measure {self.measure!r} not one of {', '.join(MEASURES)}")
        if self.score not in (1, 2, 3, 4, 5):
            raise ValueError("score out of 1..5")


def _int(value: str, field: str) -> int:
    try:
        return int(value.strip())
    except ValueError:
        raise ValueError(f"{field} {value!r} is not an integer") from None


def parse_ratings(rows: Iterable[list[str]]) -> list[RatingRecord]:
    """Validate CSV rows (header first). Row errors are collected, then raised together."""
    it = iter(rows)
    header = next(it, None)
    if header is None or tuple(h.strip() for h in header) != HEADER:
        raise RatingsError([f"malformed header: expected {','.join(HEADER)}"])

    records: list[RatingRecord] = []
    errors: list[str] = []
    for rowno, row in enumerate(it, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(HEADER):
            errors.append(f"row {rowno}: expected {len(HEADER)} fields, got {len(row)}")
            continue
        case, exp, rnd, rater, measure, score = (c.strip() for c in row)
        try:
            records.append(
                RatingRecord(case, _int(exp, "experiment"), _int(rnd, "round"), rater, measure,
                             _int(score, "score"))
            )
        except ValueError as exc:
            errors.append(f"row {rowno}: {exc}")
    if errors:
        raise RatingsError(errors)
    return records


def ingest_ratings(path: str | Path) -> list[RatingRecord]:
    text = Path(path).read_text(encoding="utf-8")
    return parse_ratings(csv.reader(io.StringIO(text)))
