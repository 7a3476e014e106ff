"""Reproduce the published score tables from their per-experiment cells.

Only the cell values are taken as given; every average, rounding and grade
below is recomputed by this package.
"""

from __future__ import annotations

from scw.evaluation.rq1 import GradeSummary, grade_summary
from scw.evaluation.tables import ScoreTable, aggregate

ROUNDS = ("R1", "R2", "R3", "R4")

TAU_CELLS = (0.66, 0.86, 0.63, 0.77)
ASSESSOR_CELLS = {
    "1": (1.37, 1.63, 1.53, 1.37),
    "2": (1.16, 1.58, 1.42, 1.47),
}
GROUND_TRUTH_CELLS = {"ML": (3.5, 2.8, 3.25, 2.5), "X-ray": (3.5, 3, 3.5, 3.5)}
REASONABILITY_CELLS = {"ML": (2.75, 2.75, 2.5, 2.75), "X-ray": (2.5, 2, 2.25, 2.5)}
COSINE_CELLS = {"ML": (0.9, 0.88, 0.897, 0.895), "X-ray": (0.867, 0.902, 0.817, 0.895)}

XRAY_REASONABILITY_TEXT_VALUE = "2.27"
XRAY_REASONABILITY_FOOTNOTE = (
    f"The published discussion gives {XRAY_REASONABILITY_TEXT_VALUE} as the X-ray reasonability "
    "average, but the X-ray cells above average to 2.3125 (2.31). This table uses the cell arithmetic."
)


def tau_table() -> ScoreTable:
    return aggregate(
        {"tau": TAU_CELLS}, columns=ROUNDS, title="Kendall's tau between the two raters per round"
    )


def rq1_grades() -> GradeSummary:
    return grade_summary(ASSESSOR_CELLS, columns=ROUNDS, title="Average score of all questions per round")


def ground_truth_table() -> ScoreTable:
    return aggregate(
        GROUND_TRUTH_CELLS,
        title="Average ground-truth similarity scores (4 rounds per experiment)",
        row_header="Safety case",
        rating_scale=True,
    )


def reasonability_table() -> ScoreTable:
    return aggregate(
        REASONABILITY_CELLS,
        title="Average reasonability scores (4 rounds per experiment)",
        row_header="Safety case",
        rating_scale=True,
        footnotes=[XRAY_REASONABILITY_FOOTNOTE],
    )


def cosine_table() -> ScoreTable:
    return aggregate(
        COSINE_CELLS,
        title="Average cosine similarity scores (4 rounds per experiment)",
        row_header="Safety case",
        notes=["Vectorizer: pretrained encoder (published values, not recomputed here)."],
    )


def all_tables() -> list[ScoreTable]:
    return [
        tau_table(),
        rq1_grades().table,
        ground_truth_table(),
        reasonability_table(),
        cosine_table(),
    ]
