from __future__ import annotations

import pytest

from scw.evaluation.rq1 import assessor_grades, load_rq1_scores, parse_rq1_scores, tau_table
from scw.evaluation.tables import display


def score_rows(a, b):
    out = [["rater", "round", "question", "score"]]
    for rater, rounds in (("r1", a), ("r2", b)):
        for rnd, scores in enumerate(rounds, start=1):
            for q, s in enumerate(scores, start=1):
                out.append([rater, str(rnd), f"Q{q}", str(s)])
    return out


def test_tau_and_grades():
    data = parse_rq1_scores(score_rows([[1, 2, 3], [1, 1, 2]], [[1, 3, 2], [1, 1, 2]]))
    table = tau_table(data)
    assert table.columns == ("R1", "R2")
    assert table.rows[0].cells[0] == pytest.approx(1 / 3)
    assert table.rows[0].cells[1] == 1.0
    summary = assessor_grades(data)
    assert display(summary.table.row("r1").avg_exact) == "1.67"
    assert summary.grade == "A"


def test_question_order_is_natural():
    rows = [["rater", "round", "question", "score"]]
    for rater, scores in (("a", [1, 2, 3, 4, 5, 1, 2, 3, 4, 5, 1]), ("b", [1, 2, 3, 4, 5, 1, 2, 3, 4, 5, 5])):
        for q, s in enumerate(scores, start=1):
            rows.append([rater, "1", f"Q{q}", str(s)])
    data = parse_rq1_scores(rows)
    assert data.vector("a", 1, ["Q2", "Q10"]) == [2, 5]
    assert tau_table(data).rows[0].cells[0] < 1.0


def test_needs_two_raters():
    rows = [["rater", "round", "question", "score"], ["a", "1", "Q1", "1"], ["a", "1", "Q2", "2"]]
    with pytest.raises(ValueError, match="two raters"):
        tau_table(parse_rq1_scores(rows))


@pytest.mark.parametrize(
    "bad",
    [[["rater", "round"]], [["rater", "round", "question", "score"], ["a", "1", "Q1", "9"]],
     [["rater", "round", "question", "score"], ["a", "1", "Q1", "1"], ["a", "1", "Q1", "2"]],
     [["rater", "round", "question", "score"]]],
)
def test_bad_inputs(bad):
    with pytest.raises(ValueError):
        parse_rq1_scores(bad)


def test_load_from_file(tmp_path):
    path = tmp_path / "rq1.csv"
    path.write_text("\n".join(",".join(r) for r in score_rows([[1, 2]], [[1, 2]])) + "\n")
    assert load_rq1_scores(path).raters == ["r1", "r2"]
