"""Score tables, grading, and markdown/CSV report rendering.

Averages are computed on exact decimal values of the cells (each float is
taken at its shortest repr) and only rounded for display, half-up to two
decimals. That keeps a mean such as 1.475 displaying as 1.48 regardless
of binary representation.
"""

from __future__ import annotations

import csv
import dataclasses
import io
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Mapping, Optional, Sequence, Union

from scw.evaluation.ratings import RatingRecord

ROUNDING = "half-up, 2 decimals; Avg from unrounded cells"

Number = Union[int, float, Decimal]

# (minimum percent, letter), highest first; anything below the last row is F.
GRADE_TABLE: tuple[tuple[Decimal, str], ...] = (
    (Decimal(90), "A+"),
    (Decimal(80), "A"),
    (Decimal(75), "B+"),
    (Decimal(70), "B"),
    (Decimal(65), "C+"),
    (Decimal(60), "C"),
    (Decimal(55), "D+"),
    (Decimal(50), "D"),
    (Decimal(40), "E"),
)


def exact(value: Number) -> Decimal:
    if isinstance(value, Decimal):
        return value
    if isinstance(value, int):
        return Decimal(value)
    return Decimal(repr(float(value)))


def exact_mean(values: Iterable[Number]) -> Decimal:
    vals = [exact(v) for v in values]
    if not vals:
        raise ValueError("cannot average an empty group")
    return sum(vals, Decimal(0)) / len(vals)


def half_up(value: Number, places: int = 2) -> Decimal:
    return exact(value).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)


def display(value: Optional[Number], places: int = 2) -> str:
    return "-" if value is None else str(half_up(value, places))


def interpret(value: Number) -> int:
    """Nearest-integer reading of a 1..5 scale average (half-up)."""
    return int(half_up(value, 0))


def grade_percent(avg_score: Number) -> Decimal:
    avg = exact(avg_score)
    if not Decimal(1) <= avg <= Decimal(5):
        raise ValueError(f"average score {avg_score} outside 1..5")
    return Decimal(100) - Decimal(25) * (avg - 1)


def grade_of(avg_score: Number, table: Sequence[tuple[Number, str]] = GRADE_TABLE) -> str:
    """Letter grade for a 1..5 average where 1 maps to 100% and 5 to 0%."""
    percent = grade_percent(avg_score)
    for threshold, letter in table:
        if percent >= exact(threshold):
            return letter
    return "F"


@dataclasses.dataclass(frozen=True)
class ScoreRow:
    label: str
    cells: tuple[Optional[float], ...]

    @property
    def avg_exact(self) -> Decimal:
        return exact_mean(c for c in self.cells if c is not None)

    @property
    def avg(self) -> float:
        return float(self.avg_exact)


@dataclasses.dataclass(frozen=True)
class ScoreTable:
    title: str
    columns: tuple[str, ...]
    rows: tuple[ScoreRow, ...]
    row_header: str = ""
    notes: tuple[str, ...] = ()
    footnotes: tuple[str, ...] = ()
    rating_scale: bool = False
    rounding: str = ROUNDING

    def row(self, label: str) -> ScoreRow:
        for r in self.rows:
            if r.label == label:
                return r
        raise KeyError(label)


def _cell(value: Union[Number, Sequence[Number], None]) -> Optional[float]:
    if value is None:
        return None
    if isinstance(value, (int, float, Decimal)):
        return float(value)
    return float(exact_mean(value))


def aggregate(
    groups: Mapping[str, Sequence[Union[Number, Sequence[Number], None]]],
    *,
    columns: Optional[Sequence[str]] = None,
    title: str = "",
    row_header: str = "",
    rating_scale: bool = False,
    notes: Sequence[str] = (),
    footnotes: Sequence[str] = (),
) -> ScoreTable:
    """Build a table from per-row cell values.

    Each cell is either a number or a group of numbers averaged into one
    cell. Rows must contain at least one value.
    """
    rows = []
    width = 0
    for label, cells in groups.items():
        row = ScoreRow(label, tuple(_cell(c) for c in cells))
        if all(c is None for c in row.cells):
            raise ValueError(f"row {label!r} has no values")
        rows.append(row)
        width = max(width, len(row.cells))
    if columns is None:
        columns = [f"Exp-{i}" for i in range(1, width + 1)]
    if any(len(r.cells) != len(columns) for r in rows):
        raise ValueError("every row needs one cell per column")
    return ScoreTable(title, tuple(columns), tuple(rows), row_header, tuple(notes), tuple(footnotes),
                      rating_scale)


def aggregate_ratings(
    records: Iterable[RatingRecord],
    measure: str,
    *,
    title: str = "",
    experiments: Sequence[int] = (1, 2, 3, 4),
    labels: Optional[Mapping[str, str]] = None,
) -> ScoreTable:
    """One row per case label; each cell averages all rounds and raters of one experiment."""
    by_case: dict[str, dict[int, list[int]]] = {}
    for rec in records:
        if rec.measure != measure:
            continue
        by_case.setdefault(rec.case_label, {}).setdefault(rec.experiment, []).append(rec.score)
    if not by_case:
        raise ValueError(f"no {measure} ratings to aggregate")
    labels = labels or {}
    groups = {
        labels.get(case, case): [cells.get(e) for e in experiments] for case, cells in by_case.items()
    }
    return aggregate(
        groups,
        columns=[f"Exp-{e}" for e in experiments],
        title=title or f"Average {measure.replace('_', '-')} scores",
        row_header="Safety case",
        rating_scale=True,
    )


# --- rendering ---------------------------------------------------------------


def _markdown(table: ScoreTable) -> str:
    header = [table.row_header] + list(table.columns) + ["Avg"]
    lines = []
    if table.title:
        lines += [f"### {table.title}", ""]
    lines.append("| " + " | ".join(header) + " |")
    lines.append("|" + "|".join(["---"] + ["---:"] * (len(header) - 1)) + "|")
    for row in table.rows:
        cells = [row.label] + [display(c) for c in row.cells] + [display(row.avg_exact)]
        lines.append("| " + " | ".join(cells) + " |")
    lines.append("")
    lines.append(f"Rounding: {table.rounding}.")
    if table.rating_scale:
        readings = "; ".join(f"{r.label} = {interpret(r.avg_exact)}" for r in table.rows)
        lines.append(f"Nearest-integer reading: {readings}.")
    lines.extend(table.notes)
    for i, note in enumerate(table.footnotes, start=1):
        lines.append(f"[^{i}]: {note}")
    return "\n".join(lines) + "\n"


def _csv(tables: Sequence[ScoreTable]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["table", "row", "column", "value", "display"])
    for t in tables:
        for row in t.rows:
            for col, cell in zip(t.columns, row.cells):
                writer.writerow([t.title, row.label, col, "" if cell is None else repr(cell), display(cell)])
            writer.writerow([t.title, row.label, "Avg", str(row.avg_exact), display(row.avg_exact)])
    return buf.getvalue()


def emit_report(tables: Sequence[ScoreTable], fmt: str = "markdown") -> str:
    if not tables:
        return ""
    if fmt == "markdown":
        return "\n".join(_markdown(t) for t in tables)
    if fmt == "csv":
        return _csv(tables)
    raise ValueError(f"unknown report format {fmt!r}")
