"""Structured-prose (``.gsn.txt``) reading and writing.

Canonical format::

    case "Map system"
    G1: Map system is acceptably safe to operate
    S1: Argument over each identified hazard [undeveloped]

    G1 supportedBy S1
    G1 inContextOf C1, C2

Blank lines and ``#`` comment lines are ignored by the strict parser.
Relationships may reference elements declared later in the file.

Parser diagnostic codes:

    P1  malformed line
    P2  duplicate element id
    P3  relationship endpoint never declared
    P4  unknown decorator tag
    P5  empty document

``parse_lenient`` is a separate, forgiving extractor for LLM output. Its
rules are versioned by ``LENIENT_RULES_VERSION``; every finding it makes is
a warning and it always returns a case.
"""

from __future__ import annotations

import dataclasses
import re
from pathlib import Path
from typing import Optional

from scw.gsn.model import (
    ID_PATTERN,
    Decorator,
    Diagnostic,
    GsnElement,
    Relationship,
    RelationshipKind,
    SafetyCase,
    Severity,
)

LENIENT_RULES_VERSION = "1"

_DECORATOR_ORDER = (Decorator.UNDEVELOPED, Decorator.UNINSTANTIATED, Decorator.OFF_DIAGRAM)
_TAGS = {d.value: d for d in Decorator}

_HEADER_RE = re.compile(r'^case\s+"((?:[^"\\]|\\.)*)"$')
_STRICT_ELEMENT_RE = re.compile(rf"^({ID_PATTERN}):\s*(\S.*)$")
_STRICT_REL_RE = re.compile(
    rf"^({ID_PATTERN})\s+(supportedBy|inContextOf)\s+({ID_PATTERN}(?:\s*,\s*{ID_PATTERN})*)$"
)
_TRAILING_TAG_RE = re.compile(r"\s*\[([a-z][a-z-]*)\]$")


@dataclasses.dataclass(frozen=True)
class ParseOutcome:
    case: Optional[SafetyCase]
    diagnostics: tuple[Diagnostic, ...] = ()

    @property
    def ok(self) -> bool:
        return self.case is not None and not any(d.is_error for d in self.diagnostics)


def _p(code: str, line: Optional[int], message: str, subject: str = "", *, strict: bool) -> Diagnostic:
    severity = Severity.ERROR if strict else Severity.WARNING
    return Diagnostic(severity, code, subject, message, line)


def normalize_newlines(text: str) -> str:
    if text.startswith("\ufeff"):
        text = text[1:]
    return text.replace("\r\n", "\n").replace("\r", "\n")


def read_prose(path: str | Path) -> str:
    """Read a ``.gsn.txt`` file as UTF-8 with line endings normalized to LF."""
    return normalize_newlines(Path(path).read_text(encoding="utf-8"))


def _unescape_title(raw: str) -> str:
    return re.sub(r"\\(.)", r"\1", raw)


def _escape_title(title: str) -> str:
    return title.replace("\\", "\\\\").replace('"', '\\"')


def _split_tags(rest: str) -> tuple[str, list[str]]:
    tags: list[str] = []
    while True:
        m = _TRAILING_TAG_RE.search(rest)
        if not m:
            break
        tags.insert(0, m.group(1))
        rest = rest[: m.start()]
    return rest.strip(), tags


def parse_strict(text: str) -> ParseOutcome:
    """Parse a canonical structured-prose document.

    Never raises; problems are reported as P-code errors, in which case no
    case is produced.
    """
    diags: list[Diagnostic] = []
    title = ""
    elements: list[GsnElement] = []
    declared: set[str] = set()
    pending: list[tuple[int, Relationship]] = []
    seen_content = False

    for lineno, raw in enumerate(normalize_newlines(text).split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        first = not seen_content
        seen_content = True

        m = _HEADER_RE.match(line)
        if m:
            if first:
                title = _unescape_title(m.group(1))
            else:
                diags.append(_p("P1", lineno, "case header must be the first line", strict=True))
            continue

        m = _STRICT_REL_RE.match(line)
        if m:
            source, verb = m.group(1), m.group(2)
            kind = RelationshipKind(verb)
            for target in re.split(r"\s*,\s*", m.group(3)):
                if target == source:
                    diags.append(
                        _p("P1", lineno, f"{source} cannot relate to itself", source, strict=True)
                    )
                    continue
                pending.append((lineno, Relationship(source, target, kind)))
            continue

        m = _STRICT_ELEMENT_RE.match(line)
        if m:
            element_id = m.group(1)
            body, tags = _split_tags(m.group(2))
            unknown = [t for t in tags if t not in _TAGS]
            for t in unknown:
                diags.append(
                    _p("P4", lineno, f"unknown decorator tag [{t}]", element_id, strict=True)
                )
            if not body:
                diags.append(_p("P1", lineno, "element has no text", element_id, strict=True))
                continue
            if element_id in declared:
                diags.append(
                    _p("P2", lineno, f"duplicate element id {element_id}", element_id, strict=True)
                )
                continue
            declared.add(element_id)
            decorators = frozenset(_TAGS[t] for t in tags if t in _TAGS)
            elements.append(GsnElement.of(element_id, body, decorators))
            continue

        diags.append(_p("P1", lineno, f"malformed line: {line[:60]!r}", strict=True))

    if not seen_content:
        diags.append(_p("P5", None, "empty document", strict=True))

    relationships: list[Relationship] = []
    for lineno, rel in pending:
        missing = [e for e in (rel.source, rel.target) if e not in declared]
        if missing:
            diags.append(
                _p("P3", lineno, f"undeclared element {', '.join(missing)}", str(rel), strict=True)
            )
        else:
            relationships.append(rel)

    if diags:
        return ParseOutcome(None, tuple(diags))
    return ParseOutcome(SafetyCase(title, tuple(elements), tuple(relationships)), ())


def serialize(case: SafetyCase) -> str:
    """Render a case in canonical structured prose (LF endings, trailing LF)."""
    lines = [f'case "{_escape_title(case.title)}"']
    for el in case.elements:
        if "\n" in el.text or "\r" in el.text:
            raise ValueError(f"element {el.id}: text contains a line break")
        if _TRAILING_TAG_RE.search(el.text):
            raise ValueError(f"element {el.id}: text ends with a bracketed tag")
        tags = "".join(f" [{d.value}]" for d in _DECORATOR_ORDER if d in el.decorators)
        lines.append(f"{el.id}: {el.text}{tags}")

    if case.relationships:
        lines.append("")
        run: list[Relationship] = []
        for rel in case.relationships:
            if run and (run[0].source, run[0].kind) != (rel.source, rel.kind):
                lines.append(_rel_line(run))
                run = []
            run.append(rel)
        lines.append(_rel_line(run))
    return "\n".join(lines) + "\n"


def _rel_line(run: list[Relationship]) -> str:
    return f"{run[0].source} {run[0].kind.value} {', '.join(r.target for r in run)}"


def write_prose(case: SafetyCase, path: str | Path) -> None:
    Path(path).write_bytes(serialize(case).encode("utf-8"))


# --- lenient extraction -----------------------------------------------------

_KIND_WORDS = (
    r"(?i:(?:top[- ]level\s+)?(?:goal|sub[- ]?goal|claim|strategy|solution|evidence"
    r"|context|assumption|justification))"
)
_LENIENT_ELEMENT_RE = re.compile(rf"^(?:{_KIND_WORDS}\s*)?\(?(Sn|G|S|C|A|J)(\d+)\)?\s*[:.\-]\s*(.+)$")
_CONNECTOR = r"((?i:supported\s*by|in\s*context\s*of))"
_LENIENT_REL_RE = re.compile(rf"^({ID_PATTERN})\s+{_CONNECTOR}\b\s*[:\-]?\s*(.*)$")
_LENIENT_CONNECTOR_RE = re.compile(rf"^{_CONNECTOR}\b\s*[:\-]?\s*(.*)$")
_ID_LIST_RE = re.compile(rf"^{ID_PATTERN}(?:\s*(?:,|;|and|&)\s*{ID_PATTERN})*\.?$")
_ID_FIND_RE = re.compile(rf"\b({ID_PATTERN})\b")
_BULLET_RE = re.compile(r"^(?:[-*+•●◦▪]|\d+[.)])\s+")


def _connector_kind(word: str) -> RelationshipKind:
    return (
        RelationshipKind.SUPPORTED_BY
        if word.lower().startswith("supported")
        else RelationshipKind.IN_CONTEXT_OF
    )


def _clean(raw: str) -> tuple[str, bool, int]:
    indent = len(raw) - len(raw.lstrip())
    s = raw.strip()
    s = re.sub(r"^(?:#{1,6}\s+|>\s*)", "", s)
    m = _BULLET_RE.match(s)
    bullet = bool(m)
    if m:
        s = s[m.end():]
    s = s.replace("**", "").replace("__", "").replace("`", "").strip()
    return s, bullet, indent


def parse_lenient(text: str) -> ParseOutcome:
    """Extract whatever GSN structure can be found in free-form text.

    Rules (version 1), applied per line after stripping markdown bullets,
    headings and emphasis:

    1. ``case "<title>"`` sets the title.
    2. ``<ID> supported by|in context of <IDs>`` adds edges from ``<ID>``.
    3. A line starting with a connector phrase adds edges from the most
       recent top-level element to every id on the line; with no ids it
       opens a block whose following bullet or indented lines (bare id
       lists or element declarations) become children. Elements declared
       inside a block never become the anchor for later connectors.
    4. ``<ID> [:.-] <text>``, optionally prefixed by a kind word such as
       ``Goal``, declares an element. Trailing decorator tags are read as in
       the strict format; unknown ``[tag]`` suffixes stay in the text as
       ``(tag)``. A declaration at column 0 that is not a bullet closes any
       open block.
    5. Anything else is a P1 warning.

    A repeated id keeps its first declaration, and the repeat is a P2 only
    when its text differs. Edges whose endpoints are never declared are
    dropped (P3). Repeated edges are collapsed.
    """
    diags: list[Diagnostic] = []
    title = ""
    elements: list[GsnElement] = []
    declared: set[str] = set()
    texts: dict[str, str] = {}
    edges: list[tuple[int, Relationship]] = []
    edge_keys: set[tuple[str, str, RelationshipKind]] = set()
    current: Optional[str] = None
    block: Optional[tuple[str, RelationshipKind, int]] = None

    def add_edge(lineno: int, source: str, target: str, kind: RelationshipKind) -> None:
        if source == target:
            diags.append(_p("P1", lineno, f"{source} cannot relate to itself", source, strict=False))
            return
        key = (source, target, kind)
        if key not in edge_keys:
            edge_keys.add(key)
            edges.append((lineno, Relationship(source, target, kind)))

    for lineno, raw in enumerate(normalize_newlines(text).split("\n"), start=1):
        if not raw.strip():
            continue
        line, bullet, indent = _clean(raw)
        if not line:
            continue

        m = _HEADER_RE.match(line)
        if m:
            title = _unescape_title(m.group(1))
            continue

        m = _LENIENT_REL_RE.match(line)
        if m and _ID_FIND_RE.match(m.group(3)):
            kind = _connector_kind(m.group(2))
            for target in _ID_FIND_RE.findall(m.group(3)):
                add_edge(lineno, m.group(1), target, kind)
            continue

        m = _LENIENT_CONNECTOR_RE.match(line)
        if m:
            kind = _connector_kind(m.group(1))
            if current is None:
                diags.append(_p("P1", lineno, "connector with no preceding element", strict=False))
                continue
            targets = _ID_FIND_RE.findall(m.group(2))
            if targets:
                for target in targets:
                    add_edge(lineno, current, target, kind)
                block = None
            else:
                block = (current, kind, indent)
            continue

        in_block = block is not None and (bullet or indent > block[2])

        m = _LENIENT_ELEMENT_RE.match(line)
        if m:
            number = int(m.group(2))
            element_id = f"{m.group(1)}{number}"
            body, tags = _split_tags(m.group(3).strip())
            decorators = frozenset(_TAGS[t] for t in tags if t in _TAGS)
            body = " ".join([body] + [f"({t})" for t in tags if t not in _TAGS]).strip()
            if number == 0 or not body:
                diags.append(_p("P1", lineno, f"unusable element line: {line[:60]!r}", strict=False))
                continue
            nested = block is not None and in_block
            if nested:
                add_edge(lineno, block[0], element_id, block[1])
            else:
                block = None
            if element_id not in declared:
                declared.add(element_id)
                elements.append(GsnElement.of(element_id, body, decorators))
            elif texts[element_id] != body:
                diags.append(
                    _p("P2", lineno, f"duplicate element id {element_id}", element_id, strict=False)
                )
            texts.setdefault(element_id, body)
            if not nested:
                current = element_id
            continue

        if block is not None and in_block and _ID_LIST_RE.match(line):
            for target in _ID_FIND_RE.findall(line):
                add_edge(lineno, block[0], target, block[1])
            continue

        diags.append(_p("P1", lineno, f"unrecognized line: {line[:60]!r}", strict=False))

    relationships: list[Relationship] = []
    for lineno, rel in edges:
        missing = [e for e in (rel.source, rel.target) if e not in declared]
        if missing:
            diags.append(
                _p("P3", lineno, f"dropped edge to undeclared {', '.join(missing)}", str(rel), strict=False)
            )
        else:
            relationships.append(rel)

    return ParseOutcome(SafetyCase(title, tuple(elements), tuple(relationships)), tuple(diags))
