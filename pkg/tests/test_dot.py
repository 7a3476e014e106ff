from __future__ import annotations

import re

import pydot
import pytest
from hypothesis import given, settings

from gsn_cases import safety_cases
from scw import corpus
from scw.dot import RenderError, graph_name, node_label, to_dot
from scw.gsn import Decorator, GsnElement, Relationship, RelationshipKind, SafetyCase

NODE_RE = re.compile(r'^  "[^"]+" \[shape=', re.M)
EDGE_RE = re.compile(r'^  "[^"]+" -> "[^"]+"', re.M)


def node_line(dot: str, eid: str) -> str:
    return next(line for line in dot.splitlines() if line.startswith(f'  "{eid}" ['))


def single(eid: str, text: str = "Something holds true", decorators=()) -> SafetyCase:
    el = GsnElement.of(eid, text, decorators)
    return SafetyCase("t", (el,))


def test_goal_is_rectangle():
    dot = to_dot(single("G1", "System is safe", {Decorator.UNDEVELOPED}))
    assert "shape=box" in node_line(dot, "G1")
    assert "rounded" not in node_line(dot, "G1")
    assert len(NODE_RE.findall(dot)) == 1


@pytest.mark.parametrize(
    "eid, shape",
    [("S1", "shape=parallelogram"), ("Sn1", "shape=circle"), ("C1", 'shape=box, style="rounded"'),
     ("A1", "shape=ellipse"), ("J1", "shape=ellipse")],
)
def test_shapes(eid, shape):
    assert shape in node_line(to_dot(single(eid), force=True), eid)


def test_assumption_marker():
    dot = to_dot(single("A1", "All hazards have been identified"), force=True)
    line = node_line(dot, "A1")
    assert 'label="A1\\nAll hazards have been\\nidentified\\nA"' in line


def test_justification_marker():
    assert node_label(GsnElement.of("J1", "Because")).endswith("\\nJ")


def test_decorator_rendering():
    el = GsnElement.of("G1", "Claim holds", {Decorator.UNDEVELOPED, Decorator.UNINSTANTIATED, Decorator.OFF_DIAGRAM})
    dot = to_dot(SafetyCase("", (el,)))
    line = node_line(dot, "G1")
    assert "◇" in line and "▽" in line and "peripheries=2" in line


def test_arrowheads():
    dot = to_dot(corpus.load("map-system").case)
    assert '"G1" -> "G2" [arrowhead=normal];' in dot
    assert '"G1" -> "C1" [arrowhead=empty];' in dot


def test_wrap_width():
    el = GsnElement.of("G1", "one two three four five six seven eight nine ten")
    for width in (10, 30):
        parts = node_label(el, width).split("\\n")[1:]
        assert all(len(p) <= width for p in parts)


def test_empty_case():
    dot = to_dot(SafetyCase())
    assert dot.startswith("digraph safety_case {")
    assert not NODE_RE.findall(dot) and not EDGE_RE.findall(dot)


def test_invalid_case_needs_force():
    case = SafetyCase(
        "bad", (GsnElement.of("G1", "A is safe"), GsnElement.of("Sn1", "Report")),
        (Relationship("Sn1", "G1", RelationshipKind.SUPPORTED_BY),),
    )
    with pytest.raises(RenderError) as info:
        to_dot(case)
    assert "E3" in str(info.value)
    assert '"Sn1" -> "G1"' in to_dot(case, force=True)


def test_graph_name_sanitized():
    assert graph_name("Map system") == "Map_system"
    assert graph_name("1st case!") == "_1st_case"
    assert graph_name("") == "safety_case"


def test_quotes_and_backslashes_escape():
    el = GsnElement.of("G1", 'He said "safe" \\ ok')
    graphs = pydot.graph_from_dot_data(to_dot(SafetyCase("q", (el,))))
    assert graphs and len(graphs[0].get_nodes()) >= 1


def test_map_system_counts_match_topology():
    entry = corpus.load("map-system")
    dot = to_dot(entry.case)
    # Oracle: count the element and relationship lines of the bundled text.
    body = [l for l in entry.text.splitlines()[1:] if l.strip()]
    n_elements = sum(1 for l in body if re.match(r"^\w+: ", l))
    n_edges = sum(len(l.split(" ", 2)[2].split(", ")) for l in body if re.match(r"^\w+ (supportedBy|inContextOf) ", l))
    assert len(NODE_RE.findall(dot)) == n_elements == 9
    assert len(EDGE_RE.findall(dot)) == n_edges == 8


@settings(max_examples=40, deadline=None)
@given(safety_cases(max_size=30))
def test_dot_invariants(case):
    dot = to_dot(case, force=True)
    assert dot == to_dot(case, force=True)
    assert len(NODE_RE.findall(dot)) == len(case.elements)
    assert len(EDGE_RE.findall(dot)) == len(case.relationships)
    for el in case.elements:
        assert len(re.findall(rf'^  "{el.id}" \[', dot, re.M)) == 1


@settings(max_examples=15, deadline=None)
@given(safety_cases(max_size=15))
def test_dot_parses(case):
    graphs = pydot.graph_from_dot_data(to_dot(case, force=True))
    assert graphs is not None and len(graphs) == 1
    g = graphs[0]
    names = {n.get_name().strip('"') for n in g.get_nodes()} - {"node"}
    assert names == {e.id for e in case.elements}
    assert len(g.get_edges()) == len(case.relationships)
