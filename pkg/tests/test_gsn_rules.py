from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsn_cases import random_case, safety_cases
from scw import corpus
from scw.gsn import (
    Decorator,
    ElementKind,
    GsnElement,
    Relationship,
    RelationshipKind,
    SafetyCase,
    allowed_connection,
    root_of,
    validate,
)

SB, IC = RelationshipKind.SUPPORTED_BY, RelationshipKind.IN_CONTEXT_OF

# Transcribed connection matrix, written out as strings so it does not share
# any structure with the implementation.
MATRIX_TEXT = """
Goal supportedBy Goal
Goal supportedBy Strategy
Goal supportedBy Solution
Strategy supportedBy Goal
Goal inContextOf Context
Goal inContextOf Assumption
Goal inContextOf Justification
Strategy inContextOf Context
Strategy inContextOf Assumption
Strategy inContextOf Justification
"""
MATRIX = {tuple(line.split()) for line in MATRIX_TEXT.strip().splitlines()}


def mk(elements: dict[str, str], edges: str = "", **decorated) -> SafetyCase:
    """Build a case; ``edges`` is whitespace-separated ``A>B`` (supportedBy) or ``A~B`` (inContextOf)."""
    els = []
    for eid, text in elements.items():
        decos = {Decorator.UNDEVELOPED} if eid in decorated.get("undeveloped", ()) else set()
        els.append(GsnElement.of(eid, text, decos))
    rels = []
    for token in edges.split():
        if ">" in token:
            a, b = token.split(">")
            rels.append(Relationship(a, b, SB))
        else:
            a, b = token.split("~")
            rels.append(Relationship(a, b, IC))
    return SafetyCase("t", tuple(els), tuple(rels))


def codes(case: SafetyCase, **kw) -> list[str]:
    return [d.code for d in validate(case, **kw)]


def test_connection_matrix_oracle():
    allowed = 0
    for src, dst, rel in itertools.product(ElementKind, ElementKind, RelationshipKind):
        expected = (src.value, rel.value, dst.value) in MATRIX
        assert allowed_connection(src, dst, rel) is expected, (src, dst, rel)
        allowed += expected
    assert allowed == 10
    assert len(list(itertools.product(ElementKind, ElementKind, RelationshipKind))) == 72


def test_map_system_is_clean():
    assert validate(corpus.load("map-system").case) == []


@pytest.mark.parametrize("label", corpus.LABELS)
def test_corpus_has_no_errors(label):
    assert not [d for d in validate(corpus.load(label).case) if d.is_error]


def test_solution_supporting_goal_is_e3_and_e6():
    case = mk({"G1": "System is safe", "Sn1": "Test report"}, "Sn1>G1")
    diags = validate(case)
    e3 = [d for d in diags if d.code == "E3"]
    assert e3 and e3[0].subject == "Sn1 supportedBy G1"
    assert "E6" in codes(case)


def test_supported_by_cycle_is_e4():
    case = mk({"G1": "System is safe", "G2": "Hazards are mitigated"}, "G1>G2 G2>G1")
    assert "E4" in codes(case)


def test_self_contained_cycle_is_reported_once_per_component():
    case = mk(
        {"G1": "A is safe", "G2": "B is safe", "G3": "C is safe", "S1": "Argument over parts"},
        "G1>S1 S1>G2 G2>G3 G3>S1",
    )
    assert codes(case).count("E4") == 1


def test_unknown_endpoint_is_e1():
    case = mk({"G1": "System is safe"}, "G1>Sn4")
    assert "E1" in codes(case)


def test_duplicate_id_is_e2():
    case = SafetyCase("t", (GsnElement.of("G1", "A is safe"), GsnElement.of("G1", "B is safe")))
    assert "E2" in codes(case)


def test_root_count_rules():
    two = mk({"G1": "A is safe", "G2": "B is safe"}, undeveloped=("G1", "G2"))
    assert codes(two) == ["E5"]
    assert codes(two, allow_multiple_roots=True) == []
    no_goal = mk({"C1": "Some context"})
    assert "E5" in codes(no_goal)


def test_empty_case_has_no_root_error():
    assert validate(SafetyCase()) == []


def test_context_with_outgoing_edge_is_e6():
    case = mk({"G1": "A is safe", "C1": "Ctx", "A1": "Hazards are known"}, "G1~C1 C1~A1")
    assert "E6" in codes(case)


def test_w1_leaf_goal():
    assert codes(mk({"G1": "System is safe"})) == ["W1"]
    assert codes(mk({"G1": "System is safe"}, undeveloped=("G1",))) == []


def test_w2_strategy_without_goals():
    case = mk({"G1": "System is safe", "S1": "Argument over hazards"}, "G1>S1")
    assert codes(case) == ["W2"]
    case = mk({"G1": "System is safe", "S1": "Argument over hazards"}, "G1>S1", undeveloped=("S1",))
    assert codes(case) == []


def test_decorators_do_not_change_connection_legality():
    case = mk({"G1": "System is safe", "Sn1": "Report"}, "Sn1>G1", undeveloped=("Sn1",))
    assert "E3" in codes(case)


def test_shared_solution_is_allowed():
    case = mk(
        {"G1": "A is safe", "G2": "B is safe", "G3": "C is safe", "Sn1": "Report"},
        "G1>G2 G1>G3 G2>Sn1 G3>Sn1",
    )
    assert validate(case) == []


def test_diagnostics_are_sorted():
    case = mk({"G1": "A is safe", "Sn1": "R", "C1": "c", "G2": "Safety"}, "Sn1>G1 C1~G1")
    out = validate(case)
    keys = [(d.code[0], int(d.code[1:])) for d in out]
    assert keys == sorted(keys)


def test_root_of_examples():
    assert root_of(corpus.load("map-system").case) == "G1"
    assert root_of(SafetyCase()) is None
    assert root_of(mk({"G1": "A is safe", "G2": "B is safe"})) is None


# --- properties ---------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(safety_cases())
def test_generated_cases_have_no_errors(case):
    assert not [d for d in validate(case) if d.is_error]


@settings(max_examples=60, deadline=None)
@given(safety_cases())
def test_validate_is_pure(case):
    assert validate(case) == validate(case)


@settings(max_examples=60, deadline=None)
@given(safety_cases(max_size=20))
def test_code_severity_mapping(case):
    for d in validate(case):
        assert d.is_error == d.code.startswith("E")


@st.composite
def messy_cases(draw):
    """Arbitrary kinds and edges, including illegal ones."""
    ids = draw(st.lists(st.sampled_from(["G1", "G2", "S1", "Sn1", "C1", "A1", "J1"]), min_size=1,
                        max_size=7, unique=True))
    els = tuple(GsnElement.of(i, "Some claim is made") for i in ids)
    pairs = draw(st.lists(st.tuples(st.sampled_from(ids), st.sampled_from(ids), st.sampled_from([SB, IC])),
                          max_size=12))
    rels = tuple(Relationship(a, b, k) for a, b, k in pairs if a != b)
    return SafetyCase("m", els, rels)


@settings(max_examples=150, deadline=None)
@given(messy_cases(), st.data())
def test_removing_edges_never_adds_connection_errors(case, data):
    def conn(c):
        return {(d.code, d.subject) for d in validate(c) if d.code in ("E3", "E6")}

    if not case.relationships:
        return
    drop = data.draw(st.integers(0, len(case.relationships) - 1))
    smaller = SafetyCase(case.title, case.elements, case.relationships[:drop] + case.relationships[drop + 1:])
    assert conn(smaller) <= conn(case)


@settings(max_examples=50, deadline=None)
@given(st.text(min_size=1, max_size=40).map(str.strip).filter(lambda t: t and "\n" not in t and "\r" not in t),
       st.booleans())
def test_single_goal_case(text, undeveloped):
    el = GsnElement.of("G1", text, {Decorator.UNDEVELOPED} if undeveloped else set())
    found = [d.code for d in validate(SafetyCase("", (el,)))]
    assert not [c for c in found if c.startswith("E")]
    assert ("W1" in found) == (not undeveloped)


def test_random_tree_oracle_counts():
    rng = random.Random(7)
    case = random_case(rng, 30)
    assert len(case.elements) == 30 and len(case.relationships) == 29
