from __future__ import annotations

import pytest

from scw.gsn import Decorator, Diagnostic, ElementKind, GsnElement, Relationship, RelationshipKind, SafetyCase
from scw.gsn import kind_for_id
from scw.gsn.model import Severity, id_sort_key


@pytest.mark.parametrize(
    "element_id, kind",
    [
        ("G1", ElementKind.GOAL),
        ("S2", ElementKind.STRATEGY),
        ("Sn1", ElementKind.SOLUTION),
        ("Sn12", ElementKind.SOLUTION),
        ("C3", ElementKind.CONTEXT),
        ("A1", ElementKind.ASSUMPTION),
        ("J4", ElementKind.JUSTIFICATION),
    ],
)
def test_kind_from_prefix(element_id, kind):
    assert kind_for_id(element_id) is kind


@pytest.mark.parametrize("bad", ["G0", "g1", "X1", "G", "Sn", "G01", "G1a", " G1", "SN1"])
def test_bad_ids_have_no_kind(bad):
    assert kind_for_id(bad) is None


def test_element_factory_derives_kind():
    el = GsnElement.of("Sn1", "Execution of the safety rules")
    assert el.kind is ElementKind.SOLUTION
    assert not el.undeveloped


def test_element_rejects_kind_mismatch():
    with pytest.raises(ValueError):
        GsnElement("G1", ElementKind.STRATEGY, "text")


@pytest.mark.parametrize("text", ["", "   ", "two\nlines", " padded", "padded "])
def test_element_rejects_bad_text(text):
    with pytest.raises(ValueError):
        GsnElement.of("G1", text)


def test_undeveloped_property():
    assert GsnElement.of("G1", "Claim", {Decorator.UNDEVELOPED}).undeveloped


def test_relationship_rejects_self_loop():
    with pytest.raises(ValueError):
        Relationship("G1", "G1", RelationshipKind.SUPPORTED_BY)


def test_relationship_str():
    assert str(Relationship("G1", "C1", RelationshipKind.IN_CONTEXT_OF)) == "G1 inContextOf C1"


def test_children_filters_by_kind():
    case = SafetyCase(
        "t",
        (GsnElement.of("G1", "a b"), GsnElement.of("G2", "c d"), GsnElement.of("C1", "e")),
        (
            Relationship("G1", "G2", RelationshipKind.SUPPORTED_BY),
            Relationship("G1", "C1", RelationshipKind.IN_CONTEXT_OF),
        ),
    )
    assert case.children("G1") == ["G2", "C1"]
    assert case.children("G1", RelationshipKind.SUPPORTED_BY) == ["G2"]
    assert case.element("C1").text == "e"
    assert case.element("C9") is None


def test_natural_id_order():
    ids = ["G10", "Sn2", "G2", "S1", "Sn10", "G1"]
    assert sorted(ids, key=id_sort_key)[:3] == ["G1", "G2", "G10"]


def test_diagnostic_code_severity_coupling():
    assert Diagnostic.error("E3", "x", "m").severity is Severity.ERROR
    assert Diagnostic.warning("W1", "x", "m").severity is Severity.WARNING
    with pytest.raises(ValueError):
        Diagnostic(Severity.WARNING, "E1", "x", "m")
    with pytest.raises(ValueError):
        Diagnostic(Severity.ERROR, "W2", "x", "m")


def test_diagnostic_format():
    d = Diagnostic.error("E3", "Sn1 supportedBy G1", "bad", line=4)
    assert d.format("case.gsn.txt").startswith("case.gsn.txt:4: E3 error")
