"""Render safety cases as Graphviz DOT using GSN shapes.

Shape vocabulary: goals are rectangles, strategies parallelograms,
solutions circles, contexts rounded rectangles, assumptions and
justifications ellipses with a trailing ``A``/``J`` marker line.
``supportedBy`` edges get a filled arrowhead and ``inContextOf`` edges a
hollow one. Decorators are drawn with label glyphs (undeveloped ``◇``,
uninstantiated ``▽``) or a doubled border (off-diagram), so the output
stays plain DOT.
"""

from __future__ import annotations

import re
import textwrap
from typing import Sequence

from scw.gsn.model import Decorator, Diagnostic, ElementKind, GsnElement, RelationshipKind, SafetyCase
from scw.gsn.rules import has_errors, validate

DEFAULT_WRAP = 30

_NODE_ATTRS: dict[ElementKind, str] = {
    ElementKind.GOAL: "shape=box",
    ElementKind.STRATEGY: "shape=parallelogram",
    ElementKind.SOLUTION: "shape=circle",
    ElementKind.CONTEXT: 'shape=box, style="rounded"',
    ElementKind.ASSUMPTION: "shape=ellipse",
    ElementKind.JUSTIFICATION: "shape=ellipse",
}

_MARKERS = {ElementKind.ASSUMPTION: "A", ElementKind.JUSTIFICATION: "J"}

_EDGE_ATTRS = {
    RelationshipKind.SUPPORTED_BY: "arrowhead=normal",
    RelationshipKind.IN_CONTEXT_OF: "arrowhead=empty",
}


class RenderError(ValueError):
    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics = list(diagnostics)
        codes = ", ".join(sorted({d.code for d in self.diagnostics if d.is_error}))
        super().__init__(f"case has structural errors ({codes}); use force to render anyway")


def graph_name(title: str) -> str:
    name = re.sub(r"[^0-9A-Za-z_]+", "_", title).strip("_")
    if not name:
        return "safety_case"
    if name[0].isdigit():
        name = "_" + name
    return name


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def node_label(el: GsnElement, wrap: int = DEFAULT_WRAP) -> str:
    lines = [el.id] + textwrap.wrap(el.text, width=wrap, break_long_words=False, break_on_hyphens=False)
    if Decorator.UNDEVELOPED in el.decorators:
        lines.append("◇")
    if Decorator.UNINSTANTIATED in el.decorators:
        lines.append("▽")
    if el.kind in _MARKERS:
        lines.append(_MARKERS[el.kind])
    return "\\n".join(line.replace("\\", "\\\\").replace('"', '\\"') for line in lines)


def to_dot(case: SafetyCase, *, wrap: int = DEFAULT_WRAP, force: bool = False) -> str:
    """Return DOT text for ``case``.

    Raises RenderError when the case has validator errors, unless ``force``.
    """
    if not force:
        diags = validate(case)
        if has_errors(diags):
            raise RenderError(diags)

    out = [f"digraph {graph_name(case.title)} {{", "  rankdir=TB;", '  node [fontname="Helvetica"];']
    emitted: set[str] = set()
    for el in case.elements:
        if el.id in emitted:
            continue
        emitted.add(el.id)
        attrs = [_NODE_ATTRS[el.kind]]
        if Decorator.OFF_DIAGRAM in el.decorators:
            attrs.append("peripheries=2")
        attrs.append(f'label="{node_label(el, wrap)}"')
        out.append(f"  {_quote(el.id)} [{', '.join(attrs)}];")
    for rel in case.relationships:
        out.append(f"  {_quote(rel.source)} -> {_quote(rel.target)} [{_EDGE_ATTRS[rel.kind]}];")
    out.append("}")
    return "\n".join(out) + "\n"
