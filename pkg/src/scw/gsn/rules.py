"""Structural rule engine: the connection matrix and the case validator."""

from __future__ import annotations

from collections import Counter, defaultdict
from typing import Iterable, Optional

from scw.gsn.lint import semantic_lint
from scw.gsn.model import (
    Diagnostic,
    ElementKind,
    RelationshipKind,
    SafetyCase,
    id_sort_key,
    kind_for_id,
)

_G = ElementKind.GOAL
_S = ElementKind.STRATEGY
_SN = ElementKind.SOLUTION
_C = ElementKind.CONTEXT
_A = ElementKind.ASSUMPTION
_J = ElementKind.JUSTIFICATION

ALLOWED_CONNECTIONS: frozenset[tuple[ElementKind, ElementKind, RelationshipKind]] = frozenset(
    [
        (_G, _G, RelationshipKind.SUPPORTED_BY),
        (_G, _S, RelationshipKind.SUPPORTED_BY),
        (_G, _SN, RelationshipKind.SUPPORTED_BY),
        (_S, _G, RelationshipKind.SUPPORTED_BY),
        (_G, _C, RelationshipKind.IN_CONTEXT_OF),
        (_G, _A, RelationshipKind.IN_CONTEXT_OF),
        (_G, _J, RelationshipKind.IN_CONTEXT_OF),
        (_S, _C, RelationshipKind.IN_CONTEXT_OF),
        (_S, _A, RelationshipKind.IN_CONTEXT_OF),
        (_S, _J, RelationshipKind.IN_CONTEXT_OF),
    ]
)

# Kinds that may only appear as relationship targets.
TERMINAL_KINDS = frozenset({_SN, _C, _A, _J})


def allowed_connection(source: ElementKind, target: ElementKind, rel: RelationshipKind) -> bool:
    return (source, target, rel) in ALLOWED_CONNECTIONS


def root_candidates(case: SafetyCase) -> list[str]:
    supported = {
        r.target for r in case.relationships if r.kind is RelationshipKind.SUPPORTED_BY
    }
    seen: set[str] = set()
    roots = []
    for el in case.elements:
        if el.kind is _G and el.id not in supported and el.id not in seen:
            roots.append(el.id)
        seen.add(el.id)
    return roots


def root_of(case: SafetyCase) -> Optional[str]:
    """Return the single goal with no incoming supportedBy edge, if unique."""
    roots = root_candidates(case)
    return roots[0] if len(roots) == 1 else None


def _cyclic_components(nodes: Iterable[str], edges: dict[str, list[str]]) -> list[list[str]]:
    """Strongly connected components of size > 1 (Tarjan, iterative)."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    result: list[list[str]] = []
    counter = 0

    for start in nodes:
        if start in index:
            continue
        work = [(start, iter(edges.get(start, ())))]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(edges.get(nxt, ()))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                if len(comp) > 1:
                    result.append(sorted(comp, key=id_sort_key))
    return result


def validate(case: SafetyCase, *, allow_multiple_roots: bool = False) -> list[Diagnostic]:
    """Check a case against the structural matrix and the text-form lints.

    Returns diagnostics sorted by code, then by subject id. An empty list
    means the case is fully valid.
    """
    out: list[Diagnostic] = []
    known = {el.id: el for el in reversed(case.elements)}

    counts = Counter(el.id for el in case.elements)
    for element_id, n in counts.items():
        if n > 1:
            out.append(Diagnostic.error("E2", element_id, f"id {element_id} declared {n} times"))

    for rel in case.relationships:
        missing = [e for e in (rel.source, rel.target) if e not in known]
        if missing:
            out.append(
                Diagnostic.error("E1", str(rel), f"unknown element id {', '.join(missing)}")
            )
            continue
        src = kind_for_id(rel.source)
        dst = kind_for_id(rel.target)
        if not allowed_connection(src, dst, rel.kind):
            out.append(
                Diagnostic.error(
                    "E3",
                    str(rel),
                    f"{src.value} to {dst.value} via {rel.kind.value} is not an allowed connection",
                )
            )

    support: dict[str, list[str]] = defaultdict(list)
    for rel in case.relationships:
        if rel.kind is RelationshipKind.SUPPORTED_BY and rel.source in known and rel.target in known:
            support[rel.source].append(rel.target)
    for comp in _cyclic_components(known, support):
        out.append(
            Diagnostic.error("E4", comp[0], f"supportedBy cycle through {', '.join(comp)}")
        )

    if case.elements:
        roots = root_candidates(case)
        if not roots:
            out.append(Diagnostic.error("E5", "", "no root goal"))
        elif len(roots) > 1 and not allow_multiple_roots:
            out.append(
                Diagnostic.error("E5", roots[0], f"{len(roots)} root goals: {', '.join(roots)}")
            )

    flagged: set[str] = set()
    for rel in case.relationships:
        el = known.get(rel.source)
        if el is not None and el.kind in TERMINAL_KINDS and el.id not in flagged:
            flagged.add(el.id)
            out.append(
                Diagnostic.error("E6", el.id, f"{el.kind.value} must not have outgoing relationships")
            )

    for el in known.values():
        supporters = [
            t for t in case.children(el.id, RelationshipKind.SUPPORTED_BY) if t in known
        ]
        if el.kind is _G and not supporters and not el.undeveloped:
            out.append(
                Diagnostic.warning("W1", el.id, "leaf goal has no solution and is not marked undeveloped")
            )
        if el.kind is _S and not el.undeveloped and not any(kind_for_id(t) is _G for t in supporters):
            out.append(
                Diagnostic.warning("W2", el.id, "strategy supports no goal and is not marked undeveloped")
            )
        out.extend(semantic_lint(el))

    return sorted(out, key=lambda d: (d.code[0], int(d.code[1:]), id_sort_key(d.subject)))


def has_errors(diagnostics: Iterable[Diagnostic]) -> bool:
    return any(d.is_error for d in diagnostics)
