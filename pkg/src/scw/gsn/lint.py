"""Shallow text-form lints for element statements.

Goals, assumptions and justifications should read as a clause (noun phrase
plus verb phrase); contexts and solutions as a bare noun phrase. Real
grammar checking is out of reach, so this is a frozen lexicon heuristic:

* W3: a clause-kind text has fewer than two word tokens, or no verb-like
  token. A token is verb-like when it is in ``VERB_LEXICON`` or, failing
  that, ends in ``-ed``, ``-ing`` or ``-s`` (not ``-ss``/``-us``/``-is``)
  and has at least four characters.
* W4: a noun-phrase-kind text contains an auxiliary or modal from
  ``AUXILIARIES``.

Strategy texts are never linted. Changing either word list changes
results, so bump ``LEXICON_VERSION`` when editing them.
"""

from __future__ import annotations

import re

from scw.gsn.model import Diagnostic, ElementKind, GsnElement

LEXICON_VERSION = "1"

AUXILIARIES: frozenset[str] = frozenset(
    """
    am is are was were be been being
    has have had
    do does did
    shall should will would can could may might must
    """.split()
)

VERB_LEXICON: frozenset[str] = AUXILIARIES | frozenset(
    """
    comply complies complied
    meet meets met
    ensure ensures ensured
    satisfy satisfies satisfied
    fulfil fulfils fulfill fulfills fulfilled
    mitigate mitigates mitigated
    eliminate eliminates eliminated
    operate operates operated
    function functions
    hold holds held
    remain remains
    prevent prevents prevented
    protect protects protected
    control controls controlled
    detect detects detected
    limit limits limited
    exceed exceeds exceeded
    perform performs performed
    achieve achieves achieved
    adhere adheres
    align aligns
    apply applies
    identify identifies identified
    cover covers covered
    support supports supported
    demonstrate demonstrates demonstrated
    work works
    behave behaves
    """.split()
)

_CLAUSE_KINDS = {ElementKind.GOAL, ElementKind.ASSUMPTION, ElementKind.JUSTIFICATION}
_NOUN_KINDS = {ElementKind.CONTEXT, ElementKind.SOLUTION}

_TOKEN_RE = re.compile(r"[^\W_]+(?:'[^\W_]+)?")


def tokens(text: str) -> list[str]:
    return [t.lower() for t in _TOKEN_RE.findall(text)]


def is_verb_like(token: str) -> bool:
    if token in VERB_LEXICON:
        return True
    if len(token) < 4 or not token.isalpha():
        return False
    if token.endswith(("ed", "ing")):
        return True
    return token.endswith("s") and not token.endswith(("ss", "us", "is"))


def looks_like_clause(text: str) -> bool:
    toks = tokens(text)
    return len(toks) >= 2 and any(is_verb_like(t) for t in toks)


def semantic_lint(element: GsnElement) -> list[Diagnostic]:
    if element.kind in _CLAUSE_KINDS:
        if not looks_like_clause(element.text):
            return [
                Diagnostic.warning(
                    "W3",
                    element.id,
                    f"{element.kind.value} text should be a noun phrase plus verb phrase",
                )
            ]
    elif element.kind in _NOUN_KINDS:
        found = sorted(set(tokens(element.text)) & AUXILIARIES)
        if found:
            return [
                Diagnostic.warning(
                    "W4",
                    element.id,
                    f"{element.kind.value} text should be a noun phrase, "
                    f"found auxiliary {', '.join(repr(w) for w in found)}",
                )
            ]
    return []
