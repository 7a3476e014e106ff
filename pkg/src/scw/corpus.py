"""Bundled ground-truth safety cases and the matching generation briefs.

Each case records per-element provenance: ``paper`` when the element wording
is taken from the published description of the case, ``reconstructed``
when the text or its attachment point had to be inferred. Replace the
reconstructed entries once the original figures are available.
"""

from __future__ import annotations

import dataclasses
from importlib import resources
from typing import Mapping

from scw.generation.brief import SystemBrief
from scw.gsn.model import SafetyCase
from scw.prose import parse_strict


@dataclasses.dataclass(frozen=True)
class CorpusCase:
    label: str
    case: SafetyCase
    provenance: Mapping[str, str]
    text: str


LABELS = ("map-system", "xray", "ml-tnr")
ALIASES = {"ml": "ml-tnr", "x-ray": "xray", "map": "map-system"}

_PAPER, _REC = "paper", "reconstructed"

PROVENANCE: dict[str, dict[str, str]] = {
    "map-system": {
        "G1": _PAPER, "C1": _PAPER, "C2": _PAPER, "G2": _PAPER, "S2": _PAPER,
        "A1": _PAPER, "G3": _PAPER, "C3": _PAPER, "Sn1": _PAPER,
    },
    "xray": {
        "G1": _PAPER, "S1": _REC, "G2": _REC, "G3": _REC,
        "Sn1": _REC, "Sn2": _REC, "Sn3": _REC, "Sn4": _REC,
    },
    "ml-tnr": {
        "G1": _PAPER, "S1": _REC, "G2": _REC, "G3": _REC,
        "Sn1": _REC, "Sn2": _REC, "Sn3": _REC, "Sn4": _REC,
        "Sn5": _REC, "Sn6": _REC, "Sn7": _REC,
    },
}

# Corpus labels that ratings files and reports use for the two ground truths.
REPORT_LABELS = {"ml-tnr": "ml", "xray": "xray", "map-system": "map-system"}

BRIEFS: dict[str, SystemBrief] = {
    "ml-tnr": SystemBrief(
        system_name="ML algorithm",
        system_description=(
            "The system is a Machine Learning (ML) algorithm that is used to implement the "
            "classification function of a Tire Noise Recognition (TNR) component of a vehicle."
        ),
        objective=(
            "The objective of the safety case is to develop a structured and convincing argument "
            "that the classifier fulfilled its technical requirements, with respect to functional "
            "inefficiencies that could lead to False Positives (FP) identifications of dry road "
            "surface conditions."
        ),
        # reconstructed
        domain_paragraph=(
            "The TNR component classifies the road surface condition from audio signals recorded "
            "by microphones mounted near the wheels. Its output is consumed by chassis control and "
            "powertrain functions, which adapt their control parameters to keep traction "
            "consistent.\n\n"
            "The classification runs in real time. Wrongly reporting a dry road when the surface is "
            "wet or icy can lead the vehicle to apply control parameters that are unsafe for the "
            "actual conditions."
        ),
    ),
    "xray": SystemBrief(
        system_name="X-ray machine",
        # reconstructed
        system_description=(
            "The system is an X-ray backscatter machine, comparable to the body scanners used at "
            "airports, that irradiates people in order to image them."
        ),
        objective=(
            "The objective of the safety case is to argue the elimination of all factors leading "
            "to overradiation."
        ),
        # reconstructed
        domain_paragraph=(
            "The machine is safety-critical because people near it can be harmed if the emitted "
            "radiation exceeds acceptable limits. Overradiation can be caused by faults in the beam "
            "source, in its control software, or by operators bypassing interlocks."
        ),
    ),
}


def canonical_label(label: str) -> str:
    label = ALIASES.get(label, label)
    if label not in LABELS:
        raise KeyError(f"unknown corpus case {label!r}; choose from {', '.join(LABELS)}")
    return label


def corpus_text(label: str) -> str:
    label = canonical_label(label)
    return resources.files("scw.data.corpus").joinpath(f"{label}.gsn.txt").read_text(encoding="utf-8")


def load(label: str) -> CorpusCase:
    label = canonical_label(label)
    text = corpus_text(label)
    outcome = parse_strict(text)
    if outcome.case is None:
        raise RuntimeError(f"bundled corpus case {label} does not parse: {outcome.diagnostics}")
    return CorpusCase(label, outcome.case, PROVENANCE[label], text)


def brief(label: str) -> SystemBrief:
    label = canonical_label(label)
    if label not in BRIEFS:
        raise KeyError(f"corpus case {label!r} has no generation brief")
    return BRIEFS[label]
