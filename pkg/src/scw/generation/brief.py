from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import Optional

import tomli


@dataclasses.dataclass(frozen=True)
class SystemBrief:
    """What the generation prompt says about the target system.

    ``system_description`` answers "what is the system", ``objective``
    answers "what is the main objective of the safety case". The optional
    ``domain_paragraph`` is extra domain knowledge; blank-line separated
    paragraphs become separate question/answer pairs in the prompt.
    """

    system_name: str
    system_description: str
    objective: str
    domain_paragraph: Optional[str] = None

    def __post_init__(self) -> None:
        for field in ("system_name", "system_description", "objective"):
            if not getattr(self, field).strip():
                raise ValueError(f"brief: {field} must be nonempty")
        if self.domain_paragraph is not None and not self.domain_paragraph.strip():
            object.__setattr__(self, "domain_paragraph", None)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def load_brief(path: str | Path) -> SystemBrief:
    """Load a brief from a TOML file with keys matching the dataclass fields."""
    with open(path, "rb") as f:
        data = tomli.load(f)
    known = {f.name for f in dataclasses.fields(SystemBrief)}
    extra = set(data) - known
    if extra:
        raise ValueError(f"brief {path}: unknown keys {', '.join(sorted(extra))}")
    missing = {"system_name", "system_description", "objective"} - set(data)
    if missing:
        raise ValueError(f"brief {path}: missing keys {', '.join(sorted(missing))}")
    return SystemBrief(**{k: str(v) for k, v in data.items()})
