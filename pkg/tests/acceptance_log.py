"""Shared store for acceptance outcomes, printed by conftest at session end."""

RESULTS: dict[int, tuple[bool, str, str]] = {}


def record(number: int, title: str, ok: bool, detail: str) -> None:
    RESULTS[number] = (ok, title, detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title} ({detail})")
    assert ok, detail
