"""Confirmed differences between printed displays and the verified forms.

The list ships as ``qdivisor/data/errata.json``. Entries with scope
``evaluator`` have a printed form available to ``--strict-printed`` runs;
``note`` entries document reading conventions and carry no evaluator.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

__all__ = ["Erratum", "errata", "errata_for"]


@dataclass(frozen=True)
class Erratum:
    key: str
    registry_id: str
    side: str
    scope: str
    printed: str
    corrected: str
    justification: str


@lru_cache(maxsize=None)
def _load():
    text = resources.files("qdivisor").joinpath("data/errata.json").read_text(encoding="utf-8")
    doc = json.loads(text)
    return doc["version"], tuple(Erratum(**e) for e in doc["entries"])


def errata() -> tuple:
    return _load()[1]


def errata_version() -> int:
    return _load()[0]


def errata_for(id: str, *, scope: str | None = "evaluator") -> list:
    return [e for e in errata() if e.registry_id == id and (scope is None or e.scope == scope)]
