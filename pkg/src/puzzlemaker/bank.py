"""Versioned exercise-bank files.

Instructors archive banks across course offerings, so the format is
versioned from day one and round-trips losslessly, solutions included.
Bank files are operator-side artifacts and must never be served to
students as-is.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .pipeline import Exercise
from .serialize import exercise_from_dict, exercise_to_dict

BANK_VERSION = 1


class BankFormatError(ValueError):
    pass


@dataclass(frozen=True)
class FailureRow:
    """One batch item that produced no exercise."""

    context: str
    concepts: tuple[str, ...]
    error: str


@dataclass
class ExerciseBank:
    exercises: list[Exercise] = field(default_factory=list)
    failures: list[FailureRow] = field(default_factory=list)


def save_bank(bank: ExerciseBank, path: str | Path) -> None:
    payload = {
        "version": BANK_VERSION,
        "exercises": [exercise_to_dict(e) for e in bank.exercises],
        "failures": [
            {"context": f.context, "concepts": list(f.concepts), "error": f.error}
            for f in bank.failures
        ],
    }
    Path(path).write_text(
        json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )


def load_bank(path: str | Path) -> ExerciseBank:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    version = data.get("version")
    if version != BANK_VERSION:
        raise BankFormatError(f"unsupported bank version {version!r}")
    return ExerciseBank(
        exercises=[exercise_from_dict(e) for e in data["exercises"]],
        failures=[
            FailureRow(
                context=f["context"], concepts=tuple(f["concepts"]), error=f["error"]
            )
            for f in data.get("failures", [])
        ],
    )
