"""Lossless JSON-dict conversion for exercises and their parts.

Used by the on-disk exercise store and the bank files; client-facing
payloads are assembled separately in the service layer so solution data
never rides along by accident.
"""

from __future__ import annotations

from datetime import datetime
from typing import Any

from .catalog import ContextMode
from .pipeline import (
    AttemptRecord,
    Exercise,
    GenerationRequest,
    GenerationTrace,
    ValidationFailure,
    ValidationReport,
)
from .puzzle_engine import CodeBlock, PuzzleSpec


def exercise_to_dict(exercise: Exercise) -> dict[str, Any]:
    return {
        "exercise_id": exercise.exercise_id,
        "statement": exercise.statement,
        "request": {
            "context_mode": exercise.request.context_mode.value,
            "context_text": exercise.request.context_text,
            "concepts": list(exercise.request.concepts),
        },
        "resolved_context": exercise.resolved_context,
        "puzzle": {
            "solution": [
                {"block_id": b.block_id, "text": b.text, "indent_level": b.indent_level}
                for b in exercise.puzzle.solution
            ],
            "presented_order": list(exercise.puzzle.presented_order),
            "shuffle_seed": exercise.puzzle.shuffle_seed,
        },
        "trace": {
            "attempts": [
                {
                    "passed": record.validation.passed,
                    "failures": [f.value for f in record.validation.failures],
                }
                for record in exercise.trace.attempts
            ],
            "model_id": exercise.trace.model_id,
            "succeeded": exercise.trace.succeeded,
        },
        "created_at": exercise.created_at.isoformat(),
    }


def exercise_from_dict(data: dict[str, Any]) -> Exercise:
    request = GenerationRequest(
        context_mode=ContextMode(data["request"]["context_mode"]),
        context_text=data["request"]["context_text"],
        concepts=tuple(data["request"]["concepts"]),
    )
    puzzle = PuzzleSpec(
        solution=tuple(
            CodeBlock(block_id=b["block_id"], text=b["text"], indent_level=b["indent_level"])
            for b in data["puzzle"]["solution"]
        ),
        presented_order=tuple(data["puzzle"]["presented_order"]),
        shuffle_seed=data["puzzle"]["shuffle_seed"],
    )
    trace = GenerationTrace(
        attempts=tuple(
            AttemptRecord(
                validation=ValidationReport(
                    passed=a["passed"],
                    failures=tuple(ValidationFailure(f) for f in a["failures"]),
                )
            )
            for a in data["trace"]["attempts"]
        ),
        model_id=data["trace"]["model_id"],
        succeeded=data["trace"]["succeeded"],
    )
    return Exercise(
        exercise_id=data["exercise_id"],
        statement=data["statement"],
        request=request,
        resolved_context=data["resolved_context"],
        puzzle=puzzle,
        trace=trace,
        created_at=datetime.fromisoformat(data["created_at"]),
    )
