"""File-backed persistence: exercise store and anonymous request log.

Both are plain UTF-8 JSON-lines files for single-binary deployability.
Writers are serialized with a lock (single-writer contract); readers
tolerate torn or malformed lines by skipping them.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator

from .catalog import ContextMode
from .pipeline import Exercise
from .serialize import exercise_from_dict, exercise_to_dict


class Outcome:
    GENERATED = "generated"
    EXHAUSTED = "exhausted"
    GATEWAY_FAILED = "gateway_failed"


# Label under which each mode is counted; named requests log their label.
_MODE_LABELS = {
    ContextMode.CUSTOM: "Custom",
    ContextMode.NONE: "None",
    ContextMode.SURPRISE: "Surprise Me",
}


@dataclass(frozen=True)
class RequestLogRecord:
    """One anonymous generation request.

    Deliberately carries no user identifier of any kind — no account,
    cookie, or address data ever reaches this record.
    """

    timestamp: str
    context_mode: str
    context_label: str
    resolved_context: str | None
    concepts: tuple[str, ...]
    outcome: str

    def to_dict(self) -> dict:
        return {
            "timestamp": self.timestamp,
            "context_mode": self.context_mode,
            "context_label": self.context_label,
            "resolved_context": self.resolved_context,
            "concepts": list(self.concepts),
            "outcome": self.outcome,
        }


def make_log_record(
    mode: ContextMode,
    resolved_context: str | None,
    concepts: list[str] | tuple[str, ...],
    outcome: str,
) -> RequestLogRecord:
    """Build a log record, aggregating custom entries under "Custom"."""
    label = _MODE_LABELS.get(mode) or (resolved_context or "None")
    return RequestLogRecord(
        timestamp=datetime.now(timezone.utc).isoformat(),
        context_mode=mode.value,
        context_label=label,
        resolved_context=resolved_context,
        concepts=tuple(concepts),
        outcome=outcome,
    )


class RequestLog:
    """Append-only JSONL log with optional size-based rotation.

    Rotated segments are named ``<path>.1``, ``<path>.2``, ... oldest
    first; :meth:`iter_rows` spans all segments so analytics always see
    the full history.
    """

    def __init__(self, path: str | Path, max_bytes: int | None = None) -> None:
        self.path = Path(path)
        self.max_bytes = max_bytes
        self._lock = threading.Lock()
        self.path.parent.mkdir(parents=True, exist_ok=True)

    def append(self, record: RequestLogRecord) -> None:
        line = json.dumps(record.to_dict(), ensure_ascii=False)
        with self._lock:
            self._maybe_rotate(len(line) + 1)
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")

    def _maybe_rotate(self, incoming: int) -> None:
        if self.max_bytes is None or not self.path.exists():
            return
        if self.path.stat().st_size + incoming <= self.max_bytes:
            return
        next_index = len(self._segments()) + 1
        self.path.rename(self.path.with_name(f"{self.path.name}.{next_index}"))

    def _segments(self) -> list[Path]:
        pattern = f"{self.path.name}.*"
        segments = []
        for candidate in self.path.parent.glob(pattern):
            suffix = candidate.name[len(self.path.name) + 1 :]
            if suffix.isdigit():
                segments.append((int(suffix), candidate))
        return [path for _, path in sorted(segments)]

    def iter_rows(self) -> Iterator[dict]:
        for path in [*self._segments(), self.path]:
            yield from read_log_rows(path)


def read_log_rows(path: str | Path, malformed: list[int] | None = None) -> Iterator[dict]:
    """Yield parsed log rows, skipping malformed lines.

    When ``malformed`` is given, the count of skipped lines is appended
    to it (callers surface a warning).
    """
    path = Path(path)
    if not path.exists():
        return
    skipped = 0
    with path.open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError:
                skipped += 1
                continue
            if isinstance(row, dict):
                yield row
            else:
                skipped += 1
    if malformed is not None:
        malformed.append(skipped)


class ExerciseStore:
    """Embedded key-value store for exercises, one JSON object per line.

    The full map lives in memory; the file is append-only with
    last-write-wins on load.  Solutions stay server-side: nothing here
    is ever handed to clients directly.
    """

    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._exercises: dict[str, Exercise] = {}
        if self.path.exists():
            for row in read_log_rows(self.path):
                exercise = exercise_from_dict(row)
                self._exercises[exercise.exercise_id] = exercise

    def put(self, exercise: Exercise) -> None:
        line = json.dumps(exercise_to_dict(exercise), ensure_ascii=False)
        with self._lock:
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")
            self._exercises[exercise.exercise_id] = exercise

    def get(self, exercise_id: str) -> Exercise | None:
        return self._exercises.get(exercise_id)

    def __len__(self) -> int:
        return len(self._exercises)
