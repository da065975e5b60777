"""Synthetic 236-request log matching the deployment frequency tables.

The top-20 context rows sum to 215, so 21 filler requests with counts
of at most 3 round out the 236 total without disturbing the top rows.
Concept tallies sum to 523 across the same 236 records (each record
carries 1..3 concepts); dealing the label pool out in strides of 236
guarantees no record sees the same concept twice, since no label has
more than 110 occurrences.
"""

from __future__ import annotations

from puzzlemaker.storage import RequestLogRecord

# (label, count, mode) — custom-typed entries logged under their typed
# text replicate the deployment convention ("Cats" was never a catalog
# label); "Custom" rows are the aggregated form this service writes.
TOP_CONTEXT_ROWS = [
    ("Animals", 33, "named"),
    ("Music", 22, "named"),
    ("Custom", 20, "custom"),
    ("Basketball", 17, "named"),
    ("Cats", 17, "custom"),
    ("Amusement Park", 14, "named"),
    ("Mental Health", 11, "named"),
    ("Modern Gaming", 9, "named"),
    ("Sports", 9, "named"),
    ("Film", 8, "named"),
    ("Fishing", 8, "named"),
    ("None", 8, "none"),
    ("Relationships", 8, "named"),
    ("Cooking", 5, "named"),
    ("Olympics", 5, "named"),
    ("Pets", 5, "named"),
    ("Surprise Me", 5, "surprise"),
    ("Gardening", 4, "named"),
    ("Restaurant", 4, "named"),
    ("Social Media", 3, "named"),
]

FILLER_CONTEXT_ROWS = [
    ("Aquarium", 3, "named"),
    ("Rugby", 3, "named"),
    ("Streaming Services", 3, "named"),
    ("Virtual Reality", 3, "named"),
    ("Chess", 3, "custom"),
    ("Dogs", 3, "custom"),
    ("Space", 3, "custom"),
]

CONCEPT_COUNTS = [
    ("Loops", 110),
    ("Variables", 106),
    ("Strings", 78),
    ("Lists", 77),
    ("Dictionaries", 73),
    ("Arithmetic operators", 32),
    ("File handling & I/O", 30),
    ("Selection statements (if/else, etc.)", 17),
]

TOTAL_RECORDS = 236


def build_table_records() -> list[RequestLogRecord]:
    context_pool: list[tuple[str, str]] = []
    for label, count, mode in TOP_CONTEXT_ROWS + FILLER_CONTEXT_ROWS:
        context_pool.extend([(label, mode)] * count)
    assert len(context_pool) == TOTAL_RECORDS

    concept_pool: list[str] = []
    for label, count in CONCEPT_COUNTS:
        concept_pool.extend([label] * count)
    assert len(concept_pool) == 523

    records = []
    for i, (label, mode) in enumerate(context_pool):
        concepts = [
            concept_pool[offset + i]
            for offset in (0, TOTAL_RECORDS, 2 * TOTAL_RECORDS)
            if offset + i < len(concept_pool)
        ]
        assert 1 <= len(concepts) <= 3 and len(set(concepts)) == len(concepts)
        resolved = None if mode == "none" else label
        records.append(
            RequestLogRecord(
                timestamp=f"2024-03-01T10:{i // 60:02d}:{i % 60:02d}+00:00",
                context_mode=mode,
                context_label=label,
                resolved_context=resolved,
                concepts=tuple(concepts),
                outcome="generated",
            )
        )
    return records


def write_table_log(path) -> None:
    import json

    with open(path, "w", encoding="utf-8") as fh:
        for record in build_table_records():
            fh.write(json.dumps(record.to_dict(), ensure_ascii=False) + "\n")
