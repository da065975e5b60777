"""Frequency aggregation over the request log.

Shared by the HTTP analytics endpoints and the offline report command
so both always produce identical tables.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping


def context_frequencies(rows: Iterable[Mapping]) -> list[tuple[str, int]]:
    """Requests per logged context label, most-requested first.

    Ties break alphabetically so output order is stable.
    """
    counts = Counter(
        str(row["context_label"]) for row in rows if "context_label" in row
    )
    return sorted(counts.items(), key=lambda item: (-item[1], item[0]))


def concept_frequencies(rows: Iterable[Mapping]) -> list[tuple[str, int]]:
    """Tallies per concept; a request with 2 concepts contributes 2."""
    counts: Counter[str] = Counter()
    for row in rows:
        for concept in row.get("concepts") or ():
            counts[str(concept)] += 1
    return sorted(counts.items(), key=lambda item: (-item[1], item[0]))


def frequency_table(rows: Iterable[Mapping], dimension: str) -> list[tuple[str, int]]:
    if dimension == "contexts":
        return context_frequencies(rows)
    if dimension == "concepts":
        return concept_frequencies(rows)
    raise ValueError(f"unknown dimension {dimension!r}")
