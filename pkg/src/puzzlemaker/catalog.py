"""Context and concept catalogs plus request-input normalization.

The predefined context and concept lists are fixed; the surprise-me
topic list is loaded from a one-topic-per-line text file so deployments
can swap in their own.  Everything here is read-only after load and
freely shareable across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path

from .rng import SplitMix64

CONTEXTS: tuple[str, ...] = (
    "Amusement Park",
    "Animals",
    "Aquarium",
    "Basketball",
    "Cooking",
    "Film",
    "Fishing",
    "Gardening",
    "Mental Health",
    "Modern Gaming",
    "Music",
    "Olympics",
    "Pets",
    "Relationships",
    "Restaurant",
    "Rugby",
    "Social Media",
    "Sports",
    "Streaming Services",
    "Virtual Reality",
)

CONCEPTS: tuple[str, ...] = (
    "Arithmetic operators",
    "Dictionaries",
    "File handling & I/O",
    "Lists",
    "Loops",
    "Selection statements (if/else, etc.)",
    "Strings",
    "Variables",
)

MAX_CONCEPTS = 3
MAX_CUSTOM_CONTEXT_CHARS = 100

_CANONICAL_CONTEXTS = {label.lower(): label for label in CONTEXTS}
_CANONICAL_CONCEPTS = {label.lower(): label for label in CONCEPTS}
_CONTROL_CHARS_RE = re.compile(r"[\x00-\x1f\x7f]")


class ContextMode(Enum):
    NAMED = "named"
    CUSTOM = "custom"
    NONE = "none"
    SURPRISE = "surprise"


class CatalogError(ValueError):
    """Base class for request-input validation failures."""

    code = "InvalidRequest"


class UnknownNamedContextError(CatalogError):
    code = "UnknownNamedContext"


class EmptyCustomContextError(CatalogError):
    code = "EmptyCustomContext"


class InvalidCustomContextError(CatalogError):
    code = "InvalidCustomContext"


class NoConceptsError(CatalogError):
    code = "NoConcepts"


class TooManyConceptsError(CatalogError):
    code = "TooManyConcepts"


class UnknownConceptError(CatalogError):
    code = "UnknownConcept"


@dataclass(frozen=True)
class ContextCatalog:
    contexts: tuple[str, ...]
    surprise_topics: tuple[str, ...]


def load_surprise_topics(path: str | Path) -> tuple[str, ...]:
    """Read a UTF-8 topic file: one topic per line, '#' lines ignored."""
    topics = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            topics.append(stripped)
    return tuple(topics)


_default: ContextCatalog | None = None


def default_catalog() -> ContextCatalog:
    """Catalog with the predefined contexts and the packaged topic list."""
    global _default
    if _default is None:
        with resources.as_file(
            resources.files("puzzlemaker.data").joinpath("surprise_topics.txt")
        ) as path:
            _default = ContextCatalog(
                contexts=CONTEXTS, surprise_topics=load_surprise_topics(path)
            )
    return _default


def make_catalog(surprise_topics_path: str | Path | None = None) -> ContextCatalog:
    if surprise_topics_path is None:
        return default_catalog()
    return ContextCatalog(
        contexts=CONTEXTS, surprise_topics=load_surprise_topics(surprise_topics_path)
    )


def sanitize_custom_context(text: str | None) -> str:
    """Normalize student-typed context text.

    Trims, collapses internal whitespace runs, rejects control
    characters, and caps the length — the text is injected into a
    prompt, so it gets the strictest treatment of all inputs.
    """
    collapsed = " ".join((text or "").split())
    if not collapsed:
        raise EmptyCustomContextError("custom context is empty")
    if _CONTROL_CHARS_RE.search(collapsed):
        raise InvalidCustomContextError("custom context contains control characters")
    return collapsed[:MAX_CUSTOM_CONTEXT_CHARS].rstrip()


def resolve_context(
    mode: ContextMode,
    context_text: str | None = None,
    rng_seed: int = 0,
    catalog: ContextCatalog | None = None,
) -> str | None:
    """Resolve a request's context choice to a concrete string (or None).

    Named entries are matched case-insensitively against the catalog and
    returned in canonical form; custom text is sanitized; surprise mode
    picks uniformly from the topic list using the seed, so the same seed
    always lands on the same topic.
    """
    catalog = catalog or default_catalog()
    if mode is ContextMode.NONE:
        return None
    if mode is ContextMode.NAMED:
        label = _CANONICAL_CONTEXTS.get((context_text or "").strip().lower())
        if label is None:
            raise UnknownNamedContextError(f"unknown context {context_text!r}")
        return label
    if mode is ContextMode.CUSTOM:
        return sanitize_custom_context(context_text)
    if not catalog.surprise_topics:
        raise CatalogError("surprise mode needs a non-empty topic list")
    pick = SplitMix64(rng_seed).below(len(catalog.surprise_topics))
    return catalog.surprise_topics[pick]


def validate_concepts(labels: list[str] | tuple[str, ...]) -> list[str]:
    """Normalize requested concept labels against the catalog.

    Matching is case-insensitive; duplicates collapse (order preserved);
    the result must hold 1 to 3 concepts.  Free-typed concepts are not
    accepted — only catalog labels.
    """
    seen: set[str] = set()
    normalized: list[str] = []
    for label in labels:
        key = str(label).strip().lower()
        canonical = _CANONICAL_CONCEPTS.get(key)
        if canonical is None:
            raise UnknownConceptError(f"unknown concept {label!r}")
        if key in seen:
            continue
        seen.add(key)
        normalized.append(canonical)
    if not normalized:
        raise NoConceptsError("at least one programming concept is required")
    if len(normalized) > MAX_CONCEPTS:
        raise TooManyConceptsError(
            f"{len(normalized)} concepts requested; the limit is {MAX_CONCEPTS}"
        )
    return normalized
