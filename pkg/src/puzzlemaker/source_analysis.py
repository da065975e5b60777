"""Tokenizer-lite over generated Python exercise code.

Strips markdown fences and comments, extracts logical lines with indent
levels, and detects constructs the exercise generator must reject.  The
scanner is deliberately not a full parser: it only needs to know where
string literals begin and end so that '#' inside a string is never
treated as a comment and "break" inside a string is never a finding.
All functions are pure; inputs are never mutated.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from enum import Enum

DEFAULT_INDENT_UNIT = 4
ALLOWED_INDENT_UNITS = frozenset({1, 2, 3, 4, 8})

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_FENCE_RE = re.compile(r"^`{3,}\s*[A-Za-z0-9_+-]*\s*$")


class RaggedIndentationError(ValueError):
    """Leading whitespace is not a whole number of indent units."""


class UnterminatedStringWarning(UserWarning):
    """A quote opened but never closed; the rest of the line (or file,
    for triple quotes) was treated as string content."""


class BannedConstruct(Enum):
    WHILE_TRUE = "while_true"
    BREAK = "break"
    TRY_EXCEPT = "try_except"


@dataclass(frozen=True)
class LogicalLine:
    """One non-blank code line: dedented text plus its nesting depth."""

    text: str
    indent_level: int
    source_index: int


@dataclass(frozen=True)
class SanitizedSolution:
    lines: tuple[LogicalLine, ...]
    indent_unit: int


@dataclass(frozen=True)
class BannedFinding:
    construct: BannedConstruct
    source_index: int


def _string_end(text: str, start: int) -> tuple[int, bool]:
    """Index just past the string literal opening at ``start``.

    Handles single, double, and triple quotes with backslash escapes
    (which also covers raw strings for end-detection purposes).  Returns
    ``(end, terminated)``; a single-quoted string that hits a newline
    ends there, unterminated.
    """
    quote_char = text[start]
    if text.startswith(quote_char * 3, start):
        opener = quote_char * 3
        i = start + 3
        while i < len(text):
            if text[i] == "\\":
                i += 2
                continue
            if text.startswith(opener, i):
                return i + 3, True
            i += 1
        return len(text), False
    i = start + 1
    while i < len(text):
        ch = text[i]
        if ch == "\\":
            i += 2
            continue
        if ch == "\n":
            return i, False
        if ch == quote_char:
            return i + 1, True
        i += 1
    return len(text), False


def strip_fences(text: str) -> str:
    """Remove markdown code-fence lines wrapping the snippet.

    Only fence lines reachable from the start or end of the text through
    blank lines are removed; inner text is untouched.  Unfenced input is
    returned unchanged, and the operation is idempotent.
    """
    lines = text.split("\n")
    start, end = 0, len(lines)
    changed = True
    while changed and start < end:
        changed = False
        probe = start
        while probe < end and not lines[probe].strip():
            probe += 1
        if probe < end and _FENCE_RE.match(lines[probe].strip()):
            start = probe + 1
            changed = True
        probe = end - 1
        while probe >= start and not lines[probe].strip():
            probe -= 1
        if probe >= start and _FENCE_RE.match(lines[probe].strip()):
            end = probe
            changed = True
    return "\n".join(lines[start:end])


def strip_comments(text: str) -> str:
    """Remove every '#' comment that sits outside a string literal.

    Full-line comments leave an empty line behind (dropped later by
    :func:`extract_lines`); string contents are untouched; every line is
    right-stripped.  An unterminated string raises no error: the rest of
    the line (or file) is treated as string content and an
    :class:`UnterminatedStringWarning` is emitted.
    """
    out: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in "'\"":
            end, terminated = _string_end(text, i)
            out.append(text[i:end])
            if not terminated:
                warnings.warn(
                    "string literal opened but never closed",
                    UnterminatedStringWarning,
                    stacklevel=2,
                )
            i = end
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        out.append(ch)
        i += 1
    return "\n".join(line.rstrip() for line in "".join(out).split("\n"))


def extract_lines(text: str) -> SanitizedSolution:
    """Turn comment-free code text into logical lines with indent levels.

    Blank lines are dropped and tabs expand to 4 spaces.  The indent
    unit is the minimum positive leading-space count across lines
    (default 4 when everything is flush left); each line's level is its
    leading-space count divided by that unit.

    Raises :class:`RaggedIndentationError` when some line's leading
    spaces are not a multiple of the unit, or when the inferred unit is
    not a plausible indent width — both signal unusable generated code.
    """
    entries: list[tuple[int, str, int]] = []
    for index, raw in enumerate(text.split("\n")):
        expanded = raw.expandtabs(DEFAULT_INDENT_UNIT)
        if not expanded.strip():
            continue
        leading = len(expanded) - len(expanded.lstrip(" "))
        entries.append((leading, expanded[leading:].rstrip(), index))

    positive = [leading for leading, _, _ in entries if leading > 0]
    unit = min(positive) if positive else DEFAULT_INDENT_UNIT
    if unit not in ALLOWED_INDENT_UNITS:
        raise RaggedIndentationError(
            f"inferred indent unit {unit} is not a plausible indent width"
        )
    lines = []
    for leading, content, index in entries:
        if leading % unit:
            raise RaggedIndentationError(
                f"line {index}: {leading} leading spaces is not a multiple "
                f"of the indent unit {unit}"
            )
        lines.append(
            LogicalLine(text=content, indent_level=leading // unit, source_index=index)
        )
    return SanitizedSolution(lines=tuple(lines), indent_unit=unit)


def count_code_lines(solution: SanitizedSolution) -> int:
    return len(solution.lines)


def count_function_defs(solution: SanitizedSolution) -> int:
    """Lines whose first token is ``def``."""
    count = 0
    for line in solution.lines:
        match = _IDENT_RE.match(line.text)
        if match and match.group() == "def":
            count += 1
    return count


def _iter_code_tokens(solution: SanitizedSolution):
    """Yield ``(token, source_index)`` for identifiers and punctuation
    outside string literals, in source order.

    The joined line texts are scanned as one stream so triple-quoted
    strings spanning lines stay recognized as strings.
    """
    text = "\n".join(line.text for line in solution.lines)
    source_indexes = [line.source_index for line in solution.lines]
    row = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            row += 1
            i += 1
            continue
        if ch in "'\"":
            end, _ = _string_end(text, i)
            row += text.count("\n", i, end)
            i = end
            continue
        match = _IDENT_RE.match(text, i)
        if match:
            yield match.group(), source_indexes[row]
            i = match.end()
            continue
        if not ch.isspace():
            yield ch, source_indexes[row]
        i += 1


def find_banned(solution: SanitizedSolution) -> list[BannedFinding]:
    """Report banned constructs: unconditional-true while loops, break
    statements, and exception handling keywords.

    Detection is token-level, so "breakfast" and string contents never
    match.  Expects comments to have been stripped already.
    """
    tokens = list(_iter_code_tokens(solution))
    findings = []
    for pos, (token, source_index) in enumerate(tokens):
        if token == "break":
            findings.append(BannedFinding(BannedConstruct.BREAK, source_index))
        elif token in ("try", "except", "finally"):
            findings.append(BannedFinding(BannedConstruct.TRY_EXCEPT, source_index))
        elif token == "while":
            probe = pos + 1
            while probe < len(tokens) and tokens[probe][0] == "(":
                probe += 1
            if probe < len(tokens) and tokens[probe][0] in ("True", "true"):
                findings.append(BannedFinding(BannedConstruct.WHILE_TRUE, source_index))
    return findings
