"""Reference oracle built on the stdlib ``tokenize`` module.

Written before (and kept independent of) puzzlemaker's hand-rolled
scanner, so the two can be compared byte-for-byte in tests.  Only works
on syntactically valid snippets, which is fine for a curated corpus.
"""

from __future__ import annotations

import io
import tokenize


def oracle_strip_comments(text: str) -> str:
    """Remove '#' comments using the stdlib tokenizer, rstrip each line."""
    comment_starts: dict[int, int] = {}
    tokens = tokenize.generate_tokens(io.StringIO(text).readline)
    for tok in tokens:
        if tok.type == tokenize.COMMENT:
            row, col = tok.start
            comment_starts[row] = col
    out = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        if lineno in comment_starts:
            line = line[: comment_starts[lineno]]
        out.append(line.rstrip())
    return "\n".join(out)


def oracle_indent_levels(text: str) -> list[int]:
    """Nesting depth of each logical source line via INDENT/DEDENT tokens.

    Returns one level per non-blank line, in source order.  Multi-line
    statements are not handled; the corpus avoids them.
    """
    depth = 0
    depth_at_row: dict[int, int] = {}
    tokens = tokenize.generate_tokens(io.StringIO(text).readline)
    for tok in tokens:
        if tok.type == tokenize.INDENT:
            depth += 1
        elif tok.type == tokenize.DEDENT:
            depth -= 1
        elif tok.type not in (tokenize.NL, tokenize.NEWLINE, tokenize.ENDMARKER):
            depth_at_row.setdefault(tok.start[0], depth)
    return [depth_at_row[row] for row in sorted(depth_at_row)]


def oracle_string_spans(text: str) -> list[tuple[int, int]]:
    """(row, col) start positions of every string literal token."""
    spans = []
    tokens = tokenize.generate_tokens(io.StringIO(text).readline)
    for tok in tokens:
        if tok.type == tokenize.STRING:
            spans.append(tok.start)
    return spans
