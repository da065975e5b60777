"""Drag-and-drop puzzle mechanics: blocks, shuffling, grading, feedback.

Grading compares the attempt's (text, indent) sequence against the
solution's, so visually identical blocks are interchangeable — students
cannot tell two "count += 1" blocks apart, and neither does the grader.
All operations are pure; puzzle state belongs to the caller.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass
from enum import Enum

from .rng import SplitMix64
from .source_analysis import SanitizedSolution

SOLVED_MESSAGE = "Correct — puzzle solved!"


class EmptySolutionError(ValueError):
    """A puzzle needs at least one code block."""


class UnknownBlockError(ValueError):
    def __init__(self, block_id: str) -> None:
        super().__init__(f"placement references unknown block {block_id!r}")
        self.block_id = block_id


class DuplicatePlacementError(ValueError):
    def __init__(self, block_id: str) -> None:
        super().__init__(f"block {block_id!r} placed more than once")
        self.block_id = block_id


class GradeStatus(Enum):
    SOLVED = "solved"
    INCORRECT = "incorrect"


class Diagnostic(Enum):
    CORRECT = "correct"
    WRONG_POSITION = "wrong_position"
    WRONG_INDENT = "wrong_indent"
    MISSING = "missing"


@dataclass(frozen=True)
class CodeBlock:
    block_id: str
    text: str
    indent_level: int


@dataclass(frozen=True)
class PuzzleSpec:
    solution: tuple[CodeBlock, ...]
    presented_order: tuple[str, ...]
    shuffle_seed: int


@dataclass(frozen=True)
class Placement:
    block_id: str
    indent_level: int


@dataclass(frozen=True)
class Attempt:
    placements: tuple[Placement, ...]


@dataclass(frozen=True)
class GradeReport:
    status: GradeStatus
    diagnostics: tuple[Diagnostic, ...]
    extra_blocks: tuple[str, ...] = ()


def build_blocks(solution: SanitizedSolution) -> list[CodeBlock]:
    """One draggable block per logical line, in source order.

    Block ids are random so a client cannot sort the presented blocks
    back into solution order.
    """
    if not solution.lines:
        raise EmptySolutionError("solution has no code lines")
    return [
        CodeBlock(block_id=uuid.uuid4().hex, text=line.text, indent_level=line.indent_level)
        for line in solution.lines
    ]


def shuffle_blocks(blocks: list[CodeBlock], seed: int) -> list[str]:
    """Deterministic Fisher–Yates permutation of block ids.

    Same seed and blocks give the same order on every platform.  If the
    shuffle lands on the identity (and there are at least two blocks),
    the first two entries are swapped so the puzzle is never presented
    pre-solved.
    """
    if not blocks:
        raise EmptySolutionError("cannot shuffle zero blocks")
    order = list(range(len(blocks)))
    rng = SplitMix64(seed)
    for i in range(len(order) - 1, 0, -1):
        j = rng.below(i + 1)
        order[i], order[j] = order[j], order[i]
    if len(order) >= 2 and order == sorted(order):
        order[0], order[1] = order[1], order[0]
    return [blocks[k].block_id for k in order]


def make_puzzle(blocks: list[CodeBlock], seed: int) -> PuzzleSpec:
    return PuzzleSpec(
        solution=tuple(blocks),
        presented_order=tuple(shuffle_blocks(blocks, seed)),
        shuffle_seed=seed,
    )


def grade(puzzle: PuzzleSpec, attempt: Attempt) -> GradeReport:
    """Grade an ordered attempt against the hidden solution.

    Position ``i`` is correct when the i-th placed block's text and
    indent both match the solution's i-th line.  Text matches with a
    different indent reports a wrong indent; a text mismatch reports a
    wrong position; positions beyond the attempt's length are missing.
    """
    blocks_by_id = {block.block_id: block for block in puzzle.solution}
    placed: list[tuple[str, int]] = []
    seen: set[str] = set()
    for placement in attempt.placements:
        if placement.block_id not in blocks_by_id:
            raise UnknownBlockError(placement.block_id)
        if placement.block_id in seen:
            raise DuplicatePlacementError(placement.block_id)
        seen.add(placement.block_id)
        placed.append((blocks_by_id[placement.block_id].text, placement.indent_level))

    diagnostics = []
    for i, block in enumerate(puzzle.solution):
        if i >= len(placed):
            diagnostics.append(Diagnostic.MISSING)
        elif placed[i][0] != block.text:
            diagnostics.append(Diagnostic.WRONG_POSITION)
        elif placed[i][1] != block.indent_level:
            diagnostics.append(Diagnostic.WRONG_INDENT)
        else:
            diagnostics.append(Diagnostic.CORRECT)

    solved = all(d is Diagnostic.CORRECT for d in diagnostics)
    return GradeReport(
        status=GradeStatus.SOLVED if solved else GradeStatus.INCORRECT,
        diagnostics=tuple(diagnostics),
    )


_PROBLEM_WORDING = {
    Diagnostic.WRONG_POSITION: "wrong position",
    Diagnostic.WRONG_INDENT: "incorrect indentation",
    Diagnostic.MISSING: "missing block",
}


def render_feedback(report: GradeReport) -> list[str]:
    """One human-readable message per problem, by 1-based solution line."""
    if report.status is GradeStatus.SOLVED:
        return [SOLVED_MESSAGE]
    return [
        f"Line {position}: {_PROBLEM_WORDING[diagnostic]}"
        for position, diagnostic in enumerate(report.diagnostics, start=1)
        if diagnostic is not Diagnostic.CORRECT
    ]
