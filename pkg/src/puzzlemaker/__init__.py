"""Personalized drag-and-drop Python puzzle generator and grader."""

from .catalog import CONCEPTS, CONTEXTS, ContextMode, resolve_context, validate_concepts
from .gateway import (
    CompletionRequest,
    CompletionResponse,
    GatewayConfig,
    HttpGateway,
    ScriptedGateway,
    scripted_gateway,
)
from .pipeline import (
    Exercise,
    GenerationExhaustedError,
    GenerationRequest,
    build_description_prompt,
    build_solution_prompt,
    generate_exercise,
    validate_solution,
)
from .puzzle_engine import (
    Attempt,
    CodeBlock,
    GradeReport,
    GradeStatus,
    Placement,
    PuzzleSpec,
    build_blocks,
    grade,
    render_feedback,
    shuffle_blocks,
)
from .source_analysis import (
    SanitizedSolution,
    count_code_lines,
    extract_lines,
    find_banned,
    strip_comments,
    strip_fences,
)

__version__ = "0.1.0"

__all__ = [
    "CONCEPTS",
    "CONTEXTS",
    "Attempt",
    "CodeBlock",
    "CompletionRequest",
    "CompletionResponse",
    "ContextMode",
    "Exercise",
    "GatewayConfig",
    "GenerationExhaustedError",
    "GenerationRequest",
    "GradeReport",
    "GradeStatus",
    "HttpGateway",
    "Placement",
    "PuzzleSpec",
    "SanitizedSolution",
    "ScriptedGateway",
    "build_blocks",
    "build_description_prompt",
    "build_solution_prompt",
    "count_code_lines",
    "extract_lines",
    "find_banned",
    "generate_exercise",
    "grade",
    "render_feedback",
    "resolve_context",
    "scripted_gateway",
    "shuffle_blocks",
    "strip_comments",
    "strip_fences",
    "validate_concepts",
    "validate_solution",
]
