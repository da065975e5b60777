"""Exercise generation flow: prompts, validation, bounded reprompting.

The problem statement is requested once; the code solution is then
requested and validated, reprompting on failure up to five consecutive
times before giving up.  Only the solution is regenerated — regenerating
the statement would change the exercise under the student.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from enum import Enum

from .catalog import ContextCatalog, ContextMode, resolve_context
from .gateway import CompletionRequest, GatewayError, LlmGateway
from .puzzle_engine import PuzzleSpec, build_blocks, make_puzzle
from .source_analysis import (
    RaggedIndentationError,
    SanitizedSolution,
    count_code_lines,
    count_function_defs,
    extract_lines,
    find_banned,
    strip_comments,
    strip_fences,
)

MAX_SOLUTION_LINES = 20
MAX_GENERATION_ATTEMPTS = 5

_CONSTRAINT_PARAGRAPHS = (
    "The solution associated with the problem should not exceed ten lines of "
    "code and should be limited to only a single function at most.\n"
    "\n"
    "The problem cannot use while(true), or any break statements or exceptions "
    "(try, catch blocks).\n"
    "\n"
    "Do not include information on the constraints I have defined in the "
    "problem statement.\n"
    "\n"
    "Only provide the problem statement as the output."
)

DESCRIPTION_TEMPLATE_WITH_CONTEXT = (
    "Generate a problem in Python that only includes a problem statement with "
    "a context of '{context},' and the programming concepts should be "
    "'{concepts}'.\n"
    "\n" + _CONSTRAINT_PARAGRAPHS
)

DESCRIPTION_TEMPLATE_NO_CONTEXT = (
    "Generate a problem in Python that only includes a problem statement with "
    "the following programming concepts: '{concepts}.' Do not apply a context "
    "to the exercise.\n"
    "\n" + _CONSTRAINT_PARAGRAPHS
)

SOLUTION_TEMPLATE = (
    "{statement}\n"
    "\n"
    "Only provide code solutions based on the problem description above.\n"
    "\n"
    "Do not explain the solution or add any extra detail to the output; only "
    "provide the code solution."
)

_WRAPPING_QUOTE_PAIRS = (("'", "'"), ('"', '"'), ("“", "”"), ("‘", "’"))


class PipelineError(Exception):
    pass


class UnresolvedSurpriseError(PipelineError):
    """Surprise mode reached prompt building without a concrete context."""


class GenerationExhaustedError(PipelineError):
    def __init__(self, trace: GenerationTrace) -> None:
        super().__init__(
            f"no valid solution after {len(trace.attempts)} consecutive attempts; "
            "please retry"
        )
        self.trace = trace


class GatewayFailure(PipelineError):
    """A gateway call failed; carries which stage and attempt it was on."""

    def __init__(self, stage: str, attempt_index: int, cause: GatewayError) -> None:
        super().__init__(f"gateway call failed during {stage} (attempt {attempt_index})")
        self.stage = stage
        self.attempt_index = attempt_index
        self.__cause__ = cause


class MalformedStatement(GatewayError):
    """The statement response had no usable text."""


@dataclass(frozen=True)
class GenerationRequest:
    """A student's personalization choice: context plus 1..3 concepts."""

    context_mode: ContextMode
    context_text: str | None = None
    concepts: tuple[str, ...] = ()


@dataclass(frozen=True)
class PromptBundle:
    description_prompt: str
    solution_prompt: str


class ValidationFailure(Enum):
    TOO_MANY_LINES = "too_many_lines"
    BANNED_CONSTRUCT = "banned_construct"
    MULTIPLE_FUNCTIONS = "multiple_functions"
    EMPTY_SOLUTION = "empty_solution"
    RAGGED_INDENTATION = "ragged_indentation"


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    failures: tuple[ValidationFailure, ...]


@dataclass(frozen=True)
class AttemptRecord:
    validation: ValidationReport


@dataclass(frozen=True)
class GenerationTrace:
    attempts: tuple[AttemptRecord, ...]
    model_id: str
    succeeded: bool


@dataclass(frozen=True)
class Exercise:
    exercise_id: str
    statement: str
    request: GenerationRequest
    resolved_context: str | None
    puzzle: PuzzleSpec
    trace: GenerationTrace
    created_at: datetime


def build_description_prompt(request: GenerationRequest) -> str:
    """Problem-statement prompt for the request's context mode.

    Modes with a context substitute it together with the comma-joined
    concepts; no-context mode uses the template that says not to apply
    one.  Surprise requests must already carry their resolved context.
    """
    if not 1 <= len(request.concepts) <= 3:
        raise ValueError("a request needs 1 to 3 concepts")
    concepts = ", ".join(request.concepts)
    if request.context_mode is ContextMode.NONE:
        return DESCRIPTION_TEMPLATE_NO_CONTEXT.format(concepts=concepts)
    if not (request.context_text or "").strip():
        if request.context_mode is ContextMode.SURPRISE:
            raise UnresolvedSurpriseError(
                "surprise mode must be resolved to a concrete context first"
            )
        raise ValueError(f"{request.context_mode.value} mode needs context text")
    return DESCRIPTION_TEMPLATE_WITH_CONTEXT.format(
        context=request.context_text, concepts=concepts
    )


def build_solution_prompt(statement: str) -> str:
    if not statement.strip():
        raise ValueError("statement must be non-blank")
    return SOLUTION_TEMPLATE.format(statement=statement)


def tidy_statement(text: str) -> str:
    """Trim whitespace and strip one layer of wrapping quotes/fences.

    Deliberately no rewriting beyond that; keeping statements clean is
    the prompt's job.
    """
    tidied = strip_fences(text).strip()
    for opener, closer in _WRAPPING_QUOTE_PAIRS:
        if len(tidied) >= 2 and tidied.startswith(opener) and tidied.endswith(closer):
            tidied = tidied[1:-1].strip()
            break
    return tidied


def validate_solution(
    raw: str, max_lines: int = MAX_SOLUTION_LINES
) -> tuple[SanitizedSolution | None, ValidationReport]:
    """Sanitize a raw solution and check the acceptance rules.

    Failures are reported, never raised.  Returns the sanitized solution
    on success, None otherwise.
    """
    text = strip_comments(strip_fences(raw))
    try:
        solution = extract_lines(text)
    except RaggedIndentationError:
        return None, ValidationReport(False, (ValidationFailure.RAGGED_INDENTATION,))

    failures = []
    if count_code_lines(solution) == 0:
        failures.append(ValidationFailure.EMPTY_SOLUTION)
    else:
        if count_code_lines(solution) > max_lines:
            failures.append(ValidationFailure.TOO_MANY_LINES)
        if find_banned(solution):
            failures.append(ValidationFailure.BANNED_CONSTRUCT)
        if count_function_defs(solution) > 1:
            failures.append(ValidationFailure.MULTIPLE_FUNCTIONS)
    report = ValidationReport(passed=not failures, failures=tuple(failures))
    return (solution if report.passed else None), report


@dataclass(frozen=True)
class GenerationLimits:
    max_lines: int = MAX_SOLUTION_LINES
    max_attempts: int = MAX_GENERATION_ATTEMPTS


def generate_exercise(
    request: GenerationRequest,
    gateway: LlmGateway,
    seed: int,
    limits: GenerationLimits = GenerationLimits(),
    catalog: ContextCatalog | None = None,
) -> Exercise:
    """Run the full generation flow for one request.

    Resolves the context, requests the problem statement once, then
    requests and validates a solution with bounded reprompting.  On
    success the solution becomes a shuffled puzzle; the trace records
    every validation outcome.  Deterministic for a scripted gateway and
    fixed seed (ids and timestamps aside).
    """
    resolved = resolve_context(
        request.context_mode, request.context_text, rng_seed=seed, catalog=catalog
    )
    prompt_request = request
    if request.context_mode is ContextMode.SURPRISE:
        prompt_request = replace(request, context_text=resolved)

    description_prompt = build_description_prompt(prompt_request)
    try:
        statement_response = gateway.complete(CompletionRequest(prompt=description_prompt))
    except GatewayError as exc:
        raise GatewayFailure("statement request", 0, exc) from exc
    statement = tidy_statement(statement_response.text)
    if not statement:
        raise GatewayFailure(
            "statement request", 0, MalformedStatement("statement response was empty")
        )

    prompts = PromptBundle(
        description_prompt=description_prompt,
        solution_prompt=build_solution_prompt(statement),
    )
    attempts: list[AttemptRecord] = []
    model_id = statement_response.model_id
    for attempt_index in range(1, limits.max_attempts + 1):
        try:
            solution_response = gateway.complete(
                CompletionRequest(prompt=prompts.solution_prompt)
            )
        except GatewayError as exc:
            raise GatewayFailure("solution request", attempt_index, exc) from exc
        model_id = solution_response.model_id or model_id
        solution, report = validate_solution(solution_response.text, max_lines=limits.max_lines)
        attempts.append(AttemptRecord(validation=report))
        if solution is not None:
            trace = GenerationTrace(tuple(attempts), model_id=model_id, succeeded=True)
            return Exercise(
                exercise_id=uuid.uuid4().hex,
                statement=statement,
                request=request,
                resolved_context=resolved,
                puzzle=make_puzzle(build_blocks(solution), seed),
                trace=trace,
                created_at=datetime.now(timezone.utc),
            )
    trace = GenerationTrace(tuple(attempts), model_id=model_id, succeeded=False)
    raise GenerationExhaustedError(trace)
