"""HTTP service: catalog, generation, grading, and analytics endpoints.

Request bodies are validated by hand so every rejection is a 400 with a
machine-readable code rather than a framework-shaped 422.  Client-facing
exercise payloads are assembled field by field — never by serializing an
Exercise — so solution order and indent levels cannot leak.
"""

from __future__ import annotations

import random
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import analytics
from .catalog import (
    CONCEPTS,
    CONTEXTS,
    CatalogError,
    ContextMode,
    make_catalog,
    resolve_context,
    validate_concepts,
)
from .config import ServiceConfig
from .gateway import HttpGateway, LlmGateway, config_from_env
from .pipeline import (
    Exercise,
    GatewayFailure,
    GenerationExhaustedError,
    GenerationLimits,
    GenerationRequest,
    generate_exercise,
)
from .puzzle_engine import (
    Attempt,
    DuplicatePlacementError,
    GradeStatus,
    Placement,
    UnknownBlockError,
    grade,
    render_feedback,
)
from .storage import ExerciseStore, Outcome, RequestLog, make_log_record


class RequestError(Exception):
    """Client error carrying a machine-readable code."""

    def __init__(self, code: str, message: str, status: int = 400) -> None:
        super().__init__(message)
        self.code = code
        self.message = message
        self.status = status


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": {"code": code, "message": message}}
    )


def _parse_mode(value: Any) -> ContextMode:
    try:
        return ContextMode(str(value).strip().lower())
    except ValueError:
        raise RequestError(
            "UnknownMode",
            f"context_mode must be one of {[m.value for m in ContextMode]}, got {value!r}",
        ) from None


def parse_generation_request(body: Any) -> GenerationRequest:
    if not isinstance(body, dict):
        raise RequestError("InvalidBody", "request body must be a JSON object")
    mode = _parse_mode(body.get("context_mode"))
    context_text = body.get("context_text")
    if context_text is not None and not isinstance(context_text, str):
        raise RequestError("InvalidBody", "context_text must be a string")
    if mode in (ContextMode.NAMED, ContextMode.CUSTOM) and not (context_text or "").strip():
        raise RequestError(
            "MissingContextText", f"{mode.value} mode requires context_text"
        )
    concepts_raw = body.get("concepts")
    if not isinstance(concepts_raw, list):
        raise RequestError("InvalidBody", "concepts must be a list")
    try:
        concepts = validate_concepts(concepts_raw)
    except CatalogError as exc:
        raise RequestError(exc.code, str(exc)) from exc
    return GenerationRequest(
        context_mode=mode,
        context_text=context_text if mode in (ContextMode.NAMED, ContextMode.CUSTOM) else None,
        concepts=tuple(concepts),
    )


def client_exercise_view(exercise: Exercise) -> dict[str, Any]:
    """The payload a student sees: statement plus dedented blocks in
    presented order.  Solution order and indent levels stay hidden."""
    blocks_by_id = {block.block_id: block for block in exercise.puzzle.solution}
    return {
        "exercise_id": exercise.exercise_id,
        "statement": exercise.statement,
        "blocks": [
            {"block_id": block_id, "text": blocks_by_id[block_id].text}
            for block_id in exercise.puzzle.presented_order
        ],
    }


def parse_attempt(body: Any) -> Attempt:
    if not isinstance(body, dict) or not isinstance(body.get("placements"), list):
        raise RequestError("InvalidBody", "body must carry a placements list")
    placements = []
    for entry in body["placements"]:
        if (
            not isinstance(entry, dict)
            or not isinstance(entry.get("block_id"), str)
            or not isinstance(entry.get("indent_level"), int)
            or isinstance(entry.get("indent_level"), bool)
            or entry["indent_level"] < 0
        ):
            raise RequestError(
                "InvalidBody",
                "each placement needs a block_id string and a non-negative "
                "integer indent_level",
            )
        placements.append(
            Placement(block_id=entry["block_id"], indent_level=entry["indent_level"])
        )
    return Attempt(placements=tuple(placements))


def create_app(
    config: ServiceConfig | None = None,
    gateway: LlmGateway | None = None,
    seed_source: random.Random | None = None,
) -> FastAPI:
    """Assemble the service.

    ``gateway`` defaults to an OpenAI-compatible HTTP client built from
    the config; tests inject a scripted one.  ``seed_source`` feeds the
    per-request shuffle seeds and exists for deterministic tests.
    """
    config = config or ServiceConfig()
    catalog = make_catalog(config.surprise_topics_path)
    if gateway is None:
        gateway = HttpGateway(config_from_env(config.base_url, config.model_id))
    limits = GenerationLimits(
        max_lines=config.max_lines, max_attempts=config.max_generation_attempts
    )
    storage_dir = Path(config.storage_dir)
    store = ExerciseStore(storage_dir / "exercises.jsonl")
    request_log = RequestLog(storage_dir / "requests.jsonl", max_bytes=config.log_max_bytes)
    seeds = seed_source or random.Random()

    app = FastAPI(title="puzzlemaker", docs_url=None, redoc_url=None)
    app.state.store = store
    app.state.request_log = request_log

    @app.exception_handler(RequestError)
    async def handle_request_error(_: Request, exc: RequestError) -> JSONResponse:
        return _error_response(exc.status, exc.code, exc.message)

    @app.get("/healthz")
    async def healthz() -> dict[str, str]:
        return {"status": "ok"}

    @app.get("/api/catalog")
    async def get_catalog() -> dict[str, Any]:
        return {
            "contexts": list(CONTEXTS),
            "concepts": list(CONCEPTS),
            "modes": [mode.value for mode in ContextMode],
        }

    @app.post("/api/exercises")
    async def create_exercise(request: Request) -> Any:
        body = await _json_body(request)
        gen_request = parse_generation_request(body)
        seed = seeds.getrandbits(64)
        try:
            resolved = resolve_context(
                gen_request.context_mode,
                gen_request.context_text,
                rng_seed=seed,
                catalog=catalog,
            )
        except CatalogError as exc:
            raise RequestError(exc.code, str(exc)) from exc

        def log(outcome: str) -> None:
            request_log.append(
                make_log_record(gen_request.context_mode, resolved, gen_request.concepts, outcome)
            )

        try:
            exercise = generate_exercise(
                gen_request, gateway, seed, limits=limits, catalog=catalog
            )
        except GenerationExhaustedError:
            log(Outcome.EXHAUSTED)
            return _error_response(
                503,
                "GenerationExhausted",
                "could not generate a valid exercise; please retry",
            )
        except GatewayFailure as exc:
            log(Outcome.GATEWAY_FAILED)
            return _error_response(502, "GatewayFailed", str(exc))
        store.put(exercise)
        log(Outcome.GENERATED)
        return client_exercise_view(exercise)

    @app.post("/api/exercises/{exercise_id}/attempts")
    async def grade_attempt(exercise_id: str, request: Request) -> Any:
        exercise = store.get(exercise_id)
        if exercise is None:
            return _error_response(404, "UnknownExercise", f"no exercise {exercise_id!r}")
        attempt = parse_attempt(await _json_body(request))
        try:
            report = grade(exercise.puzzle, attempt)
        except UnknownBlockError as exc:
            raise RequestError("UnknownBlock", str(exc)) from exc
        except DuplicatePlacementError as exc:
            raise RequestError("DuplicatePlacement", str(exc)) from exc
        return {
            "status": "solved" if report.status is GradeStatus.SOLVED else "incorrect",
            "messages": render_feedback(report),
            "diagnostics": [diag.value for diag in report.diagnostics],
        }

    @app.get("/api/analytics/contexts")
    async def analytics_contexts() -> dict[str, Any]:
        return _analytics_payload("contexts")

    @app.get("/api/analytics/concepts")
    async def analytics_concepts() -> dict[str, Any]:
        return _analytics_payload("concepts")

    def _analytics_payload(dimension: str) -> dict[str, Any]:
        table = analytics.frequency_table(request_log.iter_rows(), dimension)
        return {
            "dimension": dimension,
            "rows": [{"label": label, "count": count} for label, count in table],
        }

    if config.static_dir and Path(config.static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="static")

    return app


async def _json_body(request: Request) -> Any:
    try:
        return await request.json()
    except Exception:
        raise RequestError("InvalidBody", "request body must be valid JSON") from None
