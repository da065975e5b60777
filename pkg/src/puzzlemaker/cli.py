"""Operator command line: serve, batch-generate, validate, grade, report.

Exit codes follow a scripting-friendly contract: 0 for success (or a
solved attempt), 1 for an unsolved attempt or failed batch, 2 for usage
and input errors.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from . import analytics
from .bank import ExerciseBank, FailureRow, load_bank, save_bank
from .catalog import CatalogError, ContextMode, make_catalog, validate_concepts
from .config import ServiceConfig, load_config
from .gateway import HttpGateway, LlmGateway, ScriptedGateway, config_from_env
from .pipeline import (
    GenerationLimits,
    GenerationRequest,
    PipelineError,
    generate_exercise,
    validate_solution,
)
from .puzzle_engine import Attempt, GradeStatus, Placement, grade, render_feedback
from .rng import SplitMix64
from .storage import read_log_rows


@click.group()
def main() -> None:
    """Generate, serve, and grade drag-and-drop Python puzzles."""


def _load_config_or_die(config_path: str | None) -> ServiceConfig:
    if config_path is None:
        return ServiceConfig()
    try:
        return load_config(config_path)
    except FileNotFoundError:
        raise SystemExit(_usage_error(f"config file not found: {config_path}"))
    except ValueError as exc:
        raise SystemExit(_usage_error(str(exc)))


def _usage_error(message: str) -> int:
    click.echo(f"error: {message}", err=True)
    return 2


def _gateway_from_script(script_path: str) -> ScriptedGateway:
    try:
        script = json.loads(Path(script_path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SystemExit(_usage_error(f"cannot read gateway script {script_path}: {exc}"))
    if isinstance(script, dict):
        script = script.get("responses")
    if not isinstance(script, list) or not all(isinstance(s, str) for s in script):
        raise SystemExit(
            _usage_error("gateway script must be a JSON array of response strings")
        )
    return ScriptedGateway(script)


def _build_gateway(config: ServiceConfig, gateway_script: str | None) -> LlmGateway:
    if gateway_script:
        return _gateway_from_script(gateway_script)
    return HttpGateway(config_from_env(config.base_url, config.model_id))


@main.command()
@click.option("--config", "config_path", type=str, default=None, help="Config file path.")
@click.option("--gateway-script", type=str, default=None, help="Serve with a scripted gateway (JSON array of responses).")
def serve(config_path: str | None, gateway_script: str | None) -> None:
    """Run the HTTP service until signaled."""
    import uvicorn

    from .service import create_app

    config = _load_config_or_die(config_path)
    app = create_app(config, gateway=_build_gateway(config, gateway_script))
    try:
        uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    except OSError as exc:
        raise SystemExit(_usage_error(f"cannot listen on {config.listen_addr}: {exc}"))


def _parse_context_spec(spec: str) -> tuple[ContextMode, str | None]:
    text = spec.strip()
    lowered = text.lower()
    if lowered == "none":
        return ContextMode.NONE, None
    if lowered in ("surprise", "surprise me"):
        return ContextMode.SURPRISE, None
    if lowered.startswith("custom:"):
        return ContextMode.CUSTOM, text[len("custom:") :].strip()
    return ContextMode.NAMED, text


@main.command()
@click.option("--context", "contexts", multiple=True, required=True, help="Context per batch item: a catalog label, 'none', 'surprise', or 'custom:<text>'. Repeatable.")
@click.option("--concepts", "concept_sets", multiple=True, required=True, help="Comma-joined concept set, e.g. 'Loops,Variables'. Repeatable.")
@click.option("--count", default=1, show_default=True, help="Exercises per (context, concept set) pair.")
@click.option("--out", "out_path", required=True, type=str, help="Bank file to write.")
@click.option("--seed", default=0, show_default=True, help="Base seed for deterministic shuffles.")
@click.option("--jobs", default=1, show_default=True, help="Concurrent generation workers.")
@click.option("--config", "config_path", type=str, default=None)
@click.option("--gateway-script", type=str, default=None)
def generate(
    contexts: tuple[str, ...],
    concept_sets: tuple[str, ...],
    count: int,
    out_path: str,
    seed: int,
    jobs: int,
    config_path: str | None,
    gateway_script: str | None,
) -> None:
    """Batch-generate an exercise bank."""
    config = _load_config_or_die(config_path)
    gateway = _build_gateway(config, gateway_script)
    catalog = make_catalog(config.surprise_topics_path)
    limits = GenerationLimits(
        max_lines=config.max_lines, max_attempts=config.max_generation_attempts
    )

    items = []
    for context_spec in contexts:
        mode, context_text = _parse_context_spec(context_spec)
        for concept_set in concept_sets:
            try:
                concepts = validate_concepts([c.strip() for c in concept_set.split(",")])
            except CatalogError as exc:
                raise SystemExit(_usage_error(str(exc)))
            for _ in range(count):
                items.append((context_spec, GenerationRequest(mode, context_text, tuple(concepts))))

    # Per-item seeds are drawn up front so --jobs does not change them.
    seed_stream = SplitMix64(seed)
    item_seeds = [seed_stream.next_uint64() for _ in items]

    def run_item(index: int):
        spec_text, request = items[index]
        try:
            return generate_exercise(
                request, gateway, item_seeds[index], limits=limits, catalog=catalog
            )
        except (PipelineError, CatalogError) as exc:
            return FailureRow(
                context=spec_text, concepts=request.concepts, error=str(exc)
            )

    bank = ExerciseBank()
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        for result in pool.map(run_item, range(len(items))):
            if isinstance(result, FailureRow):
                bank.failures.append(result)
            else:
                bank.exercises.append(result)

    save_bank(bank, out_path)
    click.echo(
        f"wrote {len(bank.exercises)} exercises, {len(bank.failures)} failures to {out_path}"
    )
    if items and not bank.exercises:
        raise SystemExit(1)


@main.command()
@click.option("--log", "log_path", required=True, type=str, help="Request log file.")
@click.option("--dimension", type=click.Choice(["contexts", "concepts"]), default="contexts", show_default=True)
@click.option("--format", "output_format", type=click.Choice(["text", "csv", "json"]), default="text", show_default=True)
def report(log_path: str, dimension: str, output_format: str) -> None:
    """Frequency table over the request log."""
    malformed: list[int] = []
    rows = list(read_log_rows(log_path, malformed=malformed))
    if malformed and malformed[0]:
        click.echo(f"warning: skipped {malformed[0]} malformed log lines", err=True)
    table = analytics.frequency_table(rows, dimension)
    if output_format == "json":
        click.echo(json.dumps([{"label": l, "count": c} for l, c in table], ensure_ascii=False))
    elif output_format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerow(["label", "count"])
        writer.writerows(table)
        click.echo(buffer.getvalue(), nl=False)
    else:
        for label, count in table:
            click.echo(f"{label} {count}")


@main.command(name="grade")
@click.option("--bank", "bank_path", required=True, type=str)
@click.option("--exercise-id", required=True, type=str)
@click.option("--attempt", "attempt_path", required=True, type=str, help="JSON file with a placements list.")
def grade_cmd(bank_path: str, exercise_id: str, attempt_path: str) -> None:
    """Grade an attempt offline against a bank exercise."""
    try:
        bank = load_bank(bank_path)
        attempt_data = json.loads(Path(attempt_path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise SystemExit(_usage_error(str(exc)))
    exercise = next((e for e in bank.exercises if e.exercise_id == exercise_id), None)
    if exercise is None:
        raise SystemExit(_usage_error(f"no exercise {exercise_id!r} in {bank_path}"))
    try:
        placements = tuple(
            Placement(block_id=p["block_id"], indent_level=int(p["indent_level"]))
            for p in attempt_data["placements"]
        )
        report_ = grade(exercise.puzzle, Attempt(placements))
    except (KeyError, TypeError, ValueError) as exc:
        raise SystemExit(_usage_error(f"bad attempt file: {exc}"))
    for message in render_feedback(report_):
        click.echo(message)
    raise SystemExit(0 if report_.status is GradeStatus.SOLVED else 1)


@main.command()
@click.argument("source", type=str)
@click.option("--max-lines", default=20, show_default=True)
def validate(source: str, max_lines: int) -> None:
    """Validate a raw solution file the way the pipeline would."""
    try:
        raw = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise SystemExit(_usage_error(str(exc)))
    solution, report_ = validate_solution(raw, max_lines=max_lines)
    if report_.passed and solution is not None:
        click.echo(f"ok: {len(solution.lines)} lines, indent unit {solution.indent_unit}")
        return
    for failure in report_.failures:
        click.echo(f"failed: {failure.value}")
    raise SystemExit(1)


if __name__ == "__main__":
    main(prog_name="puzzlemaker")
