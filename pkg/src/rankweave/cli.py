"""Command line front end.

Exit codes: 0 success, 1 runtime failure, 2 invalid input (documents or
strategy), 3 execution suspended awaiting an expert answer.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import documents
from .estimates import (
    MedianUniverse,
    ScaleSpec,
    enumerate_scale,
    generalized_median,
    multiset_number,
    set_median,
)
from .model import validate_matrix
from .service import create_app, dump_request
from .strategy import (
    StrategyError,
    StrategyValidationError,
    SuspensionNeeded,
    execute,
    validate_strategy,
)
from .synthesis import synthesize as run_synthesis

EXIT_RUNTIME = 1
EXIT_INVALID = 2
EXIT_SUSPENDED = 3


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        click.echo(f"error: no such file: {path}", err=True)
        sys.exit(EXIT_RUNTIME)
    except json.JSONDecodeError as exc:
        click.echo(f"error: {path} is not valid JSON: {exc}", err=True)
        sys.exit(EXIT_INVALID)


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        click.echo(text)


@click.group()
def main() -> None:
    """Multicriteria ranking with composable solving strategies."""


@main.command()
@click.option("--data", "data_path", required=True, help="Decision data document (JSON).")
@click.option("--strategy", "strategy_path", required=True, help="Strategy document (JSON).")
@click.option("--out", "out_path", default=None, help="Write the result document here.")
def rank(data_path: str, strategy_path: str, out_path: str | None) -> None:
    """Execute a solving strategy over a decision document."""
    try:
        matrix = documents.parse_decision(_load_json(data_path))
    except documents.DocumentError as exc:
        click.echo(f"invalid data: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    report = validate_matrix(matrix)
    if not report.ok:
        for issue in report.issues:
            click.echo(f"invalid data: {issue}", err=True)
        sys.exit(EXIT_INVALID)

    try:
        spec = documents.parse_strategy(_load_json(strategy_path), matrix.n)
    except documents.DocumentError as exc:
        click.echo(f"invalid strategy: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    strategy_report = validate_strategy(spec)
    if not strategy_report.ok:
        for issue in strategy_report.issues:
            click.echo(f"invalid strategy: {issue}", err=True)
        sys.exit(EXIT_INVALID)

    try:
        trace = execute(spec, matrix)
    except SuspensionNeeded as suspension:
        click.echo("suspended: expert input needed", err=True)
        click.echo(json.dumps(dump_request(suspension.request)), err=True)
        sys.exit(EXIT_SUSPENDED)
    except StrategyValidationError as exc:
        click.echo(f"invalid strategy: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    except (StrategyError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_RUNTIME)
    _emit(documents.dump_trace(trace), out_path)


@main.command()
@click.option("--morphology", "morphology_path", required=True, help="Morphology document (JSON).")
@click.option("--variant", type=click.IntRange(1, 3), default=2, show_default=True)
@click.option("--out", "out_path", default=None, help="Write the synthesis report here.")
def synthesize(morphology_path: str, variant: int, out_path: str | None) -> None:
    """Enumerate composite solutions and report the Pareto set."""
    try:
        morphology, compat = documents.parse_morphology(_load_json(morphology_path))
        result = run_synthesis(morphology, compat, variant)
    except documents.DocumentError as exc:
        click.echo(f"invalid morphology: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_RUNTIME)
    _emit(documents.dump_synthesis(result), out_path)


@main.command()
@click.option("--l", "levels", required=True, type=int, help="Number of quality levels.")
@click.option("--eta", "cardinality", required=True, type=int, help="Elements per estimate.")
@click.option("--medians", "medians_path", default=None, help="File holding a JSON list of counts vectors.")
@click.option(
    "--universe",
    type=click.Choice(["interval", "all"]),
    default="interval",
    show_default=True,
    help="Candidate pool for the generalized median.",
)
def scale(levels: int, cardinality: int, medians_path: str | None, universe: str) -> None:
    """Enumerate the interval estimates of a scale; optionally take medians."""
    try:
        spec = ScaleSpec(levels, cardinality)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    interval = enumerate_scale(spec)
    click.echo(f"{spec}: {multiset_number(spec)} multisets, {len(interval)} interval estimates")
    for estimate in interval:
        click.echo(str(estimate))

    if medians_path is None:
        return
    raw = _load_json(medians_path)
    try:
        estimates = [documents.parse_counts_doc(item) for item in raw]
        pool = MedianUniverse(universe)
        generalized = generalized_median(estimates, pool)
        from_inputs = set_median(estimates)
    except (documents.DocumentError, ValueError) as exc:
        click.echo(f"invalid medians input: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    click.echo(f"generalized median: {generalized}")
    click.echo(f"set median: {from_inputs}")


@main.command()
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--state-dir", default=None, help="Persist session snapshots here.")
def serve(port: int, host: str, state_dir: str | None) -> None:
    """Run the HTTP session service."""
    import uvicorn

    uvicorn.run(create_app(state_dir), host=host, port=port)


if __name__ == "__main__":
    main()
