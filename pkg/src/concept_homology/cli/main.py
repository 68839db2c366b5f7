"""
Main CLI entry point for concept-homology.

Results go to standard output; log records and error messages go to
standard error. Exit codes: 0 success, 1 usage or argument error,
2 unreadable or malformed data.
"""

import sys
from collections.abc import Sequence

import click
from loguru import logger

from ..core.config import METRICS, MISSING_POLICIES, Config, ConfigManager
from ..models.complex import FilteredComplex
from ..models.report import DedupResult
from ..services.builders import DistanceMatrix, components_at
from ..services.error_handling import ArgumentError, DataError, StructuralError
from ..services.filtration_io import looks_like_filtration, read_filtration_csv
from ..services.homology import betti_numbers
from ..services.persistence import betti_curve, compute_persistence
from ..services.pipeline import (
    analyze as run_analysis,
    component_representative,
    ingest_csv,
    point_filtration,
    prepare_points,
    stable_component_parameter,
)
from ..services.render import (
    RenderSpec,
    emit_report_json,
    format_real,
    render_barcode_text,
    write_svg,
)
from ..utils.custom_logging import CustomizeLogger

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


def _parse_landmarks(ctx, param, value: str | None) -> list[int] | None:
    if value is None:
        return None
    try:
        indices = [int(token) for token in value.split(",") if token.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated point indices, got '{value}'")
    if not indices:
        raise click.BadParameter("at least one landmark index is required")
    return indices


def point_options(func):
    """Options shared by every command that reads point data."""
    options = [
        click.option("--metric", type=click.Choice(METRICS), default=None, help="Distance between points"),
        click.option("--max-dim", type=int, default=None, help="Largest simplex dimension (default 2)"),
        click.option("--r-max", default=None, help="Largest filtration parameter, AUTO or a number"),
        click.option(
            "--normalize/--no-normalize", default=None, help="Min-max scale every indicator column"
        ),
        click.option("--missing", type=click.Choice(MISSING_POLICIES), default=None, help="Missing-cell policy"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def input_kind_option(func):
    return click.option(
        "--input-kind",
        type=click.Choice(["auto", "indicator", "filtration"]),
        default="auto",
        help="Indicator table or explicit filtration (auto-detected by default)",
    )(func)


def _configure(ctx, **overrides) -> Config:
    manager: ConfigManager = ctx.obj["config_manager"]
    renamed = {"missing_policy" if key == "missing" else key: value for key, value in overrides.items()}
    return manager.update_config(renamed)


class LoadedInput:
    """A filtration plus, for indicator tables, the points behind it."""

    def __init__(
        self,
        complex_: FilteredComplex,
        points: DedupResult | None = None,
        distances: DistanceMatrix | None = None,
    ):
        self.complex = complex_
        self.points = points
        self.distances = distances

    def vertex_label(self, v: int) -> str:
        if self.points is None:
            return f"v{v}"
        return "+".join(self.points.groups[v])


def _load(path: str, config: Config, input_kind: str) -> LoadedInput:
    if input_kind == "auto":
        input_kind = "filtration" if looks_like_filtration(path) else "indicator"
    logger.debug(f"Reading {path} as {input_kind} input")

    if input_kind == "filtration":
        return LoadedInput(read_filtration_csv(path))

    table = ingest_csv(path, config.missing_policy)
    points = prepare_points(table, config)
    if len(points.unique_points) == 0:
        return LoadedInput(FilteredComplex(), points)
    K, D, _ = point_filtration(points.unique_points, config)
    return LoadedInput(K, points, D)


def _parameter(K: FilteredComplex, at: float | None) -> float:
    if at is not None:
        return at
    r_star = stable_component_parameter(compute_persistence(K, 0))
    logger.info(f"AUTO parameter resolved to {r_star:g}")
    return r_star


@click.group()
@click.option(
    "--config",
    "-c",
    type=click.Path(),
    default="./config/config.yaml",
    help="Configuration file path",
)
@click.pass_context
def cli(ctx, config):
    """concept-homology - persistent homology of labeled indicator data."""
    ctx.ensure_object(dict)
    manager = ConfigManager(config)
    loaded = manager.load_config()
    CustomizeLogger.make_logger(loaded.log)

    ctx.obj["config_path"] = config
    ctx.obj["config_manager"] = manager


@cli.command()
@click.argument("csv_path", metavar="CSV")
@point_options
@click.option("--at", default=None, help="Component parameter, AUTO or a number")
@click.option("--min-persistence", type=float, default=None, help="Report finite 2-cycles longer than this")
@click.option("--year", default=None, help="Identifier recorded in the report")
@click.option("--json", "json_path", type=click.Path(), default=None, help="Write the JSON report here")
@click.option("--svg", "svg_path", type=click.Path(), default=None, help="Write the SVG barcode here")
@click.pass_context
def analyze(ctx, csv_path, metric, max_dim, r_max, normalize, missing, at, min_persistence, year, json_path, svg_path):
    """Run the full pipeline on an indicator table."""
    config = _configure(
        ctx,
        metric=metric,
        max_dim=max_dim,
        r_max=r_max,
        normalize=normalize,
        missing=missing,
        at=at,
        min_persistence=min_persistence,
        year=year,
    )

    table = ingest_csv(csv_path, config.missing_policy)
    report = run_analysis(table, config)

    if svg_path:
        write_svg(report.persistence, svg_path, RenderSpec.from_config(config.render))

    if json_path:
        emit_report_json(report, json_path)
        parameters = report.parameters
        click.echo(
            f"{report.unique_point_count} unique points, {len(report.components)} components "
            f"at {format_real(parameters['at'] or 0.0)}, betti {tuple(parameters['betti'])}"
        )
    else:
        click.echo(emit_report_json(report), nl=False)


@cli.command()
@click.argument("csv_path", metavar="CSV")
@point_options
@input_kind_option
@click.option("--at", default=None, help="Parameter of the snapshot, AUTO or a number")
@click.option("--landmarks", default=None, callback=_parse_landmarks, help="Comma-separated landmark point indices")
@click.option("--steps", is_flag=True, help="Print Betti numbers at every filtration step")
@click.pass_context
def betti(ctx, csv_path, metric, max_dim, r_max, normalize, missing, input_kind, at, landmarks, steps):
    """Betti numbers of the complex at one parameter."""
    config = _configure(
        ctx,
        metric=metric,
        max_dim=max_dim,
        r_max=r_max,
        normalize=normalize,
        missing=missing,
        at=at,
        landmarks=landmarks,
    )
    K = _load(csv_path, config, input_kind).complex

    if steps:
        B = compute_persistence(K, config.max_dim)
        curves = [betti_curve(B, d, K.steps()) for d in range(config.max_dim + 1)]
        for k, r in enumerate(K.steps()):
            values = ", ".join(str(curve[k][1]) for curve in curves)
            click.echo(f"{format_real(r)}: ({values})")
        return

    r = _parameter(K, config.at)
    click.echo(str(betti_numbers(K.snapshot(r), config.max_dim)))


@cli.command()
@click.argument("csv_path", metavar="CSV")
@point_options
@input_kind_option
@click.option("--landmarks", default=None, callback=_parse_landmarks, help="Comma-separated landmark point indices")
@click.option("--svg", "svg_path", type=click.Path(), default=None, help="Write the SVG barcode here")
@click.pass_context
def persistence(ctx, csv_path, metric, max_dim, r_max, normalize, missing, input_kind, landmarks, svg_path):
    """Print the barcode, one interval per line."""
    config = _configure(
        ctx,
        metric=metric,
        max_dim=max_dim,
        r_max=r_max,
        normalize=normalize,
        missing=missing,
        landmarks=landmarks,
    )
    K = _load(csv_path, config, input_kind).complex
    B = compute_persistence(K, config.max_dim)

    if svg_path:
        write_svg(B, svg_path, RenderSpec.from_config(config.render))
    click.echo(render_barcode_text(B), nl=False)


@cli.command()
@click.argument("csv_path", metavar="CSV")
@point_options
@input_kind_option
@click.option("--at", default=None, help="Component parameter, AUTO or a number")
@click.pass_context
def components(ctx, csv_path, metric, max_dim, r_max, normalize, missing, input_kind, at):
    """List connected components with their representatives."""
    config = _configure(
        ctx,
        metric=metric,
        max_dim=max_dim,
        r_max=r_max,
        normalize=normalize,
        missing=missing,
        at=at,
    )
    loaded = _load(csv_path, config, input_kind)
    K = loaded.complex
    if not len(K):
        return
    r = _parameter(K, config.at)

    for c, component in enumerate(components_at(K, r)):
        if loaded.points is not None and loaded.distances is not None:
            representative = component_representative(component, loaded.distances, loaded.points)
        else:
            representative = f"v{min(component)}"
        members = ", ".join(loaded.vertex_label(v) for v in sorted(component))
        click.echo(f"component {c} ({len(component)} points): representative {representative}; members {members}")


def cli_main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and map failures to exit codes."""
    try:
        result = cli.main(
            args=list(argv) if argv is not None else None,
            prog_name="concept-homology",
            standalone_mode=False,
        )
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    except ArgumentError as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_USAGE
    except (DataError, StructuralError, OSError) as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_DATA
    return result if isinstance(result, int) else EXIT_OK


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
