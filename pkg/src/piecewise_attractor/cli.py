import sys
from typing import Any, Callable, Dict, Optional

import click

from .config import FORMATS, PLANES, PRESETS, build_run_config, load_config_file
from .errors import ConfigError
from .reporter import print_error
from .runner import EXIT_INVALID_CONFIG, run
from .types import Mode

# click parameter name -> config-file key, where they differ.
_RENAMED = {"lam": "lambda"}


def shared_options(command: Callable) -> Callable:
    """Every mode accepts the whole flag namespace; unset flags stay None so the config file can fill them."""
    options = [
        click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
                     help="JSON file whose keys mirror these flags. Flags win over the file."),
        click.option("--lambda", "lam", type=float, help="Logistic-map parameter in [0, 4]."),
        click.option("--x0", type=float, help="Initial carrier iterate in [0, 1]."),
        click.option("--niter", type=int, help="Number of carrier iterations (pieces)."),
        click.option("--npoints", type=int, help="Samples per piece."),
        click.option("--preset", type=click.Choice(sorted(PRESETS)), help="Shape parameter preset."),
        click.option("--m3", type=float, help="Sigmoid blend point."),
        click.option("--m4", type=float, help="Sigmoid width."),
        click.option("--m5", type=float, help="First-level oscillator amplitude."),
        click.option("--m6", type=float, help="First-level oscillator centre."),
        click.option("--m7", type=float, help="Zero-level bump amplitude."),
        click.option("--m8", type=float, help="Zero-level bump centre."),
        click.option("--gauss-a", type=float, help="Gaussian sharpness of both oscillator terms."),
        click.option("--c3", type=float, help="Elevation scale."),
        click.option("--phase", type=float, help="Elevation phase in radians."),
        click.option("--c", type=float, help="Rössler parameter c."),
        click.option("--rossler-a", type=float, help="Rössler parameter a."),
        click.option("--rossler-b", type=float, help="Rössler parameter b."),
        click.option("--initial", type=float, nargs=3, default=None, help="Rössler initial state X Y Z."),
        click.option("--dt", type=float, help="RK4 step size."),
        click.option("--t-end", type=float, help="Integration end time."),
        click.option("--transient", type=float, help="Flow time discarded before maxima are collected."),
        click.option("--carrier-transient", type=int, help="Carrier iterates discarded before period detection."),
        click.option("--max-period", type=int, help="Longest period searched for."),
        click.option("--tol", type=float, help="Period-detection tolerance."),
        click.option("--lambda-min", type=float, help="Bifurcation scan lower bound."),
        click.option("--lambda-max", type=float, help="Bifurcation scan upper bound."),
        click.option("--steps", type=int, help="Bifurcation scan grid size."),
        click.option("--exclusion", type=int, help="Index window skipped by the self-intersection scan."),
        click.option("--output", "-o", type=click.Path(dir_okay=False),
                     help="Artifact path; stdout when omitted."),
        click.option("--format", "fmt", type=click.Choice(FORMATS), help="Artifact format."),
        click.option("--plane", type=click.Choice(PLANES), help="Projection plane for svg output."),
        click.option("--polar", is_flag=True, default=None, help="Also write a polar sibling artifact."),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _flags(params: Dict[str, Any]) -> Dict[str, Any]:
    flags = {}
    for name, value in params.items():
        if name == "fmt":
            name = "format"
        flags[_RENAMED.get(name, name)] = value
    return flags


def _invoke(mode: Mode, config_path: Optional[str], params: Dict[str, Any], explain: bool = False) -> None:
    try:
        file_values = load_config_file(config_path) if config_path else None
        config = build_run_config(mode, _flags(params), file_values)
    except ConfigError as e:
        print_error(str(e))
        sys.exit(EXIT_INVALID_CONFIG)
    sys.exit(run(config, explain=explain))


@click.group()
@click.version_option(package_name="piecewise-attractor")
def cli() -> None:
    """Piecewise closed-form Rössler-like trajectories and their validation."""


@cli.command()
@shared_options
def synthesize(config_path: Optional[str], **params: Any) -> None:
    """Assemble a trajectory from the logistic-map carrier."""
    _invoke(Mode.SYNTHESIZE, config_path, params)


@cli.command()
@shared_options
def rossler(config_path: Optional[str], **params: Any) -> None:
    """Integrate the Rössler flow and extract its X maxima and return map."""
    _invoke(Mode.ROSSLER, config_path, params)


@cli.command()
@shared_options
def carrier(config_path: Optional[str], **params: Any) -> None:
    """Write the carrier iterates and classify its regime."""
    _invoke(Mode.CARRIER, config_path, params)


@cli.command()
@shared_options
def bifurcation(config_path: Optional[str], **params: Any) -> None:
    """Classify the carrier over a grid of lambda values."""
    _invoke(Mode.BIFURCATION, config_path, params)


@cli.command()
@shared_options
@click.option("--explain", is_flag=True, default=False, help="Show detailed explanations for each check.")
def compare(config_path: Optional[str], explain: bool, **params: Any) -> None:
    """Compare a carrier at lambda against the Rössler flow at c."""
    _invoke(Mode.COMPARE, config_path, params, explain=explain)


if __name__ == "__main__":
    cli()
