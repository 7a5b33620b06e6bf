from pathlib import Path
from typing import Callable, Dict, Optional

from .analysis import to_polar
from .carrier import bifurcation_scan, cobweb_path, detect_period, iterate_carrier
from .comparator import Comparator
from .errors import ConfigError, DomainError, InsufficientDataError, NumericalError
from .piecewise import assemble_trajectory
from .reporter import (
    console,
    display_bifurcation,
    display_maxima,
    display_period,
    display_report,
    print_error,
)
from .rossler import cluster_values, extract_x_maxima, first_return_map, integrate
from .types import Mode, RunConfig, Trajectory
from .writers import (
    write_json,
    write_projection_svg,
    write_rows_csv,
    write_trajectory_csv,
)

EXIT_OK = 0
EXIT_INVALID_CONFIG = 1
EXIT_NUMERICAL_FAILURE = 2


def sibling_path(path: Optional[str], suffix: str) -> Optional[Path]:
    """out.csv -> out.<suffix>; None when the primary artifact goes to stdout."""
    if path is None or path == "-":
        return None
    primary = Path(path)
    return primary.with_name(f"{primary.stem}.{suffix}")


def _write_siblings(config: RunConfig, artifacts: Dict[str, Callable[[Path], None]]) -> None:
    for suffix, write in artifacts.items():
        target = sibling_path(config.output.path, suffix)
        if target is None:
            console.print(f"[yellow]Note:[/yellow] skipping {suffix}; pass --output to write it.")
            continue
        write(target)
        console.print(f"💾 Wrote [cyan]{target}[/cyan]")


def _emit_trajectory(traj: Trajectory, config: RunConfig, extra: Optional[dict] = None) -> None:
    out = config.output
    if out.format == "svg":
        write_projection_svg(traj, out.plane, out.path)
    elif out.format == "json":
        write_json({"trajectory": traj, **(extra or {})}, out.path)
    else:
        write_trajectory_csv(traj, out.path)
    if out.path:
        console.print(f"💾 Wrote [cyan]{out.path}[/cyan] ({len(traj)} samples)")
    if out.polar:
        samples = to_polar(traj)
        _write_siblings(config, {
            "polar.csv": lambda p: write_rows_csv(
                ("theta", "r", "z"), ((s.theta, s.r, s.z) for s in samples), p
            ),
        })


def _synthesize(config: RunConfig) -> None:
    sequence = iterate_carrier(config.carrier)
    console.print(
        f"🧩 Assembling {len(sequence.radii) - 1} pieces of {config.shape.npoints} points "
        f"at [cyan]lambda={config.carrier.lam}[/cyan]..."
    )
    _emit_trajectory(assemble_trajectory(sequence.radii, config.shape), config)


def _rossler(config: RunConfig) -> None:
    console.print(
        f"🌀 Integrating Rössler flow at [cyan]c={config.rossler.c}[/cyan] "
        f"up to t={config.rossler.t_end} with dt={config.rossler.dt}..."
    )
    traj = integrate(config.rossler)
    maxima = extract_x_maxima(traj, config.rossler.transient)
    if not maxima:
        raise InsufficientDataError(
            f"No X maxima after t={config.rossler.transient}; increase --t-end."
        )
    return_map = first_return_map(maxima)
    display_maxima(maxima, len(cluster_values([v for _, v in maxima])))

    if config.output.format == "json":
        _emit_trajectory(traj, config, {"maxima": maxima, "return_map": return_map.pairs})
        return
    _emit_trajectory(traj, config)
    _write_siblings(config, {
        "maxima.csv": lambda p: write_rows_csv(("t", "xmax"), maxima, p),
        "return_map.csv": lambda p: write_rows_csv(("xmax_n", "xmax_next"), return_map.pairs, p),
    })


def _carrier(config: RunConfig) -> None:
    sequence = iterate_carrier(config.carrier)
    result = detect_period(
        config.carrier.lam,
        config.carrier.x0,
        transient=config.period.transient,
        max_period=config.period.max_period,
        tol=config.period.tol,
    )
    display_period(result)
    if config.output.format == "json":
        write_json(
            {
                "config": config.carrier,
                "sequence": sequence,
                "period": result,
                "cobweb": cobweb_path(config.carrier),
            },
            config.output.path,
        )
        return
    write_rows_csv(
        ("i", "x", "r"),
        ((i, x, r) for i, (x, r) in enumerate(zip(sequence.xs, sequence.radii))),
        config.output.path,
    )
    _write_siblings(config, {"period.json": lambda p: write_json(result, p)})


def _bifurcation(config: RunConfig) -> None:
    scan = config.scan
    console.print(
        f"🔍 Scanning {scan.steps} values of lambda in [{scan.lambda_min}, {scan.lambda_max}]..."
    )
    entries = bifurcation_scan(
        scan.lambda_min,
        scan.lambda_max,
        scan.steps,
        x0=config.carrier.x0,
        transient=config.period.transient,
        max_period=config.period.max_period,
        tol=config.period.tol,
        niter=config.carrier.niter,
    )
    display_bifurcation(entries)
    if config.output.format == "json":
        write_json(entries, config.output.path)
        return
    write_rows_csv(
        ("lambda", "period", "kind", "lyapunov"),
        (
            (
                entry.lam,
                entry.result.period if entry.result.period is not None else "",
                entry.result.kind.value,
                entry.result.lyapunov_estimate,
            )
            for entry in entries
        ),
        config.output.path,
    )


def _compare(config: RunConfig, explain: bool = False) -> None:
    report = Comparator().run(config)
    display_report(report, show_explanations=explain)
    if config.output.format == "json":
        write_json(report, config.output.path)
        return
    header = ("lambda", "c", "carrier_period", "rossler_period", "rank_match",
              "min_separation", "junction_gap_max")
    row = (
        report.lam,
        report.c,
        report.carrier_period.label(),
        report.rossler_period,
        report.rank_match.value,
        report.min_separation,
        report.junction_gap_max,
    )
    write_rows_csv(header, [row], config.output.path)


_HANDLERS: Dict[Mode, Callable[[RunConfig], None]] = {
    Mode.SYNTHESIZE: _synthesize,
    Mode.ROSSLER: _rossler,
    Mode.CARRIER: _carrier,
    Mode.BIFURCATION: _bifurcation,
}


def run(config: RunConfig, explain: bool = False) -> int:
    """Executes one mode and returns the process exit status."""
    try:
        if config.mode is Mode.COMPARE:
            _compare(config, explain=explain)
        else:
            _HANDLERS[config.mode](config)
    except (ConfigError, DomainError) as e:
        print_error(str(e))
        return EXIT_INVALID_CONFIG
    except NumericalError as e:
        print_error(str(e), title="Numerical failure")
        return EXIT_NUMERICAL_FAILURE
    except OSError as e:
        print_error(str(e), title="I/O error")
        return EXIT_NUMERICAL_FAILURE
    return EXIT_OK
