from collections import Counter
from typing import List, Sequence

from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from .types import BifurcationEntry, ComparisonReport, Maximum, PeriodResult

# Data goes to stdout or files; everything meant for a human goes here.
console = Console(stderr=True)


def print_error(message: str, title: str = "Error") -> None:
    console.print(f"[bold red]{title}:[/bold red] {escape(message)}")


def display_period(result: PeriodResult) -> None:
    lyap = "n/a" if result.lyapunov_estimate is None else f"{result.lyapunov_estimate:.5f}"
    body = f"Regime: [bold]{result.label()}[/bold]\nLyapunov estimate: {lyap}"
    if result.is_periodic:
        cycle = ", ".join(f"{v:.6f}" for v in result.cycle[:8])
        if len(result.cycle) > 8:
            cycle += ", ..."
        body += f"\nCycle: {cycle}"
    console.print(Panel(body, title="[bold]Carrier[/bold]", expand=False))


def display_bifurcation(entries: List[BifurcationEntry]) -> None:
    counts = Counter(entry.result.label() for entry in entries)
    table = Table(title="Bifurcation scan", show_header=True, header_style="bold magenta")
    table.add_column("Regime", style="cyan")
    table.add_column("Grid points", justify="right")
    for label, count in sorted(counts.items()):
        table.add_row(label, str(count))
    console.print(table)


def display_maxima(maxima: Sequence[Maximum], clusters: int) -> None:
    console.print(
        f"📈 Found [bold]{len(maxima)}[/bold] X maxima after the transient, "
        f"in [bold]{clusters}[/bold] clusters."
    )


def display_report(report: ComparisonReport, show_explanations: bool = False) -> None:
    failed = [finding for finding in report.findings if not finding.passed]
    summary_text = (
        f"lambda={report.lam}  c={report.c}\n"
        f"Carrier: [bold]{report.carrier_period.label()}[/bold]   "
        f"Rössler clusters: [bold]{report.rossler_period}[/bold]\n"
        f"Rank match: [bold]{report.rank_match.value}[/bold]\n"
        f"Min separation: {report.min_separation:.4g}   "
        f"Max junction gap: {report.junction_gap_max:.4g}"
    )
    title = "[bold green]Comparison passed[/bold green]" if not failed else "[bold yellow]Comparison flagged[/bold yellow]"
    console.print(Panel(summary_text, title=title, expand=False))

    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Check", style="cyan", width=8)
    table.add_column("Result", width=8)
    table.add_column("Message")
    for finding in sorted(report.findings, key=lambda f: f.check_id):
        result = "[green]pass[/green]" if finding.passed else {
            "warning": "[yellow]warn[/yellow]",
            "error": "[bold red]fail[/bold red]",
        }.get(finding.severity, "fail")
        table.add_row(finding.check_id, result, escape(finding.message))
    console.print(table)

    if show_explanations:
        console.print("\n[bold]💡 Explanations[/bold]")
        for finding in sorted(report.findings, key=lambda f: f.check_id):
            text_content = Text()
            text_content.append(f"{finding.check_id}: ", style="bold cyan")
            text_content.append(finding.message)
            text_content.append("\n\n")
            text_content.append(finding.explanation or "")
            console.print(
                Panel(
                    text_content,
                    title=f"Explanation for check {finding.check_id}",
                    border_style="green",
                    expand=False,
                )
            )
