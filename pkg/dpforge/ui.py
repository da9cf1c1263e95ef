"""
Console rendering for the dpforge CLI.
Verdict panels, survey tables and progress go through rich; data payloads never do.
"""

import logging
from contextlib import contextmanager
from enum import Enum
from typing import Dict, Iterator, List, Mapping, Optional, Sequence

from rich.box import ROUNDED, SIMPLE
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.progress import Progress, SpinnerColumn, TextColumn, TimeElapsedColumn
from rich.table import Table


class UITheme(Enum):
    """UI theme colors and styles."""
    PRIMARY = "bright_blue"
    SUCCESS = "bright_green"
    WARNING = "bright_yellow"
    ERROR = "bright_red"
    INFO = "cyan"
    MUTED = "dim white"


SURVEY_COLUMNS = {
    "regular": ("n", "# connected regular graphs", "# dp graphs", "% dp graphs"),
    "hh": ("n", "# graphical degree sequences", "# successes", "% successes"),
}


def configure_logging(level: str = "WARNING", verbose: bool = False) -> None:
    """Route library logging through a RichHandler on stderr."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, level.upper(), logging.WARNING),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=True)],
        force=True,
    )


class ForgeUI:
    """Human-facing output; ``console`` is stdout, ``err_console`` is stderr."""

    def __init__(self, console: Optional[Console] = None, err_console: Optional[Console] = None):
        self.console = console or Console(highlight=False)
        self.err_console = err_console or Console(stderr=True, highlight=False)

    def show_success(self, message: str, title: str = "✅ Success"):
        self.console.print(Panel(message, title=title, border_style=UITheme.SUCCESS.value, box=ROUNDED))

    def show_failure(self, message: str, title: str = "❌ Failed"):
        """A negative verdict (not an error): printed on stdout like any other result."""
        self.console.print(Panel(message, title=title, border_style=UITheme.ERROR.value, box=ROUNDED))

    def show_error(self, message: str, title: str = "Error"):
        self.err_console.print(Panel(message, title=f"❌ {title}", border_style=UITheme.ERROR.value, box=ROUNDED))

    def show_warning(self, message: str):
        self.err_console.print(f"[{UITheme.WARNING.value}]⚠️  {message}[/]")

    def note(self, message: str):
        """Status line on stderr so it never mixes with a payload on stdout."""
        self.err_console.print(f"[{UITheme.MUTED.value}]{message}[/]")

    def show_brute_report(self, report) -> None:
        if report.is_dp:
            self.show_success(f"dp: every order 1..{report.n} has an isometric subgraph", title="✅ Verdict")
        else:
            self.show_failure(f"not dp, first failing order {report.first_failing_order}", title="❌ Verdict")
        table = Table(box=SIMPLE, show_header=True, header_style=f"bold {UITheme.PRIMARY.value}")
        table.add_column("order", justify="right")
        table.add_column("witness")
        for k in sorted(report.witnesses, reverse=True):
            witness = report.witnesses[k]
            table.add_row(str(k), " ".join(map(str, witness)) if witness is not None else "[red]none[/]")
        self.console.print(table)

    def show_certificate_verdict(self, verdict, n: int) -> None:
        if verdict.valid:
            self.show_success(f"certificate valid for all orders 1..{n}", title="✅ Verdict")
        else:
            self.show_failure(
                f"certificate invalid, first failing order {verdict.first_failing_order}", title="❌ Verdict"
            )

    def show_peeling(self, removed: Sequence[int], n: int) -> None:
        complete = len(removed) >= n - 1
        message = (
            f"common-neighbour peeling removed {len(removed)} vertices: {' '.join(map(str, removed)) or '-'}\n"
            + (f"certified all orders 1..{n}" if complete else f"certified orders {n - len(removed)}..{n} only")
        )
        if complete:
            self.show_success(message, title="✅ Peeling")
        else:
            self.show_failure(message, title="⚠️  Peeling")

    def show_survey(self, kind: str, rows: List[Mapping]) -> None:
        title = {
            "regular": "Percentage of regular graphs which are distance preserving",
            "hh": "Success rate of the modified Havel-Hakimi algorithm",
        }[kind]
        table = Table(title=title, box=ROUNDED, header_style=f"bold {UITheme.PRIMARY.value}")
        for i, name in enumerate(SURVEY_COLUMNS[kind]):
            table.add_column(name, justify="right", style=UITheme.INFO.value if i == 0 else None)
        for row in rows:
            table.add_row(str(row["n"]), str(row["total"]), str(row["successes"]), f"{row['percentage']:.3f}")
        self.console.print(table)

    def show_construction(self, n: int, r: int, case: str, m: int, parts: Dict[str, Sequence[int]]) -> None:
        lines = [f"n={n}  r={r}  edges={m}  case {case}"]
        lines += [f"• {name}: {' '.join(map(str, members))}" for name, members in parts.items()]
        self.err_console.print(Panel("\n".join(lines), title="🔧 Construction", border_style=UITheme.INFO.value, box=SIMPLE))

    @contextmanager
    def progress(self, description: str, total: Optional[int] = None) -> Iterator:
        """Spinner on stderr; yields a callable that advances the task by one."""
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            TimeElapsedColumn(),
            console=self.err_console,
            transient=True,
            disable=not self.err_console.is_terminal,
        ) as progress:
            task_id = progress.add_task(f"[{UITheme.PRIMARY.value}]{description}[/]", total=total)
            yield lambda: progress.advance(task_id)
