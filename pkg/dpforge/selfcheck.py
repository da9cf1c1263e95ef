"""
Self-check harness for dpforge.
Runs a quick acceptance battery against the installed library and reports it with rich.
"""

import time
from typing import Any, Callable, Dict, List, Optional, Tuple

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from .canonical import are_isomorphic
from .constructions import build_regular_dp, is_admissible
from .enumeration import survey_modified_hh, survey_regular_dp
from .graph import Graph, complete_graph, cycle_graph, is_connected, is_regular
from .havel_hakimi import modified_hh
from .isometry import is_dp_bruteforce

# Rows that must be reproduced exactly: n -> (total, successes).
REGULAR_ROWS = {5: (2, 1), 6: (5, 4), 7: (4, 3)}
HH_ROWS = {5: (20, 12), 6: (71, 32)}

# Hand-drawn reference graphs: 4-regular on 7 vertices (two bottom edges plus
# every bottom-top pair) and the 9-vertex graph with an external apex.
REFERENCE_G7 = (7, [(0, 1), (2, 3)] + [(b, t) for b in range(4) for t in range(4, 7)])
REFERENCE_G9 = (
    9,
    [(1 + i, 5 + j) for i in range(4) for j in range(4) if not (i < 2 and j < 2)]
    + [(0, 1), (0, 2), (0, 5), (0, 6), (1, 6), (5, 2)],
)


class CheckResult:
    """Represents the result of one check."""

    def __init__(self, name: str, success: bool, message: str = "", execution_time: float = 0.0):
        self.name = name
        self.success = success
        self.message = message
        self.execution_time = execution_time

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "success": self.success,
            "message": self.message,
            "execution_time": round(self.execution_time, 3),
        }


class SelfChecker:
    """Quick acceptance battery: table rows, negative controls, constructions, reference graphs."""

    def __init__(self, console: Optional[Console] = None, jobs: int = 1):
        self.console = console or Console()
        self.jobs = jobs
        self.results: List[CheckResult] = []

    def _run(self, name: str, check: Callable[[], Tuple[bool, str]]) -> CheckResult:
        start = time.perf_counter()
        try:
            success, message = check()
        except Exception as e:  # a crashing check is a failed check
            success, message = False, f"{type(e).__name__}: {e}"
        result = CheckResult(name, success, message, time.perf_counter() - start)
        self.results.append(result)
        return result

    def run_all(self) -> Dict[str, Any]:
        self.console.print(Panel("🧪 Running dpforge self-check", style="bold blue"))
        categories = [
            ("regular_survey", self._check_regular_rows),
            ("hh_survey", self._check_hh_rows),
            ("negative_controls", self._check_negative_controls),
            ("construction_sweep", self._check_construction_sweep),
            ("reference_graphs", self._check_references),
        ]
        for category, run in categories:
            self.console.print(f"[bold cyan]Checking {category}...[/]")
            run()
        report = self._generate_report()
        self._display_report(report)
        return report

    def _check_regular_rows(self) -> None:
        for n, expected in REGULAR_ROWS.items():
            def check(n=n, expected=expected):
                row = survey_regular_dp(n, jobs=self.jobs)
                return (row.total, row.successes) == expected, f"got ({row.total}, {row.successes}), want {expected}"
            self._run(f"regular survey n={n}", check)

    def _check_hh_rows(self) -> None:
        for n, expected in HH_ROWS.items():
            def check(n=n, expected=expected):
                row = survey_modified_hh(n, jobs=self.jobs)
                return (row.total, row.successes) == expected, f"got ({row.total}, {row.successes}), want {expected}"
            self._run(f"modified HH survey n={n}", check)

    def _check_negative_controls(self) -> None:
        def cycles():
            failing = [n for n in range(5, 9) if is_dp_bruteforce(cycle_graph(n), stop_at_first_failure=True).is_dp]
            return not failing, "C5..C8 are not dp" if not failing else f"cycles reported dp: {failing}"

        def stuck_sequence():
            outcome = modified_hh((3, 3, 3, 3, 3, 3))
            return (not outcome.success and outcome.residual == (3, 3)), f"residual {outcome.residual}"

        def complete():
            return is_dp_bruteforce(complete_graph(5)).is_dp, "K5 is dp"

        self._run("cycles are not dp", cycles)
        self._run("modified HH stalls on (3,3,3,3,3,3)", stuck_sequence)
        self._run("complete graph is dp", complete)

    def _check_construction_sweep(self) -> None:
        def sweep():
            built = 0
            for r in range(3, 9):
                for n in range(r + 1, 21):
                    if not is_admissible(n, r):
                        continue
                    tagged, _ = build_regular_dp(n, r)
                    if not (is_regular(tagged.graph, r) and is_connected(tagged.graph)):
                        return False, f"(n={n}, r={r}) is not a connected {r}-regular graph"
                    built += 1
            return True, f"{built} admissible pairs built with verified certificates"

        self._run("construction sweep n<=20, r<=8", sweep)

    def _check_references(self) -> None:
        for (n, r), (order, edges) in {(7, 4): REFERENCE_G7, (9, 4): REFERENCE_G9}.items():
            def check(n=n, r=r, order=order, edges=edges):
                tagged, _ = build_regular_dp(n, r)
                same = are_isomorphic(tagged.graph, Graph.from_edges(order, edges))
                return same, "isomorphic to the reference drawing" if same else "differs from the reference drawing"
            self._run(f"reference graph n={n} r={r}", check)

    def _generate_report(self) -> Dict[str, Any]:
        passed = sum(1 for r in self.results if r.success)
        total = len(self.results)
        return {
            "total": total,
            "passed": passed,
            "success_rate": 100.0 * passed / total if total else 0.0,
            "results": [r.to_dict() for r in self.results],
        }

    def _display_report(self, report: Dict[str, Any]) -> None:
        table = Table(title="Self-check results")
        table.add_column("Check", style="cyan")
        table.add_column("Status")
        table.add_column("Details", style="dim")
        table.add_column("Time (s)", justify="right")
        for result in self.results:
            status = "[green]✅ PASS[/]" if result.success else "[red]❌ FAIL[/]"
            table.add_row(result.name, status, result.message, f"{result.execution_time:.2f}")
        self.console.print(table)
        color = "green" if report["passed"] == report["total"] else "red"
        self.console.print(
            Panel(f"{report['passed']}/{report['total']} checks passed", border_style=color, title="Summary")
        )
