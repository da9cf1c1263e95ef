"""
Command-line entry point: construct, verify, survey, convert and selfcheck.

Exit status: 0 on success, 1 for usage errors, unreadable input and
negative verification verdicts, 2 for inadmissible pairs and algorithmic
failures such as a stalled Havel-Hakimi run.
"""

import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import click

from .config import ForgeConfig, load_config
from .constructions import AdmissiblePair, build_regular_dp
from .enumeration import dump_graphs, enumerate_regular_by_degree, survey_modified_hh, survey_regular_dp
from .errors import CertificateError, DpForgeError, InadmissiblePairError
from .formats import FORMATS, format_graph, read_graph
from .graph import Graph
from .havel_hakimi import DegreeSequence, classic_hh, hh_dp_certificate, modified_hh, read_sequences
from .isometry import (
    DpCertificate,
    is_dp_bruteforce,
    isometric_peeling,
    peeling_certificate,
    read_certificate,
    verify_certificate,
    write_certificate,
)
from .reports import SurveyReport, VerifyReport, dumps
from .ui import ForgeUI, configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_FAILURE = 2

READABLE_FORMATS = ("graph6", "edges")


@dataclass
class CliState:
    config: ForgeConfig
    ui: ForgeUI


class ForgeGroup(click.Group):
    """Click group whose usage errors exit with status 1."""

    def make_context(self, *args, **kwargs):
        try:
            return super().make_context(*args, **kwargs)
        except click.UsageError as exc:
            exc.exit_code = EXIT_FALSE
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as exc:
            exc.exit_code = EXIT_FALSE
            raise


def _fail(ctx: click.Context, message: str, code: int = EXIT_FALSE, title: str = "Error"):
    ctx.obj.ui.show_error(message, title=title)
    ctx.exit(code)


def _emit(payload: str, out: Optional[str]) -> None:
    """Write a data payload to ``out`` or stdout, never through rich."""
    if out and out != "-":
        Path(out).write_text(payload, encoding="utf-8")
    else:
        click.echo(payload, nl=False)


def _format_or_fail(ctx: click.Context, g: Graph, fmt: str, groups=None) -> str:
    try:
        return format_graph(g, fmt, groups=groups)
    except DpForgeError as exc:
        _fail(ctx, str(exc), title="Cannot write graph")


def _load_graph(ctx: click.Context, path: str, input_format: Optional[str]) -> Graph:
    try:
        return read_graph(path, input_format)
    except DpForgeError as exc:
        _fail(ctx, str(exc), title="Unreadable input")


@click.group(cls=ForgeGroup)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="YAML settings file.")
@click.option("-j", "--jobs", type=int, default=None, help="Worker processes for surveys [env: DPFORGE_JOBS].")
@click.option("--log-level", default=None, help="Logging level [env: DPFORGE_LOG_LEVEL].")
@click.option("-v", "--verbose", is_flag=True, help="Log debug diagnostics to stderr.")
@click.version_option(package_name="dpforge")
@click.pass_context
def cli(ctx, config_path, jobs, log_level, verbose):
    """🔧 dpforge - build and verify distance-preserving graphs.

    Constructs regular dp graphs for every admissible order/degree pair,
    checks distance preservation exactly, runs the modified Havel-Hakimi
    algorithm and reproduces the regular-graph and Havel-Hakimi surveys.
    """
    ui = ForgeUI()
    try:
        config = load_config(config_path, {"jobs": jobs, "log_level": log_level})
    except DpForgeError as exc:
        ui.show_error(str(exc), title="Configuration")
        ctx.exit(EXIT_FALSE)
    configure_logging(config.log_level, verbose)
    ctx.obj = CliState(config, ui)


@cli.group(cls=ForgeGroup)
def construct():
    """Build a graph and optionally its dp certificate."""


@construct.command("regular")
@click.option("--n", "n", type=int, required=True, help="Number of vertices.")
@click.option("--r", "r", type=int, required=True, help="Degree.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="graph6", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), help="Write the graph here instead of stdout.")
@click.option("--emit-certificate", type=click.Path(dir_okay=False), help="Certificate file (.json for JSON).")
@click.option("--check-brute", is_flag=True, help="Also confirm dp-ness by exhaustive search.")
@click.pass_context
def construct_regular(ctx, n, r, fmt, out, emit_certificate, check_brute):
    """Regular dp graph on N vertices of degree R."""
    state: CliState = ctx.obj
    try:
        tagged, cert = build_regular_dp(n, r)
    except InadmissiblePairError as exc:
        _fail(ctx, str(exc), EXIT_FAILURE, title="Inadmissible")
    except DpForgeError as exc:
        _fail(ctx, str(exc), EXIT_FAILURE, title="Construction failed")
    state.ui.show_construction(n, r, AdmissiblePair(n, r).case, tagged.graph.m, tagged.parts)
    _emit(_format_or_fail(ctx, tagged.graph, fmt, groups=tagged.parts), out)
    if emit_certificate:
        write_certificate(cert, emit_certificate)
        state.ui.note(f"certificate written to {emit_certificate}")
    if check_brute:
        if n > state.config.brute_force_cap:
            state.ui.show_warning(f"skipping exhaustive check: n={n} exceeds the cap {state.config.brute_force_cap}")
        elif not is_dp_bruteforce(tagged.graph, stop_at_first_failure=True).is_dp:
            _fail(ctx, "exhaustive search disagrees with the certificate", EXIT_FAILURE)
        else:
            state.ui.note("exhaustive search confirms the graph is dp")


def _stall_message(outcome) -> str:
    residual = "(" + ",".join(map(str, outcome.residual)) + ")"
    return f"stopped after {outcome.iterations} iterations with residual {residual}"


@construct.command("hh")
@click.option("--sequence", help='Degree sequence, e.g. "3,2,2,2,1".')
@click.option(
    "--sequence-file",
    type=click.Path(exists=True, dir_okay=False),
    help="One sequence per line; '#' starts a comment. Each realisation is written in turn.",
)
@click.option("--modified", is_flag=True, help="Run the variant that never re-sorts.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="graph6", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), help="Write the graph here instead of stdout.")
@click.option("--emit-certificate", type=click.Path(dir_okay=False), help="Prefix certificate file (modified only).")
@click.pass_context
def construct_hh(ctx, sequence, sequence_file, modified, fmt, out, emit_certificate):
    """Havel-Hakimi realisation of a degree sequence."""
    state: CliState = ctx.obj
    if (sequence is None) == (sequence_file is None):
        raise click.UsageError("give exactly one of --sequence, --sequence-file")
    if emit_certificate and not modified:
        raise click.UsageError("--emit-certificate needs --modified")
    if emit_certificate and sequence_file:
        raise click.UsageError("--emit-certificate takes a single --sequence")
    realise = modified_hh if modified else classic_hh
    try:
        if sequence_file:
            sequences = read_sequences(Path(sequence_file).read_text(encoding="utf-8").splitlines())
        else:
            sequences = [DegreeSequence.parse(sequence)]
    except (DpForgeError, OSError, UnicodeDecodeError) as exc:
        _fail(ctx, str(exc), title="Unreadable input")
    payloads, failures = [], []
    for seq in sequences:
        outcome = realise(seq)
        if outcome.success:
            payloads.append(_format_or_fail(ctx, outcome.graph, fmt))
        else:
            failures.append(outcome)
    if sequence is not None and failures:
        _fail(ctx, f"Havel-Hakimi {_stall_message(outcome)}", EXIT_FAILURE, title="Failed")
    _emit("".join(payloads), out)
    for failed in failures:
        state.ui.show_warning(f"{failed.sequence} {_stall_message(failed)}")
    if sequence_file:
        state.ui.note(f"{len(payloads)} of {len(sequences)} sequences realised")
        if failures:
            ctx.exit(EXIT_FAILURE)
    if emit_certificate:
        try:
            write_certificate(hh_dp_certificate(outcome), emit_certificate)
        except CertificateError as exc:
            _fail(ctx, str(exc), EXIT_FAILURE, title="No certificate")
        state.ui.note(f"certificate written to {emit_certificate}")


@cli.command()
@click.option("--in", "input_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--input-format", type=click.Choice(READABLE_FORMATS), help="Override detection by extension.")
@click.option("--brute", is_flag=True, help="Exhaustive search over every order.")
@click.option("--certificate", type=click.Path(exists=True, dir_okay=False), help="Check a certificate file.")
@click.option("--lemma", is_flag=True, help="Greedy common-neighbour peeling.")
@click.option("--json", "json_path", help="Write a JSON report ('-' for stdout).")
@click.option("--cap", type=int, default=None, help="Largest n for --brute [env: DPFORGE_BRUTE_CAP].")
@click.option(
    "--emit-certificate",
    type=click.Path(dir_okay=False),
    help="With --brute or --lemma, write the certificate found when every order is covered.",
)
@click.pass_context
def verify(ctx, input_path, input_format, brute, certificate, lemma, json_path, cap, emit_certificate):
    """Decide whether a graph is distance preserving."""
    state: CliState = ctx.obj
    if sum([brute, certificate is not None, lemma]) != 1:
        raise click.UsageError("choose exactly one of --brute, --certificate, --lemma")
    if emit_certificate and certificate:
        raise click.UsageError("--emit-certificate needs --brute or --lemma")
    g = _load_graph(ctx, input_path, input_format)
    quiet = json_path == "-"
    found = None
    try:
        if brute:
            cap = cap if cap is not None else state.config.brute_force_cap
            if g.n > cap:
                _fail(ctx, f"n={g.n} exceeds the exhaustive-search cap {cap}; raise it with --cap")
            report = is_dp_bruteforce(g)
            document, ok = VerifyReport.from_brute(g, report), report.is_dp
            if report.is_dp:
                found = report.to_certificate()
            if not quiet:
                state.ui.show_brute_report(report)
        elif certificate:
            verdict = verify_certificate(g, read_certificate(certificate))
            document, ok = VerifyReport.from_certificate(g, verdict), verdict.valid
            if not quiet:
                state.ui.show_certificate_verdict(verdict, g.n)
        else:
            removed = isometric_peeling(g)
            document, ok = VerifyReport.from_peeling(g, removed), len(removed) >= g.n - 1
            if ok:
                found = DpCertificate.from_subsets(g.n, peeling_certificate(g, removed))
            if not quiet:
                state.ui.show_peeling(removed, g.n)
    except DpForgeError as exc:
        _fail(ctx, str(exc))
    if emit_certificate:
        if found is None:
            state.ui.show_warning("no certificate written: not every order is covered")
        else:
            write_certificate(found, emit_certificate)
            state.ui.note(f"certificate written to {emit_certificate}")
    if json_path:
        _emit(dumps(document), json_path)
    ctx.exit(EXIT_OK if ok else EXIT_FALSE)


@cli.group(cls=ForgeGroup)
def survey():
    """Reproduce the survey tables by exhaustive enumeration."""


def _survey_range(ctx, min_n: int, max_n: int, cap: int, hint: str) -> List[int]:
    if max_n > cap:
        _fail(ctx, f"--max-n {max_n} exceeds the cap {cap}{hint}")
    if min_n > max_n:
        raise click.UsageError("--min-n must not exceed --max-n")
    return list(range(min_n, max_n + 1))


@survey.command("regular")
@click.option("--max-n", type=int, default=10, show_default=True)
@click.option("--min-n", type=int, default=5, show_default=True)
@click.option("--deep", is_flag=True, help="Allow n up to 13 (hours at n=13).")
@click.option("--json", "json_path", help="Write a JSON report ('-' for stdout).")
@click.option("--dump-graphs", "dump_dir", type=click.Path(file_okay=False), help="Write one graph6 file per class here.")
@click.pass_context
def survey_regular(ctx, max_n, min_n, deep, json_path, dump_dir):
    """Share of connected regular graphs that are distance preserving."""
    state: CliState = ctx.obj
    cap = state.config.deep_survey_cap if deep else state.config.regular_survey_cap
    orders = _survey_range(ctx, min_n, max_n, cap, "" if deep else "; pass --deep to go further")
    rows = []
    with state.ui.progress("enumerating regular graphs", total=len(orders)) as advance:
        for n in orders:
            groups = enumerate_regular_by_degree(n)
            if dump_dir:
                dump_graphs(n, Path(dump_dir), groups)
            rows.append(survey_regular_dp(n, state.config.jobs, groups))
            advance()
    _finish_survey(ctx, "regular", rows, json_path)


@survey.command("hh")
@click.option("--max-n", type=int, default=12, show_default=True)
@click.option("--min-n", type=int, default=5, show_default=True)
@click.option("--json", "json_path", help="Write a JSON report ('-' for stdout).")
@click.pass_context
def survey_hh(ctx, max_n, min_n, json_path):
    """Success rate of the modified Havel-Hakimi algorithm."""
    state: CliState = ctx.obj
    orders = _survey_range(ctx, min_n, max_n, state.config.hh_survey_cap, "")
    rows = []
    with state.ui.progress("running modified Havel-Hakimi", total=len(orders)) as advance:
        for n in orders:
            rows.append(survey_modified_hh(n, state.config.jobs))
            advance()
    _finish_survey(ctx, "hh", rows, json_path)


def _finish_survey(ctx, kind: str, rows, json_path: Optional[str]) -> None:
    document = SurveyReport.from_rows(kind, rows)
    if json_path != "-":
        ctx.obj.ui.show_survey(kind, document.rows)
    if json_path:
        _emit(dumps(document), json_path)


@cli.command()
@click.option("--in", "input_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--input-format", type=click.Choice(READABLE_FORMATS), help="Override detection by extension.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), required=True)
@click.option("--out", type=click.Path(dir_okay=False), help="Write here instead of stdout.")
@click.pass_context
def convert(ctx, input_path, input_format, fmt, out):
    """Translate a graph between graph6, edge list and DOT."""
    g = _load_graph(ctx, input_path, input_format)
    _emit(_format_or_fail(ctx, g, fmt), out)


@cli.command()
@click.pass_context
def selfcheck(ctx):
    """Run the built-in acceptance battery."""
    from .selfcheck import SelfChecker

    state: CliState = ctx.obj
    report = SelfChecker(state.ui.console, jobs=state.config.jobs).run_all()
    ctx.exit(EXIT_OK if report["passed"] == report["total"] else EXIT_FALSE)


def main():
    cli(prog_name="dpforge")


if __name__ == "__main__":
    sys.exit(main())
