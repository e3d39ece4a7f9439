"""Command-line front end for reproducible protocol runs and scans.

Exit codes: 0 success, 2 a protocol hypothesis or precondition is unmet,
3 a size bound was exceeded, 1 internal error.  All JSON output is
byte-deterministic for identical inputs; timings go to stderr only.
"""

from __future__ import annotations

import json
import time
from pathlib import Path

import click

from . import io as gio
from .bottleneck import report_to_dict, scan_all
from .errors import (
    DisconnectedError,
    GraphDomainError,
    HypothesisError,
    ProtocolError,
    SizeBoundError,
    ZeroProbabilityError,
)
from .graph import LabeledGraph
from .orbit import lc_orbit, vertex_minor
from .protocols import (
    ProtocolTranscript,
    ghz3_extract,
    ghz4_extract,
    repeater_protocol,
    validate_transcript,
    x_protocol,
)
from .quantum import verify_graph

EXIT_HYPOTHESIS = 2
EXIT_SIZE_BOUND = 3


def _fail(message: str, code: int) -> SystemExit:
    click.echo(f"error: {message}", err=True)
    return SystemExit(code)


def _guess_format(path: str) -> str:
    suffix = Path(path).suffix.lower()
    return {
        ".g6": "graph6",
        ".graph6": "graph6",
        ".json": "json",
        ".dot": "dot",
    }.get(suffix, "edgelist")


def _read_graph(path: str, fmt: str | None) -> LabeledGraph:
    text = Path(path).read_text()
    return gio.load_graph(text, fmt or _guess_format(path))


def _json_text(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _emit(payload: dict, out: str | None) -> None:
    text = _json_text(payload)
    if out is None or out == "-":
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)


def _emit_frames(transcript: ProtocolTranscript, directory: str) -> None:
    frames = Path(directory)
    frames.mkdir(parents=True, exist_ok=True)
    targets = {v: "lightblue" for v in transcript.targets}
    for i, snap in enumerate(transcript.snapshots):
        (frames / f"frame{i:03d}.dot").write_text(gio.to_dot(snap, f"frame{i}", targets))


def _run_guard(func):
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (HypothesisError, DisconnectedError, GraphDomainError, ProtocolError,
                ZeroProbabilityError) as exc:
            raise _fail(str(exc), EXIT_HYPOTHESIS)
        except SizeBoundError as exc:
            raise _fail(str(exc), EXIT_SIZE_BOUND)

    wrapper.__name__ = func.__name__
    wrapper.__doc__ = func.__doc__
    return wrapper


@click.group()
@click.version_option()
def main() -> None:
    """Graph-state routing tools: EPR/GHZ extraction, orbit and bottleneck search."""


_fmt_option = click.option(
    "--format", "fmt", type=click.Choice(["edgelist", "graph6", "json"]), default=None,
    help="Input graph format (default: guessed from the file suffix).",
)
_out_option = click.option("--out", default=None, help="Output path (default: stdout).")
_snapshots_option = click.option(
    "--snapshots/--no-snapshots", default=False, help="Include per-step snapshots in the JSON."
)


@main.command()
@click.argument("graph_file")
@click.argument("a", type=int)
@click.argument("b", type=int)
@click.option("--method", type=click.Choice(["x", "repeater"]), default="x", show_default=True)
@click.option("--frames", default=None, help="Directory for per-step DOT frames.")
@_fmt_option
@_out_option
@_snapshots_option
@_run_guard
def epr(graph_file, a, b, method, frames, fmt, out, snapshots) -> None:
    """Create an EPR pair between A and B; emit the transcript as JSON."""
    g = _read_graph(graph_file, fmt)
    protocol = x_protocol if method == "x" else repeater_protocol
    result = protocol(g, a, b)
    validate_transcript(result.transcript)
    payload = result.transcript.to_dict(include_snapshots=snapshots)
    payload["method"] = method
    payload["pair"] = list(result.pair)
    payload["residual"] = gio.graph_to_dict(result.residual)
    _emit(payload, out)
    if frames:
        _emit_frames(result.transcript, frames)


@main.command()
@click.argument("graph_file")
@click.argument("targets", type=int, nargs=-1, required=True)
@click.option("--line", default=None,
              help="Comma-separated repeater-line witness for four targets (default: search).")
@_fmt_option
@_out_option
@_snapshots_option
@_run_guard
def ghz(graph_file, targets, line, fmt, out, snapshots) -> None:
    """Extract a GHZ state between three or four TARGETS."""
    g = _read_graph(graph_file, fmt)
    if len(targets) == 3:
        transcript = ghz3_extract(g, *targets)
        payload = transcript.to_dict(include_snapshots=snapshots)
        payload["kind"] = "ghz3"
    elif len(targets) == 4:
        witness = tuple(int(v) for v in line.split(",")) if line else None
        result = ghz4_extract(g, targets, line=witness)
        transcript = result.transcript
        payload = transcript.to_dict(include_snapshots=snapshots)
        payload["kind"] = "ghz4"
        payload["line"] = list(result.line.vertices) if result.line else None
        payload["witness_validated"] = result.witness_validated
    else:
        raise GraphDomainError("GHZ extraction takes three or four targets")
    validate_transcript(transcript)
    _emit(payload, out)


def _parse_pairs(text: str) -> tuple[tuple[int, int], tuple[int, int]]:
    try:
        first, second = text.split(",")
        a, b = (int(x) for x in first.split(":"))
        c, d = (int(x) for x in second.split(":"))
    except ValueError:
        raise GraphDomainError(f"pairs must look like '1:6,2:5', got {text!r}") from None
    return (a, b), (c, d)


@main.command()
@click.option("--n", type=click.Choice(["5", "6"]), required=True)
@click.option("--pairs", default=None, help="Terminal pairs, e.g. '1:6,2:5' (n=6 default).")
@click.option("--all-pairings", is_flag=True, help="Scan every terminal designation.")
@click.option("--threads", type=int, default=None,
              help="Worker processes (default: GSR_THREADS env var, else 1).")
@_out_option
@_run_guard
def scan(n, pairs, all_pairings, threads, out) -> None:
    """Exhaustively scan all labeled n-vertex graphs for solvable bottlenecks."""
    n = int(n)
    parsed = _parse_pairs(pairs) if pairs else None
    started = time.monotonic()
    reports = scan_all(n, pairs=parsed, all_pairings=all_pairings, threads=threads)
    elapsed = time.monotonic() - started
    _emit(report_to_dict(reports, n, parsed, all_pairings), out)
    click.echo(f"scanned n={n} in {elapsed:.1f}s: {len(reports)} hits", err=True)


@main.command()
@click.argument("graph_file")
@click.option("--max-vertices", type=int, default=10, show_default=True)
@click.option("--witnesses", default=None, help="Write the witness map to this JSON file.")
@_fmt_option
@_out_option
@_run_guard
def orbit(graph_file, max_vertices, witnesses, fmt, out) -> None:
    """Enumerate the local-complementation orbit; dump members as graph6 lines."""
    g = _read_graph(graph_file, fmt)
    record = lc_orbit(g, max_vertices)
    lines = sorted(gio.to_graph6(h) for h in record.graphs())
    text = "\n".join(lines) + "\n"
    if out is None or out == "-":
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)
    if witnesses:
        from .orbit import operations_to_step_dicts

        payload = {
            gio.to_graph6(h): operations_to_step_dicts(
                tuple(("lc", int(a)) for a in record.witness_for(h))
            )
            for h in record.graphs()
        }
        Path(witnesses).write_text(_json_text(payload))
    click.echo(f"orbit size {len(record)}", err=True)


@main.command()
@click.argument("graph_file")
@click.argument("target_file")
@click.option("--max-vertices", type=int, default=10, show_default=True)
@_fmt_option
@_out_option
@_run_guard
def vminor(graph_file, target_file, max_vertices, fmt, out) -> None:
    """Decide whether TARGET is a vertex-minor of GRAPH (labels fixed)."""
    from .orbit import operations_to_step_dicts

    g = _read_graph(graph_file, fmt)
    h = _read_graph(target_file, fmt)
    result = vertex_minor(g, h, max_vertices)
    payload = {
        "found": result.found,
        "operations": operations_to_step_dicts(result.operations or ()),
    }
    _emit(payload, out)
    if not result.found:
        raise SystemExit(EXIT_HYPOTHESIS)


@main.command()
@click.argument("graph_file", required=False)
@click.option("--max-n", type=int, default=4, show_default=True,
              help="Sweep all graphs up to this many vertices when no file is given.")
@click.option("--sample", type=int, default=0,
              help="Additionally sample this many graphs one size above --max-n.")
@click.option("--seed", type=int, default=7, show_default=True)
@_fmt_option
@_out_option
@_run_guard
def verify(graph_file, max_n, sample, seed, fmt, out) -> None:
    """Check the rewrite calculus against the state-vector oracle."""
    import itertools
    import random

    graphs: list[LabeledGraph] = []
    if graph_file:
        graphs.append(_read_graph(graph_file, fmt))
    else:
        for n in range(1, max_n + 1):
            labels = list(range(1, n + 1))
            pairs = list(itertools.combinations(labels, 2))
            for mask in range(1 << len(pairs)):
                graphs.append(
                    LabeledGraph(labels, [p for i, p in enumerate(pairs) if mask >> i & 1])
                )
        if sample:
            rng = random.Random(seed)
            n = max_n + 1
            labels = list(range(1, n + 1))
            pairs = list(itertools.combinations(labels, 2))
            for _ in range(sample):
                graphs.append(LabeledGraph(labels, [p for p in pairs if rng.random() < 0.5]))
    checked = 0
    failures = []
    for g in graphs:
        v = verify_graph(g)
        checked += 1
        if not v.passed:
            failures.append(gio.to_graph6(g))
    payload = {
        "graphs_checked": checked,
        "failures": failures,
        "pass": not failures,
    }
    _emit(payload, out)
    if failures:
        raise SystemExit(1)


@main.command()
@click.argument("input_file")
@click.argument("output_file", required=False)
@click.option("--from", "from_fmt", type=click.Choice(["edgelist", "graph6", "json"]), default=None)
@click.option("--to", "to_fmt", type=click.Choice(list(gio.FORMATS)), required=True)
@_run_guard
def convert(input_file, output_file, from_fmt, to_fmt) -> None:
    """Convert between graph formats (labels are not preserved by graph6)."""
    g = _read_graph(input_file, from_fmt)
    text = gio.dump_graph(g, to_fmt)
    if output_file is None or output_file == "-":
        click.echo(text, nl=False)
    else:
        Path(output_file).write_text(text)


if __name__ == "__main__":
    main()
