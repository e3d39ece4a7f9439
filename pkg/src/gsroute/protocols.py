"""Entanglement routing protocols on graph states.

Implements the two EPR extraction strategies (repeater-style isolation
versus X-measuring the path first), the rewrite of X-measurement chains as
complementation sequences, GHZ extraction for three and four parties, and
the fixed two-pair butterfly routine.  Every run produces an immutable
transcript whose snapshots replay exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    DisconnectedError,
    GraphDomainError,
    HypothesisError,
    ProtocolError,
)
from .graph import (
    LabeledGraph,
    combined_neighborhood,
    local_complement,
    measure_x,
    measure_y,
    measure_z,
    path_graph,
    star_graph,
)
from .orbit import lc_equivalent, vertex_minor
from .paths import (
    DEFAULT_ENUMERATION_CAP,
    VertexPath,
    bfs_distances,
    count_shortest_paths,
    iter_shortest_paths,
    min_neighborhood_shortest_path,
)

PATH_SELECTION_BUDGET = 512


# -- transcripts --------------------------------------------------------


@dataclass(frozen=True)
class Step:
    """One protocol step: a local complementation or a basis measurement."""

    kind: str  # "lc" or "measure"
    vertex: int
    basis: str | None = None  # X, Y, or Z for measurements
    neighbor: int | None = None  # chosen neighbor for X measurements

    def as_dict(self) -> dict:
        d: dict = {"type": self.kind, "vertex": self.vertex}
        if self.kind == "measure":
            d["basis"] = self.basis
            if self.neighbor is not None:
                d["neighbor"] = self.neighbor
        return d


def apply_step(g: LabeledGraph, step: Step) -> LabeledGraph:
    if step.kind == "lc":
        return local_complement(g, step.vertex)
    if step.kind == "measure":
        if step.basis == "Z":
            return measure_z(g, step.vertex)
        if step.basis == "Y":
            return measure_y(g, step.vertex)
        if step.basis == "X":
            return measure_x(g, step.vertex, step.neighbor)
        raise GraphDomainError(f"unknown basis {step.basis!r}")
    raise GraphDomainError(f"unknown step kind {step.kind!r}")


@dataclass(frozen=True)
class ProtocolTranscript:
    """Ordered record of a protocol run with per-step graph snapshots.

    ``snapshots[0]`` is the initial graph and ``snapshots[t]`` the graph
    after step ``t``; measurements count toward ``measurement_count``,
    local complementations are free.
    """

    initial: LabeledGraph
    steps: tuple[Step, ...]
    snapshots: tuple[LabeledGraph, ...] = field(repr=False)
    final: LabeledGraph
    targets: tuple[int, ...]

    @property
    def measurement_count(self) -> int:
        return sum(1 for s in self.steps if s.kind == "measure")

    @property
    def counts(self) -> dict[str, int]:
        out = {"measurements": 0, "lc": 0, "x": 0, "y": 0, "z": 0}
        for s in self.steps:
            if s.kind == "lc":
                out["lc"] += 1
            else:
                out["measurements"] += 1
                out[s.basis.lower()] += 1
        return out

    def measurements(self) -> tuple[Step, ...]:
        return tuple(s for s in self.steps if s.kind == "measure")

    def complementations(self) -> tuple[int, ...]:
        return tuple(s.vertex for s in self.steps if s.kind == "lc")

    def to_dict(self, include_snapshots: bool = False) -> dict:
        from .io import graph_to_dict

        d = {
            "initial": graph_to_dict(self.initial),
            "steps": [s.as_dict() for s in self.steps],
            "final": graph_to_dict(self.final),
            "counts": self.counts,
            "targets": list(self.targets),
        }
        if include_snapshots:
            d["snapshots"] = [graph_to_dict(g) for g in self.snapshots]
        return d


def validate_transcript(t: ProtocolTranscript) -> bool:
    """Replay the steps and confirm every snapshot chains correctly."""
    if not t.snapshots or t.snapshots[0] != t.initial:
        raise ProtocolError("transcript does not start at its initial graph")
    if len(t.snapshots) != len(t.steps) + 1:
        raise ProtocolError("transcript snapshot count does not match its steps")
    cur = t.initial
    for i, step in enumerate(t.steps):
        cur = apply_step(cur, step)
        if cur != t.snapshots[i + 1]:
            raise ProtocolError(f"snapshot {i + 1} does not follow from step {step}")
    if cur != t.final:
        raise ProtocolError("final graph does not match the last snapshot")
    return True


class _Run:
    """Mutable transcript builder."""

    def __init__(self, g: LabeledGraph, targets: Iterable[int]):
        self.graph = g
        self.steps: list[Step] = []
        self.snapshots: list[LabeledGraph] = [g]
        self.targets = tuple(targets)

    def lc(self, a: int) -> None:
        self.graph = local_complement(self.graph, a)
        self.steps.append(Step("lc", a))
        self.snapshots.append(self.graph)

    def measure(self, v: int, basis: str, neighbor: int | None = None) -> None:
        step = Step("measure", v, basis, neighbor if basis == "X" else None)
        self.graph = apply_step(self.graph, step)
        self.steps.append(step)
        self.snapshots.append(self.graph)

    def finish(self, initial: LabeledGraph) -> ProtocolTranscript:
        return ProtocolTranscript(
            initial=initial,
            steps=tuple(self.steps),
            snapshots=tuple(self.snapshots),
            final=self.graph,
            targets=self.targets,
        )


# -- EPR protocols ------------------------------------------------------


@dataclass(frozen=True)
class EprResult:
    """An established EPR pair plus what is left of the graph state."""

    transcript: ProtocolTranscript
    pair: tuple[int, int]
    residual: LabeledGraph

    @property
    def measurement_count(self) -> int:
        return self.transcript.measurement_count


def _require_terminals(g: LabeledGraph, a: int, b: int) -> None:
    if a not in g or b not in g:
        raise GraphDomainError("terminals must be vertices of the graph")
    if a == b:
        raise GraphDomainError("terminals must be distinct")


def _x_cleanup_size(g: LabeledGraph, path: VertexPath) -> int:
    """Z-measurements the X-first protocol would need after this path."""
    cur = g
    a = path.source
    for v in path.interior:
        cur = measure_x(cur, v, a)
    leftover = (cur.neighbors(a) | cur.neighbors(path.sink)) - {a, path.sink}
    return len(leftover)


def select_protocol_path(
    g: LabeledGraph,
    a: int,
    b: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
    budget: int = PATH_SELECTION_BUDGET,
) -> tuple[VertexPath, bool]:
    """Deterministic path both protocols share.

    Among all shortest paths: smallest combined neighborhood first, then
    smallest X-first cleanup cost, then lexicographic order.  Falls back to
    the plain minimum-neighborhood choice (flagged inexact) when the number
    of shortest paths exceeds ``budget``.
    """
    _require_terminals(g, a, b)
    total = count_shortest_paths(g, a, b)
    if total == 0:
        raise DisconnectedError(f"terminals {a} and {b} are not connected")
    if total > budget:
        result = min_neighborhood_shortest_path(g, a, b, cap)
        return result.path, False

    def key(path: VertexPath) -> tuple[int, int, tuple[int, ...]]:
        return (
            len(combined_neighborhood(g, path)),
            _x_cleanup_size(g, path),
            path.vertices,
        )

    best = min(iter_shortest_paths(g, a, b), key=key)
    return best, True


def _checked_shortest(g: LabeledGraph, a: int, b: int, path: VertexPath | Sequence[int]) -> VertexPath:
    vertices = path.vertices if isinstance(path, VertexPath) else tuple(path)
    vp = VertexPath.checked(g, vertices)
    if vp.source != a or vp.sink != b:
        raise GraphDomainError("supplied path does not connect the requested terminals")
    dist = bfs_distances(g, a).get(b)
    if dist is None or vp.length != dist + 1:
        raise HypothesisError("supplied path is not a shortest path")
    return vp


def repeater_protocol(
    g: LabeledGraph, a: int, b: int, path: VertexPath | Sequence[int] | None = None
) -> EprResult:
    """Isolate a shortest path by Z-measurements, then swap along it.

    Z-measures the path's combined neighborhood minus the path itself,
    then X-measures the interior vertices; the total is the size of the
    combined neighborhood minus two.
    """
    _require_terminals(g, a, b)
    vp = _checked_shortest(g, a, b, path) if path is not None else select_protocol_path(g, a, b)[0]
    run = _Run(g, (a, b))
    for v in sorted(combined_neighborhood(g, vp) - set(vp)):
        run.measure(v, "Z")
    for v in vp.interior:
        run.measure(v, "X", neighbor=a)
    transcript = run.finish(g)
    final = transcript.final
    if final.component(a) != {a, b} or not final.has_edge(a, b):
        raise ProtocolError("repeater protocol did not isolate the requested pair")
    return EprResult(transcript, (a, b), final.without_vertices([a, b]))


def x_protocol(
    g: LabeledGraph, a: int, b: int, path: VertexPath | Sequence[int] | None = None
) -> EprResult:
    """X-measure the path interior first, then Z-clean what the terminals still see.

    Uses at most as many measurements as the repeater protocol on the same
    path, and generally leaves a larger residual graph.
    """
    _require_terminals(g, a, b)
    vp = _checked_shortest(g, a, b, path) if path is not None else select_protocol_path(g, a, b)[0]
    run = _Run(g, (a, b))
    for v in vp.interior:
        run.measure(v, "X", neighbor=a)
    cur = run.graph
    for v in sorted((cur.neighbors(a) | cur.neighbors(b)) - {a, b}):
        run.measure(v, "Z")
    transcript = run.finish(g)
    final = transcript.final
    if final.component(a) != {a, b} or not final.has_edge(a, b):
        raise ProtocolError("X-first protocol did not isolate the requested pair")
    return EprResult(transcript, (a, b), final.without_vertices([a, b]))


# -- X chains as complementation sequences -------------------------------


def x_measurements_as_complementations(
    g: LabeledGraph, path: VertexPath | Sequence[int]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Rewrite the interior X-measurement chain of a shortest path.

    Returns ``(pivots, z_vertices)``: applying local complementations at
    the pivots in order, then Z-measuring ``z_vertices``, reproduces
    exactly the graph obtained by X-measuring the interior sequentially
    with the path's source as the chosen neighbor.  The pivot sequence is
    the path's first ``l-1`` vertices followed by the source again.
    """
    vp = path if isinstance(path, VertexPath) else VertexPath(tuple(path))
    vp = _checked_shortest(g, vp.source, vp.sink, vp)
    if vp.length == 2:
        return (), ()
    pivots = vp.vertices[:-1] + (vp.source,)
    return pivots, vp.interior


def apply_complementation_plan(
    g: LabeledGraph, pivots: Iterable[int], z_vertices: Iterable[int]
) -> LabeledGraph:
    cur = g
    for a in pivots:
        cur = local_complement(cur, a)
    for v in z_vertices:
        cur = measure_z(cur, v)
    return cur


def sequential_x_measurements(g: LabeledGraph, path: VertexPath | Sequence[int]) -> LabeledGraph:
    """X-measure the path interior in order, always choosing the source."""
    vp = path if isinstance(path, VertexPath) else VertexPath(tuple(path))
    cur = g
    for v in vp.interior:
        cur = measure_x(cur, v, vp.source)
    return cur


# -- GHZ extraction -----------------------------------------------------


def _z_clean(run: _Run, keep: set[int]) -> None:
    """Z-measure everything the kept vertices still see outside themselves."""
    cur = run.graph
    mask = 0
    for t in keep:
        mask |= cur.neighbor_mask(t)
    clean = sorted(v for v in cur.vertices if mask >> v & 1 and v not in keep)
    for v in clean:
        run.measure(v, "Z")


def _cleanup_steps(cur: LabeledGraph, keep: set[int]) -> list[Step]:
    mask = 0
    for t in keep:
        mask |= cur.neighbor_mask(t)
    return [
        Step("measure", v, "Z")
        for v in sorted(v for v in cur.vertices if mask >> v & 1 and v not in keep)
    ]


def _ghz3_remote_leg_steps(
    after_pair: LabeledGraph, a: int, b: int, c: int
) -> list[Step] | None:
    """Steps connecting a remote third vertex once the a-b edge exists.

    Preferred form (shorter leg first, isolating the far terminal before
    growing it); when both legs tie through a shared hub the isolation can
    cut the third vertex off, so the fallback grows the leg without the
    pre-cleaning and lets the final predicate arbitrate.
    """
    d_from_b = bfs_distances(after_pair, b).get(c)
    d_from_a = bfs_distances(after_pair, a).get(c)
    sides = []
    if d_from_b is not None:
        sides.append((d_from_b, 0, b, a))
    if d_from_a is not None:
        sides.append((d_from_a, 1, a, b))
    sides.sort()
    if not sides:
        return None

    variants = [(anchor, other, pre) for pre in (True, False) for _, _, anchor, other in sides]
    for anchor, other, pre_clean in variants:
        steps: list[Step] = []
        cur = after_pair
        if pre_clean:
            for v in sorted(cur.neighbors(other) - {anchor, c}):
                steps.append(Step("measure", v, "Z"))
                cur = measure_z(cur, v)
        if c not in cur.component(anchor):
            continue
        try:
            leg, _ = select_protocol_path(cur, anchor, c)
            for v in leg.interior:
                steps.append(Step("measure", v, "X", anchor))
                cur = measure_x(cur, v, anchor)
        except (DisconnectedError, GraphDomainError):
            continue
        for step in _cleanup_steps(cur, {a, b, c}):
            steps.append(step)
            cur = measure_z(cur, step.vertex)
        if cur.component(a) == {a, b, c}:
            return steps
    return None


def _ghz3_attempt(g: LabeledGraph, a: int, b: int, c: int, targets: tuple[int, int, int]) -> ProtocolTranscript:
    path, _ = select_protocol_path(g, a, b)
    run = _Run(g, targets)
    if c in path.interior:
        # Third party sits on the path: contract both legs around it.
        i = path.vertices.index(c)
        for v in path.vertices[1:i]:
            run.measure(v, "X", neighbor=a)
        for v in path.vertices[i + 1:-1]:
            run.measure(v, "X", neighbor=c)
        _z_clean(run, {a, b, c})
    elif c in combined_neighborhood(g, path):
        # Third party neighbors the path: contract fully, keep it attached.
        for v in path.interior:
            run.measure(v, "X", neighbor=a)
        _z_clean(run, {a, b, c})
    else:
        # Third party is remote: finish the pair, then grow a leg to it.
        for v in path.interior:
            run.measure(v, "X", neighbor=a)
        steps = _ghz3_remote_leg_steps(run.graph, a, b, c)
        if steps is None:
            raise ProtocolError("no leg to the third target leads to an isolated triple")
        for step in steps:
            run.measure(step.vertex, step.basis, step.neighbor)
    transcript = run.finish(g)
    comp = transcript.final.component(a)
    if comp != {a, b, c}:
        raise ProtocolError(f"three-party component is {sorted(comp)}, not the targets")
    return transcript


def ghz3_extract(g: LabeledGraph, a: int, b: int, c: int) -> ProtocolTranscript:
    """Distill a three-party GHZ component between arbitrary vertices.

    Case split on where the third vertex sits relative to the chosen a-b
    shortest path (on it, next to it, or remote).  Any connected
    three-vertex component is GHZ3 up to local Cliffords, so success means
    the final component of the targets is exactly the target set.  Runs in
    polynomial time; if the preferred pairing hits a degenerate tie it
    retries with the other pairings.
    """
    if len({a, b, c}) != 3:
        raise GraphDomainError("three distinct targets are required")
    for t in (a, b, c):
        if t not in g:
            raise GraphDomainError(f"target {t} not in graph")
    if not g.is_connected():
        raise DisconnectedError("GHZ3 extraction needs a connected graph")
    last_error: Exception | None = None
    for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
        try:
            return _ghz3_attempt(g, x, y, z, (a, b, c))
        except (ProtocolError, DisconnectedError, HypothesisError, GraphDomainError) as exc:
            last_error = exc
    raise ProtocolError(f"GHZ3 extraction failed for targets {(a, b, c)}: {last_error}")


@dataclass(frozen=True)
class Ghz4Result:
    transcript: ProtocolTranscript
    line: VertexPath | None
    witness_validated: bool

    @property
    def measurement_count(self) -> int:
        return self.transcript.measurement_count


def _star_class(targets: tuple[int, ...]) -> LabeledGraph:
    ts = sorted(targets)
    return star_graph(ts[0], ts[1:])


def _in_star_orbit(h: LabeledGraph, targets: tuple[int, ...]) -> bool:
    if set(h.vertices) != set(targets):
        return False
    equivalent, _ = lc_equivalent(h, _star_class(targets))
    return equivalent


def ghz4_extract(
    g: LabeledGraph,
    targets: tuple[int, int, int, int] | Sequence[int],
    line: VertexPath | Sequence[int] | None = None,
    minor_check_bound: int = 10,
) -> Ghz4Result:
    """Distill a four-party GHZ component along a repeater-line witness.

    The witness must be an induced path whose endpoints are targets, with
    all four targets on it and at least one spare vertex strictly between
    the middle two.  The line is isolated by Z-measuring its neighborhood,
    contracted by X-measuring every non-target interior vertex except the
    spare, and finished with complementations at the three middle positions
    plus a Z-measurement of the center.  On graphs within
    ``minor_check_bound`` the witness is certified by the vertex-minor
    oracle; larger inputs are trusted and flagged.
    """
    tks = tuple(targets)
    if len(set(tks)) != 4:
        raise GraphDomainError("four distinct targets are required")
    for t in tks:
        if t not in g:
            raise GraphDomainError(f"target {t} not in graph")

    # Already done: the targets form their own component in the star class.
    comp = g.component(tks[0])
    if comp == set(tks):
        induced = g.induced(tks)
        if _in_star_orbit(induced, tks):
            empty = _Run(g, tks).finish(g)
            return Ghz4Result(empty, None, True)
        raise HypothesisError(
            "targets form an isolated component outside the star class; "
            "no spare vertices remain to measure"
        )

    if line is None:
        from .orbit import find_repeater_line

        found = find_repeater_line(g, tks)
        if found is None:
            raise HypothesisError("no repeater-line witness through the four targets was found")
        vp = found
    else:
        vp = line if isinstance(line, VertexPath) else VertexPath(tuple(line))
        vp = VertexPath.checked(g, vp.vertices)

    tset = set(tks)
    positions = [i for i, v in enumerate(vp.vertices) if v in tset]
    if len(positions) != 4:
        raise HypothesisError("witness line must contain all four targets")
    if positions[0] != 0 or positions[3] != vp.length - 1:
        raise HypothesisError("witness line must start and end at targets")
    if positions[2] - positions[1] < 2:
        raise HypothesisError(
            "witness line needs at least one spare vertex between the middle targets"
        )
    for i, u in enumerate(vp.vertices):
        for v in vp.vertices[i + 2:]:
            if g.has_edge(u, v):
                raise HypothesisError(
                    f"witness line is not induced: chord ({u}, {v}) would survive isolation"
                )

    p0, p1, p2, p3 = positions
    t1, t2, t3, t4 = (vp.vertices[p] for p in positions)
    kept = vp.vertices[p1 + 1]

    validated = False
    if len(g) <= minor_check_bound:
        pattern = path_graph((t1, t2, kept, t3, t4))
        if not vertex_minor(g, pattern, minor_check_bound).found:
            raise HypothesisError("witness line does not contract to a repeater line")
        validated = True

    run = _Run(g, tks)
    for v in sorted(combined_neighborhood(g, vp) - set(vp)):
        run.measure(v, "Z")
    for v in vp.vertices[1:p1]:
        run.measure(v, "X", neighbor=t1)
    for v in vp.vertices[p1 + 2:p2]:
        run.measure(v, "X", neighbor=kept)
    for v in vp.vertices[p2 + 1:p3]:
        run.measure(v, "X", neighbor=t3)
    run.lc(t2)
    run.lc(kept)
    run.lc(t3)
    run.measure(kept, "Z")
    transcript = run.finish(g)

    final_comp = transcript.final.component(t1)
    if final_comp != tset or not _in_star_orbit(transcript.final.induced(tks), tks):
        raise ProtocolError("four-party extraction did not reach the star class")
    return Ghz4Result(transcript, vp, validated)


# -- butterfly two-pair routine ------------------------------------------


@dataclass(frozen=True)
class TwoPairRouteResult:
    transcript: ProtocolTranscript
    pairs: tuple[tuple[int, int], tuple[int, int]]
    success: bool


def butterfly_route(
    g: LabeledGraph,
    pairs: tuple[tuple[int, int], tuple[int, int]] = ((1, 6), (2, 5)),
) -> TwoPairRouteResult:
    """Fixed two-pair witness sequence: complement 1, 3, 4, then Z-measure 3 and 4.

    Succeeds iff the final edge set is exactly the two requested pair
    edges.  Never raises for unsuitable graphs; the flag reports failure.
    """
    norm_pairs = tuple(tuple(sorted(p)) for p in pairs)
    required = {1, 3, 4}
    if not required <= set(g.vertices):
        empty = _Run(g, tuple(v for p in norm_pairs for v in p)).finish(g)
        return TwoPairRouteResult(empty, norm_pairs, False)
    run = _Run(g, tuple(v for p in norm_pairs for v in p))
    run.lc(1)
    run.lc(3)
    run.lc(4)
    run.measure(3, "Z")
    run.measure(4, "Z")
    transcript = run.finish(g)
    want = frozenset(norm_pairs)
    return TwoPairRouteResult(transcript, norm_pairs, transcript.final.edges() == want)
