"""Local-complementation orbits and brute-force equivalence oracles.

Everything here is exhaustive search, valid only at small sizes: deciding
whether one labeled graph can be extracted from another by local
complementations and vertex deletions is NP-complete in general, so each
entry point enforces a configurable vertex bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GraphDomainError, SizeBoundError
from .graph import LabeledGraph, local_complement
from .paths import VertexPath

DEFAULT_ORBIT_BOUND = 10
DEFAULT_LINE_SEARCH_BOUND = 12

GraphKey = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class OrbitRecord:
    """A full local-complementation orbit with replayable witnesses.

    ``witnesses[key]`` is the pivot sequence that maps the seed graph to the
    member with that adjacency key.  The canonical key is the smallest
    upper-triangle encoding over the orbit (labels fixed, no relabeling).
    """

    seed: LabeledGraph
    members: dict[GraphKey, LabeledGraph] = field(repr=False)
    witnesses: dict[GraphKey, tuple[int, ...]] = field(repr=False)
    canonical_key: int

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g: LabeledGraph) -> bool:
        return g.adjacency_key() in self.members

    def witness_for(self, g: LabeledGraph) -> tuple[int, ...] | None:
        return self.witnesses.get(g.adjacency_key())

    def graphs(self) -> list[LabeledGraph]:
        return [self.members[k] for k in sorted(self.members)]


def _check_bound(g: LabeledGraph, bound: int, what: str) -> None:
    if len(g) > bound:
        raise SizeBoundError(f"{what} is limited to {bound} vertices, got {len(g)}")


def lc_orbit(g: LabeledGraph, max_vertices: int = DEFAULT_ORBIT_BOUND) -> OrbitRecord:
    """Breadth-first closure of ``g`` under local complementation at every vertex."""
    _check_bound(g, max_vertices, "orbit enumeration")
    seed_key = g.adjacency_key()
    members = {seed_key: g}
    witnesses: dict[GraphKey, tuple[int, ...]] = {seed_key: ()}
    frontier = [g]
    while frontier:
        nxt = []
        for h in frontier:
            base = witnesses[h.adjacency_key()]
            for a in h.vertices:
                t = local_complement(h, a)
                key = t.adjacency_key()
                if key not in members:
                    members[key] = t
                    witnesses[key] = base + (a,)
                    nxt.append(t)
        frontier = nxt
    canonical = min(h.encoding_int() for h in members.values())
    return OrbitRecord(seed=g, members=members, witnesses=witnesses, canonical_key=canonical)


def lc_equivalent(
    g: LabeledGraph,
    h: LabeledGraph,
    max_vertices: int = DEFAULT_ORBIT_BOUND,
) -> tuple[bool, tuple[int, ...] | None]:
    """Whether ``h`` is reachable from ``g`` by local complementations alone.

    Returns a pivot-sequence witness on success.  Both graphs must share a
    vertex set; labels are never permuted.
    """
    if g.vertices != h.vertices:
        raise GraphDomainError("local-complementation equivalence needs identical vertex sets")
    orbit = lc_orbit(g, max_vertices)
    witness = orbit.witness_for(h)
    return (witness is not None), witness


Operation = tuple[str, int]


def operations_to_step_dicts(operations: tuple[Operation, ...]) -> list[dict]:
    """Serialize an operation list in the transcript step schema."""
    out = []
    for kind, v in operations:
        if kind == "lc":
            out.append({"type": "lc", "vertex": v})
        elif kind == "z":
            out.append({"type": "measure", "vertex": v, "basis": "Z"})
        else:
            raise GraphDomainError(f"unknown operation kind {kind!r}")
    return out


@dataclass(frozen=True)
class VertexMinorResult:
    found: bool
    operations: tuple[Operation, ...] | None


def replay_operations(g: LabeledGraph, operations: tuple[Operation, ...]) -> LabeledGraph:
    """Apply a witness operation list: ("lc", a) pivots and ("z", v) deletions."""
    cur = g
    for kind, v in operations:
        if kind == "lc":
            cur = local_complement(cur, v)
        elif kind == "z":
            cur = cur.without_vertices([v])
        else:
            raise GraphDomainError(f"unknown operation kind {kind!r}")
    return cur


def vertex_minor(
    g: LabeledGraph,
    h: LabeledGraph,
    max_vertices: int = DEFAULT_ORBIT_BOUND,
) -> VertexMinorResult:
    """Decide whether ``h`` is reachable from ``g`` by LCs and vertex deletions.

    Labels are fixed: exactly the vertices of ``g`` missing from ``h`` must be
    deleted.  Layered breadth-first search over orbit closures interleaved
    with single deletions; states are memoized on exact adjacency keys, and
    branches whose components already separate two surviving vertices of a
    connected target component are pruned.
    """
    _check_bound(g, max_vertices, "vertex-minor search")
    hset = set(h.vertices)
    if not hset <= set(g.vertices):
        raise GraphDomainError("target vertices must be a subset of the source graph's")

    target_components = [c for c in h.components() if len(c) > 1]

    def prune(state: LabeledGraph) -> bool:
        # Vertices of one connected target component can never be rejoined
        # once separated: LCs preserve components and deletions only split.
        for comp in target_components:
            rep = min(comp)
            reach = state.component(rep)
            if not comp <= reach:
                return True
        return False

    start_key = g.adjacency_key()
    parents: dict[GraphKey, tuple[GraphKey | None, Operation | None, LabeledGraph]] = {
        start_key: (None, None, g)
    }
    goal_key = h.adjacency_key()

    def backtrack(key: GraphKey) -> tuple[Operation, ...]:
        ops: list[Operation] = []
        while True:
            parent, op, _ = parents[key]
            if parent is None:
                break
            assert op is not None
            ops.append(op)
            key = parent
        return tuple(reversed(ops))

    if prune(g):
        return VertexMinorResult(False, None)

    level = [g]
    deletions_left = len(g) - len(h)
    for _ in range(deletions_left + 1):
        # Close the current level under local complementation.
        frontier = list(level)
        while frontier:
            nxt = []
            for state in frontier:
                base_key = state.adjacency_key()
                for a in state.vertices:
                    t = local_complement(state, a)
                    key = t.adjacency_key()
                    if key not in parents:
                        parents[key] = (base_key, ("lc", a), t)
                        nxt.append(t)
                        level.append(t)
            frontier = nxt
        if deletions_left == 0:
            if goal_key in parents:
                return VertexMinorResult(True, backtrack(goal_key))
            return VertexMinorResult(False, None)
        # One deletion of any non-target vertex.
        nxt_level = []
        for state in level:
            base_key = state.adjacency_key()
            for v in state.vertices:
                if v in hset:
                    continue
                t = state.without_vertices([v])
                key = t.adjacency_key()
                if key in parents or prune(t):
                    continue
                parents[key] = (base_key, ("z", v), t)
                nxt_level.append(t)
        level = nxt_level
        deletions_left -= 1
        if not level:
            return VertexMinorResult(False, None)
    return VertexMinorResult(False, None)


def find_repeater_line(
    g: LabeledGraph,
    targets: tuple[int, int, int, int] | list[int],
    max_vertices: int = DEFAULT_LINE_SEARCH_BOUND,
) -> VertexPath | None:
    """Shortest induced path usable as a GHZ4 repeater-line witness.

    The path must start and end at targets, visit all four, and keep at
    least one non-target vertex strictly between the second and third
    target along the way.  Induced (chordless) paths only, so that
    Z-isolating the line leaves a clean repeater line.  Deterministic:
    shortest first, then lexicographically smallest.
    """
    _check_bound(g, max_vertices, "repeater-line search")
    tset = set(targets)
    if len(tset) != 4:
        raise GraphDomainError("exactly four distinct targets are required")
    for t in tset:
        if t not in g:
            raise GraphDomainError(f"target {t} not in graph")

    best: tuple[int, tuple[int, ...]] | None = None

    def valid(path: tuple[int, ...]) -> bool:
        positions = [i for i, v in enumerate(path) if v in tset]
        if len(positions) != 4:
            return False
        if positions[0] != 0 or positions[3] != len(path) - 1:
            return False
        return positions[2] - positions[1] >= 2  # at least one vertex between the pairs

    def extend(path: list[int], member: set[int], found: int) -> None:
        nonlocal best
        # Strictly longer prefixes can never beat the current best; equal
        # length stays in play so the lexicographic tie-break is exact.
        if best is not None and len(path) > best[0]:
            return
        cur = path[-1]
        if found == 4:
            if valid(tuple(path)):
                cand = (len(path), tuple(path))
                if best is None or cand < best:
                    best = cand
            return
        for v in sorted(g.neighbors(cur)):
            if v in member:
                continue
            # Chordless: the new vertex may touch only the current endpoint.
            if any(u != cur and g.has_edge(u, v) for u in path):
                continue
            path.append(v)
            member.add(v)
            extend(path, member, found + (v in tset))
            member.remove(v)
            path.pop()

    for start in sorted(tset):
        extend([start], {start}, 1)
    if best is None:
        return None
    return VertexPath(best[1])
