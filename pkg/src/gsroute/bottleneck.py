"""Exhaustive two-pair bottleneck search over all small labeled graphs.

A graph has a bottleneck when no pair of edge-disjoint paths can serve both
terminal pairs at once (links carry one EPR pair each, so repeater lines
would contend for an edge).  An instance is solvable when some interleaving
of local complementations and Z-measurements of the non-terminal vertices
reaches exactly the two requested pair edges; Z-measurements interleaved
with complementations cover every Pauli basis, so this search space is
complete for local Cliffords plus Pauli measurements.

Graphs are packed into edge-bitmask integers for the scan; orbits are
memoized so each graph is expanded once per deletion context.
"""

from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import GraphDomainError, SizeBoundError
from .graph import LabeledGraph

BOTTLENECK_DEFINITION = (
    "no edge-disjoint pair of paths connects pair1 and pair2 simultaneously"
)

Operation = tuple[str, int]


@dataclass(frozen=True)
class TwoPairInstance:
    """A graph with two disjoint terminal pairs to be served at once."""

    graph: LabeledGraph
    pair1: tuple[int, int]
    pair2: tuple[int, int]

    def __post_init__(self) -> None:
        terminals = (*self.pair1, *self.pair2)
        if len(set(terminals)) != 4:
            raise GraphDomainError("the four terminals must be distinct")
        for t in terminals:
            if t not in self.graph:
                raise GraphDomainError(f"terminal {t} not in graph")

    @property
    def terminals(self) -> frozenset[int]:
        return frozenset((*self.pair1, *self.pair2))

    @property
    def measurable(self) -> tuple[int, ...]:
        return tuple(v for v in self.graph.vertices if v not in self.terminals)


@dataclass(frozen=True)
class SolvableResult:
    solvable: bool
    witness: tuple[Operation, ...] | None


@dataclass(frozen=True)
class SearchReport:
    instance: TwoPairInstance
    has_bottleneck: bool
    solvable: bool
    witness: tuple[Operation, ...] | None
    graphs_scanned: int


# -- packed-bitmask machinery -------------------------------------------


class _Tables:
    """Edge-slot tables for graphs on n positions packed into one integer."""

    def __init__(self, n: int):
        if n > 8:
            raise SizeBoundError("packed scan tables support at most 8 vertices")
        self.n = n
        slots: dict[tuple[int, int], int] = {}
        s = 0
        for j in range(1, n):
            for i in range(j):
                slots[(i, j)] = s
                s += 1
        self.slots = slots
        self.nslots = s
        self.inc = [0] * n
        for (i, j), slot in slots.items():
            self.inc[i] |= 1 << slot
            self.inc[j] |= 1 << slot
        self.clique = [0] * (1 << n)
        for sub in range(1 << n):
            m = 0
            for (i, j), slot in slots.items():
                if sub >> i & 1 and sub >> j & 1:
                    m |= 1 << slot
            self.clique[sub] = m
        self.pair_slot = [[0] * n for _ in range(n)]
        for (i, j), slot in slots.items():
            self.pair_slot[i][j] = slot
            self.pair_slot[j][i] = slot

    def nbrs(self, m: int, i: int) -> int:
        out = 0
        row = self.pair_slot[i]
        for j in range(self.n):
            if j != i and m >> row[j] & 1:
                out |= 1 << j
        return out

    def lc(self, m: int, i: int) -> int:
        return m ^ self.clique[self.nbrs(m, i)]

    def delete(self, m: int, i: int) -> int:
        return m & ~self.inc[i]

    def connected(self, m: int, a: int, b: int) -> bool:
        seen = 1 << a
        frontier = 1 << a
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                f ^= low
                nxt |= self.nbrs(m, low.bit_length() - 1)
            frontier = nxt & ~seen
            seen |= frontier
            if seen >> b & 1:
                return True
        return False


@lru_cache(maxsize=8)
def _tables(n: int) -> _Tables:
    return _Tables(n)


def _graph_to_mask(g: LabeledGraph, tables: _Tables, pos: dict[int, int]) -> int:
    m = 0
    for u, v in g.edges():
        i, j = pos[u], pos[v]
        m |= 1 << tables.pair_slot[i][j]
    return m


def _mask_to_graph(m: int, tables: _Tables, labels: tuple[int, ...]) -> LabeledGraph:
    edges = []
    for (i, j), slot in tables.slots.items():
        if m >> slot & 1:
            edges.append((labels[i], labels[j]))
    return LabeledGraph(labels, edges)


def _positions(g: LabeledGraph) -> tuple[_Tables, dict[int, int], tuple[int, ...]]:
    labels = g.vertices
    if len(labels) > 8:
        raise SizeBoundError("two-pair search is limited to 8 vertices")
    tables = _tables(len(labels))
    return tables, {v: i for i, v in enumerate(labels)}, labels


# -- bottleneck predicate ------------------------------------------------


def _edge_disjoint_exists(tables: _Tables, m: int, a: int, b: int, c: int, d: int) -> bool:
    n = tables.n

    def dfs(v: int, visited: int, used: int) -> bool:
        if v == b:
            return tables.connected(m & ~used, c, d)
        row = tables.pair_slot[v]
        for u in range(n):
            if u == v or visited >> u & 1:
                continue
            slot = row[u]
            if m >> slot & 1:
                if dfs(u, visited | 1 << u, used | 1 << slot):
                    return True
        return False

    return dfs(a, 1 << a, 0)


def has_bottleneck(instance: TwoPairInstance) -> bool:
    """True iff no edge-disjoint path pair serves both terminal pairs.

    Decided by exhaustive path enumeration; a disconnected pair counts as a
    bottleneck under the literal definition (no such path pair exists).
    """
    tables, pos, _ = _positions(instance.graph)
    m = _graph_to_mask(instance.graph, tables, pos)
    a, b = (pos[v] for v in instance.pair1)
    c, d = (pos[v] for v in instance.pair2)
    return not _edge_disjoint_exists(tables, m, a, b, c, d)


def pairs_connected(instance: TwoPairInstance) -> bool:
    """Necessary condition for solvability: both terminal pairs connected.

    Complementations preserve components and deletions only split them, so
    a pair edge can never appear between disconnected terminals.  Used as a
    scan prune; agreement with the unpruned search is covered by tests.
    """
    g = instance.graph
    return g.connected(*instance.pair1) and g.connected(*instance.pair2)


# -- solvability search ---------------------------------------------------


def _target_mask(tables: _Tables, pos: dict[int, int], pair1, pair2) -> int:
    m = 0
    for u, v in (pair1, pair2):
        m |= 1 << tables.pair_slot[pos[u]][pos[v]]
    return m


def solvable(
    instance: TwoPairInstance,
    max_measurements: int | None = None,
    lc_cap: int | None = None,
) -> SolvableResult:
    """Search LC moves interleaved with Z-measurements of non-terminals.

    Succeeds when some sequence reaches exactly the two pair edges (every
    surviving non-terminal isolated).  At most ``max_measurements``
    Z-measurements (default: all non-terminals) and, when ``lc_cap`` is
    given, at most that many complementations.  Returns a replayable
    witness; 0-1 BFS order keeps witnesses complementation-minimal.
    """
    tables, pos, labels = _positions(instance.graph)
    m0 = _graph_to_mask(instance.graph, tables, pos)
    target = _target_mask(tables, pos, instance.pair1, instance.pair2)
    measurable = tuple(sorted(pos[v] for v in instance.measurable))
    budget = len(measurable) if max_measurements is None else max_measurements
    if budget > len(measurable):
        raise GraphDomainError("measurement budget exceeds the measurable set")

    start = (m0, frozenset())
    parents: dict[tuple[int, frozenset[int]], tuple[tuple[int, frozenset[int]] | None, Operation | None]] = {
        start: (None, None)
    }
    lc_used: dict[tuple[int, frozenset[int]], int] = {start: 0}
    queue: deque[tuple[int, frozenset[int]]] = deque([start])

    def backtrack(state) -> tuple[Operation, ...]:
        ops: list[Operation] = []
        while True:
            parent, op = parents[state]
            if parent is None:
                break
            ops.append(op)
            state = parent
        return tuple(reversed(ops))

    while queue:
        state = queue.popleft()
        mask, deleted = state
        if mask == target:
            return SolvableResult(True, backtrack(state))
        used = lc_used[state]
        # Deletions cost nothing toward the LC cap: explore them first.
        if len(deleted) < budget:
            for u in measurable:
                if u in deleted:
                    continue
                nxt = (tables.delete(mask, u), deleted | {u})
                if nxt not in parents:
                    parents[nxt] = (state, ("z", labels[u]))
                    lc_used[nxt] = used
                    queue.appendleft(nxt)
        if lc_cap is None or used < lc_cap:
            for i in range(tables.n):
                nxt = (tables.lc(mask, i), deleted)
                if nxt not in parents:
                    parents[nxt] = (state, ("lc", labels[i]))
                    lc_used[nxt] = used + 1
                    queue.append(nxt)
    return SolvableResult(False, None)


# -- the exhaustive scan ---------------------------------------------------


def _instances_for(n: int, pairs, all_pairings: bool) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    labels = tuple(range(1, n + 1))
    if pairs is not None and not all_pairings:
        (a, b), (c, d) = pairs
        return [((a, b), (c, d))]
    out = []
    for terminals in itertools.combinations(labels, 4):
        t1, t2, t3, t4 = terminals
        for p1, p2 in (((t1, t2), (t3, t4)), ((t1, t3), (t2, t4)), ((t1, t4), (t2, t3))):
            out.append((p1, p2))
    return out


class _ReachOracle:
    """Memoized 'orbit moves + deletions reach the exact target' predicate."""

    def __init__(self, tables: _Tables):
        self.tables = tables
        self.memo: dict[tuple[int, tuple[int, ...], int], bool] = {}

    def reach(self, mask: int, deletable: tuple[int, ...], target: int) -> bool:
        key = (mask, deletable, target)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        tables = self.tables
        orbit = {mask}
        stack = [mask]
        while stack:
            cur = stack.pop()
            for i in range(tables.n):
                t = tables.lc(cur, i)
                if t not in orbit:
                    orbit.add(t)
                    stack.append(t)
        if target in orbit:
            ans = True
        else:
            ans = False
            for idx, u in enumerate(deletable):
                rest = deletable[:idx] + deletable[idx + 1:]
                if any(self.reach(tables.delete(mem, u), rest, target) for mem in orbit):
                    ans = True
                    break
        for mem in orbit:
            self.memo[(mem, deletable, target)] = ans
        return ans


def _scan_range(
    n: int,
    instances: list[tuple[tuple[int, int], tuple[int, int]]],
    start: int,
    stop: int,
) -> list[tuple[int, int]]:
    """Scan packed graphs in [start, stop); returns (mask, instance_index) hits."""
    tables = _tables(n)
    labels = tuple(range(1, n + 1))
    pos = {v: i for i, v in enumerate(labels)}
    oracle = _ReachOracle(tables)
    prepared = []
    for p1, p2 in instances:
        a, b = pos[p1[0]], pos[p1[1]]
        c, d = pos[p2[0]], pos[p2[1]]
        terminals = {a, b, c, d}
        deletable = tuple(sorted(i for i in range(n) if i not in terminals))
        target = _target_mask(tables, pos, p1, p2)
        prepared.append((a, b, c, d, deletable, target))
    hits = []
    for mask in range(start, stop):
        for idx, (a, b, c, d, deletable, target) in enumerate(prepared):
            # Both pairs must be connected to ever reach the target; the
            # unpruned search agrees (see the solvability tests).
            if not (tables.connected(mask, a, b) and tables.connected(mask, c, d)):
                continue
            if _edge_disjoint_exists(tables, mask, a, b, c, d):
                continue
            if oracle.reach(mask, deletable, target):
                hits.append((mask, idx))
    return hits


def _scan_chunk(args) -> list[tuple[int, int]]:
    n, instances, start, stop = args
    return _scan_range(n, instances, start, stop)


def default_pairs(n: int) -> tuple[tuple[int, int], tuple[int, int]] | None:
    return ((1, 6), (2, 5)) if n == 6 else None


def scan_all(
    n: int,
    pairs: tuple[tuple[int, int], tuple[int, int]] | None = None,
    all_pairings: bool = False,
    threads: int | None = None,
) -> list[SearchReport]:
    """Scan every labeled graph on 1..n for bottleneck-and-solvable instances.

    ``n`` must be 5 or 6.  For n=6 the canonical pairs are (1,6) and (2,5)
    unless overridden; for n=5 (or with ``all_pairings``) every designation
    of four terminals and their pairings is scanned.  Reports come back
    ordered by graph encoding then instance, with replay-checked witnesses.
    ``threads`` (default: the GSR_THREADS environment variable, else 1)
    splits the graph index space across worker processes.
    """
    if n not in (5, 6):
        raise SizeBoundError("exhaustive scans are implemented for n = 5 or 6 only")
    if pairs is None and not all_pairings:
        pairs = default_pairs(n)
    instances = _instances_for(n, pairs, all_pairings)
    tables = _tables(n)
    total = 1 << tables.nslots
    if threads is None:
        threads = max(1, int(os.environ.get("GSR_THREADS", "1")))
    if threads > 1:
        import multiprocessing as mp

        chunk = (total + threads - 1) // threads
        spans = [(n, instances, i, min(i + chunk, total)) for i in range(0, total, chunk)]
        with mp.get_context("fork").Pool(threads) as pool:
            parts = pool.map(_scan_chunk, spans)
        raw_hits = [h for part in parts for h in part]
    else:
        raw_hits = _scan_range(n, instances, 0, total)
    raw_hits.sort()

    labels = tuple(range(1, n + 1))
    reports = []
    for mask, idx in raw_hits:
        p1, p2 = instances[idx]
        g = _mask_to_graph(mask, tables, labels)
        instance = TwoPairInstance(g, p1, p2)
        result = solvable(instance)
        assert result.solvable and result.witness is not None
        reports.append(
            SearchReport(
                instance=instance,
                has_bottleneck=True,
                solvable=True,
                witness=result.witness,
                graphs_scanned=total,
            )
        )
    return reports


def verify_witness(report: SearchReport) -> bool:
    """Replay a report's witness and confirm it lands exactly on the pair edges."""
    from .orbit import replay_operations

    final = replay_operations(report.instance.graph, report.witness or ())
    want = frozenset(
        (min(p), max(p)) for p in (report.instance.pair1, report.instance.pair2)
    )
    return final.edges() == want


def report_to_dict(reports: list[SearchReport], n: int, pairs, all_pairings: bool) -> dict:
    """Deterministic JSON document for a scan (no timing: byte-stable)."""
    from .io import graph_to_dict, to_graph6
    from .orbit import operations_to_step_dicts

    return {
        "n": n,
        "pairs": None if pairs is None else [list(pairs[0]), list(pairs[1])],
        "all_pairings": all_pairings,
        "bottleneck_definition": BOTTLENECK_DEFINITION,
        "graphs_scanned": reports[0].graphs_scanned if reports else 1 << _tables(n).nslots,
        "hit_count": len(reports),
        "hits": [
            {
                "graph6": to_graph6(r.instance.graph),
                "graph": graph_to_dict(r.instance.graph),
                "pair1": list(r.instance.pair1),
                "pair2": list(r.instance.pair2),
                "witness": operations_to_step_dicts(r.witness or ()),
            }
            for r in reports
        ],
    }
