"""Shortest-path machinery with minimum-combined-neighborhood selection.

Path length is counted in vertices: a single edge is a path of length 2.
All functions are pure and deterministic; ties between equally good paths
are broken toward the lexicographically smallest vertex sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import DisconnectedError, GraphDomainError
from .graph import LabeledGraph, combined_neighborhood

DEFAULT_ENUMERATION_CAP = 100_000


@dataclass(frozen=True)
class VertexPath:
    """Ordered, repetition-free vertex sequence with adjacent consecutive vertices."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphDomainError(f"path repeats a vertex: {self.vertices}")

    @classmethod
    def checked(cls, g: LabeledGraph, vertices: tuple[int, ...] | list[int]) -> "VertexPath":
        vs = tuple(vertices)
        if not vs:
            raise GraphDomainError("empty path")
        for v in vs:
            if v not in g:
                raise GraphDomainError(f"path vertex {v} not in graph")
        for u, v in zip(vs, vs[1:]):
            if not g.has_edge(u, v):
                raise GraphDomainError(f"path vertices {u} and {v} are not adjacent")
        return cls(vs)

    @property
    def length(self) -> int:
        """Number of vertices on the path."""
        return len(self.vertices)

    @property
    def source(self) -> int:
        return self.vertices[0]

    @property
    def sink(self) -> int:
        return self.vertices[-1]

    @property
    def interior(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self.vertices


@dataclass(frozen=True)
class PathQuery:
    """A routing request: terminal pair plus optional forbidden vertices."""

    source: int
    sink: int
    forbidden: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.source == self.sink:
            raise GraphDomainError("source and sink must be distinct")

    def restrict(self, g: LabeledGraph) -> LabeledGraph:
        if self.source not in g or self.sink not in g:
            raise GraphDomainError("query terminals must be in the graph")
        if self.source in self.forbidden or self.sink in self.forbidden:
            raise GraphDomainError("terminals cannot be forbidden")
        return g.without_vertices(self.forbidden & set(g.vertices))


@dataclass(frozen=True)
class PathSearchResult:
    """Outcome of minimum-neighborhood selection.

    ``exact`` is False when the number of shortest paths exceeded the
    enumeration cap and a greedy pick was used instead.
    """

    path: VertexPath
    exact: bool
    candidates: int


def bfs_distances(g: LabeledGraph, source: int) -> dict[int, int]:
    if source not in g:
        raise GraphDomainError(f"vertex {source} not in graph")
    dist = {source: 0}
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for v in g.neighbors(u):
                if v not in dist:
                    dist[v] = d
                    nxt.append(v)
        frontier = nxt
    return dist


def _layer_maps(g: LabeledGraph, a: int, b: int) -> tuple[dict[int, int], dict[int, int], int] | None:
    da = bfs_distances(g, a)
    if b not in da:
        return None
    db = bfs_distances(g, b)
    return da, db, da[b]


def shortest_path(g: LabeledGraph, a: int, b: int) -> VertexPath | None:
    """Lexicographically smallest shortest path, or None if disconnected."""
    if a not in g or b not in g:
        raise GraphDomainError("path endpoints must be in the graph")
    if a == b:
        raise GraphDomainError("path endpoints must be distinct")
    maps = _layer_maps(g, a, b)
    if maps is None:
        return None
    da, db, d = maps
    path = [a]
    cur = a
    for t in range(1, d + 1):
        cur = min(v for v in g.neighbors(cur) if da.get(v) == t and db.get(v) == d - t)
        path.append(cur)
    return VertexPath(tuple(path))


def count_shortest_paths(g: LabeledGraph, a: int, b: int) -> int:
    maps = _layer_maps(g, a, b)
    if maps is None:
        return 0
    da, db, d = maps
    ways = {a: 1}
    frontier = [a]
    for t in range(1, d + 1):
        nxt: dict[int, int] = {}
        for u in frontier:
            for v in g.neighbors(u):
                if da.get(v) == t and db.get(v) == d - t:
                    nxt[v] = nxt.get(v, 0) + ways[u]
        ways.update(nxt)
        frontier = list(nxt)
    return ways.get(b, 0)


def iter_shortest_paths(g: LabeledGraph, a: int, b: int) -> Iterator[VertexPath]:
    """All shortest paths from a to b in lexicographic vertex order."""
    maps = _layer_maps(g, a, b)
    if maps is None:
        return
    da, db, d = maps

    def extend(prefix: list[int], t: int) -> Iterator[VertexPath]:
        cur = prefix[-1]
        if t == d:
            if cur == b:
                yield VertexPath(tuple(prefix))
            return
        for v in sorted(g.neighbors(cur)):
            if da.get(v) == t + 1 and db.get(v) == d - t - 1:
                prefix.append(v)
                yield from extend(prefix, t + 1)
                prefix.pop()

    yield from extend([a], 0)


def min_neighborhood_shortest_path(
    g: LabeledGraph,
    a: int,
    b: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> PathSearchResult:
    """Among all shortest a-b paths, one with the smallest combined neighborhood.

    Exact (full enumeration over the BFS layer DAG) while the number of
    shortest paths stays within ``cap``; greedy with ``exact=False`` beyond
    that.  Ties go to the lexicographically smallest vertex sequence.
    """
    if cap <= 0:
        raise GraphDomainError("enumeration cap must be positive")
    if a not in g or b not in g:
        raise GraphDomainError("path endpoints must be in the graph")
    if a == b:
        raise GraphDomainError("path endpoints must be distinct")
    total = count_shortest_paths(g, a, b)
    if total == 0:
        raise DisconnectedError(f"vertices {a} and {b} are not connected")
    if total <= cap:
        best: VertexPath | None = None
        best_size = -1
        for path in iter_shortest_paths(g, a, b):
            size = len(combined_neighborhood(g, path))
            if best is None or size < best_size:
                best, best_size = path, size
        assert best is not None
        return PathSearchResult(best, True, total)
    # Greedy: extend by the neighbor that grows the running neighborhood least.
    maps = _layer_maps(g, a, b)
    assert maps is not None
    da, db, d = maps
    path = [a]
    seen = g.neighbor_mask(a)
    cur = a
    for t in range(1, d + 1):
        options = [v for v in sorted(g.neighbors(cur)) if da.get(v) == t and db.get(v) == d - t]
        cur = min(options, key=lambda v: ((seen | g.neighbor_mask(v)).bit_count(), v))
        seen |= g.neighbor_mask(cur)
        path.append(cur)
    return PathSearchResult(VertexPath(tuple(path)), False, total)
