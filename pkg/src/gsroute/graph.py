"""Labeled simple graphs and the local-complementation measurement calculus.

Graphs are immutable values: every operation returns a new graph, so
snapshots are free and instances are safe to share between threads or
processes.  Vertex labels are non-negative integers and survive every
operation.  Adjacency is stored as one bitmask per vertex (bit ``u`` of
``row[v]`` set iff ``(u, v)`` is an edge), which makes local
complementation a row-wise XOR under the pivot's neighborhood mask.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import GraphDomainError

Edge = tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    """Canonical form of an undirected edge: smaller label first."""
    if u == v:
        raise GraphDomainError(f"self-loop on vertex {u} is not a simple edge")
    return (u, v) if u < v else (v, u)


class LabeledGraph:
    """Simple undirected graph on distinct non-negative integer labels."""

    __slots__ = ("_vertices", "_rows", "_hash")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]] = ()):
        vs = sorted(set(vertices))
        for v in vs:
            if v < 0:
                raise GraphDomainError(f"vertex labels must be non-negative, got {v}")
        rows = {v: 0 for v in vs}
        for u, v in edges:
            u, v = normalize_edge(u, v)
            if u not in rows or v not in rows:
                raise GraphDomainError(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        self._vertices: tuple[int, ...] = tuple(vs)
        self._rows: dict[int, int] = rows
        self._hash: int | None = None

    @classmethod
    def _from_rows(cls, vertices: tuple[int, ...], rows: dict[int, int]) -> "LabeledGraph":
        g = object.__new__(cls)
        g._vertices = vertices
        g._rows = rows
        g._hash = None
        return g

    @classmethod
    def empty(cls, vertices: Iterable[int]) -> "LabeledGraph":
        return cls(vertices)

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: int) -> bool:
        return v in self._rows

    def has_edge(self, u: int, v: int) -> bool:
        row = self._rows.get(u)
        if row is None or v not in self._rows:
            raise GraphDomainError(f"vertex {u if row is None else v} not in graph")
        return bool(row >> v & 1)

    def neighbor_mask(self, v: int) -> int:
        try:
            return self._rows[v]
        except KeyError:
            raise GraphDomainError(f"vertex {v} not in graph") from None

    def neighbors(self, v: int) -> frozenset[int]:
        mask = self.neighbor_mask(v)
        return frozenset(u for u in self._vertices if mask >> u & 1)

    def degree(self, v: int) -> int:
        return self.neighbor_mask(v).bit_count()

    def edges(self) -> frozenset[Edge]:
        out = []
        for v in self._vertices:
            row = self._rows[v]
            for u in self._vertices:
                if u >= v:
                    break
                if row >> u & 1:
                    out.append((u, v))
        return frozenset(out)

    def edge_count(self) -> int:
        return sum(self._rows[v].bit_count() for v in self._vertices) // 2

    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges()))

    # -- identity ------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, tuple(self._rows[v] for v in self._vertices)))
        return self._hash

    def __repr__(self) -> str:
        return f"LabeledGraph(vertices={list(self._vertices)}, edges={sorted(self.edges())})"

    def adjacency_key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Hashable exact identity: (sorted vertices, their adjacency rows)."""
        return (self._vertices, tuple(self._rows[v] for v in self._vertices))

    def encoding_int(self) -> int:
        """Upper-triangle bit encoding over sorted labels, as one integer.

        Bit order follows column-major upper-triangle enumeration, so the
        integer is comparable between graphs on the same vertex set.
        """
        vs = self._vertices
        out = 0
        bit = 0
        for j in range(1, len(vs)):
            for i in range(j):
                if self._rows[vs[i]] >> vs[j] & 1:
                    out |= 1 << bit
                bit += 1
        return out

    # -- derived graphs ------------------------------------------------

    def without_vertices(self, drop: Iterable[int]) -> "LabeledGraph":
        """Induced subgraph after deleting ``drop`` and their incident edges."""
        dropset = set(drop)
        for v in dropset:
            if v not in self._rows:
                raise GraphDomainError(f"vertex {v} not in graph")
        keep_mask = 0
        for v in self._vertices:
            if v not in dropset:
                keep_mask |= 1 << v
        vertices = tuple(v for v in self._vertices if v not in dropset)
        rows = {v: self._rows[v] & keep_mask for v in vertices}
        return LabeledGraph._from_rows(vertices, rows)

    def induced(self, keep: Iterable[int]) -> "LabeledGraph":
        keepset = set(keep)
        for v in keepset:
            if v not in self._rows:
                raise GraphDomainError(f"vertex {v} not in graph")
        keep_mask = 0
        for v in keepset:
            keep_mask |= 1 << v
        vertices = tuple(v for v in self._vertices if v in keepset)
        rows = {v: self._rows[v] & keep_mask for v in vertices}
        return LabeledGraph._from_rows(vertices, rows)

    def with_toggled_pairs(self, inside: int) -> "LabeledGraph":
        """Toggle every edge between distinct vertices of the bitmask ``inside``."""
        rows = dict(self._rows)
        for v in self._vertices:
            if inside >> v & 1:
                rows[v] ^= inside & ~(1 << v)
        return LabeledGraph._from_rows(self._vertices, rows)

    # -- connectivity --------------------------------------------------

    def component(self, v: int) -> frozenset[int]:
        if v not in self._rows:
            raise GraphDomainError(f"vertex {v} not in graph")
        seen = 1 << v
        frontier = [v]
        while frontier:
            nxt = []
            for u in frontier:
                mask = self._rows[u] & ~seen
                while mask:
                    low = mask & -mask
                    w = low.bit_length() - 1
                    seen |= low
                    mask ^= low
                    nxt.append(w)
            frontier = nxt
        return frozenset(u for u in self._vertices if seen >> u & 1)

    def components(self) -> list[frozenset[int]]:
        remaining = set(self._vertices)
        out = []
        while remaining:
            comp = self.component(min(remaining))
            out.append(comp)
            remaining -= comp
        return sorted(out, key=min)

    def connected(self, a: int, b: int) -> bool:
        return b in self.component(a)

    def is_connected(self) -> bool:
        if not self._vertices:
            return True
        return len(self.component(self._vertices[0])) == len(self._vertices)


# -- edge-set algebra -------------------------------------------------


def edge_set_between(a: Iterable[int], b: Iterable[int]) -> frozenset[Edge]:
    """All possible edges with one endpoint in each set, excluding self-pairs."""
    aset, bset = set(a), set(b)
    return frozenset(normalize_edge(u, v) for u in aset for v in bset if u != v)


def symmetric_difference(e: Iterable[Edge], f: Iterable[Edge]) -> frozenset[Edge]:
    return frozenset(e) ^ frozenset(f)


def restrict_incident(e: Iterable[Edge], w: Iterable[int]) -> frozenset[Edge]:
    """Subset of ``e`` touching at least one vertex of ``w``."""
    wset = set(w)
    return frozenset(edge for edge in e if edge[0] in wset or edge[1] in wset)


# -- rewrite calculus --------------------------------------------------


def local_complement(g: LabeledGraph, a: int) -> LabeledGraph:
    """Toggle every edge inside the neighborhood of ``a``.

    The pivot's own neighborhood and the vertex set are unchanged; the
    operation is an involution.
    """
    mask = g.neighbor_mask(a)
    return g.with_toggled_pairs(mask)


def measure_z(g: LabeledGraph, v: int) -> LabeledGraph:
    """Z-measurement rewrite: delete ``v`` and all incident edges."""
    return g.without_vertices([v])


def measure_y(g: LabeledGraph, v: int) -> LabeledGraph:
    """Y-measurement rewrite: local complementation at ``v``, then deletion."""
    return measure_z(local_complement(g, v), v)


def measure_x(g: LabeledGraph, v: int, w: int | None = None) -> LabeledGraph:
    """X-measurement rewrite with chosen neighbor ``w``.

    The new edge set is ``(E Δ E(N_w, N_v) Δ E(N_w∩N_v, N_w∩N_v) Δ
    E({w}, N_v\\{w})) \\ E_|{v}`` with ``v`` deleted afterwards.  Different
    neighbor choices give graphs in the same local-complementation orbit,
    not necessarily equal graphs.

    ``w`` defaults to the smallest-label neighbor.  Measuring an isolated
    vertex just deletes it (``w`` must then be omitted).
    """
    nv = g.neighbors(v)
    if not nv:
        if w is not None:
            raise GraphDomainError(f"vertex {v} is isolated; neighbor {w} is invalid")
        return g.without_vertices([v])
    if w is None:
        w = min(nv)
    elif w not in nv:
        raise GraphDomainError(f"chosen vertex {w} is not a neighbor of {v}")
    nw = g.neighbors(w)
    new_edges = symmetric_difference(g.edges(), edge_set_between(nw, nv))
    common = nw & nv
    new_edges = symmetric_difference(new_edges, edge_set_between(common, common))
    new_edges = symmetric_difference(new_edges, edge_set_between({w}, nv - {w}))
    new_edges = new_edges - restrict_incident(new_edges, {v})
    vertices = tuple(u for u in g.vertices if u != v)
    return LabeledGraph(vertices, new_edges)


def measure_x_via_complementations(g: LabeledGraph, v: int, w: int | None = None) -> LabeledGraph:
    """X-measurement as local complementations plus a Z-measurement.

    Applies tau_w, tau_v, deletes ``v``, then tau_w again.  Must agree with
    :func:`measure_x` for every graph and neighbor choice; the test suite
    asserts the equality.
    """
    nv = g.neighbors(v)
    if not nv:
        if w is not None:
            raise GraphDomainError(f"vertex {v} is isolated; neighbor {w} is invalid")
        return g.without_vertices([v])
    if w is None:
        w = min(nv)
    elif w not in nv:
        raise GraphDomainError(f"chosen vertex {w} is not a neighbor of {v}")
    h = local_complement(g, w)
    h = local_complement(h, v)
    h = measure_z(h, v)
    return local_complement(h, w)


def neighborhood(g: LabeledGraph, a: int) -> frozenset[int]:
    return g.neighbors(a)


def combined_neighborhood(g: LabeledGraph, path: Iterable[int]) -> frozenset[int]:
    """Union of the neighborhoods of every vertex on ``path``."""
    mask = 0
    for v in path:
        mask |= g.neighbor_mask(v)
    return frozenset(u for u in g.vertices if mask >> u & 1)


# -- convenience constructors -----------------------------------------


def path_graph(labels: Iterable[int]) -> LabeledGraph:
    ls = list(labels)
    return LabeledGraph(ls, zip(ls, ls[1:]))


def cycle_graph(labels: Iterable[int]) -> LabeledGraph:
    ls = list(labels)
    edges = list(zip(ls, ls[1:])) + [(ls[-1], ls[0])]
    return LabeledGraph(ls, edges)


def star_graph(center: int, leaves: Iterable[int]) -> LabeledGraph:
    ls = list(leaves)
    return LabeledGraph([center, *ls], [(center, leaf) for leaf in ls])


def complete_graph(labels: Iterable[int]) -> LabeledGraph:
    ls = list(labels)
    return LabeledGraph(ls, [(u, v) for i, u in enumerate(ls) for v in ls[i + 1:]])


def grid_graph(rows: int, cols: int, first_label: int = 1) -> LabeledGraph:
    """Row-major grid cluster: label ``first_label`` at the top-left corner."""
    def lab(r: int, c: int) -> int:
        return first_label + r * cols + c

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((lab(r, c), lab(r, c + 1)))
            if r + 1 < rows:
                edges.append((lab(r, c), lab(r + 1, c)))
    return LabeledGraph(range(first_label, first_label + rows * cols), edges)
