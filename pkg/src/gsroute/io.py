"""Graph serialization: edge-list text, graph6, JSON dicts, and DOT export."""

from __future__ import annotations

from .errors import GraphDomainError
from .graph import LabeledGraph

FORMATS = ("edgelist", "graph6", "json", "dot")


# -- edge-list text ----------------------------------------------------


def parse_edgelist(text: str) -> LabeledGraph:
    """Parse "u v" lines into a graph.

    ``#`` starts a comment; a line with a single label declares an isolated
    vertex.
    """
    vertices: set[int] = set()
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            labels = [int(p) for p in parts]
        except ValueError:
            raise GraphDomainError(f"line {lineno}: expected integer labels, got {line!r}") from None
        if len(labels) == 1:
            vertices.add(labels[0])
        elif len(labels) == 2:
            vertices.update(labels)
            edges.append((labels[0], labels[1]))
        else:
            raise GraphDomainError(f"line {lineno}: expected 'u v' or a single vertex, got {line!r}")
    return LabeledGraph(vertices, edges)


def emit_edgelist(g: LabeledGraph) -> str:
    lines = [f"{u} {v}" for u, v in g.sorted_edges()]
    lines.extend(str(v) for v in g.vertices if g.degree(v) == 0)
    return "\n".join(lines) + ("\n" if lines else "")


# -- graph6 ------------------------------------------------------------
#
# De-facto standard 6-bit encoding of the upper triangle in column order
# x(0,1), x(0,2), x(1,2), x(0,3), ...  Vertices are taken in sorted label
# order for encoding; decoding yields labels 0..n-1.

_G6_HEADER = ">>graph6<<"


def to_graph6(g: LabeledGraph) -> str:
    n = len(g)
    if n > 62:
        raise GraphDomainError("graph6 long-form sizes (n > 62) are not supported")
    vs = g.vertices
    bits: list[int] = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if g.neighbor_mask(vs[i]) >> vs[j] & 1 else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(63 + n)]
    for k in range(0, len(bits), 6):
        group = 0
        for b in bits[k:k + 6]:
            group = group << 1 | b
        chars.append(chr(63 + group))
    return "".join(chars)


def from_graph6(text: str) -> LabeledGraph:
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):].strip()
    if not s:
        raise GraphDomainError("empty graph6 string")
    data = [ord(ch) - 63 for ch in s]
    if any(d < 0 or d > 63 for d in data):
        raise GraphDomainError(f"invalid graph6 characters in {text!r}")
    n = data[0]
    if n == 63:
        raise GraphDomainError("graph6 long-form sizes (n > 62) are not supported")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) - 1 != need:
        raise GraphDomainError(f"graph6 payload length {len(data) - 1} != expected {need} for n={n}")
    bits: list[int] = []
    for d in data[1:]:
        for shift in range(5, -1, -1):
            bits.append(d >> shift & 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return LabeledGraph(range(n), edges)


# -- JSON dicts --------------------------------------------------------


def graph_to_dict(g: LabeledGraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [list(e) for e in g.sorted_edges()],
    }


def graph_from_dict(d: dict) -> LabeledGraph:
    try:
        vertices = d["vertices"]
        edges = d["edges"]
    except (KeyError, TypeError):
        raise GraphDomainError("graph dict needs 'vertices' and 'edges' keys") from None
    return LabeledGraph(vertices, [tuple(e) for e in edges])


# -- DOT ---------------------------------------------------------------


def to_dot(g: LabeledGraph, name: str = "G",
           highlight: dict[int, str] | None = None) -> str:
    """Render as Graphviz DOT; ``highlight`` maps vertex -> fill color."""
    highlight = highlight or {}
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        if v in highlight:
            lines.append(f'  {v} [style=filled, fillcolor="{highlight[v]}"];')
        else:
            lines.append(f"  {v};")
    for u, v in g.sorted_edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- format dispatch ---------------------------------------------------


def load_graph(text: str, fmt: str) -> LabeledGraph:
    if fmt == "edgelist":
        return parse_edgelist(text)
    if fmt == "graph6":
        return from_graph6(text)
    if fmt == "json":
        import json as _json

        return graph_from_dict(_json.loads(text))
    raise GraphDomainError(f"cannot load graphs from format {fmt!r}")


def dump_graph(g: LabeledGraph, fmt: str) -> str:
    if fmt == "edgelist":
        return emit_edgelist(g)
    if fmt == "graph6":
        return to_graph6(g) + "\n"
    if fmt == "json":
        import json as _json

        return _json.dumps(graph_to_dict(g), sort_keys=True, indent=2) + "\n"
    if fmt == "dot":
        return to_dot(g)
    raise GraphDomainError(f"cannot dump graphs to format {fmt!r}")
