"""Vertex-ordered labeled graphs and order-preserving subgraph matching.

A linear graph is an undirected labeled graph whose vertices carry a total
order (sequence positions).  Subgraph embeddings must preserve that order,
so a pattern occurrence is simply a strictly increasing vertex mapping.
Everything else in this package builds on the three types defined here:
data graphs, canonical patterns, and occurrences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

UNLABELED = "_"


def _valid_symbol(symbol: str) -> bool:
    return bool(symbol) and not any(ch.isspace() for ch in symbol)


@dataclass(frozen=True)
class Edge:
    """Undirected edge, stored with the smaller endpoint first."""

    left: int
    right: int
    label: str = UNLABELED

    def __post_init__(self):
        if not 0 <= self.left < self.right:
            raise ValueError(
                f"edge endpoints must satisfy 0 <= left < right, "
                f"got ({self.left}, {self.right})"
            )
        if not _valid_symbol(self.label):
            raise ValueError(f"invalid edge label: {self.label!r}")

    @property
    def pair(self) -> tuple[int, int]:
        return (self.left, self.right)


def edge_order_less(a: Edge, b: Edge) -> bool:
    """Strict total order on edges of one graph.

    Compares left endpoints first, then right endpoints.  Labels do not
    participate, so the order is total only across distinct vertex pairs
    (which is all a single graph can contain).
    """
    return (a.left, a.right) < (b.left, b.right)


@dataclass(frozen=True)
class LinearGraph:
    """A database graph: ordered labeled vertices plus a labeled edge set.

    Vertices are dense indices 0..n-1; only their relative order matters.
    Isolated vertices are allowed in data graphs.  Instances are immutable
    and precompute sorted edge arrays for the miner's scans.
    """

    id: int
    labels: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.id < 0:
            raise ValueError(f"graph id must be non-negative, got {self.id}")
        labels = tuple(self.labels)
        for symbol in labels:
            if not _valid_symbol(symbol):
                raise ValueError(f"invalid vertex label: {symbol!r}")
        n = len(labels)
        edges = tuple(sorted(self.edges, key=lambda e: (e.left, e.right)))
        pairs = [e.pair for e in edges]
        for e in edges:
            if e.right >= n:
                raise ValueError(f"edge {e.pair} out of range for {n} vertices")
        if len(set(pairs)) != len(pairs):
            raise ValueError("duplicate edge between one vertex pair")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "edges", edges)
        # Sorted parallel arrays and a pair->label map, used heavily by the
        # matcher and the miner's extension scan.
        object.__setattr__(self, "_pairs", pairs)
        object.__setattr__(self, "_edge_labels", [e.label for e in edges])
        object.__setattr__(self, "_label_of", dict(zip(pairs, (e.label for e in edges))))

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    def edge_label(self, u: int, v: int) -> str | None:
        """Label of edge (u, v) in either endpoint order, or None if absent."""
        if u > v:
            u, v = v, u
        return self._label_of.get((u, v))


@dataclass(frozen=True)
class Pattern:
    """A canonical mined pattern.

    Vertices are contiguous 0..k-1, every vertex is an endpoint of at least
    one edge, and edges are stored strictly ascending under the endpoint
    order.  The empty pattern has no vertices and no edges.
    """

    labels: tuple[str, ...] = ()
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        labels = tuple(self.labels)
        edges = tuple(self.edges)
        for symbol in labels:
            if not _valid_symbol(symbol):
                raise ValueError(f"invalid vertex label: {symbol!r}")
        covered = set()
        prev = None
        for e in edges:
            if e.right >= len(labels):
                raise ValueError(f"edge {e.pair} out of range for {len(labels)} vertices")
            if prev is not None and prev >= e.pair:
                raise ValueError("pattern edges must be strictly ascending")
            prev = e.pair
            covered.add(e.left)
            covered.add(e.right)
        if len(covered) != len(labels):
            raise ValueError("pattern may not contain isolated vertices")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "edges", edges)

    @property
    def size(self) -> int:
        """Pattern size = number of edges."""
        return len(self.edges)

    @property
    def vertex_count(self) -> int:
        return len(self.labels)


EMPTY_PATTERN = Pattern()


@dataclass(frozen=True, order=True)
class Occurrence:
    """One embedding of a pattern: (graph id, strictly increasing mapping)."""

    graph_id: int
    mapping: tuple[int, ...]


def largest_edge(g: Pattern) -> Edge | None:
    """Maximum edge under the endpoint order, or None for the empty pattern."""
    return g.edges[-1] if g.edges else None


def _embeddings(pattern: Pattern, graph: LinearGraph) -> Iterator[tuple[int, ...]]:
    """Yield all order-preserving embeddings in lexicographic mapping order."""
    k = pattern.vertex_count
    if k == 0:
        yield ()
        return
    n = graph.vertex_count
    if k > n:
        return
    # Edges whose right endpoint is p, checked as soon as p is assigned.
    back: list[list[tuple[int, str]]] = [[] for _ in range(k)]
    for e in pattern.edges:
        back[e.right].append((e.left, e.label))
    glabels = graph.labels
    label_of = graph._label_of
    plabels = pattern.labels
    chosen = [0] * k

    def assign(p: int, lo: int) -> Iterator[tuple[int, ...]]:
        need = plabels[p]
        for v in range(lo, n - (k - 1 - p)):
            if glabels[v] != need:
                continue
            ok = True
            for q, elb in back[p]:
                cq = chosen[q]
                if label_of.get((cq, v)) != elb:
                    ok = False
                    break
            if not ok:
                continue
            chosen[p] = v
            if p + 1 == k:
                yield tuple(chosen)
            else:
                yield from assign(p + 1, v + 1)

    yield from assign(0, 0)


def match_pattern(pattern: Pattern, graph: LinearGraph) -> list[Occurrence]:
    """All occurrences of `pattern` in `graph`, in lexicographic mapping order.

    The empty pattern occurs exactly once, with the empty mapping.
    """
    gid = graph.id
    return [Occurrence(gid, m) for m in _embeddings(pattern, graph)]


def has_occurrence(pattern: Pattern, graph: LinearGraph) -> bool:
    """True iff the pattern embeds at least once (stops at the first hit)."""
    return next(_embeddings(pattern, graph), None) is not None


def canonical_code(g: Pattern) -> bytes:
    """Deterministic serialization; equal patterns <=> equal codes.

    Token stream: vertex count, edge count, vertex labels, then each edge as
    "left right label" in storage (ascending) order.  Labels contain no
    whitespace, so space-joining is unambiguous.  The empty pattern encodes
    as b"0 0".
    """
    tokens = [str(g.vertex_count), str(g.size)]
    tokens.extend(g.labels)
    for e in g.edges:
        tokens.append(str(e.left))
        tokens.append(str(e.right))
        tokens.append(e.label)
    return " ".join(tokens).encode("utf-8")


def decode_canonical(code: bytes) -> Pattern:
    """Inverse of canonical_code; raises ValueError on malformed input."""
    tokens = code.decode("utf-8").split(" ") if code else []
    if len(tokens) < 2:
        raise ValueError("truncated pattern code")
    k, m = int(tokens[0]), int(tokens[1])
    if len(tokens) != 2 + k + 3 * m:
        raise ValueError("pattern code has wrong token count")
    labels = tuple(tokens[2 : 2 + k])
    edges = []
    pos = 2 + k
    for _ in range(m):
        edges.append(Edge(int(tokens[pos]), int(tokens[pos + 1]), tokens[pos + 2]))
        pos += 3
    return Pattern(labels, tuple(edges))


def pattern_from_graph(graph: LinearGraph) -> Pattern:
    """Reinterpret a graph as a pattern (fails if it has isolated vertices)."""
    return Pattern(graph.labels, graph.edges)


def graph_from_pattern(pattern: Pattern, graph_id: int = 0) -> LinearGraph:
    """Embed a pattern into a data graph with the given id."""
    return LinearGraph(graph_id, pattern.labels, pattern.edges)
