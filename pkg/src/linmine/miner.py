"""Reverse-search enumeration of frequent order-preserving subgraph patterns.

The search tree is defined implicitly by a reduction map: delete the largest
edge of a pattern (endpoint order), drop any vertex this isolates, and
renumber.  Children are generated by inverting that map while scanning the
parent's occurrence list, so every pattern is visited exactly once and each
child's occurrence list is built in the same pass.

There are three inversion cases, named by how many vertices the new edge
introduces: A (none - edge between existing vertices), B (one new vertex),
C (two new vertices joined by the new edge).  Disconnected patterns arise
naturally through case C.
"""

from __future__ import annotations

import time
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .model import (
    EMPTY_PATTERN,
    Edge,
    LinearGraph,
    Occurrence,
    Pattern,
    canonical_code,
)

ALL_CASES = frozenset("ABC")

# An occurrence list is kept sorted by (graph_id, mapping) with no duplicates.
OccurrenceList = tuple[Occurrence, ...]


@dataclass(frozen=True)
class MiningParams:
    """Problem parameters: support threshold, size cap, and case toggles."""

    min_support: int
    max_size: int
    enabled_cases: frozenset[str] = ALL_CASES
    report_empty: bool = False

    def __post_init__(self):
        if self.min_support < 1:
            raise ValueError(f"min_support must be >= 1, got {self.min_support}")
        if self.max_size < 1:
            raise ValueError(f"max_size must be >= 1, got {self.max_size}")
        cases = frozenset(self.enabled_cases)
        if not cases <= ALL_CASES:
            raise ValueError(f"enabled_cases must be a subset of ABC, got {sorted(cases)}")
        object.__setattr__(self, "enabled_cases", cases)


@dataclass(frozen=True)
class MiningReport:
    """One emitted frequent pattern with its support evidence."""

    pattern: Pattern
    support: int
    occurrence_count: int
    graph_ids: tuple[int, ...]
    occurrences: OccurrenceList | None = None


@dataclass(frozen=True)
class MiningSummary:
    pattern_count: int
    node_visits: int
    pruned_children: int
    max_depth: int
    max_delay_seconds: float
    total_scan_ops: int


@dataclass(frozen=True)
class DelayRecord:
    """Work done between two consecutive reports (or start and first report)."""

    report_index: int
    wall_seconds: float
    scan_ops: int
    node_visits: int


def support(occurrences: Iterable[Occurrence]) -> int:
    """Number of distinct database graphs covered by an occurrence list."""
    return len({o.graph_id for o in occurrences})


def reduce_pattern(g: Pattern) -> Pattern:
    """Parent of a pattern: delete the largest edge, drop isolated vertices.

    Remaining vertices are renumbered contiguously preserving their order.
    Raises ValueError on the empty pattern, which has no parent.
    """
    if not g.edges:
        raise ValueError("cannot reduce the empty pattern")
    kept = g.edges[:-1]
    used = sorted({i for e in kept for i in (e.left, e.right)})
    if len(used) == g.vertex_count:
        return Pattern(g.labels, kept)
    renum = {old: new for new, old in enumerate(used)}
    labels = tuple(g.labels[i] for i in used)
    edges = tuple(Edge(renum[e.left], renum[e.right], e.label) for e in kept)
    return Pattern(labels, edges)


def initial_occurrences(database: Iterable[LinearGraph]) -> OccurrenceList:
    """Occurrence list of the empty pattern: one empty mapping per graph."""
    return tuple(Occurrence(g.id, ()) for g in sorted(database, key=lambda g: g.id))


def _graphs_by_id(database) -> Mapping[int, LinearGraph]:
    if isinstance(database, Mapping):
        return database
    index: dict[int, LinearGraph] = {}
    for g in database:
        if g.id in index:
            raise ValueError(f"duplicate graph id {g.id}")
        index[g.id] = g
    return index


def _build_child(parent: Pattern, key: tuple) -> Pattern:
    """Materialize the child pattern described by an extension key."""
    kind = key[0]
    labels = parent.labels
    if kind == "A":
        _, p, q, elb = key
        return Pattern(labels, parent.edges + (Edge(p, q, elb),))
    if kind == "B":
        _, t, o, elb, nlb = key
        new_labels = labels[:t] + (nlb,) + labels[t:]
        shifted = tuple(
            Edge(e.left + (e.left >= t), e.right + (e.right >= t), e.label)
            for e in parent.edges
        )
        oo = o + (o >= t)
        new_edge = Edge(min(t, oo), max(t, oo), elb)
        return Pattern(new_labels, shifted + (new_edge,))
    _, p1, p2, elb, lb1, lb2 = key
    new_labels = labels[:p1] + (lb1,) + labels[p1:p2] + (lb2,) + labels[p2:]
    shifted = tuple(
        Edge(
            e.left + (e.left >= p1) + (e.left >= p2),
            e.right + (e.right >= p1) + (e.right >= p2),
            e.label,
        )
        for e in parent.edges
    )
    return Pattern(new_labels, shifted + (Edge(p1, p2 + 1, elb),))


def extend(
    g: Pattern,
    occurrences: Sequence[Occurrence],
    database,
    enabled_cases: frozenset[str] = ALL_CASES,
    _ops: list[int] | None = None,
) -> list[tuple[Pattern, OccurrenceList]]:
    """All children of `g` that occur in the database, with occurrence lists.

    A child adds exactly one edge which must be the largest of the result;
    its validity is checked in data coordinates: because occurrence mappings
    are order-preserving, the new edge is largest in pattern coordinates iff
    its data image is lexicographically greater than the image of the
    parent's largest edge.  Scanning only those data edges per occurrence
    therefore enumerates exactly the inverse image of the reduction map, and
    yields each child occurrence exactly once.

    `occurrences` must be the exact occurrence list of `g`; inconsistent
    lists surface lazily as index errors.  Children are returned sorted by
    canonical code, each with its occurrence list sorted and duplicate-free.
    """
    graphs = _graphs_by_id(database)
    k = g.vertex_count
    has_edges = bool(g.edges)
    if has_edges:
        big = g.edges[-1]
        bi, bj = big.left, big.right
    want_a = "A" in enabled_cases
    want_b = "B" in enabled_cases
    want_c = "C" in enabled_cases
    buckets: dict[tuple, list[Occurrence]] = {}
    ops = 0
    for occ in occurrences:
        G = graphs[occ.graph_id]
        m = occ.mapping
        pairs = G._pairs
        elabels = G._edge_labels
        vlabels = G.labels
        lo = bisect_right(pairs, (m[bi], m[bj])) if has_edges else 0
        ops += len(pairs) - lo
        for i in range(lo, len(pairs)):
            du, dv = pairs[i]
            iu = bisect_left(m, du)
            u_in = iu < k and m[iu] == du
            iv = bisect_left(m, dv)
            v_in = iv < k and m[iv] == dv
            if u_in:
                if v_in:
                    if not want_a:
                        continue
                    key = ("A", iu, iv, elabels[i])
                    new_map = m
                else:
                    if not want_b:
                        continue
                    key = ("B", iv, iu, elabels[i], vlabels[dv])
                    new_map = m[:iv] + (dv,) + m[iv:]
            elif v_in:
                if not want_b:
                    continue
                key = ("B", iu, iv, elabels[i], vlabels[du])
                new_map = m[:iu] + (du,) + m[iu:]
            else:
                if not want_c:
                    continue
                key = ("C", iu, iv, elabels[i], vlabels[du], vlabels[dv])
                new_map = m[:iu] + (du,) + m[iu:iv] + (dv,) + m[iv:]
            buckets.setdefault(key, []).append(Occurrence(occ.graph_id, new_map))
    if _ops is not None:
        _ops[0] += ops
    children = []
    for key, occs in buckets.items():
        occs.sort()
        children.append((_build_child(g, key), tuple(occs)))
    children.sort(key=lambda child: canonical_code(child[0]))
    return children


def mine(
    database: Sequence[LinearGraph],
    params: MiningParams,
    report: Callable[[MiningReport], None],
    include_occurrences: bool = False,
    trace: list[DelayRecord] | None = None,
) -> MiningSummary:
    """Enumerate every frequent pattern exactly once, depth-first.

    Children of each node are visited in canonical-code order, so the
    emitted stream is deterministic.  A subtree is pruned as soon as its
    root's support drops below the threshold; descent stops at max_size.
    The empty pattern is emitted only when params.report_empty is set.
    Exceptions raised by the report sink propagate to the caller.
    """
    graphs = _graphs_by_id(database)
    if not graphs:
        raise ValueError("database must not be empty")
    sigma = params.min_support
    smax = params.max_size
    cases = params.enabled_cases
    ops = [0]
    emitted = 0
    visits = 0
    pruned = 0
    max_depth = 0
    max_delay = 0.0
    last_time = time.perf_counter()
    last_ops = 0
    last_visits = 0
    root = tuple(Occurrence(gid, ()) for gid in sorted(graphs))
    stack: list[tuple[Pattern, OccurrenceList]] = [(EMPTY_PATTERN, root)]
    while stack:
        g, occs = stack.pop()
        visits += 1
        sup = support(occs)
        if sup < sigma:
            continue
        depth = len(g.edges)
        if depth > max_depth:
            max_depth = depth
        if g.edges or params.report_empty:
            now = time.perf_counter()
            delay = now - last_time
            if delay > max_delay:
                max_delay = delay
            if trace is not None:
                trace.append(
                    DelayRecord(emitted, delay, ops[0] - last_ops, visits - last_visits)
                )
            last_time = now
            last_ops = ops[0]
            last_visits = visits
            gids = tuple(sorted({o.graph_id for o in occs}))
            report(
                MiningReport(
                    pattern=g,
                    support=sup,
                    occurrence_count=len(occs),
                    graph_ids=gids,
                    occurrences=occs if include_occurrences else None,
                )
            )
            emitted += 1
        if depth == smax:
            continue
        children = extend(g, occs, graphs, cases, _ops=ops)
        eligible = [child for child in children if support(child[1]) >= sigma]
        pruned += len(children) - len(eligible)
        stack.extend(reversed(eligible))
    return MiningSummary(emitted, visits, pruned, max_depth, max_delay, ops[0])


def measure_delay(
    database: Sequence[LinearGraph], params: MiningParams
) -> list[DelayRecord]:
    """Run the miner with instrumentation; per-report delay and work counters."""
    records: list[DelayRecord] = []
    mine(database, params, lambda _report: None, trace=records)
    return records
