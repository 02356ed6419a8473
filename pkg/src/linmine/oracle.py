"""Brute-force reference enumerators used to validate the miner.

Everything here is deliberately simple and slow, and intentionally shares no
extension machinery with the miner: candidates are generated abstractly and
checked with the plain matcher.  Intended for small instances only (roughly
total vertices <= 100 and pattern size <= 5).
"""

from __future__ import annotations

import random
from itertools import combinations, product
from typing import Iterable, Iterator

from .miner import ALL_CASES, reduce_pattern
from .model import (
    Edge,
    LinearGraph,
    Pattern,
    UNLABELED,
    canonical_code,
    match_pattern,
)


def _augmentations(
    g: Pattern,
    vertex_labels: Iterable[str],
    edge_labels: Iterable[str],
    kinds: frozenset[str],
) -> Iterator[Pattern]:
    """Every pattern obtainable from g by adding one edge.

    The added edge may appear anywhere in the edge order (no maximality
    requirement); new vertices may be inserted at any position.  Label
    choices come from the supplied alphabets.
    """
    k = g.vertex_count
    vertex_labels = list(vertex_labels)
    edge_labels = list(edge_labels)
    by_pair = lambda e: (e.left, e.right)
    if "A" in kinds:
        taken = {e.pair for e in g.edges}
        for p in range(k):
            for q in range(p + 1, k):
                if (p, q) in taken:
                    continue
                for elb in edge_labels:
                    edges = tuple(sorted(g.edges + (Edge(p, q, elb),), key=by_pair))
                    yield Pattern(g.labels, edges)
    if "B" in kinds and k > 0:
        for t in range(k + 1):
            shifted = tuple(
                Edge(e.left + (e.left >= t), e.right + (e.right >= t), e.label)
                for e in g.edges
            )
            for o in range(k):
                oo = o + (o >= t)
                lo, hi = min(t, oo), max(t, oo)
                for nlb in vertex_labels:
                    labels = g.labels[:t] + (nlb,) + g.labels[t:]
                    for elb in edge_labels:
                        edges = tuple(sorted(shifted + (Edge(lo, hi, elb),), key=by_pair))
                        yield Pattern(labels, edges)
    if "C" in kinds:
        for p1 in range(k + 1):
            for p2 in range(p1, k + 1):
                shifted = tuple(
                    Edge(
                        e.left + (e.left >= p1) + (e.left >= p2),
                        e.right + (e.right >= p1) + (e.right >= p2),
                        e.label,
                    )
                    for e in g.edges
                )
                for lb1, lb2, elb in product(vertex_labels, vertex_labels, edge_labels):
                    labels = g.labels[:p1] + (lb1,) + g.labels[p1:p2] + (lb2,) + g.labels[p2:]
                    edges = tuple(sorted(shifted + (Edge(p1, p2 + 1, elb),), key=by_pair))
                    yield Pattern(labels, edges)


def _alphabets(database: Iterable[LinearGraph]) -> tuple[list[str], list[str]]:
    vlabels = sorted({lb for g in database for lb in g.labels})
    elabels = sorted({e.label for g in database for e in g.edges})
    return vlabels, elabels


def brute_force_mine(
    database: list[LinearGraph],
    min_support: int,
    max_size: int,
    enabled_cases: frozenset[str] = ALL_CASES,
) -> dict[bytes, int]:
    """Frequent patterns by breadth-first closure; {canonical code: support}.

    Starts from all single-edge patterns present in the database (these need
    the two-new-vertex move, so they exist only when case C is enabled) and
    repeatedly applies every single-edge augmentation of the enabled kinds,
    deduplicating globally and keeping patterns whose support reaches the
    threshold.  Support is the number of graphs with at least one match.

    With all cases enabled this is exactly the frequent-pattern set.  With a
    restricted case set it reaches a pattern if any augmentation chain of
    the enabled kinds does, which can be a superset of what the miner's
    (unique, largest-edge) chain reaches; restricted runs are only compared
    against fixtures, not against the miner wholesale.
    """
    graphs = list(database)
    vlabels, elabels = _alphabets(graphs)
    kinds = frozenset(enabled_cases)
    kept: dict[bytes, tuple[Pattern, frozenset[int]]] = {}
    seen: set[bytes] = set()
    frontier: list[tuple[Pattern, frozenset[int]]] = []
    if "C" in kinds:
        seeds: dict[bytes, Pattern] = {}
        for G in graphs:
            for e in G.edges:
                p = Pattern((G.labels[e.left], G.labels[e.right]), (Edge(0, 1, e.label),))
                seeds.setdefault(canonical_code(p), p)
        for code, p in seeds.items():
            seen.add(code)
            gids = frozenset(G.id for G in graphs if match_pattern(p, G))
            if len(gids) >= min_support:
                kept[code] = (p, gids)
                frontier.append((p, gids))
    while frontier:
        nxt = []
        for parent, parent_gids in frontier:
            if parent.size == max_size:
                continue
            pool = [G for G in graphs if G.id in parent_gids]
            for child in _augmentations(parent, vlabels, elabels, kinds):
                code = canonical_code(child)
                if code in seen:
                    continue
                seen.add(code)
                # A child only matches where its sub-pattern parent does.
                gids = frozenset(G.id for G in pool if match_pattern(child, G))
                if len(gids) >= min_support:
                    kept[code] = (child, gids)
                    nxt.append((child, gids))
        frontier = nxt
    return {code: len(gids) for code, (_p, gids) in kept.items()}


def _pattern_from_edge_subset(graph: LinearGraph, edges: tuple[Edge, ...]) -> Pattern:
    used = sorted({i for e in edges for i in (e.left, e.right)})
    renum = {old: new for new, old in enumerate(used)}
    labels = tuple(graph.labels[i] for i in used)
    out = tuple(
        sorted(
            (Edge(renum[e.left], renum[e.right], e.label) for e in edges),
            key=lambda e: (e.left, e.right),
        )
    )
    return Pattern(labels, out)


def edge_subset_mine(
    database: list[LinearGraph], min_support: int, max_size: int
) -> dict[bytes, int]:
    """Second, even simpler enumerator: every edge subset of every graph.

    A pattern occurs in a graph iff it is the renumbered form of one of the
    graph's edge subsets, so enumerating all subsets of size <= max_size and
    counting contributing graphs gives supports directly.  Exponential in
    the per-graph edge count; keep total edges small (<= ~12 per graph).
    """
    presence: dict[bytes, set[int]] = {}
    for G in database:
        local: set[bytes] = set()
        for r in range(1, max_size + 1):
            for combo in combinations(G.edges, r):
                local.add(canonical_code(_pattern_from_edge_subset(G, combo)))
        for code in local:
            presence.setdefault(code, set()).add(G.id)
    return {code: len(ids) for code, ids in presence.items() if len(ids) >= min_support}


def brute_force_children(g: Pattern, database: list[LinearGraph]) -> set[Pattern]:
    """All patterns one edge larger than g that reduce back to g and occur.

    Definitional inverse image of the reduction map, restricted to patterns
    with at least one occurrence somewhere in the database.
    """
    graphs = list(database)
    vlabels, elabels = _alphabets(graphs)
    out: dict[bytes, Pattern] = {}
    for child in _augmentations(g, vlabels, elabels, ALL_CASES):
        if reduce_pattern(child) != g:
            continue
        code = canonical_code(child)
        if code in out:
            continue
        if any(match_pattern(child, G) for G in graphs):
            out[code] = child
    return set(out.values())


def random_database(
    rng: random.Random,
    max_graphs: int = 10,
    max_vertices: int = 8,
    vertex_labels: tuple[str, ...] = ("A", "B", "C"),
    edge_labels: tuple[str, ...] = (UNLABELED,),
    max_density: float = 0.5,
) -> list[LinearGraph]:
    """Small random database for miner-vs-oracle comparisons.

    Per-graph vertex counts, the number of distinct labels actually used,
    and edge densities are all sampled below the supplied ceilings.
    """
    alphabet = vertex_labels[: rng.randint(1, len(vertex_labels))]
    graphs = []
    for gid in range(rng.randint(2, max_graphs)):
        n = rng.randint(2, max_vertices)
        labels = tuple(rng.choice(alphabet) for _ in range(n))
        all_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        m = int(round(rng.uniform(0.05, max_density) * len(all_pairs)))
        chosen = sorted(rng.sample(all_pairs, m))
        edges = tuple(Edge(u, v, rng.choice(edge_labels)) for u, v in chosen)
        graphs.append(LinearGraph(gid, labels, edges))
    return graphs
