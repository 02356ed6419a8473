"""Two-sided Fisher's exact test and p-value ranking of mined patterns.

Each pattern's presence across two graph classes (P and N) forms a 2x2
contingency table; the test sums hypergeometric point probabilities of all
tables sharing the observed margins that are no more probable than the
observed one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .miner import MiningReport
from .model import Pattern, canonical_code

# Relative tolerance when deciding whether another table is "no more
# probable" than the observed one; guards float equality of exact ties.
TIE_TOLERANCE = 1e-7

_LNFACT = [0.0, 0.0]


def _lnfact(n: int) -> float:
    """ln(n!) from a growing table; concurrent growth recomputes identical values."""
    table = _LNFACT
    if n < len(table):
        return table[n]
    grown = list(table)
    for i in range(len(grown), n + 1):
        grown.append(grown[-1] + math.log(i))
    globals()["_LNFACT"] = grown
    return grown[n]


@dataclass(frozen=True)
class ContingencyTable:
    """Pattern presence counts across the two classes.

    Field naming is historical; the margins are what matter:
      n_p  = n_tp + n_fp   graphs of class P
      n_n  = n_tn + n_fn   graphs of class N
      n_g  = n_tp + n_tn   graphs containing the pattern
      n_gc = n_fp + n_fn   graphs not containing it
    """

    n_tp: int  # class-P graphs containing the pattern
    n_fp: int  # class-P graphs without it
    n_tn: int  # class-N graphs containing it
    n_fn: int  # class-N graphs without it

    def __post_init__(self):
        for value in (self.n_tp, self.n_fp, self.n_tn, self.n_fn):
            if value < 0:
                raise ValueError(f"contingency counts must be non-negative, got {self}")

    @property
    def n_p(self) -> int:
        return self.n_tp + self.n_fp

    @property
    def n_n(self) -> int:
        return self.n_tn + self.n_fn

    @property
    def n_g(self) -> int:
        return self.n_tp + self.n_tn

    @property
    def n_gc(self) -> int:
        return self.n_fp + self.n_fn

    @property
    def n(self) -> int:
        return self.n_p + self.n_n


@dataclass(frozen=True)
class RankedPattern:
    pattern: Pattern
    table: ContingencyTable
    p_value: float


def _point_probability(n_tp: int, n_p: int, n_n: int, n_g: int) -> float:
    n = n_p + n_n
    n_tn = n_g - n_tp
    n_fp = n_p - n_tp
    n_fn = n_n - n_tn
    num = _lnfact(n_g) + _lnfact(n - n_g) + _lnfact(n_p) + _lnfact(n_n)
    den = _lnfact(n) + _lnfact(n_tp) + _lnfact(n_fp) + _lnfact(n_fn) + _lnfact(n_tn)
    return math.exp(num - den)


def table_probability(t: ContingencyTable) -> float:
    """Hypergeometric point probability of the table given its margins."""
    return _point_probability(t.n_tp, t.n_p, t.n_n, t.n_g)


def fisher_two_sided(t: ContingencyTable) -> float:
    """Two-sided exact p-value in [0, 1].

    Sums point probabilities over all tables with the observed margins whose
    probability does not exceed the observed one (within TIE_TOLERANCE
    relative).  Returns exactly 1.0 when every feasible table qualifies,
    which covers margins admitting a single table.
    """
    n_p, n_n, n_g = t.n_p, t.n_n, t.n_g
    observed = table_probability(t)
    cutoff = observed * (1.0 + TIE_TOLERANCE)
    lo = max(0, n_g - n_n)
    hi = min(n_g, n_p)
    total = 0.0
    included = 0
    for a in range(lo, hi + 1):
        p = _point_probability(a, n_p, n_n, n_g)
        if p <= cutoff:
            total += p
            included += 1
    if included == hi - lo + 1:
        return 1.0
    return min(max(total, 0.0), 1.0)


def rank_patterns(
    reports: Sequence[MiningReport],
    class_of: Mapping[int, str],
    alpha: float,
) -> list[RankedPattern]:
    """Patterns with p <= alpha, ascending by p, ties by canonical code.

    `class_of` assigns "P" or "N" to every database graph id; a report
    mentioning an unlisted graph id is an error.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    n_p_total = 0
    n_n_total = 0
    for gid, cls in class_of.items():
        if cls == "P":
            n_p_total += 1
        elif cls == "N":
            n_n_total += 1
        else:
            raise ValueError(f"graph {gid}: class must be P or N, got {cls!r}")
    ranked = []
    for report in reports:
        n_tp = 0
        n_tn = 0
        for gid in report.graph_ids:
            try:
                cls = class_of[gid]
            except KeyError:
                raise ValueError(f"graph id {gid} has no class assignment") from None
            if cls == "P":
                n_tp += 1
            else:
                n_tn += 1
        table = ContingencyTable(n_tp, n_p_total - n_tp, n_tn, n_n_total - n_tn)
        p = fisher_two_sided(table)
        if p <= alpha:
            ranked.append(RankedPattern(report.pattern, table, p))
    ranked.sort(key=lambda r: (r.p_value, canonical_code(r.pattern)))
    return ranked
