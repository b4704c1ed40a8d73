"""Brute-force partition enumeration and per-partition statistics.

Everything here is deliberately naive: partitions are enumerated one by
one and each statistic is read straight off its combinatorial definition.
That makes this module the independent oracle against which the
generating-function machinery in :mod:`crankrank.series` and
:mod:`crankrank.moments` is validated.

A partition is represented as a weakly decreasing tuple of positive
integers; the empty tuple is the unique partition of 0.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import ResourceLimitError

# p(80) is about 1.5e7; exhaustive statistics beyond that are impractical.
ENUMERATION_CAP = 80


@dataclass(frozen=True)
class PartitionStats:
    """The five statistics attached to a single partition.

    For the empty partition all fields are zero, which keeps the N=0 rows
    of every downstream table well defined.
    """

    rank: int
    crank: int
    durfee: int
    smallest_part_count: int
    string_count: int


@dataclass(frozen=True)
class BruteAggregates:
    """Statistic totals over all partitions of one integer."""

    n: int
    count: int
    spt: int
    ospt_strings: int
    durfee_sum: int


def check_partition(parts) -> tuple:
    """Validate and normalize a partition given as an iterable of parts."""
    t = tuple(parts)
    for a, b in zip(t, t[1:]):
        if a < b:
            raise ValueError(f"parts must be weakly decreasing, got {t}")
    if t and t[-1] < 1:
        raise ValueError(f"parts must be positive, got {t}")
    return t


def partitions_of(n: int, cap: int = ENUMERATION_CAP):
    """Yield every partition of n exactly once, in lexicographic order.

    Partitions are weakly decreasing tuples compared left to right, so for
    n=4 the order is (1,1,1,1), (2,1,1), (2,2), (3,1), (4).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > cap:
        raise ResourceLimitError(
            f"partition enumeration capped at n <= {cap}, got {n}"
        )

    def gen(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(1, min(remaining, largest) + 1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    yield from gen(n, n if n else 1)


def rank_of(parts) -> int:
    """Largest part minus number of parts (0 for the empty partition)."""
    if not parts:
        return 0
    return parts[0] - len(parts)


def crank_of(parts) -> int:
    """Largest part if there are no ones, else (#parts > #ones) - #ones.

    This is the raw combinatorial rule; note that it assigns -1 to the
    single partition (1), whereas the generating function splits the q^1
    column as w^-1 - 1 + w.  Reconciling the two is the table builder's
    job, never this function's.
    """
    if not parts:
        return 0
    ones = 0
    for p in reversed(parts):
        if p != 1:
            break
        ones += 1
    if ones == 0:
        return parts[0]
    exceeding = 0
    for p in parts:
        if p > ones:
            exceeding += 1
        else:
            break
    return exceeding - ones


def durfee_size(parts) -> int:
    """Side of the largest square fitting in the Young diagram."""
    d = 0
    for i, p in enumerate(parts):
        if p >= i + 1:
            d = i + 1
        else:
            break
    return d


def smallest_part_count(parts) -> int:
    """Multiplicity of the smallest part (0 for the empty partition)."""
    if not parts:
        return 0
    smallest = parts[-1]
    c = 0
    for p in reversed(parts):
        if p != smallest:
            break
        c += 1
    return c


def string_count(parts) -> int:
    """Count even and odd strings in a partition.

    A run starting at s has length L when s, s+1, ..., s+L-1 all occur as
    parts and s+L does not.  A string is a run that starts at

    * an odd s, occurring exactly once, with L >= s (odd string), or
    * an even s, with s-1 absent and L odd, L >= s-1 (even string).

    One partition may contain several strings; each qualifying starting
    part contributes one.
    """
    if not parts:
        return 0
    counts = Counter(parts)
    present = set(counts)
    total = 0
    for s in present:
        run = 0
        while s + run in present:
            run += 1
        if s % 2 == 1:
            if counts[s] == 1 and run >= s:
                total += 1
        else:
            if (s - 1) not in present and run % 2 == 1 and run >= s - 1:
                total += 1
    return total


def stats_of(parts) -> PartitionStats:
    """All five statistics of one partition (validated first)."""
    t = check_partition(parts)
    return PartitionStats(
        rank=rank_of(t),
        crank=crank_of(t),
        durfee=durfee_size(t),
        smallest_part_count=smallest_part_count(t),
        string_count=string_count(t),
    )


def brute_distribution(n: int, kind: str, cap: int = ENUMERATION_CAP) -> dict:
    """Histogram of crank or rank over all partitions of n.

    For kind="crank" and n=1 this returns the raw combinatorial histogram
    {-1: 1}; callers comparing against generating-function tables must
    reconcile the anomalous column themselves.
    """
    if kind == "crank":
        stat = crank_of
    elif kind == "rank":
        stat = rank_of
    else:
        raise ValueError(f"kind must be 'crank' or 'rank', got {kind!r}")
    hist = Counter()
    for parts in partitions_of(n, cap=cap):
        hist[stat(parts)] += 1
    return dict(hist)


def brute_aggregates(n: int, cap: int = ENUMERATION_CAP) -> BruteAggregates:
    """Totals of spt, string counts, and Durfee sizes over partitions of n."""
    count = spt = strings = durfee = 0
    for parts in partitions_of(n, cap=cap):
        count += 1
        spt += smallest_part_count(parts)
        strings += string_count(parts)
        durfee += durfee_size(parts)
    return BruteAggregates(
        n=n, count=count, spt=spt, ospt_strings=strings, durfee_sum=durfee
    )


def write_aggregates_csv(rows, fh) -> None:
    """Write rows ``N,spt,ospt_strings,durfee_sum,p``."""
    fh.write("N,spt,ospt_strings,durfee_sum,p\n")
    for agg in rows:
        fh.write(
            f"{agg.n},{agg.spt},{agg.ospt_strings},{agg.durfee_sum},{agg.count}\n"
        )
