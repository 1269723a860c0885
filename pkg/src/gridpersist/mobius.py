"""Moebius inversion on the interval poset of a commutative grid.

The poset of intervals ordered by inclusion is graded by vertex count
but is not a lattice.  Its Moebius function nevertheless has a local
description: mu([I, J]) is a signed count of the subsets of the covers
of I whose join above I equals J.  Inversion of a function against the
order (recovering g from f(I) = sum over J >= I of g(J)) therefore only
touches joins of cover subsets, never the full segment, which keeps the
cost per interval bounded by 2^|Cov(I)|.
"""

from __future__ import annotations

from .intervals import (
    Interval,
    cover_subset_joins,
    enumerate_intervals,
    leq,
)

IntervalFunction = dict[Interval, int]


def mu_prime(I: Interval, J: Interval, m: int, n: int) -> int:
    """Moebius function of the segment [I, J] of the interval poset.

    Equals 1 when I = J, otherwise the sum of (-1)^|S| over nonempty
    subsets S of Cov(I) whose join above I is J; 0 when no such subset
    exists (in particular whenever I is not below J).
    """
    if I == J:
        return 1
    total = 0
    for size, join in cover_subset_joins(I, m, n):
        if join == J:
            total += -1 if size % 2 else 1
    return total


def mobius_invert(f: IntervalFunction, m: int, n: int) -> IntervalFunction:
    """Inverse of the zeta action: g with f(I) = sum_{J >= I} g(J).

    Computed pointwise as g(I) = f(I) + sum over nonempty cover subsets
    S of (-1)^|S| f(join S).  Values are exact integers; f must be total
    on the canonical interval list.
    """
    out: IntervalFunction = {}
    for I in enumerate_intervals(m, n):
        acc = f[I]
        for size, join in cover_subset_joins(I, m, n):
            acc += -f[join] if size % 2 else f[join]
        out[I] = acc
    return out


def zeta_act(g: IntervalFunction, m: int, n: int) -> IntervalFunction:
    """The zeta action f(I) = sum over J >= I of g(J)."""
    intervals = enumerate_intervals(m, n)
    return {I: sum(g[J] for J in intervals if leq(I, J)) for I in intervals}


def brute_force_mobius(m: int, n: int) -> dict[tuple[Interval, Interval], int]:
    """Moebius function on all segments by the defining recursion.

    mu([I, I]) = 1 and mu([I, J]) = - sum over I <= K < J of mu([I, K]).
    Exponential-free but cubic in the poset size; guarded to posets of
    at most 5000 intervals and meant for cross-checks, not production.
    """
    intervals = enumerate_intervals(m, n)
    N = len(intervals)
    if N > 5000:
        raise ValueError(f"poset too large for the brute-force recursion: {N} intervals")
    idx = {I: k for k, I in enumerate(intervals)}
    below = [[leq(intervals[a], intervals[b]) for b in range(N)] for a in range(N)]
    by_rank = sorted(range(N), key=lambda k: intervals[k].vertex_count())
    out: dict[tuple[Interval, Interval], int] = {}
    for a in range(N):
        vals: dict[int, int] = {}
        for b in by_rank:
            if not below[a][b]:
                continue
            if a == b:
                vals[b] = 1
                continue
            vals[b] = -sum(v for k, v in vals.items() if below[k][b] and k != b)
        for b, v in vals.items():
            out[(intervals[a], intervals[b])] = v
    return out
