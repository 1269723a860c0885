"""Intervals of the equioriented commutative grid and their poset.

A vertex of the m x n grid is a pair (i, j) with row i in 1..m counted
from the bottom and column j in 1..n.  An interval is a connected,
convex vertex set; concretely it is a staircase of contiguous row
segments [b_i, d_i] for i = s..t satisfying

    b_{i+1} <= b_i <= d_{i+1} <= d_i

for consecutive rows, so higher rows reach weakly further left and end
weakly further left.  Intervals are ordered by inclusion of their vertex
sets.  The poset is graded by vertex count but is not a lattice; joins
are taken over cover sets above a fixed interval and meets are taken
inside the connected components of an intersection.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

Vertex = tuple[int, int]


class NoJoinError(ValueError):
    """Raised when a vertex set has no unambiguous enclosing interval."""


@dataclass(frozen=True, order=True)
class Interval:
    """A staircase: rows s..t with column span rows[i - s] = (b_i, d_i).

    Ordering of the dataclass fields gives the canonical interval order
    (s, t, row spans ascending), which every enumeration and every
    serialised listing in this package follows.
    """

    s: int
    t: int
    rows: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.s < 1 or self.t < self.s:
            raise ValueError(f"bad row range {self.s}..{self.t}")
        if len(self.rows) != self.t - self.s + 1:
            raise ValueError(f"expected {self.t - self.s + 1} row spans, got {len(self.rows)}")
        for b, d in self.rows:
            if not 1 <= b <= d:
                raise ValueError(f"bad column span [{b},{d}]")
        for (b_lo, d_lo), (b_hi, d_hi) in zip(self.rows, self.rows[1:]):
            if not (b_hi <= b_lo <= d_hi <= d_lo):
                raise ValueError(
                    f"rows [{b_lo},{d_lo}] and [{b_hi},{d_hi}] violate the staircase condition"
                )

    def span(self, i: int) -> tuple[int, int]:
        """Column span (b_i, d_i) of row i; the row must belong to s..t."""
        if not self.s <= i <= self.t:
            raise KeyError(f"row {i} not in {self.s}..{self.t}")
        return self.rows[i - self.s]

    def fits(self, m: int, n: int) -> bool:
        return self.t <= m and all(d <= n for _, d in self.rows)

    def vertex_count(self) -> int:
        return sum(d - b + 1 for b, d in self.rows)

    def vertices(self) -> set[Vertex]:
        return {(i, j) for i in range(self.s, self.t + 1)
                for j in range(self.span(i)[0], self.span(i)[1] + 1)}

    def contains_vertex(self, v: Vertex) -> bool:
        i, j = v
        if not self.s <= i <= self.t:
            return False
        b, d = self.span(i)
        return b <= j <= d

    def is_rectangle(self) -> bool:
        return len(set(self.rows)) == 1

    def to_string(self) -> str:
        body = ";".join(f"[{b},{d}]" for b, d in self.rows)
        return f"{self.s}..{self.t}:{body}"

    @staticmethod
    def from_string(text: str) -> "Interval":
        m = re.fullmatch(r"(\d+)\.\.(\d+):((?:\[\d+,\d+\];?)+)", text.strip())
        if m is None:
            raise ValueError(f"malformed interval string: {text!r}")
        s, t = int(m.group(1)), int(m.group(2))
        spans = tuple(
            (int(b), int(d)) for b, d in re.findall(r"\[(\d+),(\d+)\]", m.group(3))
        )
        return Interval(s, t, spans)

    @staticmethod
    def from_vertices(vs: Iterable[Vertex]) -> "Interval":
        """Build the interval with exactly this vertex set.

        Raises ValueError if the set is not a staircase (a gap inside a
        row, a missing row, or a staircase violation).
        """
        vs = set(vs)
        if not vs:
            raise ValueError("empty vertex set")
        by_row: dict[int, list[int]] = {}
        for i, j in vs:
            by_row.setdefault(i, []).append(j)
        s, t = min(by_row), max(by_row)
        spans = []
        for i in range(s, t + 1):
            if i not in by_row:
                raise ValueError(f"row {i} missing from vertex set")
            cols = sorted(by_row[i])
            if cols[-1] - cols[0] + 1 != len(cols):
                raise ValueError(f"row {i} is not contiguous")
            spans.append((cols[0], cols[-1]))
        return Interval(s, t, tuple(spans))


def rectangle_from(src: Vertex, dst: Vertex) -> Interval:
    """The rectangle with lower-left source src and upper-right sink dst."""
    (i1, j1), (i2, j2) = src, dst
    if i1 > i2 or j1 > j2:
        raise ValueError(f"{src} is not componentwise below {dst}")
    return Interval(i1, i2, tuple((j1, j2) for _ in range(i1, i2 + 1)))


def interval_contains_rectangle(I: Interval, src: Vertex, dst: Vertex) -> bool:
    """Whether the full rectangle spanned by src..dst lies inside I."""
    return leq(rectangle_from(src, dst), I)


def leq(I: Interval, J: Interval) -> bool:
    """Inclusion order: every vertex of I lies in J."""
    if I.s < J.s or I.t > J.t:
        return False
    for i in range(I.s, I.t + 1):
        b, d = I.span(i)
        bj, dj = J.span(i)
        if b < bj or d > dj:
            return False
    return True


@lru_cache(maxsize=None)
def enumerate_intervals(m: int, n: int) -> tuple[Interval, ...]:
    """All intervals of the m x n grid in canonical (s, t, rows) order."""
    if m < 1 or n < 1:
        raise ValueError(f"grid sizes must be positive: {m} x {n}")
    out: list[Interval] = []

    def extend(rows: list[tuple[int, int]], remaining: int) -> Iterator[tuple[tuple[int, int], ...]]:
        if remaining == 0:
            yield tuple(rows)
            return
        b_prev, d_prev = rows[-1]
        for d in range(b_prev, d_prev + 1):
            for b in range(1, b_prev + 1):
                rows.append((b, d))
                yield from extend(rows, remaining - 1)
                rows.pop()

    for s in range(1, m + 1):
        for t in range(s, m + 1):
            for b in range(1, n + 1):
                for d in range(b, n + 1):
                    for rows in extend([(b, d)], t - s):
                        out.append(Interval(s, t, rows))
    out.sort()
    return tuple(out)


def upper_set(I: Interval, m: int, n: int) -> tuple[Interval, ...]:
    """All J in the m x n interval poset with I <= J, canonical order."""
    return tuple(J for J in enumerate_intervals(m, n) if leq(I, J))


# --- covers and joins -------------------------------------------------

def _cover_candidates(I: Interval, m: int, n: int) -> list[tuple[str, Interval]]:
    """Tagged candidate covers; invalid or out-of-bounds ones are dropped.

    Tags: 'left:<row>' and 'right:<row>' extend one row by one column
    ('left' at row t and 'right' at row s are the special top-left and
    bottom-right extensions), 'above' adds the vertex (t+1, b_t), and
    'below' adds the vertex (s-1, d_s).
    """
    cands: list[tuple[str, Interval]] = []
    for i in range(I.s, I.t + 1):
        b, d = I.span(i)
        if b > 1:
            rows = list(I.rows)
            rows[i - I.s] = (b - 1, d)
            try:
                cands.append((f"left:{i}", Interval(I.s, I.t, tuple(rows))))
            except ValueError:
                pass
        if d < n:
            rows = list(I.rows)
            rows[i - I.s] = (b, d + 1)
            try:
                cands.append((f"right:{i}", Interval(I.s, I.t, tuple(rows))))
            except ValueError:
                pass
    if I.t < m:
        b_t = I.span(I.t)[0]
        cands.append(("above", Interval(I.s, I.t + 1, I.rows + ((b_t, b_t),))))
    if I.s > 1:
        d_s = I.span(I.s)[1]
        cands.append(("below", Interval(I.s - 1, I.t, ((d_s, d_s),) + I.rows)))
    return cands


def covers(I: Interval, m: int, n: int) -> tuple[Interval, ...]:
    """The covers of I in the m x n interval poset, canonical order.

    Every cover has exactly one more vertex than I; it arises by
    extending a single row one step left or right or by starting a new
    row above the upper-left or below the lower-right corner.
    """
    if not I.fits(m, n):
        raise ValueError(f"{I.to_string()} does not fit in a {m} x {n} grid")
    return tuple(sorted(J for _, J in _cover_candidates(I, m, n)))


def _join_cover_subset(I: Interval, tagged: Sequence[tuple[str, Interval]]) -> Interval:
    """Join of a nonempty set of covers of I, as tagged candidates.

    The join is the union of the members, completed by the top-left
    corner vertex when both the top-row left extension and the new-row-
    above cover are present, and dually by the bottom-right corner
    vertex.  No other completion is ever needed.
    """
    tags = {tag for tag, _ in tagged}
    members = [J for _, J in tagged]
    s = min(J.s for J in members)
    t = max(J.t for J in members)
    spans: list[tuple[int, int]] = []
    for i in range(s, t + 1):
        here = [J.span(i) for J in members if J.s <= i <= J.t]
        spans.append((min(b for b, _ in here), max(d for _, d in here)))
    if "above" in tags and f"left:{I.t}" in tags:
        b, d = spans[I.t + 1 - s]
        spans[I.t + 1 - s] = (I.span(I.t)[0] - 1, d)
    if "below" in tags and f"right:{I.s}" in tags:
        b, d = spans[I.s - 1 - s]
        spans[I.s - 1 - s] = (b, I.span(I.s)[1] + 1)
    return Interval(s, t, tuple(spans))


def join_covers(I: Interval, S: Iterable[Interval], m: int, n: int) -> Interval:
    """The join of a nonempty subset S of Cov(I) above I.

    Equals the convex closure of the union of the members of S; raises
    ValueError when S is empty or contains a non-cover of I.
    """
    wanted = list(S)
    if not wanted:
        raise ValueError("join of an empty cover set")
    tagged = _cover_candidates(I, m, n)
    by_interval = {J: tag for tag, J in tagged}
    chosen = []
    for J in wanted:
        if J not in by_interval:
            raise ValueError(f"{J.to_string()} is not a cover of {I.to_string()}")
        chosen.append((by_interval[J], J))
    return _join_cover_subset(I, chosen)


def cover_subset_joins(I: Interval, m: int, n: int) -> Iterator[tuple[int, Interval]]:
    """Yield (|S|, join(S)) over all nonempty subsets S of Cov(I)."""
    tagged = _cover_candidates(I, m, n)
    for size in range(1, len(tagged) + 1):
        for subset in combinations(tagged, size):
            yield size, _join_cover_subset(I, subset)


# --- closures, intersections, meets -----------------------------------

def convex_closure(vs: Iterable[Vertex]) -> Interval:
    """Smallest interval containing a connected vertex set.

    Repeatedly adds every vertex lying between two present ones until
    stable.  Raises NoJoinError when the input is not connected in the
    undirected grid graph, since the enclosing interval is then not
    unique in general.
    """
    cur = set(vs)
    if not cur:
        raise NoJoinError("empty vertex set")
    if not _is_connected(cur):
        raise NoJoinError("vertex set is disconnected; no unique enclosing interval")
    changed = True
    while changed:
        changed = False
        lo_i = min(i for i, _ in cur)
        hi_i = max(i for i, _ in cur)
        lo_j = min(j for _, j in cur)
        hi_j = max(j for _, j in cur)
        for i in range(lo_i, hi_i + 1):
            for j in range(lo_j, hi_j + 1):
                z = (i, j)
                if z in cur:
                    continue
                below = any(x <= i and y <= j for x, y in cur)
                above = any(x >= i and y >= j for x, y in cur)
                if below and above:
                    cur.add(z)
                    changed = True
    return Interval.from_vertices(cur)


def _is_connected(vs: set[Vertex]) -> bool:
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        i, j = stack.pop()
        for w in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
            if w in vs and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vs)


def intersection_components(I: Interval, J: Interval) -> tuple[Interval, ...]:
    """Connected components of the vertex intersection of I and J.

    The intersection of two staircases is a disjoint union of
    staircases: per-row span intersections split exactly where
    consecutive nonempty rows fail to overlap.  Components are returned
    in canonical order.
    """
    lo = max(I.s, J.s)
    hi = min(I.t, J.t)
    runs: list[list[tuple[int, tuple[int, int]]]] = []
    current: list[tuple[int, tuple[int, int]]] = []
    for i in range(lo, hi + 1):
        b = max(I.span(i)[0], J.span(i)[0])
        d = min(I.span(i)[1], J.span(i)[1])
        if b > d:
            if current:
                runs.append(current)
                current = []
            continue
        if current:
            prev_b, prev_d = current[-1][1]
            if prev_b > d:
                runs.append(current)
                current = []
        current.append((i, (b, d)))
    if current:
        runs.append(current)
    out = [Interval(run[0][0], run[-1][0], tuple(span for _, span in run)) for run in runs]
    return tuple(sorted(out))


def meet_over(I: Interval, J1: Interval, J2: Interval) -> Interval:
    """Meet of J1 and J2 in the local lattice of intervals above I.

    Requires I <= J1 and I <= J2; the result is the unique connected
    component of the intersection that contains I.
    """
    if not (leq(I, J1) and leq(I, J2)):
        raise ValueError("meet_over needs I below both arguments")
    for comp in intersection_components(J1, J2):
        if leq(I, comp):
            return comp
    raise AssertionError("unreachable: I must lie in some component")


# --- essential vertices ------------------------------------------------

def ss_essential(I: Interval) -> tuple[Vertex, ...]:
    """Sources and sinks of I viewed as a subquiver of the grid.

    A source has no in-arrow inside I, a sink no out-arrow.  The result
    is sorted; sources and sinks of a staircase are always distinct
    vertices of the form (i, b_i) and (i, d_i).
    """
    vs = I.vertices()
    out = []
    for i, j in vs:
        is_source = (i, j - 1) not in vs and (i - 1, j) not in vs
        is_sink = (i, j + 1) not in vs and (i + 1, j) not in vs
        if is_source or is_sink:
            out.append((i, j))
    return tuple(sorted(out))


def cc_essential(I: Interval) -> tuple[Vertex, ...]:
    """Vertices of I lying on both a source/sink row and column."""
    ess = ss_essential(I)
    rows = {i for i, _ in ess}
    cols = {j for _, j in ess}
    return tuple(sorted(v for v in I.vertices() if v[0] in rows and v[1] in cols))
