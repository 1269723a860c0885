"""Signed interval-decomposable approximation of a persistence module.

Moebius inversion of the compressed multiplicity function assigns an
integer coefficient to every interval; the formal sum of interval
modules with these coefficients is the interval-decomposable
approximation of the module.  For interval-decomposable input it
recovers the exact decomposition; in general it preserves the whole
rank invariant (and with it the dimension vector), at the cost of
possibly negative coefficients.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping

from .compression import compressed_multiplicity_function
from .grid import PersistenceModule
from .intervals import Interval, Vertex, interval_contains_rectangle
from .mobius import IntervalFunction, mobius_invert


@dataclass(frozen=True)
class SignedIntervalSum:
    """A formal integer combination of intervals of the m x n grid.

    coeffs holds only nonzero coefficients, keyed by interval in
    canonical order.
    """

    m: int
    n: int
    coeffs: dict[Interval, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if any(v == 0 for v in self.coeffs.values()):
            raise ValueError("zero coefficients must be dropped")


def interval_approximation(module: PersistenceModule, threads: int | None = None) -> SignedIntervalSum:
    """The signed interval-decomposable approximation of a module.

    Computes the compressed multiplicity of every interval and applies
    Moebius inversion; zero coefficients are dropped.
    """
    g = module.grid
    delta = compressed_multiplicity_function(module, threads=threads)
    tilde = mobius_invert(delta, g.m, g.n)
    return SignedIntervalSum(g.m, g.n, {I: c for I, c in tilde.items() if c != 0})


def recover_multiplicities(f: IntervalFunction, m: int, n: int) -> IntervalFunction:
    """Multiplicities of interval summands from a compressed
    multiplicity function; for interval-decomposable modules this
    returns the exact decomposition.  Alias of Moebius inversion."""
    return mobius_invert(f, m, n)


def positive_part(s: SignedIntervalSum) -> Counter:
    """Multiset of intervals with positive coefficient (with counts)."""
    return Counter({I: c for I, c in s.coeffs.items() if c > 0})


def negative_part(s: SignedIntervalSum) -> Counter:
    """Multiset of intervals with negative coefficient, counted by |c|."""
    return Counter({I: -c for I, c in s.coeffs.items() if c < 0})


def dimvec_of_sum(s: SignedIntervalSum) -> dict[Vertex, int]:
    """Vertexwise signed dimension count of the formal sum."""
    out = {(i, j): 0 for i in range(1, s.m + 1) for j in range(1, s.n + 1)}
    for I, c in s.coeffs.items():
        for v in I.vertices():
            out[v] += c
    return out


def rank_of_sum(s: SignedIntervalSum, src: Vertex, dst: Vertex) -> int:
    """Signed rank of the formal sum along src <= dst.

    An interval module has rank one along the pair exactly when the
    interval contains the full rectangle spanned by it, so the signed
    rank is the coefficient sum over such intervals.
    """
    return sum(c for I, c in s.coeffs.items() if interval_contains_rectangle(I, src, dst))


def l1_norm(f: Mapping[Interval, int]) -> int:
    """Sum of absolute coefficients of an interval function or sum."""
    return sum(abs(v) for v in f.values())
