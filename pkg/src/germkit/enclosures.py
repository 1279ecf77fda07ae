"""Nested rational interval sources for basis reals.

Every irrational the engine touches is known only through an enclosure: a
source of nested, strictly shrinking closed rational intervals.  Arithmetic
and comparisons refine these intervals; nothing in the engine ever invents
digits beyond what a source can certify, so a finite source that runs dry
raises RefinementExhausted instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

from .errors import RefinementExhausted

Interval = Tuple[Fraction, Fraction]


class Enclosure:
    """Interface: interval(k) is the k-th enclosure level, k = 0, 1, 2, ...

    Levels must be nested (interval(k+1) inside interval(k)) and strictly
    shrinking in width, except for exact points which are degenerate at
    every level.
    """

    def interval(self, k: int) -> Interval:
        raise NotImplementedError

    @property
    def exact(self) -> bool:
        return False


@dataclass(frozen=True)
class PointEnclosure(Enclosure):
    """Degenerate enclosure of a known rational, used for the basis symbol 1."""

    value: Fraction

    def interval(self, k: int) -> Interval:
        return (self.value, self.value)

    @property
    def exact(self) -> bool:
        return True


@lru_cache(maxsize=None)
def _convergent(head: tuple, cycle: tuple, k: int) -> Tuple[int, int]:
    # p/q for the k-th convergent of the continued fraction [a0; a1, a2, ...]
    a = _cf_coefficient(head, cycle, k)
    if k == 0:
        return (a, 1)
    if k == 1:
        p0, q0 = _convergent(head, cycle, 0)
        return (a * p0 + 1, a)
    p1, q1 = _convergent(head, cycle, k - 1)
    p2, q2 = _convergent(head, cycle, k - 2)
    return (a * p1 + p2, a * q1 + q2)


def _cf_coefficient(head: tuple, cycle: tuple, i: int) -> int:
    if i < len(head):
        return head[i]
    if not cycle:
        raise RefinementExhausted(
            f"continued fraction has only {len(head)} coefficients, wanted index {i}"
        )
    return cycle[(i - len(head)) % len(cycle)]


@dataclass(frozen=True)
class ContinuedFractionEnclosure(Enclosure):
    """Enclosure from continued fraction coefficients.

    ``head`` is the initial coefficient list and ``cycle``, when nonempty,
    repeats forever after it (so sqrt(2) is head=(1,), cycle=(2,)).  Level k
    is the interval spanned by convergents k and k+1; consecutive convergents
    straddle the value, so the levels nest and the widths 1/(q_k q_{k+1})
    strictly decrease.
    """

    head: Tuple[int, ...]
    cycle: Tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = list(self.head) + list(self.cycle)
        if len(coeffs) < 2:
            raise ValueError("need at least two continued fraction coefficients")
        if not all(isinstance(a, int) for a in coeffs):
            raise ValueError("continued fraction coefficients must be integers")
        if self.head and self.head[0] < 0:
            raise ValueError("leading coefficient must be nonnegative")
        rest = list(self.head[1:]) + list(self.cycle)
        if any(a < 1 for a in rest):
            raise ValueError("continued fraction coefficients past the first must be >= 1")

    def interval(self, k: int) -> Interval:
        if k < 0:
            raise ValueError("level must be nonnegative")
        pa, qa = _convergent(self.head, self.cycle, k)
        pb, qb = _convergent(self.head, self.cycle, k + 1)
        ca = Fraction(pa, qa)
        cb = Fraction(pb, qb)
        return (ca, cb) if ca <= cb else (cb, ca)


@dataclass(frozen=True)
class NestedIntervalsEnclosure(Enclosure):
    """Enclosure from an explicit finite list of intervals.

    The list is validated up front: each interval must sit inside the
    previous one and be strictly narrower.  Queries past the end raise
    RefinementExhausted.
    """

    intervals: Tuple[Interval, ...]

    def __post_init__(self):
        if not self.intervals:
            raise ValueError("need at least one interval")
        prev = None
        for i, (lo, hi) in enumerate(self.intervals):
            if lo >= hi:
                raise ValueError(f"interval {i} is empty or degenerate")
            if prev is not None:
                plo, phi = prev
                if lo < plo or hi > phi:
                    raise ValueError(f"interval {i} is not nested in interval {i - 1}")
                if hi - lo >= phi - plo:
                    raise ValueError(f"interval {i} does not shrink")
            prev = (lo, hi)

    def interval(self, k: int) -> Interval:
        if k < 0:
            raise ValueError("level must be nonnegative")
        if k >= len(self.intervals):
            raise RefinementExhausted(
                f"interval list has {len(self.intervals)} levels, wanted {k}"
            )
        return self.intervals[k]


@dataclass(frozen=True)
class ProductEnclosure(Enclosure):
    """Interval product of two enclosures of positive reals.

    ``start`` offsets both factors so that every queried level has positive
    lower endpoints; with that, endpoint products give nested strictly
    shrinking intervals around the product.
    """

    left: Enclosure
    right: Enclosure
    start: int = 0

    def interval(self, k: int) -> Interval:
        la, ha = self.left.interval(k + self.start)
        lb, hb = self.right.interval(k + self.start)
        if la <= 0 or lb <= 0:
            raise ValueError("product enclosure requires positive factors")
        return (la * lb, ha * hb)


def positive_from_level(e: Enclosure, limit: int = 64) -> int:
    """Smallest level at which the enclosure's lower endpoint is positive."""
    for k in range(limit):
        try:
            lo, _ = e.interval(k)
        except RefinementExhausted:
            break
        if lo > 0:
            return k
    raise RefinementExhausted("no level with a positive lower endpoint")


def width(iv: Interval) -> Fraction:
    return iv[1] - iv[0]
