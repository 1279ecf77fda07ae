"""Exact arithmetic in a finite rational span of declared reals.

A value here is a rational vector over a declared basis (1, r_1, ..., r_n)
where each r_i comes with an interval enclosure.  Addition and rational
scaling are coordinate arithmetic; order queries refine enclosures until the
sign of a difference is certified, and fail loudly when the refinement
budget runs out.  The basis symbols are declared Q-linearly independent;
the engine relies on that declaration and never tries to prove it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .enclosures import (
    ContinuedFractionEnclosure,
    Enclosure,
    Interval,
    NestedIntervalsEnclosure,
    PointEnclosure,
    ProductEnclosure,
    positive_from_level,
)
from .errors import BasisMismatch, FloorUndecidable, RefinementExhausted
from .linalg import pivot_columns, row_space_coordinates, rref

DEFAULT_BUDGET = 64

LESS = -1
EQUAL = 0
GREATER = 1


@dataclass(frozen=True)
class BasisDescriptor:
    """Declared basis (1, r_1, ..., r_n) with one enclosure per symbol.

    Symbol 0 is always the literal "1" with the exact point enclosure; the
    rest are positive reals, declared linearly independent over Q together
    with 1.  Equality is by value, so parsing the same document twice gives
    interchangeable descriptors.
    """

    symbols: Tuple[str, ...]
    enclosures: Tuple[Enclosure, ...]

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("basis needs at least the symbol 1")
        if len(self.symbols) != len(self.enclosures):
            raise ValueError("one enclosure per symbol")
        if self.symbols[0] != "1":
            raise ValueError("first basis symbol must be 1")
        if not (self.enclosures[0].exact and self.enclosures[0].interval(0) == (Fraction(1), Fraction(1))):
            raise ValueError("symbol 1 must carry the exact point enclosure at 1")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("basis symbols must be distinct")
        for name, enc in zip(self.symbols[1:], self.enclosures[1:]):
            if not name or name != name.strip():
                raise ValueError(f"bad symbol name {name!r}")
            if enc.exact:
                raise ValueError(f"symbol {name} declared irrational but enclosure is exact")
            lo0, hi0 = enc.interval(0)
            lo1, hi1 = enc.interval(1)
            if not (lo0 <= lo1 and hi1 <= hi0 and hi1 - lo1 < hi0 - lo0):
                raise ValueError(f"enclosure for {name} is not nested and shrinking")

    @property
    def dim(self) -> int:
        return len(self.symbols)

    def index(self, name: str) -> int:
        try:
            return self.symbols.index(name)
        except ValueError:
            raise KeyError(f"unknown basis symbol {name!r}") from None

    def rational(self, q) -> "SpanElement":
        coords = [Fraction(0)] * self.dim
        coords[0] = Fraction(q)
        return SpanElement(self, tuple(coords))

    def unit(self, i: int) -> "SpanElement":
        coords = [Fraction(0)] * self.dim
        coords[i] = Fraction(1)
        return SpanElement(self, tuple(coords))

    def element(self, coords: Sequence) -> "SpanElement":
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(cs)}")
        return SpanElement(self, cs)

    def zero(self) -> "SpanElement":
        return self.rational(0)


TRIVIAL_BASIS = BasisDescriptor(("1",), (PointEnclosure(Fraction(1)),))


@dataclass(frozen=True)
class SpanElement:
    """A rational coordinate vector over a BasisDescriptor."""

    basis: BasisDescriptor
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.basis.dim:
            raise ValueError("coordinate count does not match basis")

    def _check(self, other: "SpanElement"):
        if self.basis != other.basis:
            raise BasisMismatch("operands declared over different bases")

    def __add__(self, other: "SpanElement") -> "SpanElement":
        self._check(other)
        return SpanElement(self.basis, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "SpanElement") -> "SpanElement":
        self._check(other)
        return SpanElement(self.basis, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "SpanElement":
        return SpanElement(self.basis, tuple(-a for a in self.coords))

    def __mul__(self, scalar) -> "SpanElement":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        s = Fraction(scalar)
        return SpanElement(self.basis, tuple(a * s for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "SpanElement":
        s = Fraction(scalar)
        return SpanElement(self.basis, tuple(a / s for a in self.coords))

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} has irrational coordinates")
        return self.coords[0]

    def enclosure(self, level: int) -> Interval:
        """Exact interval bound at the given refinement level.

        Symbols with zero coefficient are never queried, so unused finite
        sources cannot exhaust a computation that does not involve them.
        """
        lo = hi = self.coords[0]
        for c, enc in zip(self.coords[1:], self.basis.enclosures[1:]):
            if c == 0:
                continue
            a, b = enc.interval(level)
            if c > 0:
                lo += c * a
                hi += c * b
            else:
                lo += c * b
                hi += c * a
        return (lo, hi)

    def __str__(self) -> str:
        return render_exact(self)

    def __repr__(self) -> str:
        return f"<SpanElement {render_exact(self)}>"


def render_exact(x: SpanElement) -> str:
    """Human-readable exact form, e.g. "1 - 1/4*sqrt2"."""
    parts: List[str] = []
    for i, c in enumerate(x.coords):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        elif mag == 1:
            body = x.basis.symbols[i]
        else:
            body = f"{mag}*{x.basis.symbols[i]}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    if not parts:
        return "0"
    return " ".join(parts)


def _coerce(basis: BasisDescriptor, v) -> SpanElement:
    if isinstance(v, SpanElement):
        return v
    return basis.rational(Fraction(v))


def compare(x: SpanElement, y, budget: int | None = None) -> int:
    """Certified three-way comparison: LESS, EQUAL or GREATER.

    Rational differences are decided exactly.  Otherwise enclosures of the
    difference are refined until its sign is certified; if the budget runs
    out first, RefinementExhausted is raised rather than guessing.  Under
    the declared independence a nonzero difference always has a sign, so
    exhaustion signals either a too-small budget or a hidden relation.
    """
    if budget is None:
        budget = DEFAULT_BUDGET
    y = _coerce(x.basis, y)
    d = x - y
    if d.is_rational:
        c = d.coords[0]
        return EQUAL if c == 0 else (GREATER if c > 0 else LESS)
    for k in range(budget):
        lo, hi = d.enclosure(k)
        if lo > 0:
            return GREATER
        if hi < 0:
            return LESS
    raise RefinementExhausted(
        f"sign of {render_exact(d)} undecided after {budget} refinement levels"
    )


def is_le(x: SpanElement, y, budget: int | None = None) -> bool:
    return compare(x, y, budget) != GREATER


def is_lt(x: SpanElement, y, budget: int | None = None) -> bool:
    return compare(x, y, budget) == LESS


def is_ge(x: SpanElement, y, budget: int | None = None) -> bool:
    return compare(x, y, budget) != LESS


def is_gt(x: SpanElement, y, budget: int | None = None) -> bool:
    return compare(x, y, budget) == GREATER


def span_min(items: Iterable[SpanElement], budget: int | None = None) -> SpanElement:
    it = iter(items)
    try:
        best = next(it)
    except StopIteration:
        raise ValueError("span_min of empty sequence") from None
    for x in it:
        if compare(x, best, budget) == LESS:
            best = x
    return best


def span_max(items: Iterable[SpanElement], budget: int | None = None) -> SpanElement:
    it = iter(items)
    try:
        best = next(it)
    except StopIteration:
        raise ValueError("span_max of empty sequence") from None
    for x in it:
        if compare(x, best, budget) == GREATER:
            best = x
    return best


def floor_span(x: SpanElement, budget: int | None = None) -> int:
    """Exact floor.  Rational inputs never consult enclosures."""
    if budget is None:
        budget = DEFAULT_BUDGET
    if x.is_rational:
        c = x.coords[0]
        return c.numerator // c.denominator
    for k in range(budget):
        lo, hi = x.enclosure(k)
        flo = lo.numerator // lo.denominator
        fhi = hi.numerator // hi.denominator
        if flo == fhi:
            return flo
        # the value itself is irrational, so an integer upper endpoint is
        # never attained and does not block the answer
        if fhi == flo + 1 and hi == fhi:
            return flo
    raise FloorUndecidable(
        f"floor of {render_exact(x)} undecided after {budget} refinement levels"
    )


def _round_decimal(fr: Fraction, places: int) -> str:
    neg = fr < 0
    p, q = abs(fr).numerator, abs(fr).denominator
    scaled, rem = divmod(p * 10 ** places, q)
    if 2 * rem > q or (2 * rem == q and scaled % 2 == 1):
        scaled += 1
    sign = "-" if neg and scaled else ""
    whole, frac = divmod(scaled, 10 ** places)
    return f"{sign}{whole}.{frac:0{places}d}"


def decimal_str(x: SpanElement, places: int = 12, budget: int | None = None) -> str:
    """Correctly rounded fixed-point rendering (round half to even).

    Irrational values are refined until both enclosure endpoints round to
    the same string, which pins the digits of the value itself.  Rendering
    gets a deeper internal allowance than comparisons because agreement of
    rounded strings can need a few extra levels near a rounding boundary.
    """
    if budget is None:
        budget = DEFAULT_BUDGET
    if x.is_rational:
        return _round_decimal(x.coords[0], places)
    for k in range(4 * budget):
        lo, hi = x.enclosure(k)
        slo = _round_decimal(lo, places)
        if slo == _round_decimal(hi, places):
            return slo
    raise RefinementExhausted(
        f"{places}-place rendering of {render_exact(x)} undecided"
    )


@dataclass(frozen=True)
class QLinearMap:
    """Q-linear map between spans, as an exact rational matrix.

    Column j holds the target coordinates of the image of source symbol j,
    so applying the map is matrix times coordinate vector.
    """

    source: BasisDescriptor
    target: BasisDescriptor
    matrix: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.matrix) != self.target.dim:
            raise ValueError("matrix row count must equal target dimension")
        for row in self.matrix:
            if len(row) != self.source.dim:
                raise ValueError("matrix column count must equal source dimension")

    def apply(self, x: SpanElement) -> SpanElement:
        if x.basis != self.source:
            raise BasisMismatch("element not over the map's source basis")
        coords = tuple(
            _dot(row, x.coords) for row in self.matrix
        )
        return SpanElement(self.target, coords)

    @property
    def fixes_one(self) -> bool:
        col0 = tuple(row[0] for row in self.matrix)
        want = tuple(Fraction(1) if i == 0 else Fraction(0) for i in range(self.target.dim))
        return col0 == want

    @property
    def is_rational_valued(self) -> bool:
        return all(all(c == 0 for c in row) for row in self.matrix[1:])

    @classmethod
    def identity(cls, basis: BasisDescriptor) -> "QLinearMap":
        n = basis.dim
        m = tuple(
            tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
            for i in range(n)
        )
        return cls(basis, basis, m)


def _dot(row: Sequence[Fraction], coords: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for a, b in zip(row, coords):
        if a and b:
            total += a * b
    return total


def _monomial_subsets(n: int) -> List[Tuple[int, ...]]:
    # subsets of irrational symbol indices 1..n, ordered by size then lex
    out: List[Tuple[int, ...]] = [()]
    for size in range(1, n + 1):
        out.extend(itertools.combinations(range(1, n + 1), size))
    return out


def product_basis(basis: BasisDescriptor) -> BasisDescriptor:
    """Span closed under squarefree products of the declared irrationals.

    Symbols are the monomials r_T = prod of r_i over T for every subset T,
    with interval products as enclosures.  For zero or one irrational symbol
    this is the original basis.  Requires every declared irrational to be
    enclosed away from zero, which the positive-real convention guarantees.
    """
    n = basis.dim - 1
    if n <= 1:
        return basis
    symbols: List[str] = []
    encs: List[Enclosure] = []
    for subset in _monomial_subsets(n):
        if not subset:
            symbols.append("1")
            encs.append(PointEnclosure(Fraction(1)))
        elif len(subset) == 1:
            symbols.append(basis.symbols[subset[0]])
            encs.append(basis.enclosures[subset[0]])
        else:
            symbols.append("*".join(basis.symbols[i] for i in subset))
            enc: Enclosure = basis.enclosures[subset[0]]
            for i in subset[1:]:
                right = basis.enclosures[i]
                start = max(positive_from_level(enc), positive_from_level(right))
                enc = ProductEnclosure(enc, right, start)
            encs.append(enc)
    return BasisDescriptor(tuple(symbols), tuple(encs))


def embed_into_product(x: SpanElement, pb: BasisDescriptor) -> SpanElement:
    if pb == x.basis:
        return x
    if pb.symbols[: x.basis.dim] != x.basis.symbols:
        raise BasisMismatch("target is not a product extension of the element's basis")
    coords = list(x.coords) + [Fraction(0)] * (pb.dim - x.basis.dim)
    return SpanElement(pb, tuple(coords))


def span_product(factors: Sequence[SpanElement], pb: BasisDescriptor) -> SpanElement:
    """Product of span elements, each affine in one distinct irrational symbol.

    Multiplying out never squares a symbol under that restriction, so the
    result has exact coordinates over the product basis.
    """
    if not factors:
        return pb.rational(1)
    basis = factors[0].basis
    supports: List[int] = []
    pairs: List[Tuple[Fraction, Fraction, int]] = []
    for f in factors:
        if f.basis != basis:
            raise BasisMismatch("factors over different bases")
        nz = [i for i in range(1, basis.dim) if f.coords[i] != 0]
        if len(nz) > 1:
            raise ValueError("factor involves more than one irrational symbol")
        sym = nz[0] if nz else 0
        if sym and sym in supports:
            raise ValueError(f"two factors involve the symbol {basis.symbols[sym]}")
        if sym:
            supports.append(sym)
        pairs.append((f.coords[0], f.coords[sym] if sym else Fraction(0), sym))
    positions: Dict[Tuple[int, ...], int] = {
        s: i for i, s in enumerate(_monomial_subsets(basis.dim - 1))
    }
    coords = [Fraction(0)] * pb.dim
    for choice in itertools.product((0, 1), repeat=len(pairs)):
        coeff = Fraction(1)
        used: List[int] = []
        for take_linear, (c0, c1, sym) in zip(choice, pairs):
            if take_linear:
                if sym == 0:
                    coeff = Fraction(0)
                    break
                coeff *= c1
                used.append(sym)
            else:
                coeff *= c0
        if coeff == 0:
            continue
        coords[positions[tuple(sorted(used))]] += coeff
    return SpanElement(pb, tuple(coords))


@dataclass(frozen=True)
class PartitionOfOne:
    """Positive weights and rational-valued snap maps that average to the identity.

    Each map sends 1 to 1 and every declared irrational to a nearby rational
    (within delta), and the weighted combination reproduces every basis
    symbol exactly.  Weights live over the product extension of the basis
    because they are products of per-symbol interpolation factors.
    """

    basis: BasisDescriptor
    weights_basis: BasisDescriptor
    entries: Tuple[Tuple[SpanElement, QLinearMap], ...]
    delta: Fraction

    def weight_total(self) -> SpanElement:
        total = self.weights_basis.zero()
        for w, _ in self.entries:
            total = total + w
        return total

    def combined_matrix(self) -> List[List[Fraction]]:
        """Sum of weight-by-value outer products, one row per product symbol."""
        rows = [[Fraction(0)] * self.basis.dim for _ in range(self.weights_basis.dim)]
        for w, f in self.entries:
            values = f.matrix[0]
            for i, wc in enumerate(w.coords):
                if wc == 0:
                    continue
                for j, v in enumerate(values):
                    if v:
                        rows[i][j] += wc * v
        return rows

    def embedding_matrix(self) -> List[List[Fraction]]:
        rows = [[Fraction(0)] * self.basis.dim for _ in range(self.weights_basis.dim)]
        for j in range(self.basis.dim):
            rows[j][j] = Fraction(1)
        return rows


def partition_of_one(basis: BasisDescriptor, delta, budget: int | None = None) -> PartitionOfOne:
    """Build the 2^n-entry rational snap family around the declared irrationals.

    For each irrational r_i the enclosure is refined to the first interval
    [q1, q2] whose endpoints are both certified within delta of r_i; the two
    snap values for that symbol are q1 and q2, weighted by the exact linear
    interpolation factors (q2 - r_i)/(q2 - q1) and (r_i - q1)/(q2 - q1).
    Entry sigma takes the product of its chosen factors as weight and snaps
    every symbol to its chosen endpoint.  The construction is verified
    before returning: weights positive and summing to one, every map fixing
    1, and the weighted combination equal to the identity matrix exactly.
    """
    if budget is None:
        budget = DEFAULT_BUDGET
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    n = basis.dim - 1
    pb = product_basis(basis)
    if n == 0:
        entries = ((pb.rational(1), QLinearMap.identity(basis)),)
        return PartitionOfOne(basis, pb, entries, delta)
    snaps: List[Tuple[Fraction, Fraction]] = []
    lowers: List[SpanElement] = []
    uppers: List[SpanElement] = []
    for i in range(1, basis.dim):
        r = basis.unit(i)
        chosen = None
        for k in range(budget):
            lo, hi = basis.enclosures[i].interval(k)
            if is_le(r - basis.rational(lo), delta, budget) and is_le(
                basis.rational(hi) - r, delta, budget
            ):
                chosen = (lo, hi)
                break
        if chosen is None:
            raise RefinementExhausted(
                f"no enclosure of {basis.symbols[i]} within {delta} in {budget} levels"
            )
        q1, q2 = chosen
        w = q2 - q1
        # (q2 - r)/w and (r - q1)/w, both strictly between 0 and 1
        u1 = (basis.rational(q2) - r) / w
        u2 = (r - basis.rational(q1)) / w
        if compare(u1, 0, budget) != GREATER or compare(u2, 0, budget) != GREATER:
            raise RefinementExhausted(
                f"interpolation factors for {basis.symbols[i]} not certified positive"
            )
        snaps.append((q1, q2))
        lowers.append(u1)
        uppers.append(u2)
    entries: List[Tuple[SpanElement, QLinearMap]] = []
    for sigma in itertools.product((0, 1), repeat=n):
        factors = [uppers[i] if s else lowers[i] for i, s in enumerate(sigma)]
        weight = span_product(factors, pb)
        row0 = [Fraction(1)] + [
            snaps[i][1] if s else snaps[i][0] for i, s in enumerate(sigma)
        ]
        matrix = tuple(
            tuple(row0) if r == 0 else tuple(Fraction(0) for _ in range(basis.dim))
            for r in range(basis.dim)
        )
        entries.append((weight, QLinearMap(basis, basis, matrix)))
    part = PartitionOfOne(basis, pb, tuple(entries), delta)
    report = verify_partition(part, budget)
    bad = [k for k, ok in report.items() if not ok]
    if bad:
        raise RefinementExhausted(f"partition verification failed: {', '.join(bad)}")
    return part


def verify_partition(part: PartitionOfOne, budget: int | None = None) -> Dict[str, bool]:
    """Exact certification of every partition invariant.

    Returns a flag per invariant so callers can report which one broke;
    partition_of_one treats any False as a construction failure.
    """
    one = part.weights_basis.rational(1)
    checks: Dict[str, bool] = {}
    checks["weights_sum_to_one"] = part.weight_total() == one
    pos = True
    for w, _ in part.entries:
        if compare(w, 0, budget) != GREATER:
            pos = False
            break
    checks["weights_positive"] = pos
    checks["maps_fix_one"] = all(f.fixes_one and f.is_rational_valued for _, f in part.entries)
    checks["combination_is_identity"] = part.combined_matrix() == part.embedding_matrix()
    disp = True
    dl = part.basis.rational(part.delta)
    for _, f in part.entries:
        for i in range(1, part.basis.dim):
            image = f.apply(part.basis.unit(i))
            diff = image - part.basis.unit(i)
            if not (is_le(diff, dl, budget) and is_ge(diff, -1 * dl, budget)):
                disp = False
    checks["displacement_within_delta"] = disp
    return checks


def shrink_delta(
    old: Sequence[SpanElement], new: Sequence[SpanElement], delta
) -> Fraction:
    """Tolerance transfer between coefficient sets.

    Writes each element of ``new`` over the rational row space spanned by 1
    and the elements of ``old`` (erroring if it does not lie there), then
    divides delta by the largest total weight that the non-constant span
    generators carry in those expressions, floored at 1 so the tolerance
    never grows.
    """
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if not old and not new:
        return delta
    basis = (old[0] if old else new[0]).basis
    width = basis.dim
    e0 = [Fraction(1)] + [Fraction(0)] * (width - 1)
    rows = [e0] + [list(x.coords) for x in old]
    reduced = rref(rows)
    assert reduced[0] == e0, "reduction must keep the constant generator first"
    worst = Fraction(0)
    for x in new:
        if x.basis != basis:
            raise BasisMismatch("old and new coefficients over different bases")
        coords = row_space_coordinates(reduced, list(x.coords))
        if coords is None:
            raise ValueError(
                f"{render_exact(x)} is not in the rational span of the old coefficients and 1"
            )
        total = Fraction(0)
        for c in coords[1:]:
            total += abs(c)
        if total > worst:
            worst = total
    return delta / max(Fraction(1), worst)


def span_coordinates_over(
    generators: Sequence[SpanElement], x: SpanElement
) -> List[Fraction] | None:
    """Coordinates of x over Q-span(1, generators), or None when outside."""
    basis = x.basis
    e0 = [Fraction(1)] + [Fraction(0)] * (basis.dim - 1)
    rows = [e0] + [list(g.coords) for g in generators]
    reduced = rref(rows)
    return row_space_coordinates(reduced, list(x.coords))
