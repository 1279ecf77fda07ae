"""Log discrepancies of surface germs from resolution dual-graph data.

A model bundles a weighted dual graph with branch coefficients, nef loads
and an optional positivity threshold, all exact values over one declared
basis.  The solver inverts the intersection form to get per-curve log
discrepancies; the point minimum over curves, meeting points and branch
points is computed with certified comparisons, alongside an independent
brute-force tower enumeration used to cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .coefflattice import (
    BasisDescriptor,
    DEFAULT_BUDGET,
    LESS,
    QLinearMap,
    SpanElement,
    compare,
    is_ge,
    is_gt,
    is_le,
    is_lt,
    span_min,
)
from .dualgraph import (
    MarkedVertexPath,
    WeightedDualGraph,
    find_chain,
    fork_census,
    graph_determinant_abs,
    intersection_matrix,
    is_negative_definite,
    split_at_edge,
)
from .errors import HypothesesUnmet, ModelError, NotNegativeDefinite, RefinementExhausted
from .linalg import solve_exact


class NegInfinity:
    """Inhabitant of the single non-finite mld value.

    Kept as its own type so finite arithmetic can never absorb it silently;
    code must branch on it explicitly.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INFINITY"

    def __str__(self):
        return "-inf"


NEG_INFINITY = NegInfinity()

MldValue = Union[SpanElement, NegInfinity]

# realizing locus kinds: ("vertex", id), ("edge", (i, j)), ("branch", index),
# ("point", None) for the center of an empty-graph germ
Locus = Tuple[str, object]


@dataclass(frozen=True)
class Branch:
    """A curve germ through the fiber, transverse to one exceptional curve.

    ``vertex`` is None only on the empty graph, where the branch passes
    through the smooth center itself.
    """

    vertex: Optional[int]
    coeff: SpanElement


@dataclass(frozen=True)
class SurfaceGermModel:
    graph: WeightedDualGraph
    branches: Tuple[Branch, ...] = ()
    nef_loads: Tuple[Tuple[int, SpanElement], ...] = ()
    epsilon: Optional[SpanElement] = None
    basis: BasisDescriptor = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.basis is None:
            raise ModelError("model needs a basis")
        ids = set(self.graph.ids())
        for i, br in enumerate(self.branches):
            if br.vertex is None:
                if ids:
                    raise ModelError(
                        "free branch allowed only on the empty graph", f"branches[{i}].vertex"
                    )
            elif br.vertex not in ids:
                raise ModelError(f"no vertex {br.vertex}", f"branches[{i}].vertex")
            if br.coeff.basis != self.basis:
                raise ModelError("coefficient over a foreign basis", f"branches[{i}].b")
            if is_lt(br.coeff, 0):
                raise ModelError("branch coefficient must be >= 0", f"branches[{i}].b")
        seen = set()
        for v, mu in self.nef_loads:
            if v not in ids:
                raise ModelError(f"no vertex {v}", f"nefloads.{v}")
            if v in seen:
                raise ModelError("duplicate load", f"nefloads.{v}")
            seen.add(v)
            if mu.basis != self.basis:
                raise ModelError("load over a foreign basis", f"nefloads.{v}")
            if is_lt(mu, 0):
                raise ModelError("nef load must be >= 0", f"nefloads.{v}")
        object.__setattr__(self, "nef_loads", tuple(sorted(self.nef_loads)))
        if self.epsilon is not None:
            if self.epsilon.basis != self.basis:
                raise ModelError("epsilon over a foreign basis", "epsilon")
            if is_lt(self.epsilon, 0):
                raise ModelError("epsilon must be >= 0", "epsilon")
        if not is_negative_definite(self.graph):
            raise NotNegativeDefinite(
                "intersection matrix of the dual graph is not negative definite"
            )

    def load(self, vid: int) -> SpanElement:
        for v, mu in self.nef_loads:
            if v == vid:
                return mu
        return self.basis.zero()

    def branches_at(self, vid: Optional[int]) -> List[Tuple[int, Branch]]:
        return [(i, b) for i, b in enumerate(self.branches) if b.vertex == vid]


def apply_to_coefficients(model: SurfaceGermModel, f: QLinearMap) -> SurfaceGermModel:
    """Push every branch coefficient, load and epsilon through a snap map."""
    if f.source != model.basis:
        raise ModelError("map source does not match the model basis")
    branches = tuple(Branch(b.vertex, f.apply(b.coeff)) for b in model.branches)
    loads = tuple((v, f.apply(mu)) for v, mu in model.nef_loads)
    eps = None if model.epsilon is None else f.apply(model.epsilon)
    return SurfaceGermModel(model.graph, branches, loads, eps, model.basis)


@dataclass(frozen=True)
class DiscrepancyProfile:
    """Solved log discrepancies plus the point minimum and its classification."""

    a: Tuple[Tuple[int, SpanElement], ...]
    mld: MldValue
    realizing: Locus
    classification: str
    is_lc: bool
    is_klt: bool
    epsilon: Optional[SpanElement]
    epsilon_ok: Optional[bool]

    def a_map(self) -> Dict[int, SpanElement]:
        return dict(self.a)


def solve_discrepancies(model: SurfaceGermModel, budget: int | None = None) -> Dict[int, SpanElement]:
    """Per-curve log discrepancies from the pullback linear system.

    For each vertex j the system reads
        sum_i (1 - a_i) (E_i . E_j) = (w_j + 2) - (branch coefficients at j) - load(j)
    and negative definiteness makes it uniquely solvable.  The solve runs
    once per basis coordinate, entirely over Fraction.
    """
    g = model.graph
    if not is_negative_definite(g):
        raise NotNegativeDefinite("dual graph is not negative definite")
    ids = g.ids()
    if not ids:
        return {}
    m = intersection_matrix(g)
    rhs_rows: List[SpanElement] = []
    for vid in ids:
        r = model.basis.rational(g.weight(vid) + 2)
        for _, br in model.branches_at(vid):
            r = r - br.coeff
        r = r - model.load(vid)
        rhs_rows.append(r)
    dim = model.basis.dim
    frac_m = [[Fraction(x) for x in row] for row in m]
    cols = [[rhs_rows[i].coords[c] for i in range(len(ids))] for c in range(dim)]
    sols = solve_exact(frac_m, cols)
    out: Dict[int, SpanElement] = {}
    for i, vid in enumerate(ids):
        u = model.basis.element([sols[c][i] for c in range(dim)])
        out[vid] = model.basis.rational(1) - u
    return out


def _candidates(
    model: SurfaceGermModel, a: Dict[int, SpanElement]
) -> List[Tuple[SpanElement, Locus]]:
    one = model.basis.rational(1)
    cands: List[Tuple[SpanElement, Locus]] = []
    for vid in model.graph.ids():
        cands.append((a[vid], ("vertex", vid)))
    for i, j in model.graph.edges:
        cands.append((a[i] + a[j], ("edge", (i, j))))
    for idx, br in enumerate(model.branches):
        if br.vertex is not None:
            cands.append((one + a[br.vertex] - br.coeff, ("branch", idx)))
    return cands


def mld_point(model: SurfaceGermModel, budget: int | None = None) -> DiscrepancyProfile:
    """Minimal log discrepancy over the fiber, with realizing locus and tags.

    The minimum runs over exceptional curves, their pairwise meeting points
    and the branch attachment points; on the empty graph the center itself
    is the only candidate.  The value is NEG_INFINITY exactly when the model
    is not log canonical.  Ties resolve to the earliest candidate in the
    fixed order (vertices by id, then edges, then branches), so the
    realizing locus is deterministic.
    """
    a = solve_discrepancies(model, budget)
    basis = model.basis
    realizing: Locus
    mld: MldValue

    for vid in model.graph.ids():
        if is_lt(a[vid], 0, budget):
            return _profile(model, a, NEG_INFINITY, ("vertex", vid), budget)
    for idx, br in enumerate(model.branches):
        if is_gt(br.coeff, 1, budget):
            return _profile(model, a, NEG_INFINITY, ("branch", idx), budget)

    if model.graph.order == 0:
        total = basis.zero()
        for br in model.branches:
            total = total + br.coeff
        value = basis.rational(2) - total
        if is_lt(value, 0, budget):
            return _profile(model, a, NEG_INFINITY, ("point", None), budget)
        return _profile(model, a, value, ("point", None), budget)

    cands = _candidates(model, a)
    mld, realizing = cands[0]
    for value, locus in cands[1:]:
        if compare(value, mld, budget) == LESS:
            mld, realizing = value, locus
    return _profile(model, a, mld, realizing, budget)


def _profile(
    model: SurfaceGermModel,
    a: Dict[int, SpanElement],
    mld: MldValue,
    realizing: Locus,
    budget: int | None,
) -> DiscrepancyProfile:
    eps = model.epsilon
    if isinstance(mld, NegInfinity):
        return DiscrepancyProfile(
            tuple(a.items()), mld, realizing, "not-lc", False, False, eps,
            False if eps is not None else None,
        )
    is_klt = is_gt(mld, 0, budget)
    eps_ok = None if eps is None else is_ge(mld, eps, budget)
    if eps is not None and eps_ok and is_gt(eps, 0, budget):
        tag = "eps-lc"
    elif is_klt:
        tag = "klt"
    else:
        tag = "lc"
    return DiscrepancyProfile(tuple(a.items()), mld, realizing, tag, True, is_klt, eps, eps_ok)


def mld_oracle(model: SurfaceGermModel, depth: int, budget: int | None = None) -> MldValue:
    """Brute-force cross-check of mld_point by enumerating blow-up towers.

    Every point of the fiber worth blowing up is described by the multiset
    of local coefficient values of the curves through it (each exceptional
    curve contributes its log discrepancy, each branch contributes one minus
    its coefficient).  Blowing up such a point creates a curve of value
    2 - r + sum(values) and the new points worth visiting are its meetings
    with each old curve plus one generic point on it.  The oracle takes the
    minimum over all towers of height up to ``depth``.

    Agrees exactly with mld_point whenever every branch coefficient is at
    most 1 (so, on the whole generated corpus).  With a coefficient above 1
    the closed form reports NEG_INFINITY while a shallow enumeration may not
    yet have produced a negative value.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    a = solve_discrepancies(model, budget)
    one = model.basis.rational(1)
    two = model.basis.rational(2)

    memo: Dict[Tuple, SpanElement] = {}

    def key(point: Tuple[SpanElement, ...], d: int) -> Tuple:
        return (tuple(sorted(x.coords for x in point)), d)

    def minval(point: Tuple[SpanElement, ...], d: int) -> SpanElement:
        k = key(point, d)
        hit = memo.get(k)
        if hit is not None:
            return hit
        total = model.basis.zero()
        for x in point:
            total = total + x
        created = two - model.basis.rational(len(point)) + total
        best = created
        if d > 1:
            for x in point:
                cand = minval((created, x), d - 1)
                if compare(cand, best, budget) == LESS:
                    best = cand
            cand = minval((created,), d - 1)
            if compare(cand, best, budget) == LESS:
                best = cand
        memo[k] = best
        return best

    points: List[Tuple[SpanElement, ...]] = []
    for i, j in model.graph.edges:
        points.append((a[i], a[j]))
    for br in model.branches:
        if br.vertex is None:
            continue
        points.append((a[br.vertex], one - br.coeff))
    for vid in model.graph.ids():
        points.append((a[vid],))
    if model.graph.order == 0:
        points.append(tuple(one - br.coeff for br in model.branches))

    values: List[SpanElement] = [a[v] for v in model.graph.ids()]
    values.extend(minval(p, depth) for p in points)
    best = span_min(values, budget)
    if is_lt(best, 0, budget):
        return NEG_INFINITY
    return best


def smooth_point_mld(mult: SpanElement, budget: int | None = None) -> SpanElement:
    """Mld of a smooth point against a boundary of the given multiplicity.

    Valid for multiplicity between 0 and 1, where one blow-up computes the
    minimum 2 - mult; beyond 1 the formula stops being the answer, so the
    call is refused.
    """
    if is_lt(mult, 0, budget):
        raise HypothesesUnmet("multiplicity must be >= 0")
    if is_gt(mult, 1, budget):
        raise HypothesesUnmet("formula holds only for multiplicity <= 1")
    return mult.basis.rational(2) - mult


@dataclass(frozen=True)
class Violation:
    check: str
    where: Tuple
    detail: str


def check_convexity(
    model: SurfaceGermModel,
    budget: int | None = None,
    profile: DiscrepancyProfile | None = None,
) -> Tuple[Violation, ...]:
    """Local convexity of log discrepancies along the dual graph.

    Three families of inequalities, each checked exactly:
      midpoint     a(E) <= mean of a over any two distinct neighbors,
                   for middle curves of weight <= -2;
      weight-bound a(E) <= 2/(-E^2) at every vertex;
      gap          a(E1) + a(E3) - 2 a(E2) >= epsilon across middle curves
                   of weight <= -3, when the model is epsilon-lc with a
                   declared positive epsilon.
    Requires a log canonical model with every a <= 1.
    """
    if profile is None:
        profile = mld_point(model, budget)
    if not profile.is_lc:
        raise HypothesesUnmet("convexity checks need a log canonical model")
    a = profile.a_map()
    for vid, av in a.items():
        if is_gt(av, 1, budget):
            raise HypothesesUnmet(f"vertex {vid} has log discrepancy above 1")
    adj = model.graph.adjacency()
    out: List[Violation] = []
    half = Fraction(1, 2)
    for vid in model.graph.ids():
        w = model.graph.weight(vid)
        ns = adj[vid]
        if w <= -2:
            for x in range(len(ns)):
                for y in range(x + 1, len(ns)):
                    p, q = ns[x], ns[y]
                    if is_gt(a[vid], (a[p] + a[q]) * half, budget):
                        out.append(
                            Violation("midpoint", (p, vid, q), f"a({vid}) above neighbor mean")
                        )
        bound = Fraction(2, -w)
        if is_gt(a[vid], bound, budget):
            out.append(Violation("weight-bound", (vid,), f"a({vid}) above {bound}"))
    eps = model.epsilon
    if eps is not None and is_gt(eps, 0, budget) and profile.epsilon_ok:
        for vid in model.graph.ids():
            if model.graph.weight(vid) > -3:
                continue
            ns = adj[vid]
            for x in range(len(ns)):
                for y in range(x + 1, len(ns)):
                    p, q = ns[x], ns[y]
                    lhs = a[p] + a[q] - 2 * a[vid]
                    if is_lt(lhs, eps, budget):
                        out.append(
                            Violation("gap", (p, vid, q), "second difference below epsilon")
                        )
    return tuple(out)


def check_smooth_threshold(
    model: SurfaceGermModel,
    profile: DiscrepancyProfile | None = None,
    budget: int | None = None,
) -> Tuple[Violation, ...]:
    """Nonempty graphs with every weight <= -2 must have mld at most 1."""
    if profile is None:
        profile = mld_point(model, budget)
    g = model.graph
    if g.order == 0 or any(w > -2 for _, w in g.vertices):
        return ()
    if isinstance(profile.mld, NegInfinity):
        return ()
    if is_gt(profile.mld, 1, budget):
        return (Violation("smooth-threshold", (), "mld above 1 on an all-(-2-or-below) graph"),)
    return ()


def check_empty_graph_value(
    model: SurfaceGermModel,
    profile: DiscrepancyProfile | None = None,
    budget: int | None = None,
    oracle_depth: int = 4,
) -> Tuple[Violation, ...]:
    """Empty-graph models with multiplicity <= 1: mld must equal 2 - mult.

    Cross-checked against the tower oracle at the given depth.
    """
    if model.graph.order != 0:
        return ()
    total = model.basis.zero()
    for br in model.branches:
        total = total + br.coeff
    if is_gt(total, 1, budget):
        return ()
    if profile is None:
        profile = mld_point(model, budget)
    expected = model.basis.rational(2) - total
    out: List[Violation] = []
    if isinstance(profile.mld, NegInfinity) or profile.mld != expected:
        out.append(Violation("smooth-center-value", (), "mld differs from 2 - mult"))
    got = mld_oracle(model, oracle_depth, budget)
    if isinstance(got, NegInfinity) or got != expected:
        out.append(Violation("smooth-center-oracle", (), "tower oracle differs from 2 - mult"))
    return tuple(out)


def check_vertex_window(
    model: SurfaceGermModel,
    profile: DiscrepancyProfile | None = None,
    budget: int | None = None,
) -> Tuple[Violation, ...]:
    """No vertex-realized mld in the forbidden window on all-(<= -2) graphs.

    For log canonical models whose graph is nonempty with every weight at
    most -2, a vertex-realized mld strictly between max(2/3, 1 - d/2) and 1
    is impossible, where d is the smallest positive branch coefficient or
    load (absent coefficients leave only the 2/3 floor).  Finding one is
    reported as a violation.
    """
    g = model.graph
    if g.order == 0 or any(w > -2 for _, w in g.vertices):
        return ()
    if profile is None:
        profile = mld_point(model, budget)
    if not profile.is_lc or isinstance(profile.mld, NegInfinity):
        return ()
    mld = profile.mld
    if profile.realizing[0] != "vertex":
        return ()
    if not (is_gt(mld, Fraction(2, 3), budget) and is_lt(mld, 1, budget)):
        return ()
    positives: List[SpanElement] = []
    for br in model.branches:
        if is_gt(br.coeff, 0, budget):
            positives.append(br.coeff)
    for _, mu in model.nef_loads:
        if is_gt(mu, 0, budget):
            positives.append(mu)
    if positives:
        d = span_min(positives, budget)
        floor = model.basis.rational(1) - d / 2
        if not is_gt(mld, floor, budget):
            return ()
    return (
        Violation(
            "vertex-window",
            (profile.realizing[1],),
            "vertex-realized mld inside the excluded window",
        ),
    )


@dataclass(frozen=True)
class ResolutionStep:
    """Outcome of normalizing a model so a vertex realizes the minimum.

    ``kind`` is "existing-vertex" when the input already realizes its mld at
    a curve, or "blown-up" when one blow-up at the realizing point was
    inserted.  ``profile`` describes the returned model.
    """

    model: SurfaceGermModel
    kind: str
    computing_vertex: int
    profile: DiscrepancyProfile
    minus_one_unique: Optional[bool]


def resolution_model(model: SurfaceGermModel, budget: int | None = None) -> ResolutionStep:
    """Arrange for the mld to be realized at a vertex, blowing up once if needed.

    Log canonical input only.  When the minimum sits at an edge or branch
    point (or at the center of an empty graph), that point is blown up: the
    new curve gets weight -1 and zero load, incident curves drop their
    weight by one, and a branch through the point re-attaches to the new
    curve.  The new curve's log discrepancy equals the old minimum, which
    is re-derived from the new graph as an internal consistency check.
    """
    profile = mld_point(model, budget)
    if not profile.is_lc:
        raise HypothesesUnmet("model is not log canonical")
    kind, where = profile.realizing
    if kind == "vertex":
        vid = where
        return ResolutionStep(model, "existing-vertex", vid, profile, None)

    g = model.graph
    new_id = max(g.ids()) + 1 if g.order else 0
    verts = dict(g.vertices)
    edges = set(g.edges)
    branches = list(model.branches)
    if kind == "edge":
        i, j = where
        verts[i] -= 1
        verts[j] -= 1
        verts[new_id] = -1
        edges.discard((min(i, j), max(i, j)))
        edges.add((min(i, new_id), max(i, new_id)))
        edges.add((min(j, new_id), max(j, new_id)))
    elif kind == "branch":
        idx = where
        br = model.branches[idx]
        verts[br.vertex] -= 1
        verts[new_id] = -1
        edges.add((min(br.vertex, new_id), max(br.vertex, new_id)))
        branches[idx] = Branch(new_id, br.coeff)
    else:  # the smooth center of an empty graph
        verts[new_id] = -1
        branches = [Branch(new_id, br.coeff) for br in model.branches]
    new_graph = WeightedDualGraph(tuple(verts.items()), tuple(edges))
    new_model = SurfaceGermModel(
        new_graph, tuple(branches), model.nef_loads, model.epsilon, model.basis
    )
    new_profile = mld_point(new_model, budget)
    new_a = new_profile.a_map()
    assert new_a[new_id] == profile.mld, "blow-up must be crepant at the new curve"
    assert new_profile.mld == profile.mld, "one blow-up must preserve the minimum"
    minus_ones = [v for v, w in new_graph.vertices if w == -1]
    return ResolutionStep(
        new_model, "blown-up", new_id, new_profile, minus_ones == [new_id]
    )


@dataclass(frozen=True)
class ComputingPathReport:
    """A path out of a computing vertex together with its certified facts.

    ``kind`` records which shape the path has: "noncomputing-neighbor" when
    the second vertex already fails to compute the mld, "computing-run" when
    the whole path computes it and the far side of the first edge is a chain
    holding no other computing vertex.  ``conditions`` maps each promised
    fact to its certified truth; the moreover facts are only checked when
    the threshold hypotheses hold, and stay None otherwise.
    """

    path: MarkedVertexPath
    kind: str
    m: int
    order: int
    computing_ids: Tuple[int, ...]
    conditions: Dict[str, bool]
    moreover_applicable: bool
    moreover: Dict[str, Optional[bool]]


def _length_at_least_half_log(m: int, n: int) -> bool:
    # m >= (log_3(2n+1) - 1)/2, decided in exact integer arithmetic
    return 3 ** (2 * m + 1) >= 2 * n + 1


def _min_coeff_exceeds_16_over_nprime(
    s: SpanElement, n: int, budget: int | None = None
) -> bool:
    """Decide s > 16/(log_3(2n+1) - 1) without floating point.

    For rational s = p/q the inequality rearranges to (2n+1)^p > 3^(p+16q);
    irrational s is bracketed by its enclosure until one side decides.
    """

    def rational_test(fr: Fraction) -> bool:
        p, q = fr.numerator, fr.denominator
        if p <= 0:
            return False
        return (2 * n + 1) ** p > 3 ** (p + 16 * q)

    if s.is_rational:
        return rational_test(s.coords[0])
    limit = budget if budget is not None else DEFAULT_BUDGET
    for k in range(limit):
        lo, hi = s.enclosure(k)
        if lo > 0 and rational_test(lo):
            return True
        if not rational_test(hi):
            return False
    raise RefinementExhausted("threshold comparison undecided")


def find_computing_path(model: SurfaceGermModel, budget: int | None = None) -> ComputingPathReport:
    """Extract a path of curves witnessing how the mld sits in the graph.

    Requires a log canonical model with 0 < mld < 1 whose minimum is
    realized at a vertex (run resolution_model first), a tree-shaped graph
    with maximum degree 4, some computing vertex of degree at most 3, and
    at least 3 vertices so the guaranteed length is usable.

    The path starts at the smallest eligible computing vertex, follows the
    greedy long-chain construction, and is then normalized: either cut at
    the last computing vertex (so the next one is not computing), or, when
    computing vertices run at least half the guaranteed length, re-anchored
    at the far end of the maximal computing run along the adjacent chain.
    Every promised inequality is certified exactly and reported.
    """
    profile = mld_point(model, budget)
    if not profile.is_lc or isinstance(profile.mld, NegInfinity):
        raise HypothesesUnmet("model must be log canonical")
    mld = profile.mld
    if not (is_gt(mld, 0, budget) and is_lt(mld, 1, budget)):
        raise HypothesesUnmet("need 0 < mld < 1")
    if profile.realizing[0] != "vertex":
        raise HypothesesUnmet("mld not realized at a vertex; apply resolution_model first")
    g = model.graph
    n = g.order
    # usable guaranteed length needs (log_3(2n+1) - 1)/2 >= 1/2, i.e. (2n+1)^2 >= 27
    if (2 * n + 1) ** 2 < 27:
        raise HypothesesUnmet(f"order {n} leaves the guaranteed path length below usable")
    census = fork_census(g)
    if not census.is_tree:
        raise HypothesesUnmet("graph must be a tree")
    adj = g.adjacency()
    if any(len(adj[v]) > 4 for v in g.ids()):
        raise HypothesesUnmet("a vertex has degree above 4")
    a = profile.a_map()
    computing = tuple(v for v in g.ids() if a[v] == mld)
    starts = [v for v in computing if len(adj[v]) <= 3]
    if not starts:
        raise HypothesesUnmet("every computing vertex has degree 4")
    start = starts[0]

    ell = 1
    while 3 ** (ell + 1) < 2 * n + 1:
        ell += 1
    base = list(find_chain(g, start, ell).vertex_ids)
    is_comp = [v in computing for v in base]
    j = max(i for i, c in enumerate(is_comp) if c)

    def run_is_computing(seq: Sequence[int]) -> bool:
        return all(v in computing for v in seq)

    if 3 ** (2 * j + 1) < 2 * n + 1:
        # the computing prefix is short: drop it and start at its last vertex
        path_ids = base[j:]
        kind = "noncomputing-neighbor"
        assert path_ids[1] not in computing
    else:
        if not run_is_computing(base[: j + 1]):
            raise HypothesesUnmet(
                "vertices between two computing vertices fail to compute the mld"
            )

        def chain_side(x0: int, x1: int):
            gamma, _ = split_at_edge(g, (x0, x1))
            c = fork_census(gamma)
            if c.forks:
                return None
            if gamma.degree(x0) > 1:
                return None
            return gamma

        run = base[: j + 1]
        gamma = chain_side(run[0], run[1])
        if gamma is None:
            run = list(reversed(run))
            gamma = chain_side(run[0], run[1])
        if gamma is None:
            raise HypothesesUnmet("no chain hangs off either end of the computing run")
        # walk the chain away from the run's head, extending through the
        # farthest computing vertex found
        tail: List[int] = []
        prev, cur = run[1], run[0]
        gadj = gamma.adjacency()
        while True:
            nxt = [u for u in (gadj[cur] if cur in gadj else []) if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            tail.append(cur)
        far = 0
        for i, v in enumerate(tail, start=1):
            if v in computing:
                far = i
        if not all(v in computing for v in tail[:far]):
            raise HypothesesUnmet(
                "vertices between two computing vertices fail to compute the mld"
            )
        path_ids = list(reversed(tail[:far])) + run
        kind = "computing-run"

    m = len(path_ids) - 1
    path = MarkedVertexPath(tuple(path_ids))
    conditions: Dict[str, bool] = {}
    conditions["starts-computing"] = path_ids[0] in computing
    conditions["length"] = _length_at_least_half_log(m, n)
    gap = a[path_ids[1]] - a[path_ids[0]]
    conditions["gap-nonnegative"] = is_ge(gap, 0, budget)
    conditions["gap-at-most-1/m"] = is_le(gap, Fraction(1, m), budget)
    gamma0, _ = split_at_edge(g, (path_ids[0], path_ids[1]))
    if kind == "noncomputing-neighbor":
        conditions["second-not-computing"] = path_ids[1] not in computing
    else:
        conditions["run-computing"] = all(v in computing for v in path_ids)
        conditions["side-is-chain"] = not fork_census(gamma0).forks
        conditions["side-has-no-other-computing"] = all(
            v == path_ids[0] or v not in computing for v in gamma0.ids()
        )

    moreover: Dict[str, Optional[bool]] = {
        "half-path-weights-minus-2": None,
        "side-size-bound": None,
        "side-singleton-at-minus-1": None,
    }
    applicable = False
    eps = model.epsilon
    if eps is not None and is_gt(eps, 0, budget) and profile.epsilon_ok:
        positives: List[SpanElement] = [eps]
        for br in model.branches:
            if is_gt(br.coeff, 0, budget):
                positives.append(br.coeff)
        for _, mu in model.nef_loads:
            if is_gt(mu, 0, budget):
                positives.append(mu)
        floor = span_min(positives, budget)
        if _min_coeff_exceeds_16_over_nprime(floor, n, budget):
            applicable = True
            moreover["half-path-weights-minus-2"] = all(
                g.weight(path_ids[i]) == -2 for i in range(1, m // 2 + 1)
            )
            coeff_positives = positives[1:]
            if coeff_positives:
                d = span_min(coeff_positives, budget)
                if is_le(d, Fraction(2, 3), budget):
                    moreover["side-size-bound"] = is_le(
                        floor * (gamma0.order - 1), 16, budget
                    )
            if g.weight(path_ids[0]) == -1:
                moreover["side-singleton-at-minus-1"] = gamma0.order == 1

    return ComputingPathReport(
        path, kind, m, n, computing, conditions, applicable, moreover
    )


def adjunction_coefficient(
    model: SurfaceGermModel, branch_index: int, budget: int | None = None
) -> SpanElement:
    """Coefficient the germ induces on a reduced branch through it.

    The distinguished branch must carry coefficient exactly 1.  On the
    empty graph the branch is untouched and the answer is 0; otherwise it
    is 1 - a(E) for the curve E the branch attaches to.
    """
    try:
        br = model.branches[branch_index]
    except IndexError:
        raise ModelError(f"no branch {branch_index}") from None
    if br.coeff != model.basis.rational(1):
        raise HypothesesUnmet("distinguished branch must have coefficient exactly 1")
    profile = mld_point(model, budget)
    if not profile.is_lc:
        raise HypothesesUnmet("model must be log canonical")
    if br.vertex is None:
        return model.basis.rational(0)
    a = profile.a_map()
    return model.basis.rational(1) - a[br.vertex]


@dataclass(frozen=True)
class AdjunctionForm:
    """Decomposition of an adjunction coefficient as 1 - 1/l + (integers . inputs)/l."""

    coefficient: SpanElement
    det: int
    constant_ok: bool
    branch_multipliers: Tuple[Tuple[int, Fraction], ...]
    load_multipliers: Tuple[Tuple[int, Fraction], ...]
    multipliers_integral: bool
    multipliers_nonnegative: bool
    reconstruction_ok: bool

    @property
    def ok(self) -> bool:
        return (
            self.constant_ok
            and self.multipliers_integral
            and self.multipliers_nonnegative
            and self.reconstruction_ok
        )


def adjunction_form(
    model: SurfaceGermModel, branch_index: int, budget: int | None = None
) -> AdjunctionForm:
    """Certify the arithmetic shape of the adjunction coefficient.

    The coefficient is affine in the other branch coefficients and the
    loads, so solving with unit inputs recovers each linear weight exactly;
    the form holds when the no-input constant is 1 - 1/l, every weight
    times l is a nonnegative integer, and the affine reconstruction matches
    the actual coefficient.  l is |det| of the intersection matrix.
    """
    value = adjunction_coefficient(model, branch_index, budget)
    ell = graph_determinant_abs(model.graph)
    basis = model.basis
    s = model.branches[branch_index]
    if model.graph.order == 0:
        return AdjunctionForm(value, ell, value == basis.rational(0), (), (), True, True, True)

    def coeff_with(branches: Tuple[Branch, ...], loads) -> SpanElement:
        probe = SurfaceGermModel(model.graph, branches, loads, None, basis)
        sol = solve_discrepancies(probe, budget)
        return basis.rational(1) - sol[s.vertex]

    base = coeff_with((s,), ())
    constant_ok = base == basis.rational(1) - basis.rational(Fraction(1, ell))
    one = basis.rational(1)
    branch_mults: List[Tuple[int, Fraction]] = []
    recon = base
    for idx, br in enumerate(model.branches):
        if idx == branch_index:
            continue
        probe = coeff_with((s, Branch(br.vertex, one)), ())
        c = (probe - base).as_fraction()
        branch_mults.append((idx, ell * c))
        recon = recon + c * br.coeff
    load_mults: List[Tuple[int, Fraction]] = []
    for vid, mu in model.nef_loads:
        probe = coeff_with((s,), ((vid, one),))
        c = (probe - base).as_fraction()
        load_mults.append((vid, ell * c))
        recon = recon + c * mu
    mults = [m for _, m in branch_mults] + [m for _, m in load_mults]
    integral = all(m.denominator == 1 for m in mults)
    nonneg = all(m >= 0 for m in mults)
    return AdjunctionForm(
        value,
        ell,
        constant_ok,
        tuple(branch_mults),
        tuple(load_mults),
        integral,
        nonneg,
        recon == value,
    )


def generic_point_mld(model: SurfaceGermModel, locus: Locus, budget: int | None = None) -> SpanElement:
    """Mld at the generic point of a curve through the fiber.

    The value is one minus the curve's coefficient: for an exceptional
    vertex that is its log discrepancy, for a branch it is 1 - b.  Needs a
    log canonical model so the coefficient is honest.
    """
    profile = mld_point(model, budget)
    if not profile.is_lc:
        raise HypothesesUnmet("model must be log canonical")
    kind, where = locus
    if kind == "vertex":
        return profile.a_map()[where]
    if kind == "branch":
        return model.basis.rational(1) - model.branches[where].coeff
    raise ValueError(f"no curve at locus kind {kind!r}")


def general_closed_point_mld(
    model: SurfaceGermModel, locus: Locus, budget: int | None = None
) -> SpanElement:
    """Mld at a general closed point of the curve: the generic value plus 1."""
    return generic_point_mld(model, locus, budget) + model.basis.rational(1)
