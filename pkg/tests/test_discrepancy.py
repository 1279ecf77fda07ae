"""Discrepancy solver, mld classification, and the surface-lemma checkers."""

from fractions import Fraction

import pytest

from germkit import (
    Branch,
    HypothesesUnmet,
    NEG_INFINITY,
    SpanElement,
    SurfaceGermModel,
    TRIVIAL_BASIS,
    WeightedDualGraph,
    hj_graph,
    mld_oracle,
    mld_point,
)
from germkit.corpus import family_an, family_cyclic_one_one, sqrt2_basis
from germkit.discrepancy import (
    adjunction_form,
    check_convexity,
    check_empty_graph_value,
    check_smooth_threshold,
    check_vertex_window,
    find_computing_path,
    general_closed_point_mld,
    generic_point_mld,
    resolution_model,
    smooth_point_mld,
    solve_discrepancies,
)

from util import EMPTY, chain, germ, rbranch


def frac(x):
    return TRIVIAL_BASIS.rational(Fraction(x))


def solved(model):
    return {v: x.as_fraction() for v, x in solve_discrepancies(model).items()}


# ---------------------------------------------------------------------------
# solve_discrepancies


def test_solve_single_minus_two():
    # bare (-2) curve: crepant, a = 1
    assert solved(germ(chain(-2))) == {0: Fraction(1)}


def test_solve_single_minus_three():
    assert solved(germ(chain(-3))) == {0: Fraction(2, 3)}


def test_solve_nef_load_lowers_discrepancy():
    m = germ(chain(-2), loads=[(0, frac(1))])
    assert solved(m) == {0: Fraction(1, 2)}


def test_solve_branch_coefficient_raises_discrepancy():
    m = germ(chain(-2), [rbranch(0, "1/2")])
    assert solved(m) == {0: Fraction(3, 4)}


def test_solve_two_branches_stack():
    m = germ(chain(-2), [rbranch(0, "1/2"), rbranch(0, "1/2")])
    assert solved(m) == {0: Fraction(1, 2)}


def test_solve_hirzebruch_jung_with_branch():
    # 7/3 chain is (-3,-2,-2); a branch of coefficient 1/2 hangs off the end
    m = SurfaceGermModel(hj_graph(7, 3), (rbranch(0, "1/2"),), (), None, TRIVIAL_BASIS)
    assert solved(m) == {0: Fraction(5, 14), 1: Fraction(4, 7), 2: Fraction(11, 14)}
    p = mld_point(m)
    assert p.mld.as_fraction() == Fraction(5, 14)
    assert p.realizing == ("vertex", 0)


def test_solve_irrational_branch_coefficient():
    basis = sqrt2_basis()
    half_sqrt2 = SpanElement(basis, (Fraction(0), Fraction(1, 2)))
    m = SurfaceGermModel(
        WeightedDualGraph(((0, -3),), ()), (Branch(0, half_sqrt2),), (), None, basis
    )
    a = solve_discrepancies(m)
    # (1 - a)(-3) = -1 + sqrt2/2 so a = 2/3 - sqrt2/6
    assert a[0].coords == (Fraction(2, 3), Fraction(-1, 6))
    assert mld_point(m).classification == "klt"


# ---------------------------------------------------------------------------
# mld_point on the stock families


def test_an_family_is_canonical():
    for m in family_an(8):
        p = mld_point(m)
        assert p.mld.as_fraction() == 1
        # ties resolve to the smallest vertex id
        assert p.realizing == ("vertex", 0)
        assert p.classification == "klt"


def test_cyclic_one_one_family():
    for n, m in enumerate(family_cyclic_one_one(8), start=2):
        assert mld_point(m).mld.as_fraction() == Fraction(2, n)


def test_hj_five_two():
    p = mld_point(germ(hj_graph(5, 2)))
    assert p.mld.as_fraction() == Fraction(3, 5)
    assert p.realizing == ("vertex", 0)


def test_long_chain_with_half_branch():
    # (-2)^20 with b = 1/2 at vertex 0: a_j = 1 - (20 - j)/42
    m = germ(chain(*[-2] * 20), [rbranch(0, "1/2")])
    a = solved(m)
    for j in range(20):
        assert a[j] == 1 - Fraction(20 - j, 42)
    p = mld_point(m)
    assert p.mld.as_fraction() == Fraction(11, 21)
    assert p.realizing == ("vertex", 0)
    # neighbouring discrepancies differ by the constant step 1/42
    assert a[1] - a[0] == Fraction(1, 42)


# ---------------------------------------------------------------------------
# non-lc detection


def test_branch_above_one_is_not_lc():
    p = mld_point(germ(chain(-2), [rbranch(0, "5/4")]))
    assert p.mld is NEG_INFINITY
    assert p.classification == "not-lc"
    assert p.realizing == ("branch", 0)


def test_heavy_nef_load_is_not_lc():
    p = mld_point(germ(chain(-2), loads=[(0, frac(3))]))
    assert p.mld is NEG_INFINITY
    assert p.realizing == ("vertex", 0)


def test_empty_graph_values():
    cases = [
        ((), Fraction(2), "klt"),
        (("1/2",), Fraction(3, 2), "klt"),
        (("5/6", "5/6"), Fraction(1, 3), "klt"),
        (("1", "1"), Fraction(0), "lc"),
    ]
    for coeffs, want, cls in cases:
        brs = [Branch(None, frac(c)) for c in coeffs]
        p = mld_point(germ(EMPTY, brs))
        assert p.mld.as_fraction() == want
        assert p.realizing == ("point", None)
        assert p.classification == cls
    bad = mld_point(germ(EMPTY, [Branch(None, frac("5/4"))]))
    assert bad.mld is NEG_INFINITY


def test_epsilon_tagging():
    p = mld_point(germ(chain(-3), eps=frac("1/4")))
    assert p.classification == "eps-lc"
    assert p.epsilon_ok is True
    p = mld_point(germ(chain(-3), eps=frac("3/4")))
    assert p.classification == "klt"
    assert p.epsilon_ok is False
    p = mld_point(germ(chain(-3), eps=frac(0)))
    assert p.classification == "klt"
    assert p.epsilon_ok is True


# ---------------------------------------------------------------------------
# brute-force oracle and its depth sensitivity


def test_oracle_needs_depth_beyond_one_when_b_exceeds_one():
    """A coefficient above 1 only reveals -infinity after enough blow-ups.

    At depth 1 every exceptional discrepancy is still positive; the witness
    appears at depth 2 and the answer is stable from there on.
    """
    m = germ(chain(-2), [rbranch(0, "5/4")])
    assert mld_point(m).mld is NEG_INFINITY
    assert mld_oracle(m, 1).as_fraction() == Fraction(1, 8)
    assert mld_oracle(m, 2) is NEG_INFINITY
    assert mld_oracle(m, 3) is NEG_INFINITY


def test_oracle_matches_closed_form_on_small_models():
    models = [
        germ(chain(-2)),
        germ(chain(-3)),
        germ(hj_graph(5, 2)),
        germ(chain(-2, -2), [rbranch(1, "1/3")]),
        germ(EMPTY, [Branch(None, frac("1/2"))]),
    ]
    for m in models:
        want = mld_point(m).mld
        for depth in (1, 2, 3):
            got = mld_oracle(m, depth)
            if want is NEG_INFINITY:
                assert got is NEG_INFINITY
            else:
                assert got.as_fraction() == want.as_fraction()


# ---------------------------------------------------------------------------
# resolution step


def test_resolution_keeps_vertex_realized_model():
    m = germ(chain(-2, -2))
    step = resolution_model(m)
    assert step.kind == "existing-vertex"
    assert step.model is m
    assert step.computing_vertex == 0
    assert step.minus_one_unique is None


def test_resolution_blows_up_point_realized_model():
    m = germ(EMPTY, [Branch(None, frac("1/2")), Branch(None, frac("1/2"))])
    before = mld_point(m)
    assert before.realizing == ("point", None)
    step = resolution_model(m)
    assert step.kind == "blown-up"
    assert step.model.graph.vertices == ((0, -1),)
    assert step.model.graph.edges == ()
    # both branches reattach to the new exceptional curve
    assert [b.vertex for b in step.model.branches] == [0, 0]
    assert step.profile.mld.as_fraction() == before.mld.as_fraction() == 1
    assert step.minus_one_unique is True


def test_resolution_rejects_non_lc():
    with pytest.raises(HypothesesUnmet):
        resolution_model(germ(chain(-2), [rbranch(0, "5/4")]))


# ---------------------------------------------------------------------------
# computing paths


def test_computing_path_noncomputing_neighbor():
    m = germ(chain(*[-2] * 20), [rbranch(0, "1/2")])
    r = find_computing_path(m)
    assert r.kind == "noncomputing-neighbor"
    assert r.path.vertex_ids == (0, 1, 2, 3)
    assert r.m == 3
    assert r.order == 20
    assert r.computing_ids == (0,)
    assert r.conditions == {
        "starts-computing": True,
        "length": True,
        "gap-nonnegative": True,
        "gap-at-most-1/m": True,
        "second-not-computing": True,
    }
    assert r.moreover_applicable is False
    assert all(v is None for v in r.moreover.values())


def test_computing_path_run_of_computing_vertices():
    # symmetric loading makes every vertex realize the minimum
    m = germ(chain(-2, -2, -2, -2), [rbranch(0, "1/2"), rbranch(3, "1/2")])
    p = mld_point(m)
    assert [x.as_fraction() for _, x in p.a] == [Fraction(1, 2)] * 4
    r = find_computing_path(m)
    assert r.kind == "computing-run"
    assert r.path.vertex_ids == (0, 1)
    assert r.m == 1
    assert r.computing_ids == (0, 1, 2, 3)
    assert r.conditions["run-computing"] is True
    assert r.conditions["side-is-chain"] is True
    assert r.conditions["side-has-no-other-computing"] is True


def test_computing_path_hypotheses():
    with pytest.raises(HypothesesUnmet, match="0 < mld < 1"):
        find_computing_path(germ(chain(-2, -2)))
    with pytest.raises(HypothesesUnmet, match="log canonical"):
        find_computing_path(germ(chain(-2, -2, -2), [rbranch(0, "5/4")]))
    # order 2 cannot host a usable path even with mld inside (0, 1)
    with pytest.raises(HypothesesUnmet, match="order 2"):
        find_computing_path(germ(hj_graph(5, 2)))


# ---------------------------------------------------------------------------
# adjunction along a reduced branch


def test_adjunction_a1():
    m = germ(chain(-2), [rbranch(0, 1)])
    f = adjunction_form(m, 0)
    assert f.coefficient.as_fraction() == Fraction(1, 2)
    assert f.det == 2
    assert f.branch_multipliers == ()
    assert f.load_multipliers == ()
    assert f.ok


def test_adjunction_minus_three():
    f = adjunction_form(germ(chain(-3), [rbranch(0, 1)]), 0)
    assert f.coefficient.as_fraction() == Fraction(2, 3)
    assert f.det == 3
    assert f.ok


def test_adjunction_extra_branch_contributes_integrally():
    m = germ(chain(-2), [rbranch(0, 1), rbranch(0, "1/2")])
    f = adjunction_form(m, 0)
    # 3/4 = 1/2 + 1 * (1/2)/2: the extra branch enters with multiplier 1
    assert f.coefficient.as_fraction() == Fraction(3, 4)
    assert f.branch_multipliers == ((1, Fraction(1)),)
    assert f.multipliers_integral and f.multipliers_nonnegative
    assert f.reconstruction_ok
    assert f.ok


def test_adjunction_hypotheses():
    with pytest.raises(HypothesesUnmet, match="coefficient exactly 1"):
        adjunction_form(germ(chain(-2), [rbranch(0, "1/2")]), 0)
    with pytest.raises(HypothesesUnmet, match="log canonical"):
        adjunction_form(germ(chain(-2), [rbranch(0, 1), rbranch(0, "5/4")]), 0)


# ---------------------------------------------------------------------------
# checkers


def test_convexity_clean_on_klt_chain():
    assert check_convexity(germ(chain(-2, -3, -2), [rbranch(0, "1/3")])) == ()


def test_convexity_needs_discrepancies_at_most_one():
    with pytest.raises(HypothesesUnmet, match="above 1"):
        check_convexity(germ(chain(-1)))


def test_window_checkers_pass_on_plain_chains():
    m = germ(chain(-2, -2, -2))
    assert check_smooth_threshold(m) == ()
    assert check_vertex_window(m) == ()


def test_empty_graph_checker():
    m = germ(EMPTY, [Branch(None, frac("1/2"))])
    assert check_empty_graph_value(m) == ()
    # out of scope on a nonempty graph, reports nothing
    assert check_empty_graph_value(germ(chain(-2))) == ()


# ---------------------------------------------------------------------------
# pointwise mld helpers


def test_smooth_point_mld():
    assert smooth_point_mld(frac("1/2")).as_fraction() == Fraction(3, 2)
    assert smooth_point_mld(frac(0)).as_fraction() == 2
    assert smooth_point_mld(frac(1)).as_fraction() == 1
    with pytest.raises(HypothesesUnmet):
        smooth_point_mld(frac("5/4"))
    with pytest.raises(HypothesesUnmet):
        smooth_point_mld(frac("-1/4"))


def test_generic_and_closed_point_mld():
    m = germ(chain(-2, -2), [rbranch(1, "1/3")])
    assert generic_point_mld(m, ("vertex", 0)).as_fraction() == Fraction(8, 9)
    assert generic_point_mld(m, ("branch", 0)).as_fraction() == Fraction(2, 3)
    assert general_closed_point_mld(m, ("vertex", 0)).as_fraction() == Fraction(17, 9)
    assert general_closed_point_mld(m, ("branch", 0)).as_fraction() == Fraction(5, 3)
    with pytest.raises(ValueError):
        generic_point_mld(m, ("point", None))
