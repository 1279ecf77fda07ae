"""Builders shared across test modules."""

from fractions import Fraction

from germkit import Branch, SurfaceGermModel, TRIVIAL_BASIS, WeightedDualGraph


def chain(*weights):
    n = len(weights)
    return WeightedDualGraph(
        tuple((i, w) for i, w in enumerate(weights)),
        tuple((i, i + 1) for i in range(n - 1)),
    )


def germ(graph, branches=(), loads=(), eps=None, basis=TRIVIAL_BASIS):
    return SurfaceGermModel(graph, tuple(branches), tuple(loads), eps, basis)


def rbranch(vertex, value, basis=TRIVIAL_BASIS):
    return Branch(vertex, basis.rational(Fraction(value)))


EMPTY = WeightedDualGraph((), ())
