from fractions import Fraction

import pytest

from germkit import BasisDescriptor
from germkit.enclosures import ContinuedFractionEnclosure, PointEnclosure


@pytest.fixture
def sq2():
    return BasisDescriptor(
        ("1", "sqrt2"),
        (PointEnclosure(Fraction(1)), ContinuedFractionEnclosure((1,), (2,))),
    )


@pytest.fixture
def sq2_sq3():
    return BasisDescriptor(
        ("1", "sqrt2", "sqrt3"),
        (
            PointEnclosure(Fraction(1)),
            ContinuedFractionEnclosure((1,), (2,)),
            ContinuedFractionEnclosure((1,), (1, 2)),
        ),
    )
