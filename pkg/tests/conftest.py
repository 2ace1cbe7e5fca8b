from fractions import Fraction

import pytest
from hypothesis import settings

from cyltn.core import LaurentPoly, LoopMatrix
from cyltn.network import CylNetwork, Edge

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def poly(*coeffs, low=0):
    return LaurentPoly.from_coeffs([Fraction(c) for c in coeffs], low)


@pytest.fixture
def rotor_network():
    """Three sources, three sinks and one inner vertex, all weights 1."""
    one = Fraction(1)
    edges = [Edge(0, 6, one), Edge(2, 6, one, 1), Edge(6, 3, one), Edge(6, 5, one, -1),
             Edge(1, 4, one)]
    return CylNetwork(7, edges, [0, 1, 2], [3, 4, 5])


@pytest.fixture
def counterexample():
    return LoopMatrix(2, 2, [[poly(21, 10, 1), poly(40, 14, 1)],
                             [poly(10, 7, 1), poly(18, 9, 1)]])


@pytest.fixture
def truncated_loop():
    return LoopMatrix.from_blocks({0: [[1, 2], [0, 1]], 1: [[6, 12], [3, 6]],
                                   2: [[36, 72], [18, 36]]})
