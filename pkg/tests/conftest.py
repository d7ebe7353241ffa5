import random

import pytest

from src.instance import INCOMING, NonPathArc, PathInstance
from src.mincut import PACK, ArcSelection
from src.verify import random_small_instance


def lot_sizing(demand, capacity, fwd, bwd, fixed=None, var=None):
    """One production arc per node, id = node."""
    fixed = fixed or [0] * len(demand)
    var = var or [0] * len(demand)
    arcs = [NonPathArc(j, j, INCOMING, capacity[j - 1], fixed[j - 1], var[j - 1]) for j in range(1, len(demand) + 1)]
    return PathInstance(len(demand), demand, fwd, bwd, arcs)


@pytest.fixture
def example1():
    """Four periods of demand 10 with capacities (20, 35, 30, 20)."""
    return lot_sizing([10, 10, 10, 10], [20, 35, 30, 20], [20, 10, 15], [15, 10, 10])


@pytest.fixture
def facet_example():
    """Example 1 with c2 = 30 and u2 = 20; both published inequalities are facets here."""
    return lot_sizing([10, 10, 10, 10], [20, 30, 30, 20], [20, 20, 15], [15, 10, 10])


@pytest.fixture
def cover_sel():
    return ArcSelection((1, 4), {2, 3})


@pytest.fixture
def pack_sel():
    return ArcSelection((1, 4), {3}, mode=PACK)


@pytest.fixture
def small_instances():
    """Factory for seeded random small instances."""
    def make(count, seed=7, **kwargs):
        rng = random.Random(seed)
        return [random_small_instance(rng, **kwargs) for _ in range(count)]
    return make
