import random
from fractions import Fraction

import pytest

from src.exceptions import LpInfeasibleError, LpUnboundedError
from src.simplex import EQ, GE, LE, Tableau, solve


def test_small_lp():
    # min -x - 2y  s.t.  x + y <= 4, y <= 3
    t = solve([-1, -2], [[1, 1], [0, 1]], [LE, LE], [4, 3])
    assert t.objective == pytest.approx(-7)
    assert list(t.values()) == pytest.approx([1, 3])


def test_equality_and_ge_rows():
    # min x + y  s.t.  x + y == 5, x >= 2
    t = solve([1, 1], [{0: 1, 1: 1}, {0: 1}], [EQ, GE], [5, 2])
    assert t.objective == pytest.approx(5)
    assert t.values()[0] >= 2 - 1e-9


def test_negative_rhs_is_flipped():
    # -x <= -3 means x >= 3
    t = solve([1], [[-1]], [LE], [-3])
    assert t.objective == pytest.approx(3)


def test_infeasible():
    with pytest.raises(LpInfeasibleError):
        solve([1], [[1], [1]], [GE, LE], [5, 3])


def test_unbounded():
    with pytest.raises(LpUnboundedError):
        solve([-1, 0], [[1, -1]], [LE], [1])


def test_exact_mode_returns_fractions():
    t = solve([-1, -1], [[3, 1], [1, 3]], [LE, LE], [1, 1], exact=True)
    assert t.objective == Fraction(-1, 2)
    assert all(isinstance(v, Fraction) for v in t.values())
    assert list(t.values()) == [Fraction(1, 4), Fraction(1, 4)]


def test_redundant_equalities():
    t = solve([1, 2], [[1, 1], [2, 2]], [EQ, EQ], [3, 6], exact=True)
    assert t.objective == 3


def test_add_row_and_reoptimize():
    t = solve([-1, -1], [[1, 1]], [LE], [4])
    t.add_row({0: 1}, LE, 1)
    t.add_row({1: 1}, LE, 2)
    t.reoptimize()
    assert t.objective == pytest.approx(-3)


def test_added_row_can_make_lp_infeasible():
    t = solve([1], [[1]], [LE], [4])
    t.add_row({0: 1}, GE, 5)
    with pytest.raises(LpInfeasibleError):
        t.reoptimize()


def test_added_equality():
    t = solve([1, 1], [[1, 0], [0, 1]], [LE, LE], [4, 4])
    t.add_row([1, 1], EQ, 3)
    t.reoptimize()
    assert t.objective == pytest.approx(3)


def test_with_cost_keeps_original():
    base = solve([0, 0], [[1, 1]], [LE], [2], exact=True)
    low = base.with_cost([-1, 0])
    assert low.objective == -2
    assert base.objective == 0


def test_copy_is_independent():
    t = solve([-1], [[1]], [LE], [4])
    other = t.copy()
    other.add_row({0: 1}, LE, 1)
    other.reoptimize()
    assert t.objective == pytest.approx(-4)
    assert other.objective == pytest.approx(-1)


def test_float_and_exact_agree_on_random_lps():
    rng = random.Random(21)
    for _ in range(60):
        n, m = rng.randint(2, 5), rng.randint(1, 5)
        rows = [[rng.randint(0, 6) for _ in range(n)] for _ in range(m)]
        rhs = [rng.randint(1, 20) for _ in range(m)]
        cost = [-rng.randint(1, 9) for _ in range(n)]
        # every variable is boxed so the LP is bounded
        rows += [[1 if k == j else 0 for k in range(n)] for j in range(n)]
        rhs += [10] * n
        senses = [LE] * len(rows)
        approx = solve(cost, rows, senses, rhs)
        exact = solve(cost, rows, senses, rhs, exact=True)
        assert approx.objective == pytest.approx(float(exact.objective), rel=1e-6, abs=1e-9)


def test_unknown_sense():
    with pytest.raises(ValueError):
        Tableau([1], [[1]], ["<"], [1])
