"""
Continuous slices of the mixed-integer set for a fixed open/closed pattern.

With x fixed, the feasible (y, i, r) form a polytope described by the flow
balance rows and simple upper bounds. The enumeration oracles (cut validity,
face dimension, MIP optimum) solve exact LPs over these slices.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .exceptions import BudgetExceededError
from .instance import FeasiblePoint
from .simplex import EQ, LE


class FlowColumns:
    """Column registry for the continuous variables y_t, i_e, r_e."""

    def __init__(self, inst):
        self.keys = [("y", a.id) for a in sorted(inst.arcs, key=lambda a: a.id)]
        self.keys += [("i", e) for e in range(1, inst.n)]
        self.keys += [("r", e) for e in range(1, inst.n)]
        self.index = {key: col for col, key in enumerate(self.keys)}

    def __len__(self):
        return len(self.keys)


def pattern_rows(inst, columns, pattern):
    """Rows (sparse dicts), senses and right-hand sides of the slice for an x pattern."""
    rows, senses, rhs = [], [], []
    for j in range(1, inst.n + 1):
        row = {}
        for arc in inst.incoming(j):
            row[columns.index[("y", arc.id)]] = 1
        for arc in inst.outgoing(j):
            row[columns.index[("y", arc.id)]] = -1
        if j > 1:
            row[columns.index[("i", j - 1)]] = 1
            row[columns.index[("r", j - 1)]] = -1
        if j < inst.n:
            row[columns.index[("i", j)]] = -1
            row[columns.index[("r", j)]] = 1
        rows.append(row)
        senses.append(EQ)
        rhs.append(inst.d(j))
    for arc in inst.arcs:
        rows.append({columns.index[("y", arc.id)]: 1})
        senses.append(LE)
        rhs.append(arc.capacity * pattern[arc.id])
    for e in range(1, inst.n):
        rows.append({columns.index[("i", e)]: 1})
        senses.append(LE)
        rhs.append(inst.u(e))
        rows.append({columns.index[("r", e)]: 1})
        senses.append(LE)
        rhs.append(inst.b(e))
    return rows, senses, rhs


def x_patterns(inst, max_arcs):
    """All open/closed patterns; dummy supply arcs are always open.

    Raises:
        BudgetExceededError: If the instance has more than max_arcs arcs.
    """
    if len(inst.arcs) > max_arcs:
        raise BudgetExceededError(f"{len(inst.arcs)} arcs exceeds the enumeration budget of {max_arcs}")
    free = [a.id for a in inst.arcs if not a.is_dummy_supply]
    fixed = {a.id: 1 for a in inst.arcs if a.is_dummy_supply}
    for bits in itertools.product((0, 1), repeat=len(free)):
        pattern = dict(fixed)
        pattern.update(zip(free, bits))
        yield pattern


def point_from_values(columns, pattern, values):
    """Split a column vector into FeasiblePoint dictionaries."""
    point = FeasiblePoint(x={t: Fraction(v) for t, v in pattern.items()})
    for (kind, idx), value in zip(columns.keys, values):
        getattr(point, kind)[idx] = value
    return point
