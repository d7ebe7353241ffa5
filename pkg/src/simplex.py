"""
Dense tableau simplex over floats or exact Fractions.

Minimizes c.x subject to rows of <=, >= and == constraints and x >= 0. Phase 1
uses artificial variables; pricing is Dantzig's rule, switching to Bland's rule
after a run of degenerate pivots. Rows can be appended to an optimal tableau and
re-optimized with the dual simplex, which is how cuts and branching bounds are
added in branch-and-cut.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .config import LP_TOL
from .exceptions import LpInfeasibleError, LpIterationError, LpUnboundedError

LE = "<="
GE = ">="
EQ = "=="

PIVOT_TOL = 1e-9
BLAND_AFTER = 50


class Tableau:
    """Simplex tableau; the last row holds reduced costs and minus the objective."""

    def __init__(self, cost, rows, senses, rhs, exact=False, max_iter=None):
        self.exact = exact
        self.tol = 0 if exact else LP_TOL
        self.pivot_tol = 0 if exact else PIVOT_TOL
        self.n = len(cost)
        self.cost = [self._num(c) for c in cost]
        self.max_iter = max_iter
        self._build(rows, senses, rhs)

    # -- numbers ----------------------------------------------------------

    def _num(self, value):
        return Fraction(value) if self.exact else float(value)

    def _zeros(self, shape):
        if self.exact:
            return np.full(shape, Fraction(0), dtype=object)
        return np.zeros(shape, dtype=float)

    def _dense(self, coefs):
        row = self._zeros(self.n)
        items = coefs.items() if isinstance(coefs, dict) else enumerate(coefs)
        for col, value in items:
            if value:
                row[col] = self._num(value)
        return row

    # -- construction -----------------------------------------------------

    def _build(self, rows, senses, rhs):
        m = len(rows)
        senses = list(senses)
        dense = [self._dense(r) for r in rows]
        b = [self._num(v) for v in rhs]
        for i in range(m):
            if b[i] < 0:
                dense[i], b[i] = -dense[i], -b[i]
                senses[i] = {LE: GE, GE: LE, EQ: EQ}[senses[i]]

        n_slack = sum(1 for s in senses if s in (LE, GE))
        n_art = sum(1 for s in senses if s in (GE, EQ))
        self.art_start = self.n + n_slack
        width = self.art_start + n_art
        T = self._zeros((m + 1, width + 1))
        self.basis = []
        slack, art = self.n, self.art_start
        for i, sense in enumerate(senses):
            T[i, :self.n] = dense[i]
            T[i, -1] = b[i]
            if sense == LE:
                T[i, slack] = 1
                self.basis.append(slack)
                slack += 1
            elif sense == GE:
                T[i, slack] = -1
                slack += 1
                T[i, art] = 1
                self.basis.append(art)
                art += 1
            elif sense == EQ:
                T[i, art] = 1
                self.basis.append(art)
                art += 1
            else:
                raise ValueError(f"unknown constraint sense '{sense}'")
        self.T = T
        self.n_art = n_art
        if self.max_iter is None:
            self.max_iter = 50 * (m + width) + 1000
        self.optimal = False

    @property
    def num_rows(self):
        return self.T.shape[0] - 1

    @property
    def num_cols(self):
        return self.T.shape[1] - 1

    def copy(self):
        other = object.__new__(Tableau)
        other.__dict__.update(self.__dict__)
        other.T = self.T.copy()
        other.basis = list(self.basis)
        other.cost = list(self.cost)
        return other

    # -- pivoting ---------------------------------------------------------

    def _pivot(self, r, j):
        T = self.T
        T[r] = T[r] / T[r, j]
        col = T[:, j].copy()
        col[r] = 0
        T -= np.outer(col, T[r])
        if not self.exact:
            T[:, j] = 0.0
            T[r, j] = 1.0
        self.basis[r] = j

    def _ratio_row(self, j):
        col = self.T[:-1, j]
        rows = np.flatnonzero(col > self.pivot_tol)
        if rows.size == 0:
            return None
        ratios = self.T[rows, -1] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + self.tol]
        return int(min(ties, key=lambda i: self.basis[i]))

    def _primal(self, limit):
        degenerate = 0
        for _ in range(self.max_iter):
            reduced = self.T[-1, :limit]
            candidates = np.flatnonzero(reduced < -self.tol)
            if candidates.size == 0:
                return
            if degenerate >= BLAND_AFTER:
                j = int(candidates[0])
            else:
                j = int(candidates[np.argmin(reduced[candidates])])
            r = self._ratio_row(j)
            if r is None:
                raise LpUnboundedError(f"column {j} can increase without bound")
            degenerate = degenerate + 1 if self.T[r, -1] <= self.tol else 0
            self._pivot(r, j)
        raise LpIterationError(f"no optimum after {self.max_iter} pivots")

    def _dual(self):
        for _ in range(self.max_iter):
            rhs = self.T[:-1, -1]
            negative = np.flatnonzero(rhs < -self.tol)
            if negative.size == 0:
                return
            r = int(negative[np.argmin(rhs[negative])])
            row = self.T[r, :-1]
            cols = np.flatnonzero(row < -self.pivot_tol)
            if cols.size == 0:
                raise LpInfeasibleError(f"row {r} cannot be satisfied")
            ratios = self.T[-1, cols] / -row[cols]
            j = int(cols[np.argmin(ratios)])
            self._pivot(r, j)
        raise LpIterationError(f"dual simplex stalled after {self.max_iter} pivots")

    # -- phases -----------------------------------------------------------

    def _set_objective(self, cost):
        T = self.T
        T[-1, :] = 0
        T[-1, :self.n] = cost
        for i, col in enumerate(self.basis):
            cb = T[-1, col]
            if cb:
                T[-1] -= cb * T[i]

    def _phase_one(self):
        T = self.T
        T[-1, :] = 0
        art_rows = [i for i, col in enumerate(self.basis) if col >= self.art_start]
        for i in art_rows:
            T[-1] -= T[i]
        T[-1, self.art_start:self.art_start + self.n_art] = 0
        self._primal(self.num_cols)

        scale = 1 + sum(abs(v) for v in T[:-1, -1])
        if -T[-1, -1] > self.tol * scale:
            raise LpInfeasibleError(f"phase 1 ended with infeasibility {-T[-1, -1]}")

        redundant = []
        for i, col in enumerate(self.basis):
            if col < self.art_start:
                continue
            row = np.abs(T[i, :self.art_start])
            j = int(np.argmax(row)) if self.art_start else 0
            if self.art_start and row[j] > self.pivot_tol:
                self._pivot(i, j)
            else:
                redundant.append(i)
        if redundant:
            self.T = np.delete(self.T, redundant, axis=0)
            self.basis = [col for i, col in enumerate(self.basis) if i not in set(redundant)]
        if self.n_art:
            self.T = np.delete(self.T, range(self.art_start, self.art_start + self.n_art), axis=1)
            self.n_art = 0

    def optimize(self):
        """Run both phases; returns self.

        Raises:
            LpInfeasibleError, LpUnboundedError, LpIterationError
        """
        if self.n_art:
            self._phase_one()
        self._set_objective(self.cost)
        self._primal(self.num_cols)
        self.optimal = True
        return self

    def with_cost(self, cost):
        """Copy of an optimized tableau re-optimized for another cost vector."""
        other = self.copy()
        other.cost = [self._num(c) for c in cost]
        other._set_objective(other.cost)
        other._primal(other.num_cols)
        return other

    # -- warm restarts ----------------------------------------------------

    def add_row(self, coefs, sense, rhs):
        """Append a constraint over the structural columns (call reoptimize() afterwards)."""
        if sense == EQ:
            self.add_row(coefs, LE, rhs)
            self.add_row(coefs, GE, rhs)
            return
        row = self._dense(coefs)
        rhs = self._num(rhs)
        if sense == GE:
            row, rhs = -row, -rhs
        elif sense != LE:
            raise ValueError(f"unknown constraint sense '{sense}'")

        slack = self.num_cols
        fill = Fraction(0) if self.exact else 0.0
        self.T = np.insert(self.T, slack, fill, axis=1)
        full = self._zeros(self.T.shape[1])
        full[:self.n] = row
        full[slack] = 1
        full[-1] = rhs
        factors = full[self.basis]
        if np.any(factors != 0):
            full = full - factors.dot(self.T[:-1])
            if not self.exact:
                full[self.basis] = 0.0
        self.T = np.vstack([self.T[:-1], full, self.T[-1:]])
        self.basis.append(slack)
        self.optimal = False

    def reoptimize(self):
        """Restore optimality after add_row with the dual simplex."""
        self._dual()
        self._primal(self.num_cols)
        self.optimal = True
        return self

    # -- solution ---------------------------------------------------------

    @property
    def objective(self):
        return -self.T[-1, -1]

    def values(self):
        """Values of the structural variables."""
        x = self._zeros(self.n)
        for i, col in enumerate(self.basis):
            if col < self.n:
                x[col] = self.T[i, -1]
        return x


def solve(cost, rows, senses, rhs, exact=False):
    """Minimize cost.x over the rows with x >= 0; returns the optimal Tableau."""
    return Tableau(cost, rows, senses, rhs, exact=exact).optimize()
