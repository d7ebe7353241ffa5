"""
LP model, branch-and-cut driver and exact MIP oracle for path instances.

The model is the arc formulation with x relaxed to [0, 1]:

    min  sum f_t x_t + p_t y_t + sum h_e i_e + g_e r_e
    s.t. flow balance at every node, y_t <= c_t x_t, i_e <= u_e, r_e <= b_e.

Cuts found by separation are appended to the root tableau and re-optimized with
the dual simplex. Open nodes of the search tree store only their bound and
the rows added on top of the root, and the node with the smallest bound is
expanded first. Every explored LP solution is rounded up into a feasible
incumbent candidate.
"""

from __future__ import annotations

import csv
import heapq
import io
import itertools
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from tqdm import tqdm

from .config import (
    CUT_DEPTH,
    CUT_MODE,
    CUT_ROUNDS,
    INT_TOL,
    MAX_CUTS_PER_ROUND,
    MAX_PATH_FRAC,
    NODE_LIMIT,
    SEP_EPS,
    SEPARATE_IN_TREE,
    SHOW_PROGRESS,
    TIME_LIMIT,
)
from .exceptions import InstanceError, LpInfeasibleError
from .instance import check_a1
from .polytope import FlowColumns, pattern_rows, point_from_values, x_patterns
from .separation import NONE, FractionalPoint, SeparationConfig, separate
from .simplex import EQ, GE, LE, Tableau

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
TIME_LIMIT_HIT = "time_limit"
NODE_LIMIT_HIT = "node_limit"

ORACLE_MAX_ARCS = 12


class LpModel:
    """Column registry, objective and rows of the LP relaxation of one instance."""

    def __init__(self, inst, fix_a1=True):
        self.inst = inst
        arcs = sorted(inst.arcs, key=lambda a: a.id)
        self.keys = [("y", a.id) for a in arcs] + [("x", a.id) for a in arcs]
        self.keys += [("i", e) for e in range(1, inst.n)] + [("r", e) for e in range(1, inst.n)]
        self.index = {key: col for col, key in enumerate(self.keys)}

        self.cost = [0.0] * len(self.keys)
        for a in arcs:
            self.cost[self.index[("y", a.id)]] = float(a.var_cost)
            self.cost[self.index[("x", a.id)]] = float(a.fixed_cost)
        for e in range(1, inst.n):
            self.cost[self.index[("i", e)]] = float(inst.fwd_cost[e - 1])
            self.cost[self.index[("r", e)]] = float(inst.bwd_cost[e - 1])

        self.rows, self.senses, self.rhs = [], [], []
        self.cuts = []
        self._build(arcs, fix_a1)

    def _row(self, coefs, sense, rhs):
        self.rows.append(coefs)
        self.senses.append(sense)
        self.rhs.append(float(rhs))

    def _build(self, arcs, fix_a1):
        inst = self.inst
        for j in range(1, inst.n + 1):
            row = {}
            for a in inst.incoming(j):
                row[self.index[("y", a.id)]] = 1.0
            for a in inst.outgoing(j):
                row[self.index[("y", a.id)]] = -1.0
            if j > 1:
                row[self.index[("i", j - 1)]] = 1.0
                row[self.index[("r", j - 1)]] = -1.0
            if j < inst.n:
                row[self.index[("i", j)]] = -1.0
                row[self.index[("r", j)]] = 1.0
            self._row(row, EQ, inst.d(j))

        fixed_open = set()
        if fix_a1 and all(d >= 0 for d in inst.demand):
            fixed_open = {t for t, ok in check_a1(inst).items() if not ok}
        for a in arcs:
            y, x = self.index[("y", a.id)], self.index[("x", a.id)]
            self._row({y: 1.0, x: -float(a.capacity)}, LE, 0)
            self._row({x: 1.0}, LE, 1)
            if a.is_dummy_supply:
                self._row({y: 1.0}, GE, a.capacity)
            if a.is_dummy_supply or a.id in fixed_open:
                self._row({x: 1.0}, GE, 1)
        self.fixed_open = frozenset(fixed_open)

        for e in range(1, inst.n):
            self._row({self.index[("i", e)]: 1.0}, LE, inst.u(e))
            self._row({self.index[("r", e)]: 1.0}, LE, inst.b(e))

    def cut_row(self, ineq):
        """Sparse row of a LinearInequality over the model columns."""
        return {self.index[(kind, idx)]: float(coef) for kind, idx, coef in ineq.terms()}

    def add_cut(self, ineq):
        self.cuts.append(ineq)
        self._row(self.cut_row(ineq), LE, ineq.rhs)

    def point(self, values):
        """FractionalPoint from a column vector."""
        pt = FractionalPoint()
        for (kind, idx), value in zip(self.keys, values):
            getattr(pt, kind)[idx] = float(value)
        return pt


@dataclass
class LpSolution:
    objective: float
    point: FractionalPoint
    tableau: Tableau


def solve_lp(model):
    """
    Optimal basic solution of the model's LP relaxation.

    Raises:
        LpInfeasibleError: If the rows admit no solution.
        LpUnboundedError: If the objective is unbounded below.
    """
    tableau = Tableau(model.cost, model.rows, model.senses, model.rhs).optimize()
    return LpSolution(float(tableau.objective), model.point(tableau.values()), tableau)


@dataclass
class SolverConfig:
    mode: str = CUT_MODE
    cut_rounds: int = CUT_ROUNDS
    cut_depth: int = CUT_DEPTH
    separate_in_tree: bool = SEPARATE_IN_TREE
    time_limit: float = TIME_LIMIT
    node_limit: int = NODE_LIMIT
    max_path_frac: float = MAX_PATH_FRAC
    max_path_len: int | None = None
    max_cuts: int = MAX_CUTS_PER_ROUND
    eps: float = SEP_EPS
    int_tol: float = INT_TOL
    show_progress: bool = SHOW_PROGRESS

    def separation_config(self):
        return SeparationConfig(
            max_path_frac=self.max_path_frac,
            max_path_len=self.max_path_len,
            eps=self.eps,
            max_cuts=self.max_cuts,
            mode=self.mode,
            verbose=self.show_progress,
        )


CSV_FIELDS = [
    "status", "mode", "z_init", "z_root", "z_ub", "z_lb", "init_gap", "root_gap",
    "gap_imp", "end_gap", "cuts_added", "root_rounds", "nodes_explored", "root_time", "wall_time",
]


def _gap(ub, value):
    if ub is None or value is None or abs(ub) < 1e-9:
        return None
    return 100.0 * (ub - value) / ub


@dataclass
class BranchAndCutReport:
    """Bounds and counters of one branch-and-cut run; gaps are derived from the bounds."""

    status: str
    mode: str
    z_init: float | None = None
    z_root: float | None = None
    z_ub: float | None = None
    z_lb: float | None = None
    cuts_added: int = 0
    root_rounds: int = 0
    nodes_explored: int = 0
    root_time: float = 0.0
    wall_time: float = 0.0
    incumbent: dict = field(default_factory=dict, repr=False)

    @property
    def init_gap(self):
        return _gap(self.z_ub, self.z_init)

    @property
    def root_gap(self):
        return _gap(self.z_ub, self.z_root)

    @property
    def gap_imp(self):
        """Share of the initial gap closed at the root, in percent (None when there was no gap)."""
        init, root = self.init_gap, self.root_gap
        if init is None or root is None or abs(init) < 1e-9:
            return None
        return 100.0 * (init - root) / init

    @property
    def end_gap(self):
        """(z_UB - z_LB) / z_UB; 0 when solved to optimality."""
        if self.z_ub is None or self.z_lb is None or abs(self.z_ub) < 1e-9:
            return None
        return max(0.0, (self.z_ub - self.z_lb) / self.z_ub)

    def to_dict(self):
        data = {key: value for key, value in asdict(self).items() if key != "incumbent"}
        for name in ("init_gap", "root_gap", "gap_imp", "end_gap"):
            data[name] = getattr(self, name)
        return data

    def csv_row(self):
        data = self.to_dict()
        return [data[name] for name in CSV_FIELDS]

    def to_csv(self):
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerow(CSV_FIELDS)
        writer.writerow(self.csv_row())
        return buffer.getvalue()


def _branch_column(model, pt, int_tol):
    """Most fractional x column (ties to the lowest arc id), or None if x is integral."""
    best, best_frac = None, int_tol
    for t in sorted(pt.x):
        value = pt.x[t]
        frac = min(value - int(value), 1 - (value - int(value)))
        if frac > best_frac:
            best, best_frac = t, frac
    return best


def _cut_loop(inst, model, tableau, pool, cfg, rounds):
    """Separate and re-optimize until no new violated cut or the round limit; returns (tableau, rounds used, cuts added)."""
    sep_cfg = cfg.separation_config()
    added = []
    used = 0
    for _ in range(rounds):
        pt = model.point(tableau.values())
        fresh = []
        for cut in separate(inst, pt, sep_cfg):
            key = cut.normalized()
            if key not in pool:
                pool.add(key)
                fresh.append(cut)
        if not fresh:
            break
        used += 1
        for cut in fresh:
            model.cuts.append(cut)
            tableau.add_row(model.cut_row(cut), LE, cut.rhs)
        tableau.reoptimize()
        added.extend(fresh)
    return tableau, used, added


def round_up(model, pt, objective, int_tol=INT_TOL):
    """
    Feasible point from an LP solution by opening every arc that carries flow.

    Arcs with y* > 0 or x* at 1 get x = 1 and every other x goes to 0; y, i and r
    are kept. Since y <= c x* <= c x still holds, the point is feasible and its
    cost is the LP objective shifted by the fixed costs of the changed x.

    Returns:
        tuple: (cost, FractionalPoint)
    """
    x = {}
    cost = objective
    for t, value in pt.x.items():
        arc = model.inst.arc_by_id[t]
        opened = pt.y.get(t, 0.0) > 1e-9 or value >= 1.0 - int_tol
        x[t] = 1.0 if opened else 0.0
        cost += float(arc.fixed_cost) * (x[t] - value)
    return cost, FractionalPoint(dict(pt.y), x, dict(pt.i), dict(pt.r))


def branch_and_cut(inst, cfg=None):
    """
    Solve an instance by LP-based branch-and-cut.

    The root LP is strengthened by rounds of separation until no new violated
    cut is found or cfg.cut_rounds is reached. The tree then branches on the
    most fractional x and expands the open node with the smallest bound. Each
    explored LP solution is rounded up into an incumbent candidate. Cuts are
    separated again in nodes of depth <= cfg.cut_depth when
    cfg.separate_in_tree is set.

    Open nodes keep their bound and the extra rows (branchings and node cuts)
    on top of the root tableau; the tableau itself is rebuilt when the node is
    expanded.

    Returns:
        BranchAndCutReport. Hitting the time or node limit is reported through
        the status and a positive end gap, not raised.

    Raises:
        InstanceError: If some demand is negative (run transform_supply first).
    """
    cfg = cfg or SolverConfig()
    if any(d < 0 for d in inst.demand):
        raise InstanceError("branch-and-cut needs nonnegative demands (run transform_supply first)")
    start = time.perf_counter()
    report = BranchAndCutReport(INFEASIBLE, cfg.mode)

    model = LpModel(inst)
    try:
        root = solve_lp(model)
    except LpInfeasibleError:
        report.wall_time = time.perf_counter() - start
        return report
    report.z_init = root.objective

    pool = set()
    root_tableau = root.tableau
    if cfg.mode != NONE:
        root_tableau, report.root_rounds, cuts = _cut_loop(inst, model, root_tableau, pool, cfg, cfg.cut_rounds)
        report.cuts_added = len(cuts)
    report.z_root = float(root_tableau.objective)
    report.root_time = time.perf_counter() - start

    counter = itertools.count()
    heap = [(report.z_root, next(counter), 0, ())]
    incumbent_value, incumbent = None, None
    status = OPTIMAL

    def offer(value, pt):
        nonlocal incumbent_value, incumbent
        if incumbent_value is None or value < incumbent_value - 1e-9:
            incumbent_value, incumbent = value, pt

    offer(*round_up(model, model.point(root_tableau.values()), report.z_root, cfg.int_tol))

    progress = tqdm(desc="🌳 Branch-and-cut", unit="node", disable=not cfg.show_progress, leave=False)
    try:
        while heap:
            bound, _, depth, rows = heap[0]
            if incumbent_value is not None and bound >= incumbent_value - 1e-9 * max(1.0, abs(incumbent_value)):
                heap.clear()
                break
            if time.perf_counter() - start > cfg.time_limit:
                status = TIME_LIMIT_HIT
                break
            if report.nodes_explored >= cfg.node_limit:
                status = NODE_LIMIT_HIT
                break
            heapq.heappop(heap)
            report.nodes_explored += 1
            progress.update(1)

            node = root_tableau
            if rows:
                node = root_tableau.copy()
                for coefs, sense, rhs in rows:
                    node.add_row(coefs, sense, rhs)
                try:
                    node.reoptimize()
                except LpInfeasibleError:
                    continue
            pt = model.point(node.values())
            t = _branch_column(model, pt, cfg.int_tol)
            if t is None:
                offer(float(node.objective), pt)
                progress.set_postfix_str(f"lb={bound:.1f} ub={incumbent_value:.1f} cuts={report.cuts_added}")
                continue
            offer(*round_up(model, pt, float(node.objective), cfg.int_tol))

            col = model.index[("x", t)]
            for sense, rhs in ((LE, 0), (GE, 1)):
                child_rows = rows + (({col: 1.0}, sense, rhs),)
                child = node.copy()
                child.add_row({col: 1.0}, sense, rhs)
                try:
                    child.reoptimize()
                    if cfg.separate_in_tree and cfg.mode != NONE and depth + 1 <= cfg.cut_depth:
                        child, _, cuts = _cut_loop(inst, model, child, pool, cfg, cfg.cut_rounds)
                        report.cuts_added += len(cuts)
                        child_rows += tuple((model.cut_row(cut), LE, cut.rhs) for cut in cuts)
                except LpInfeasibleError:
                    continue
                value = float(child.objective)
                if incumbent_value is None or value < incumbent_value:
                    heapq.heappush(heap, (value, next(counter), depth + 1, child_rows))
    finally:
        progress.close()

    report.wall_time = time.perf_counter() - start
    if incumbent_value is None:
        if status == OPTIMAL:
            report.status = INFEASIBLE
        else:
            report.status = status
            report.z_lb = heap[0][0] if heap else None
        return report

    report.status = status
    report.z_ub = incumbent_value
    report.z_lb = min(incumbent_value, heap[0][0]) if heap else incumbent_value
    report.incumbent = {"y": incumbent.y, "x": incumbent.x, "i": incumbent.i, "r": incumbent.r}
    return report


@dataclass
class OracleResult:
    optimum: Fraction | None
    point: object = None
    patterns_checked: int = 0

    @property
    def feasible(self):
        return self.optimum is not None


def mip_oracle(inst, max_arcs=ORACLE_MAX_ARCS):
    """
    Exact optimum by enumerating every open/closed pattern.

    Each pattern's continuous slice is solved with an exact rational LP and its
    fixed costs are added. Dummy supply arcs are open and carry their full
    supply.

    Returns:
        OracleResult; optimum is None when no pattern is feasible.

    Raises:
        BudgetExceededError: If the instance has more than max_arcs arcs.
    """
    columns = FlowColumns(inst)
    cost = [Fraction(0)] * len(columns)
    for a in inst.arcs:
        cost[columns.index[("y", a.id)]] = Fraction(a.var_cost)
    for e in range(1, inst.n):
        cost[columns.index[("i", e)]] = Fraction(inst.fwd_cost[e - 1])
        cost[columns.index[("r", e)]] = Fraction(inst.bwd_cost[e - 1])

    best, best_point, checked = None, None, 0
    for pattern in x_patterns(inst, max_arcs):
        checked += 1
        rows, senses, rhs = pattern_rows(inst, columns, pattern)
        for a in inst.dummy_arcs:
            rows.append({columns.index[("y", a.id)]: 1})
            senses.append(GE)
            rhs.append(a.capacity)
        try:
            tableau = Tableau(cost, rows, senses, rhs, exact=True).optimize()
        except LpInfeasibleError:
            continue
        value = tableau.objective + sum(Fraction(a.fixed_cost) * pattern[a.id] for a in inst.arcs)
        if best is None or value < best:
            best = value
            best_point = point_from_values(columns, pattern, tableau.values())
    return OracleResult(best, best_point, checked)
