import heapq

import pytest

import src.solve as solve
from src.exceptions import InstanceError
from src.instance import INCOMING, NonPathArc, PathInstance
from src.solve import (
    CSV_FIELDS,
    INFEASIBLE,
    NODE_LIMIT_HIT,
    OPTIMAL,
    BranchAndCutReport,
    LpModel,
    SolverConfig,
    branch_and_cut,
    mip_oracle,
    round_up,
    solve_lp,
)
from src.simplex import LE


def single_node(demand, *arcs):
    """One node; arcs given as (capacity, fixed cost, variable cost)."""
    return PathInstance(1, [demand], [], [], [
        NonPathArc(t, 1, INCOMING, cap, f, p) for t, (cap, f, p) in enumerate(arcs, start=1)
    ])


def quiet(**kwargs):
    return SolverConfig(show_progress=False, **kwargs)


class TestLpModel:
    def test_variable_cost_only(self):
        inst = single_node(5, (10, 0, 2))
        assert solve_lp(LpModel(inst)).objective == pytest.approx(10)

    def test_relaxed_fixed_charge(self):
        inst = single_node(5, (10, 10, 0))
        solution = solve_lp(LpModel(inst, fix_a1=False))
        assert solution.objective == pytest.approx(5)
        assert solution.point.x[1] == pytest.approx(0.5)

    def test_a1_failing_arc_is_fixed_open(self):
        inst = single_node(5, (10, 10, 0))
        model = LpModel(inst)
        assert model.fixed_open == {1}
        assert solve_lp(model).objective == pytest.approx(10)

    def test_columns(self, example1):
        model = LpModel(example1)
        assert model.keys[:4] == [("y", 1), ("y", 2), ("y", 3), ("y", 4)]
        assert len(model.keys) == 4 + 4 + 3 + 3

    def test_round_up_opens_arcs_with_flow(self):
        inst = single_node(5, (10, 10, 0), (10, 12, 0))
        model = LpModel(inst)
        lp = solve_lp(model)
        assert lp.objective == pytest.approx(5)
        cost, point = round_up(model, lp.point, lp.objective)
        assert cost == pytest.approx(10)
        assert point.x == {1: 1.0, 2: 0.0}
        assert point.y[1] == pytest.approx(5)

    def test_added_cut_is_a_row(self, example1, cover_sel):
        from src.cuts import build_path_cover

        model = LpModel(example1)
        rows = len(model.rows)
        model.add_cut(build_path_cover(example1, cover_sel))
        assert len(model.rows) == rows + 1
        assert model.rows[-1] == {model.index[("y", 2)]: 1.0, model.index[("y", 3)]: 1.0,
                                  model.index[("x", 2)]: -10.0, model.index[("x", 3)]: -10.0}


class TestBranchAndCut:
    def test_opens_cheapest_arc(self):
        inst = single_node(5, (10, 10, 0), (10, 12, 0))
        report = branch_and_cut(inst, quiet(mode="none"))
        assert report.status == OPTIMAL
        assert report.z_ub == pytest.approx(10)
        assert report.z_lb == pytest.approx(10)
        assert report.incumbent["x"][1] == pytest.approx(1)

    def test_node_limit(self):
        inst = single_node(5, (10, 10, 0), (10, 12, 0))
        report = branch_and_cut(inst, quiet(mode="none", node_limit=1))
        assert report.status == NODE_LIMIT_HIT
        assert report.z_ub == pytest.approx(10)
        assert report.z_lb == pytest.approx(6)
        assert report.nodes_explored == 1

    def test_limit_hit_at_root_keeps_rounded_incumbent(self):
        inst = single_node(5, (10, 10, 0), (10, 12, 0))
        report = branch_and_cut(inst, quiet(mode="none", node_limit=0))
        assert report.status == NODE_LIMIT_HIT
        assert report.z_ub == pytest.approx(10)
        assert report.z_lb == pytest.approx(5)
        assert report.end_gap == pytest.approx(0.5)

    def test_open_nodes_hold_rows_not_tableaux(self, monkeypatch):
        pushed = []
        push = heapq.heappush

        def record(heap, item):
            pushed.append(item)
            push(heap, item)

        monkeypatch.setattr(solve.heapq, "heappush", record)
        inst = single_node(5, (10, 10, 0), (10, 12, 0))
        report = branch_and_cut(inst, quiet(mode="none"))
        assert report.z_ub == pytest.approx(10)
        assert len(pushed) == 1
        bound, _, depth, rows = pushed[0]
        assert bound == pytest.approx(6)
        assert depth == 1
        assert rows == (({LpModel(inst).index[("x", 1)]: 1.0}, LE, 0),)

    def test_infeasible(self):
        inst = single_node(10, (5, 1, 1))
        assert branch_and_cut(inst, quiet()).status == INFEASIBLE
        assert mip_oracle(inst).optimum is None
        assert not mip_oracle(inst).feasible

    def test_negative_demand_rejected(self):
        inst = PathInstance(2, [-3, 5], [10], [10], [NonPathArc(1, 2, INCOMING, 10)])
        with pytest.raises(InstanceError):
            branch_and_cut(inst, quiet())

    def test_cuts_raise_the_root_bound(self, small_instances):
        for inst in small_instances(10, seed=31, n_max=4, lot_sizing=True):
            plain = branch_and_cut(inst, quiet(mode="none", node_limit=0))
            cut = branch_and_cut(inst, quiet(mode="spi", node_limit=0))
            if plain.z_root is None:
                continue
            assert cut.z_root >= plain.z_root - 1e-6

    def test_matches_oracle(self, small_instances):
        for inst in small_instances(12, seed=23, n_max=3, max_arcs=7):
            oracle = mip_oracle(inst)
            for mode in ("spi", "mspi", "none"):
                report = branch_and_cut(inst, quiet(mode=mode))
                if oracle.optimum is None:
                    assert report.z_ub is None
                else:
                    assert report.status == OPTIMAL
                    assert report.z_ub == pytest.approx(float(oracle.optimum), abs=1e-6)

    def test_deterministic(self, example1):
        inst = PathInstance(example1.n, example1.demand, example1.fwd_cap, example1.bwd_cap,
                            [NonPathArc(a.id, a.node, INCOMING, a.capacity, 30, 1) for a in example1.arcs],
                            [1, 1, 1], [2, 2, 2])
        first = branch_and_cut(inst, quiet(mode="spi"))
        second = branch_and_cut(inst, quiet(mode="spi"))
        assert first.z_ub == second.z_ub
        assert first.cuts_added == second.cuts_added
        assert first.nodes_explored == second.nodes_explored
        assert first.z_ub == pytest.approx(float(mip_oracle(inst).optimum))


class TestReport:
    def test_gaps(self):
        report = BranchAndCutReport(OPTIMAL, "spi", z_init=50, z_root=90, z_ub=100, z_lb=100)
        assert report.init_gap == pytest.approx(50)
        assert report.root_gap == pytest.approx(10)
        assert report.gap_imp == pytest.approx(80)
        assert report.end_gap == pytest.approx(0)

    def test_no_initial_gap(self):
        report = BranchAndCutReport(OPTIMAL, "spi", z_init=100, z_root=100, z_ub=100, z_lb=100)
        assert report.gap_imp is None

    def test_missing_bounds(self):
        report = BranchAndCutReport(INFEASIBLE, "spi")
        assert report.init_gap is None
        assert report.end_gap is None

    def test_csv(self):
        report = BranchAndCutReport(OPTIMAL, "spi", z_init=50, z_root=90, z_ub=100, z_lb=100)
        lines = report.to_csv().strip().splitlines()
        assert lines[0].split(",") == CSV_FIELDS
        assert lines[1].startswith("optimal,spi,50,90,100,100")
        assert "incumbent" not in report.to_dict()


class TestOracle:
    def test_single_node(self):
        inst = single_node(5, (10, 10, 0), (10, 12, 0))
        result = mip_oracle(inst)
        assert result.optimum == 10
        assert result.patterns_checked == 4
        assert result.point.x == {1: 1, 2: 0}
