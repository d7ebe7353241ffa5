import json
from fractions import Fraction

import pytest

from src.exceptions import InfeasibleFlowError, InstanceError, SelectionError
from src.instance import (INCOMING, OUTGOING, GraphArc, Multigraph, NonPathArc, PathInstance, boundary_arc_id,
                          check_a1, extract_path, generate_lotsizing, instance_from_dict, instance_to_dict,
                          is_feasible, load_instance, merged_mode, merged_sentinel, normalize_assumptions,
                          push_dummy_supply, save_instance, to_multigraph, transform_supply, window_view)
from src.mincut import make_selection, maxflow_solution


class TestPathInstance:
    def test_boundary_convention(self, example1):
        assert example1.u(0) == 0 and example1.b(0) == 0
        assert example1.u(4) == 0 and example1.b(4) == 0
        assert example1.u(2) == 10 and example1.b(1) == 15
        assert example1.total_demand() == 40
        assert example1.total_demand(2, 3) == 20

    def test_zero_path_capacity_is_rejected(self):
        with pytest.raises(InstanceError, match="A.2"):
            PathInstance(2, [1, 1], [0], [1], [])

    def test_duplicate_arc_ids_are_rejected(self):
        arcs = [NonPathArc(1, 1, INCOMING, 5), NonPathArc(1, 2, INCOMING, 5)]
        with pytest.raises(InstanceError, match="duplicate"):
            PathInstance(2, [1, 1], [1], [1], arcs)

    def test_empty_path_is_rejected(self):
        with pytest.raises(InstanceError):
            PathInstance(0, [], [], [], [])

    def test_arc_lookup(self, example1):
        assert [a.id for a in example1.incoming(2)] == [2]
        assert example1.outgoing(2) == []
        assert example1.next_arc_id() == 5


class TestGeneration:
    def test_generated_instance_shape(self):
        inst = generate_lotsizing(50, 100, 2, seed=1)
        assert inst.n == 50
        assert len(inst.arcs) == 50
        assert all(a.incoming and a.capacity >= 1 for a in inst.arcs)
        assert all(a.fixed_cost == 100 * a.var_cost for a in inst.arcs)
        assert all(0 <= d <= 30 for d in inst.demand)

    def test_generation_is_deterministic(self):
        assert generate_lotsizing(10, 200, 5, seed=3) == generate_lotsizing(10, 200, 5, seed=3)
        assert generate_lotsizing(10, 200, 5, seed=3) != generate_lotsizing(10, 200, 5, seed=4)

    def test_rerun_writes_identical_files(self, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        save_instance(generate_lotsizing(8, 100, 5, seed=2), first)
        save_instance(generate_lotsizing(8, 100, 5, seed=2), second)
        assert first.read_bytes() == second.read_bytes()

    def test_saved_file_parses_back(self, tmp_path, example1):
        path = tmp_path / "ex.json"
        save_instance(example1, path)
        assert load_instance(path) == example1

    def test_bad_parameters(self):
        with pytest.raises(InstanceError):
            generate_lotsizing(0, 100, 5, seed=1)
        with pytest.raises(InstanceError):
            generate_lotsizing(5, 100, 0, seed=1)


class TestSerialization:
    def test_rationals_are_strings(self):
        inst = PathInstance(1, [3], [], [], [NonPathArc(1, 1, INCOMING, 5, Fraction(7, 2), Fraction(1, 3))])
        data = instance_to_dict(inst)
        assert data["arcs"][0]["fixed_cost"] == "7/2"
        assert instance_from_dict(json.loads(json.dumps(data))).arcs[0].var_cost == Fraction(1, 3)

    def test_missing_key(self):
        with pytest.raises(InstanceError, match="malformed"):
            instance_from_dict({"n": 1, "demand": [1]})

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(InstanceError):
            load_instance(path)


class TestAssumptions:
    def test_capacity_clipped_to_demand_bound(self):
        inst = PathInstance(1, [5], [], [], [NonPathArc(1, 1, INCOMING, 10**9)])
        clipped, report = normalize_assumptions(inst)
        assert clipped.arcs[0].capacity == 5
        assert report.clipped == {1: (10**9, 5)}

    def test_arc_with_zero_bound_is_removed(self):
        # no demand and no outgoing arc: nothing can ever enter node 1
        inst = PathInstance(1, [0], [], [], [NonPathArc(1, 1, INCOMING, 5)])
        clipped, report = normalize_assumptions(inst)
        assert not clipped.arcs
        assert report.removed == {1: 5}
        assert report.clipped == {}
        assert len(report) == 1
        assert is_feasible(clipped)

    def test_local_bound(self):
        # b_1 + u_2 + d_2 + c(E_2-) = 4 + 6 + 7 + 0 = 17
        arcs = [NonPathArc(1, 2, INCOMING, 1000), NonPathArc(2, 1, INCOMING, 1000), NonPathArc(3, 3, INCOMING, 1000)]
        inst = PathInstance(3, [20, 7, 20], [9, 6], [4, 8], arcs)
        clipped, _ = normalize_assumptions(inst)
        assert clipped.arc_by_id[1].capacity == 17

    def test_clipping_preserves_feasibility(self, small_instances):
        for inst in small_instances(30, seed=11):
            clipped, _ = normalize_assumptions(inst)
            assert is_feasible(clipped) == is_feasible(inst)

    def test_nothing_to_clip(self, example1):
        clipped, report = normalize_assumptions(example1)
        assert not report
        assert clipped == example1

    def test_a1(self):
        arcs = [NonPathArc(1, 1, INCOMING, 5), NonPathArc(2, 1, INCOMING, 2)]
        inst = PathInstance(1, [4], [], [], arcs)
        assert check_a1(inst) == {1: False, 2: True}

    def test_negative_demand_needs_transform(self):
        inst = PathInstance(2, [-3, 5], [5], [5], [NonPathArc(1, 2, INCOMING, 5)])
        with pytest.raises(InstanceError):
            is_feasible(inst)
        moved = transform_supply(inst)
        assert moved.demand == (0, 5)
        dummy = moved.dummy_arcs[0]
        assert (dummy.node, dummy.capacity, dummy.id) == (1, 3, 2)
        assert check_a1(moved)[dummy.id] is False


class TestWindows:
    def test_interior_window_boundary_arcs(self, example1):
        view = window_view(example1, 2, 3).instance
        ids = {a.id: a for a in view.arcs}
        assert ids[boundary_arc_id("i", 1)].direction == INCOMING and ids[boundary_arc_id("i", 1)].capacity == 20
        assert ids[boundary_arc_id("r", 1)].direction == OUTGOING and ids[boundary_arc_id("r", 1)].capacity == 15
        assert ids[boundary_arc_id("i", 3)].direction == OUTGOING and ids[boundary_arc_id("i", 3)].capacity == 15
        assert ids[boundary_arc_id("r", 3)].direction == INCOMING and ids[boundary_arc_id("r", 3)].capacity == 10
        assert view.demand == (10, 10)
        assert view.fwd_cap == (10,)

    def test_out_of_range(self, example1):
        with pytest.raises(SelectionError):
            window_view(example1, 3, 5)

    def test_merged_single_node_is_identity(self, example1):
        assert merged_mode(example1, (2, 2)) == example1

    def test_merged_window(self, example1):
        merged = merged_mode(example1, (1, 3))
        big = merged_sentinel(example1, 1, 3)
        assert merged.fwd_cap == (big, big, 15)
        assert merged.bwd_cap == (big, big, 10)


class TestGraphs:
    def test_extract_path(self):
        g = Multigraph(
            nodes=["a", "b", "c", "s"],
            arcs=[
                GraphArc("a", "b", 5, var_cost=1),
                GraphArc("a", "b", 3, var_cost=2),
                GraphArc("b", "a", 4),
                GraphArc("b", "c", 6),
                GraphArc("c", "b", 2),
                GraphArc("s", "b", 7, fixed_cost=3, var_cost=1, id=10),
                GraphArc("a", "c", 6, fixed_cost=5, var_cost=2),
            ],
            demand={"a": 1, "b": 2, "c": 3},
        )
        inst = extract_path(g, ["a", "b", "c"])
        assert inst.fwd_cap == (8, 6)
        assert inst.bwd_cap == (4, 2)
        assert inst.fwd_cost[0] == 1
        assert inst.demand == (1, 2, 3)
        by_node = sorted((a.node, a.direction, a.capacity) for a in inst.arcs)
        assert by_node == [(1, OUTGOING, 6), (2, INCOMING, 7), (3, INCOMING, 6)]
        chord_in = next(a for a in inst.arcs if a.node == 3)
        assert chord_in.fixed_cost == 5

    def test_path_must_be_distinct(self):
        g = Multigraph(nodes=[1, 2], arcs=[GraphArc(1, 2, 1), GraphArc(2, 1, 1)])
        with pytest.raises(InstanceError):
            extract_path(g, [1, 1])

    def test_round_trip(self, example1):
        back = extract_path(to_multigraph(example1), range(1, example1.n + 1))
        assert instance_to_dict(back) == instance_to_dict(example1)


class TestDummySupply:
    def make(self):
        inst = PathInstance(2, [-4, 6], [10], [10],
                            [NonPathArc(1, 2, INCOMING, 10), NonPathArc(2, 1, OUTGOING, 5)])
        return transform_supply(inst)

    def test_push_fills_dummy_arcs(self):
        inst = self.make()
        dummy = inst.dummy_arcs[0]
        sel = make_selection(inst, (1, 2), {1})
        value, flows = maxflow_solution(inst, sel, honor_dummies=False)
        pushed = push_dummy_supply(inst, sel, flows)
        assert pushed.y[dummy.id] == dummy.capacity
        objective = sum(pushed.y.get(t, 0) for t in sel.s_plus) - pushed.y.get(2, 0)
        assert objective == value == 6
        check = type(pushed)(y=pushed.y, x={a.id: 1 for a in inst.arcs}, i=pushed.i, r=pushed.r)
        assert check.violations(inst) == []

    def test_unabsorbable_supply(self):
        inst = self.make()
        sel = make_selection(inst, (1, 2), {1}, l_minus={2})
        _, flows = maxflow_solution(inst, sel, honor_dummies=False)
        flows.y[inst.dummy_arcs[0].id] = 0
        # node 2 already consumes its demand through arc 1, so nothing can take the supply
        flows.y[1] = 6
        flows.i.clear()
        flows.r.clear()
        with pytest.raises(InfeasibleFlowError):
            push_dummy_supply(inst, sel, flows)
