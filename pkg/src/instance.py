"""
Path instances of the capacitated fixed-charge network flow problem.

A PathInstance holds the path nodes 1..n with their demands, the forward and
backward path-arc capacities and costs, and the non-path arcs entering (E+) or
leaving (E-) individual path nodes. All capacities and demands are integers;
costs are exact Fractions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .exceptions import InfeasibleFlowError, InstanceError, SelectionError
from .flow import FlowNetwork

INCOMING = "in"
OUTGOING = "out"


@dataclass(frozen=True)
class NonPathArc:
    """An arc entering (E_j+) or leaving (E_j-) path node j.

    path_edge is only set on the boundary arcs of a window view: it names the
    path variable ('i' or 'r', edge index) the arc stands in for.
    """

    id: int
    node: int
    direction: str
    capacity: int
    fixed_cost: Fraction = Fraction(0)
    var_cost: Fraction = Fraction(0)
    is_dummy_supply: bool = False
    path_edge: tuple | None = None

    @property
    def incoming(self):
        return self.direction == INCOMING

    @property
    def is_boundary(self):
        return self.path_edge is not None


@dataclass(frozen=True)
class PathInstance:
    n: int
    demand: tuple
    fwd_cap: tuple
    bwd_cap: tuple
    arcs: tuple
    fwd_cost: tuple = ()
    bwd_cost: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "demand", tuple(int(d) for d in self.demand))
        object.__setattr__(self, "fwd_cap", tuple(int(u) for u in self.fwd_cap))
        object.__setattr__(self, "bwd_cap", tuple(int(b) for b in self.bwd_cap))
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs, key=lambda a: (a.node, a.id))))
        for name in ("fwd_cost", "bwd_cost"):
            costs = getattr(self, name) or (0,) * max(self.n - 1, 0)
            object.__setattr__(self, name, tuple(Fraction(c) for c in costs))
        self.validate()

    def validate(self):
        """Check shapes, A.2 and arc-id uniqueness.

        Raises:
            InstanceError: On the first problem found.
        """
        if self.n < 1:
            raise InstanceError("path must contain at least one node")
        if len(self.demand) != self.n:
            raise InstanceError(f"expected {self.n} demands, got {len(self.demand)}")
        for name in ("fwd_cap", "bwd_cap", "fwd_cost", "bwd_cost"):
            if len(getattr(self, name)) != self.n - 1:
                raise InstanceError(f"expected {self.n - 1} entries in {name}, got {len(getattr(self, name))}")
        for j, (u, b) in enumerate(zip(self.fwd_cap, self.bwd_cap), start=1):
            if u <= 0 or b <= 0:
                raise InstanceError(f"path edge {j} violates A.2 (u={u}, b={b})")
        seen = set()
        for arc in self.arcs:
            if arc.id in seen:
                raise InstanceError(f"duplicate arc id {arc.id}")
            seen.add(arc.id)
            if not 1 <= arc.node <= self.n:
                raise InstanceError(f"arc {arc.id} attached to node {arc.node} outside 1..{self.n}")
            if arc.direction not in (INCOMING, OUTGOING):
                raise InstanceError(f"arc {arc.id} has invalid direction '{arc.direction}'")
            if arc.capacity <= 0:
                raise InstanceError(f"arc {arc.id} violates A.2 (capacity {arc.capacity})")
            if arc.is_dummy_supply and not arc.incoming:
                raise InstanceError(f"dummy supply arc {arc.id} must be incoming")

    # Path data with the b_0 = u_0 = u_n = b_n = 0 convention

    def d(self, j):
        return self.demand[j - 1]

    def u(self, j):
        return self.fwd_cap[j - 1] if 1 <= j <= self.n - 1 else 0

    def b(self, j):
        return self.bwd_cap[j - 1] if 1 <= j <= self.n - 1 else 0

    def total_demand(self, k=1, l=None):
        l = self.n if l is None else l
        return sum(self.demand[k - 1:l])

    @cached_property
    def arc_by_id(self):
        return {arc.id: arc for arc in self.arcs}

    @cached_property
    def _by_node(self):
        incoming = {j: [] for j in range(1, self.n + 1)}
        outgoing = {j: [] for j in range(1, self.n + 1)}
        for arc in self.arcs:
            (incoming if arc.incoming else outgoing)[arc.node].append(arc)
        return incoming, outgoing

    def incoming(self, j):
        """Arcs of E_j+."""
        return self._by_node[0][j]

    def outgoing(self, j):
        """Arcs of E_j-."""
        return self._by_node[1][j]

    @property
    def e_plus(self):
        return [arc for arc in self.arcs if arc.incoming]

    @property
    def e_minus(self):
        return [arc for arc in self.arcs if not arc.incoming]

    @property
    def dummy_arcs(self):
        return [arc for arc in self.arcs if arc.is_dummy_supply]

    def next_arc_id(self):
        return max((arc.id for arc in self.arcs), default=0) + 1


@dataclass
class FeasiblePoint:
    """A point (y, x, i, r) of the mixed-integer set; i and r are keyed by path edge."""

    y: dict = field(default_factory=dict)
    x: dict = field(default_factory=dict)
    i: dict = field(default_factory=dict)
    r: dict = field(default_factory=dict)

    def violations(self, inst, tol=0):
        """List the constraints of the formulation this point breaks (empty when feasible)."""
        problems = []
        for arc in inst.arcs:
            y = self.y.get(arc.id, 0)
            x = self.x.get(arc.id, 0)
            if y < -tol or y > arc.capacity * x + tol:
                problems.append(f"arc {arc.id}: y={y} outside [0, {arc.capacity}*x={arc.capacity * x}]")
        for j in range(1, inst.n):
            if not -tol <= self.i.get(j, 0) <= inst.u(j) + tol:
                problems.append(f"i_{j}={self.i.get(j, 0)} outside [0, {inst.u(j)}]")
            if not -tol <= self.r.get(j, 0) <= inst.b(j) + tol:
                problems.append(f"r_{j}={self.r.get(j, 0)} outside [0, {inst.b(j)}]")
        for j in range(1, inst.n + 1):
            balance = (
                self.i.get(j - 1, 0) - self.r.get(j - 1, 0)
                + sum(self.y.get(a.id, 0) for a in inst.incoming(j))
                - sum(self.y.get(a.id, 0) for a in inst.outgoing(j))
                - self.i.get(j, 0) + self.r.get(j, 0)
            )
            if abs(balance - inst.d(j)) > tol:
                problems.append(f"node {j}: balance {balance} != demand {inst.d(j)}")
        return problems


# ---------------------------------------------------------------------------
# General graphs


@dataclass(frozen=True)
class GraphArc:
    tail: object
    head: object
    capacity: int
    fixed_cost: Fraction = Fraction(0)
    var_cost: Fraction = Fraction(0)
    id: int | None = None


@dataclass
class Multigraph:
    nodes: list
    arcs: list
    demand: dict = field(default_factory=dict)


def extract_path(g, path_nodes):
    """
    Build the path relaxation of a network around a designated node sequence.

    Arcs between consecutive path nodes become path arcs (parallel ones are
    merged by summing capacities, keeping the cheapest unit cost). Arcs with one
    endpoint on the path become non-path arcs. Chords (i, j) with |i - j| > 1 are
    replaced by an outgoing copy at i and an incoming copy at j, both with the
    chord's capacity; the incoming copy carries the costs.

    Raises:
        InstanceError: Empty or repeated path, unknown path nodes, or a path
            edge left without capacity.
    """
    path_nodes = list(path_nodes)
    if not path_nodes:
        raise InstanceError("path must contain at least one node")
    if len(set(path_nodes)) != len(path_nodes):
        raise InstanceError("path nodes must be distinct")
    known = set(g.nodes)
    missing = [v for v in path_nodes if v not in known]
    if missing:
        raise InstanceError(f"path nodes not in graph: {missing}")

    pos = {v: idx for idx, v in enumerate(path_nodes, start=1)}
    n = len(path_nodes)
    fwd_cap, bwd_cap = [0] * (n - 1), [0] * (n - 1)
    fwd_cost, bwd_cost = [None] * (n - 1), [None] * (n - 1)
    arcs = []
    used_ids = {a.id for a in g.arcs if a.id is not None}
    next_id = max(used_ids, default=0) + 1

    def new_id(arc):
        nonlocal next_id
        if arc.id is not None:
            return arc.id
        next_id += 1
        return next_id - 1

    for arc in g.arcs:
        i, j = pos.get(arc.tail), pos.get(arc.head)
        if i is not None and j is not None:
            if j == i + 1:
                fwd_cap[i - 1] += arc.capacity
                cost = Fraction(arc.var_cost)
                fwd_cost[i - 1] = cost if fwd_cost[i - 1] is None else min(fwd_cost[i - 1], cost)
            elif i == j + 1:
                bwd_cap[j - 1] += arc.capacity
                cost = Fraction(arc.var_cost)
                bwd_cost[j - 1] = cost if bwd_cost[j - 1] is None else min(bwd_cost[j - 1], cost)
            elif i != j:
                arcs.append(NonPathArc(new_id(arc), i, OUTGOING, arc.capacity))
                arcs.append(NonPathArc(next_id, j, INCOMING, arc.capacity,
                                       Fraction(arc.fixed_cost), Fraction(arc.var_cost)))
                next_id += 1
        elif j is not None:
            arcs.append(NonPathArc(new_id(arc), j, INCOMING, arc.capacity,
                                   Fraction(arc.fixed_cost), Fraction(arc.var_cost)))
        elif i is not None:
            arcs.append(NonPathArc(new_id(arc), i, OUTGOING, arc.capacity,
                                   Fraction(arc.fixed_cost), Fraction(arc.var_cost)))

    return PathInstance(
        n=n,
        demand=[g.demand.get(v, 0) for v in path_nodes],
        fwd_cap=fwd_cap,
        bwd_cap=bwd_cap,
        arcs=arcs,
        fwd_cost=[c or 0 for c in fwd_cost],
        bwd_cost=[c or 0 for c in bwd_cost],
    )


def to_multigraph(inst):
    """Inverse of extract_path for path-shaped networks (no chords)."""
    nodes = list(range(1, inst.n + 1))
    arcs = []
    for j in range(1, inst.n):
        arcs.append(GraphArc(j, j + 1, inst.u(j), var_cost=inst.fwd_cost[j - 1]))
        arcs.append(GraphArc(j + 1, j, inst.b(j), var_cost=inst.bwd_cost[j - 1]))
    for arc in sorted(inst.arcs, key=lambda a: a.id):
        outside = ("ext", arc.id)
        nodes.append(outside)
        tail, head = (outside, arc.node) if arc.incoming else (arc.node, outside)
        arcs.append(GraphArc(tail, head, arc.capacity, arc.fixed_cost, arc.var_cost, arc.id))
    return Multigraph(nodes, arcs, {j: inst.d(j) for j in range(1, inst.n + 1)})


# ---------------------------------------------------------------------------
# Assumptions


@dataclass
class ClipReport:
    """Arcs whose capacity normalize_assumptions lowered (id -> (old, new)) and arcs it removed (id -> old)."""

    clipped: dict = field(default_factory=dict)
    removed: dict = field(default_factory=dict)

    def __bool__(self):
        return bool(self.clipped or self.removed)

    def __len__(self):
        return len(self.clipped) + len(self.removed)


def capacity_bound(inst, arc):
    """Smallest of the A.3/A.4 (incoming) or A.5 (outgoing) bounds for an arc."""
    j = arc.node
    if arc.incoming:
        a3 = inst.total_demand() + sum(a.capacity for a in inst.e_minus)
        a4 = (inst.b(j - 1) + inst.u(j) + max(inst.d(j), 0)
              + sum(a.capacity for a in inst.outgoing(j)))
        return min(a3, a4)
    return (inst.b(j) + inst.u(j - 1) + max(-inst.d(j), 0)
            + sum(a.capacity for a in inst.incoming(j)))


def normalize_assumptions(inst):
    """
    Clip every non-path arc capacity to its A.3-A.5 bound.

    Clipping one arc can tighten another arc's bound, so passes repeat until
    nothing changes. An arc whose bound is 0 can never carry flow and is
    removed (A.2 rules out zero capacities). Dummy supply arcs keep their fixed
    flow. A.1 is not repaired (see check_a1).

    Returns:
        tuple: (normalized PathInstance, ClipReport)
    """
    report = ClipReport()
    current = inst
    while True:
        changed = False
        arcs = []
        for arc in current.arcs:
            new_cap = arc.capacity
            if not arc.is_dummy_supply:
                new_cap = min(arc.capacity, capacity_bound(current, arc))
            if new_cap <= 0:
                changed = True
                report.removed[arc.id] = report.clipped.pop(arc.id, (arc.capacity, None))[0]
                continue
            if new_cap != arc.capacity:
                changed = True
                old = report.clipped.get(arc.id, (arc.capacity, None))[0]
                report.clipped[arc.id] = (old, new_cap)
                arc = replace(arc, capacity=new_cap)
            arcs.append(arc)
        if not changed:
            return current, report
        current = replace(current, arcs=tuple(arcs))


def _feasibility_network(inst, closed=()):
    """Flow network whose lower-bounded flows are exactly the points of P with the given arcs closed."""
    source, sink = 0, inst.n + 1
    net = FlowNetwork(inst.n + 2)
    for j in range(1, inst.n + 1):
        net.add_edge(j, sink, inst.d(j), lower=inst.d(j))
        if j < inst.n:
            net.add_edge(j, j + 1, inst.u(j))
            net.add_edge(j + 1, j, inst.b(j))
    for arc in inst.arcs:
        if arc.id in closed:
            continue
        if arc.incoming:
            net.add_edge(source, arc.node, arc.capacity, lower=arc.capacity if arc.is_dummy_supply else 0)
        else:
            net.add_edge(arc.node, sink, arc.capacity)
    net.add_edge(sink, source, inst.total_demand() + sum(a.capacity for a in inst.arcs) + 1)
    return net, source, sink


def is_feasible(inst, closed=()):
    """True iff the instance has a feasible flow with the given arcs closed."""
    if any(d < 0 for d in inst.demand):
        raise InstanceError("feasibility checks need nonnegative demands (run transform_supply first)")
    net, source, sink = _feasibility_network(inst, closed)
    return net.feasible(source, sink)


def check_a1(inst):
    """
    Check assumption A.1 arc by arc.

    Returns:
        dict: arc id -> True iff the instance stays feasible with that arc closed.
            Dummy supply arcs can never close and always report False.
    """
    return {
        arc.id: (not arc.is_dummy_supply) and is_feasible(inst, closed={arc.id})
        for arc in inst.arcs
    }


# ---------------------------------------------------------------------------
# Negative demands


def transform_supply(inst):
    """Replace every negative demand by a dummy incoming arc carrying that supply."""
    if all(d >= 0 for d in inst.demand):
        return inst
    next_id = inst.next_arc_id()
    arcs = list(inst.arcs)
    demand = list(inst.demand)
    for j in range(1, inst.n + 1):
        if demand[j - 1] < 0:
            arcs.append(NonPathArc(next_id, j, INCOMING, -demand[j - 1], is_dummy_supply=True))
            demand[j - 1] = 0
            next_id += 1
    return replace(inst, demand=tuple(demand), arcs=tuple(arcs))


def push_dummy_supply(inst, sel, flows):
    """
    Turn a value-function flow into one where every dummy supply arc is full.

    Starting from a solution of the value-function problem without lower bounds
    (outgoing coefficient-set arcs carrying no flow), the missing supply of each
    dummy arc is pushed forward along the path and then backward, and is
    absorbed by the outgoing arcs of K- (the outgoing arcs outside S- and L-).
    The objective y(S+) - y(K-) does not change.

    Args:
        inst: Full instance.
        sel: Selection whose window, s_minus and l_minus define K-.
        flows: FeasiblePoint over the window view (local node and edge labels).

    Returns:
        FeasiblePoint: Adjusted copy of flows.

    Raises:
        InfeasibleFlowError: If some supply cannot be absorbed.
    """
    view = window_view(inst, *sel.window).instance
    y, i, r = dict(flows.y), dict(flows.i), dict(flows.r)
    excluded = set(sel.s_minus) | set(sel.l_minus)

    def fill(j, amount):
        used = 0
        for arc in view.outgoing(j):
            if used == amount:
                break
            if arc.id in excluded:
                continue
            extra = min(arc.capacity - y.get(arc.id, 0), amount - used)
            if extra > 0:
                y[arc.id] = y.get(arc.id, 0) + extra
                used += extra
        return used

    def send(edge, amount, forward):
        # cancel opposing flow on the edge before using its capacity
        same, opposite, cap = (i, r, view.u(edge)) if forward else (r, i, view.b(edge))
        cancel = min(opposite.get(edge, 0), amount)
        opposite[edge] = opposite.get(edge, 0) - cancel
        sent = min(cap - same.get(edge, 0), amount - cancel)
        same[edge] = same.get(edge, 0) + sent
        return cancel + sent

    for q in range(1, view.n + 1):
        for dummy in [a for a in view.incoming(q) if a.is_dummy_supply]:
            carry = dummy.capacity - y.get(dummy.id, 0)
            y[dummy.id] = dummy.capacity
            stuck = {}
            j = q
            while carry > 0:
                carry -= fill(j, carry)
                if carry == 0:
                    break
                if j == view.n:
                    stuck[j] = carry
                    break
                moved = send(j, carry, forward=True)
                if moved < carry:
                    stuck[j] = carry - moved
                carry = moved
                j += 1

            carry = 0
            for j in range(max(stuck, default=0), 0, -1):
                carry += stuck.get(j, 0)
                if carry == 0:
                    continue
                carry -= fill(j, carry)
                if carry and j > 1:
                    moved = send(j - 1, carry, forward=False)
                    if moved < carry:
                        break
            if carry > 0:
                raise InfeasibleFlowError(f"supply of dummy arc {dummy.id} cannot be absorbed")

    return FeasiblePoint(y=y, x=dict(flows.x), i=i, r=r)


# ---------------------------------------------------------------------------
# Windows


def boundary_arc_id(kind, edge):
    """Id of the non-path arc that stands in for path variable i_edge ('i') or r_edge ('r')."""
    return -2 * edge if kind == "i" else -(2 * edge + 1)


@dataclass(frozen=True)
class WindowView:
    """A subpath [first, last] relabelled as a standalone path 1..m.

    Path arcs crossing the window boundary appear in the standalone instance as
    non-path arcs with negative ids (see boundary_arc_id). Real arcs keep their ids.
    """

    first: int
    last: int
    instance: PathInstance

    @property
    def size(self):
        return self.last - self.first + 1

    def to_global(self, j):
        return j + self.first - 1

    def to_local(self, j):
        return j - self.first + 1

    def global_edge(self, e):
        """Global index of local path edge e (between local nodes e and e+1)."""
        return e + self.first - 1


@lru_cache(maxsize=4096)
def window_view(inst, k, l):
    """Standalone view of subpath [k, l].

    Boundary path arcs enter as non-path arcs: the forward arc (k-1, k) and the
    backward arc (l+1, l) are incoming, the backward arc (k, k-1) and the
    forward arc (l, l+1) are outgoing.

    Raises:
        SelectionError: If [k, l] is not a subinterval of 1..n.
    """
    if not 1 <= k <= l <= inst.n:
        raise SelectionError(f"window [{k}, {l}] outside path 1..{inst.n}")
    m = l - k + 1
    arcs = [replace(arc, node=arc.node - k + 1) for arc in inst.arcs if k <= arc.node <= l]
    if k > 1:
        e = k - 1
        arcs.append(NonPathArc(boundary_arc_id("i", e), 1, INCOMING, inst.u(e), path_edge=("i", e)))
        arcs.append(NonPathArc(boundary_arc_id("r", e), 1, OUTGOING, inst.b(e), path_edge=("r", e)))
    if l < inst.n:
        e = l
        arcs.append(NonPathArc(boundary_arc_id("i", e), m, OUTGOING, inst.u(e), path_edge=("i", e)))
        arcs.append(NonPathArc(boundary_arc_id("r", e), m, INCOMING, inst.b(e), path_edge=("r", e)))
    local = PathInstance(
        n=m,
        demand=inst.demand[k - 1:l],
        fwd_cap=inst.fwd_cap[k - 1:l - 1],
        bwd_cap=inst.bwd_cap[k - 1:l - 1],
        arcs=tuple(arcs),
        fwd_cost=inst.fwd_cost[k - 1:l - 1],
        bwd_cost=inst.bwd_cost[k - 1:l - 1],
    )
    return WindowView(k, l, local)


def merged_sentinel(inst, k, l):
    """Path capacity that can never bind inside window [k, l]."""
    view = window_view(inst, k, l).instance
    return sum(abs(d) for d in view.demand) + sum(a.capacity for a in view.arcs) + 1


def merged_mode(inst, window):
    """
    Relaxation with unbounded path arcs inside a window.

    Every path edge strictly inside [k, l] gets a capacity no feasible flow can
    reach, which collapses the window into a single node for the min-cut
    recursion. Edges crossing the window boundary keep their capacities.
    """
    k, l = window
    if not 1 <= k <= l <= inst.n:
        raise SelectionError(f"window [{k}, {l}] outside path 1..{inst.n}")
    if k == l:
        return inst
    big = merged_sentinel(inst, k, l)
    fwd, bwd = list(inst.fwd_cap), list(inst.bwd_cap)
    for e in range(k, l):
        fwd[e - 1] = big
        bwd[e - 1] = big
    return replace(inst, fwd_cap=tuple(fwd), bwd_cap=tuple(bwd))


# ---------------------------------------------------------------------------
# Generation and serialization


def generate_lotsizing(n, f, c, seed):
    """
    Random lot-sizing instance with backlogging.

    Node j has one production arc (id j). Demands are drawn from {0..30};
    with dbar the mean demand, production capacities come from
    [0.75*c*dbar, 1.25*c*dbar], forward (inventory) capacities from
    [dbar, 2*dbar] and backward (backlog) capacities from [0.3*dbar, 0.8*dbar],
    all rounded and at least 1. Unit costs p, h are drawn from {1..10},
    g from {1..20}, and the setup cost is f * p.

    Args:
        n: Number of periods.
        f: Setup-cost multiplier (100, 200, 500 or 1000 in the study).
        c: Capacity tightness (2, 5 or 10 in the study).
        seed: Seed for numpy's random generator.
    """
    if n < 1:
        raise InstanceError("n must be at least 1")
    if f <= 0 or c <= 0:
        raise InstanceError(f"f and c must be positive (got f={f}, c={c})")
    rng = np.random.default_rng(seed)
    demand = [int(d) for d in rng.integers(0, 31, size=n)]
    dbar = sum(demand) / n

    def draw(low, high, size):
        return [max(1, int(round(v))) for v in rng.uniform(low, high, size=size)]

    capacity = draw(0.75 * c * dbar, 1.25 * c * dbar, n)
    fwd_cap = draw(1.0 * dbar, 2.0 * dbar, n - 1)
    bwd_cap = draw(0.3 * dbar, 0.8 * dbar, n - 1)
    p = [int(v) for v in rng.integers(1, 11, size=n)]
    h = [int(v) for v in rng.integers(1, 11, size=n - 1)]
    g = [int(v) for v in rng.integers(1, 21, size=n - 1)]

    arcs = [
        NonPathArc(j, j, INCOMING, capacity[j - 1], Fraction(f * p[j - 1]), Fraction(p[j - 1]))
        for j in range(1, n + 1)
    ]
    return PathInstance(n, demand, fwd_cap, bwd_cap, arcs, h, g)


def instance_to_dict(inst):
    return {
        "n": inst.n,
        "demand": list(inst.demand),
        "fwd_cap": list(inst.fwd_cap),
        "bwd_cap": list(inst.bwd_cap),
        "arcs": [
            {
                "id": a.id,
                "node": a.node,
                "dir": a.direction,
                "cap": a.capacity,
                "fixed_cost": str(a.fixed_cost),
                "var_cost": str(a.var_cost),
                **({"dummy": True} if a.is_dummy_supply else {}),
            }
            for a in sorted(inst.arcs, key=lambda a: a.id)
        ],
        "fwd_cost": [str(v) for v in inst.fwd_cost],
        "bwd_cost": [str(v) for v in inst.bwd_cost],
    }


def instance_from_dict(data):
    """Parse the JSON instance schema; rationals are "p/q" strings.

    Raises:
        InstanceError: On missing keys or malformed values.
    """
    try:
        arcs = [
            NonPathArc(
                id=int(a["id"]),
                node=int(a["node"]),
                direction=a["dir"],
                capacity=int(a["cap"]),
                fixed_cost=Fraction(a.get("fixed_cost", "0")),
                var_cost=Fraction(a.get("var_cost", "0")),
                is_dummy_supply=bool(a.get("dummy", False)),
            )
            for a in data["arcs"]
        ]
        return PathInstance(
            n=int(data["n"]),
            demand=data["demand"],
            fwd_cap=data["fwd_cap"],
            bwd_cap=data["bwd_cap"],
            arcs=arcs,
            fwd_cost=[Fraction(v) for v in data.get("fwd_cost", [])],
            bwd_cost=[Fraction(v) for v in data.get("bwd_cost", [])],
        )
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        if isinstance(e, InstanceError):
            raise
        raise InstanceError(f"malformed instance data: {e}") from e


def save_instance(inst, path):
    """Write an instance as JSON (stable key order, so reruns are byte-identical)."""
    with open(path, "w", encoding="utf-8") as f:
        json.dump(instance_to_dict(inst), f, indent=2)
        f.write("\n")


def load_instance(path):
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InstanceError(f"{path} is not valid JSON: {e}") from e
    return instance_from_dict(data)
