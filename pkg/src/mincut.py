"""
Parametric min-cut on a path.

For an arc selection on a window, the value function v(S+, L-) of the
value-function flow problem is a minimum s-t cut in a path-shaped network.
compute_profile() evaluates every "node j on the sink side" (u) and
"node j on the source side" (d) cut in one forward and one backward sweep;
maxflow_value() is an independent augmenting-path oracle for the same value.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace

from .exceptions import InstanceError, SelectionError
from .flow import FlowNetwork
from .instance import FeasiblePoint, window_view

COVER = "cover"
PACK = "pack"

DROP = "drop"
ADD = "add"


@dataclass(frozen=True)
class ArcSelection:
    """Objective and coefficient sets on a window.

    s_plus may name boundary arcs of the window view (negative ids) to absorb a
    crossing path arc into S+; s_minus likewise for S-. K- (outgoing arcs outside
    S- and L-) is implied. In COVER mode K+ = S+, in PACK mode K+ = E+.
    """

    window: tuple
    s_plus: frozenset = frozenset()
    s_minus: frozenset = frozenset()
    l_minus: frozenset = frozenset()
    mode: str = COVER

    def __post_init__(self):
        object.__setattr__(self, "window", tuple(self.window))
        for name in ("s_plus", "s_minus", "l_minus"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if self.mode not in (COVER, PACK):
            raise SelectionError(f"unknown selection mode '{self.mode}'")

    def validate(self, view):
        """Check the selection against a window view instance.

        Raises:
            SelectionError: On any set outside its arc class, overlapping S-/L-,
                or a dummy supply arc left out of S+.
        """
        ids_in = {a.id for a in view.e_plus}
        ids_out = {a.id for a in view.e_minus}
        if not self.s_plus <= ids_in:
            raise SelectionError(f"S+ arcs {sorted(self.s_plus - ids_in)} are not incoming arcs of window {self.window}")
        if not self.s_minus <= ids_out:
            raise SelectionError(f"S- arcs {sorted(self.s_minus - ids_out)} are not outgoing arcs of window {self.window}")
        if not self.l_minus <= ids_out:
            raise SelectionError(f"L- arcs {sorted(self.l_minus - ids_out)} are not outgoing arcs of window {self.window}")
        if self.s_minus & self.l_minus:
            raise SelectionError(f"S- and L- overlap on {sorted(self.s_minus & self.l_minus)}")
        missing = {a.id for a in view.dummy_arcs} - self.s_plus
        if missing:
            raise SelectionError(f"dummy supply arcs {sorted(missing)} must be in S+")

    def k_plus(self, view):
        if self.mode == COVER:
            return set(self.s_plus)
        return {a.id for a in view.e_plus}

    def k_minus(self, view):
        return {a.id for a in view.e_minus} - self.s_minus - self.l_minus

    def snapshot(self):
        return {
            "window": list(self.window),
            "s_plus": sorted(self.s_plus),
            "s_minus": sorted(self.s_minus),
            "l_minus": sorted(self.l_minus),
            "mode": self.mode,
        }


def make_selection(inst, window, s_plus=(), s_minus=(), l_minus=(), mode=COVER):
    """ArcSelection with the window's dummy supply arcs added to S+."""
    view = window_view(inst, *window).instance
    dummies = {a.id for a in view.dummy_arcs}
    return ArcSelection(tuple(window), frozenset(s_plus) | dummies, frozenset(s_minus), frozenset(l_minus), mode)


@dataclass(frozen=True)
class MinCutProfile:
    """Per-node recursion values; index 0 is the first node of the window."""

    window: tuple
    alpha_u: tuple
    alpha_d: tuple
    beta_u: tuple
    beta_d: tuple
    m_u: tuple
    m_d: tuple
    demand: tuple
    fwd: tuple
    bwd: tuple
    cs_plus: tuple
    cs_minus: tuple
    v: int = field(default=0)

    @property
    def size(self):
        return len(self.alpha_u)

    @property
    def lambda_(self):
        return tuple(max(mu - md, 0) for mu, md in zip(self.m_u, self.m_d))

    @property
    def mu(self):
        return tuple(max(md - mu, 0) for mu, md in zip(self.m_u, self.m_d))

    @property
    def w(self):
        return tuple(mu - md for mu, md in zip(self.m_u, self.m_d))

    def u(self, j):
        """Forward path capacity leaving local node j (0 outside the window)."""
        return self.fwd[j - 1] if 1 <= j <= self.size - 1 else 0

    def b(self, j):
        return self.bwd[j - 1] if 1 <= j <= self.size - 1 else 0

    def is_cover(self):
        return self.v == sum(self.demand) + sum(self.cs_minus)

    def is_pack(self):
        return self.v == sum(self.cs_plus)

    def to_dict(self):
        data = asdict(self)
        data["lambda"] = list(self.lambda_)
        data["mu"] = list(self.mu)
        return data


def _local_view(inst, sel):
    view = window_view(inst, *sel.window)
    sel.validate(view.instance)
    if any(d < 0 for d in view.instance.demand):
        raise InstanceError("min-cut profiles need nonnegative demands (run transform_supply first)")
    return view.instance


def profile_from_data(window, demand, fwd, bwd, cs_plus, cs_minus):
    """Run both recursions on raw per-node data (lists indexed from node 1 at position 0)."""
    m = len(demand)

    def u(j):
        return fwd[j - 1] if 1 <= j <= m - 1 else 0

    def b(j):
        return bwd[j - 1] if 1 <= j <= m - 1 else 0

    alpha_u, alpha_d = [0] * (m + 1), [0] * (m + 1)
    for j in range(1, m + 1):
        alpha_u[j] = min(alpha_d[j - 1] + u(j - 1), alpha_u[j - 1]) + cs_plus[j - 1]
        alpha_d[j] = min(alpha_d[j - 1], alpha_u[j - 1] + b(j - 1)) + demand[j - 1] + cs_minus[j - 1]

    beta_u, beta_d = [0] * (m + 2), [0] * (m + 2)
    for j in range(m, 0, -1):
        beta_u[j] = min(beta_u[j + 1], beta_d[j + 1] + b(j)) + cs_plus[j - 1]
        beta_d[j] = min(beta_u[j + 1] + u(j), beta_d[j + 1]) + demand[j - 1] + cs_minus[j - 1]

    m_u = [alpha_u[j] + beta_u[j] - cs_plus[j - 1] for j in range(1, m + 1)]
    m_d = [alpha_d[j] + beta_d[j] - demand[j - 1] - cs_minus[j - 1] for j in range(1, m + 1)]

    return MinCutProfile(
        window=tuple(window),
        alpha_u=tuple(alpha_u[1:]),
        alpha_d=tuple(alpha_d[1:]),
        beta_u=tuple(beta_u[1:m + 1]),
        beta_d=tuple(beta_d[1:m + 1]),
        m_u=tuple(m_u),
        m_d=tuple(m_d),
        demand=tuple(demand),
        fwd=tuple(fwd),
        bwd=tuple(bwd),
        cs_plus=tuple(cs_plus),
        cs_minus=tuple(cs_minus),
        v=min(m_u[0], m_d[0]),
    )


def compute_profile(inst, sel):
    """
    Min-cut profile of a selection in linear time.

    The window is solved as a standalone path: crossing path arcs only matter
    when the selection puts their boundary stand-ins into S+ or S-.

    Args:
        inst: Full path instance.
        sel: ArcSelection on a window of inst.

    Returns:
        MinCutProfile
    """
    view = _local_view(inst, sel)
    cs_plus = [sum(a.capacity for a in view.incoming(j) if a.id in sel.s_plus) for j in range(1, view.n + 1)]
    cs_minus = [sum(a.capacity for a in view.outgoing(j) if a.id in sel.s_minus) for j in range(1, view.n + 1)]
    return profile_from_data(sel.window, view.demand, view.fwd_cap, view.bwd_cap, cs_plus, cs_minus)


def _value_network(view, s_plus, s_minus, l_minus):
    source, sink = 0, view.n + 1
    net = FlowNetwork(view.n + 2)
    arc_edges, fwd_edges, bwd_edges = {}, {}, {}
    for j in range(1, view.n + 1):
        net.add_edge(j, sink, view.d(j))
        if j < view.n:
            fwd_edges[j] = net.add_edge(j, j + 1, view.u(j))
            bwd_edges[j] = net.add_edge(j + 1, j, view.b(j))
    for arc in view.arcs:
        if arc.incoming:
            if arc.id in s_plus:
                low = arc.capacity if arc.is_dummy_supply else 0
                arc_edges[arc.id] = net.add_edge(source, arc.node, arc.capacity, lower=low)
        elif arc.id in s_minus:
            arc_edges[arc.id] = net.add_edge(arc.node, sink, arc.capacity)
        elif arc.id not in l_minus:
            # K-: flow leaving on it counts against the objective
            arc_edges[arc.id] = net.add_edge(arc.node, source, arc.capacity)
    return net, source, sink, arc_edges, fwd_edges, bwd_edges


def set_value(view, s_plus, s_minus=frozenset(), l_minus=frozenset()):
    """v(S+, L-) on a standalone instance by max flow; raises InfeasibleFlowError when dummies cannot be routed."""
    net, source, sink, *_ = _value_network(view, s_plus, s_minus, l_minus)
    return net.max_flow(source, sink)


def maxflow_value(inst, sel):
    """
    Value function of a selection by breadth-first augmenting paths.

    Dummy supply arcs carry a lower bound equal to their capacity.

    Raises:
        InfeasibleFlowError: If the fixed dummy flows cannot be routed.
    """
    view = _local_view(inst, sel)
    return set_value(view, sel.s_plus, sel.s_minus, sel.l_minus)


def maxflow_solution(inst, sel, honor_dummies=True):
    """
    Optimal value-function flow on the window view.

    Returns:
        tuple: (value, FeasiblePoint keyed by view arc ids and local path edges)
    """
    view = _local_view(inst, sel)
    if honor_dummies:
        s_plus = sel.s_plus
        net, source, sink, arc_edges, fwd_edges, bwd_edges = _value_network(view, s_plus, sel.s_minus, sel.l_minus)
    else:
        relaxed = replace(view, arcs=tuple(replace(a, is_dummy_supply=False) for a in view.arcs))
        net, source, sink, arc_edges, fwd_edges, bwd_edges = _value_network(relaxed, sel.s_plus, sel.s_minus, sel.l_minus)
    value = net.max_flow(source, sink)
    point = FeasiblePoint(
        y={t: net.flow(e) for t, e in arc_edges.items()},
        x={t: 1 for t in sel.s_plus},
        i={j: net.flow(e) for j, e in fwd_edges.items()},
        r={j: net.flow(e) for j, e in bwd_edges.items()},
    )
    return value, point


def marginal(inst, sel, t, side, profile=None):
    """
    Marginal contribution of arc t read off the profile.

    DROP gives rho_t(C minus t) for t in S+ or L-; ADD gives rho_t(C) for t
    outside C. Values are magnitudes and never negative. For an incoming arc
    it is the rise in v when the arc joins S+. For an outgoing arc it is the
    fall in v when the arc joins L- (from S- or K-), so dropping t from L-
    gives min(lambda_j, c_t) and adding t from S- gives (c_t - mu_j)+.

    Raises:
        SelectionError: If t is not in the window or not on the requested side of C.
    """
    view = _local_view(inst, sel)
    arc = view.arc_by_id.get(t)
    if arc is None:
        raise SelectionError(f"arc {t} is not in window {sel.window}")
    profile = profile or compute_profile(inst, sel)
    lam = profile.lambda_[arc.node - 1]
    mu = profile.mu[arc.node - 1]
    c = arc.capacity

    if side == DROP:
        if t in sel.s_plus:
            return max(c - lam, 0)
        if t in sel.l_minus:
            return min(lam, c)
        raise SelectionError(f"arc {t} is not in the objective set")
    if side == ADD:
        if t in sel.s_plus or t in sel.l_minus:
            raise SelectionError(f"arc {t} is already in the objective set")
        if arc.incoming:
            return min(c, mu)
        if t in sel.s_minus:
            return max(c - mu, 0)
        if view.dummy_arcs:
            # closing a K- arc only matters when it absorbs fixed supply
            return profile.v - set_value(view, sel.s_plus, sel.s_minus, sel.l_minus | {t})
        return 0
    raise ValueError(f"unknown side '{side}'")
