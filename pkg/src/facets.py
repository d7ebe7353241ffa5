"""
Structure of path cover and path pack inequalities.

Independence flags say where the minimum cut is forced across a path arc next
to a node. The facet checkers evaluate the necessary and sufficient conditions
built on those flags, face_dimension() measures faces exactly on tiny
instances, build_cover_witness() produces a tight feasible point for a cover,
and split_at() decomposes a selection at a node where the cut separates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .cuts import build_path_cover, build_path_pack
from .exceptions import BudgetExceededError, InfeasibleFlowError, LpInfeasibleError, SelectionError
from .instance import FeasiblePoint, boundary_arc_id, window_view
from .mincut import COVER, PACK, ArcSelection, compute_profile
from .polytope import FlowColumns, pattern_rows, x_patterns
from .simplex import EQ, Tableau

HOLDS = "holds"
FAILS = "fails"
NOT_APPLICABLE = "not_applicable"

FACE_MAX_ARCS = 5
FACE_MAX_NODES = 3


@dataclass(frozen=True)
class IndependenceFlags:
    """Per-node flags (index 0 is the first window node) and the branch that fired ('u' or 'd').

    strict_backward and strict_forward keep only nodes where the path arc branch
    is the unique minimizer of the recursion.
    """

    backward: tuple
    forward: tuple
    backward_branch: tuple
    forward_branch: tuple
    consistent: bool
    strict_backward: tuple = ()
    strict_forward: tuple = ()


def flags_from_profile(p):
    """
    Backward and forward independence read off a profile.

    Node j is backward independent when the forward recursion at j is attained
    through the path arc from j-1 (either branch); forward independence is the
    mirror image on the backward recursion. The w_j shortcuts of each branch are
    cross-checked and reported in `consistent`.
    """
    m = p.size
    backward, forward = [False] * m, [False] * m
    backward_branch, forward_branch = [None] * m, [None] * m
    strict_backward, strict_forward = [False] * m, [False] * m
    consistent = True
    w = p.w

    for j in range(2, m + 1):
        i = j - 1
        if p.alpha_u[i] == p.alpha_d[i - 1] + p.u(j - 1) + p.cs_plus[i]:
            backward[i], backward_branch[i] = True, "u"
            consistent &= w[i] == p.beta_u[i] - p.beta_d[i] + p.u(j - 1)
        elif p.alpha_d[i] == p.alpha_u[i - 1] + p.b(j - 1) + p.demand[i] + p.cs_minus[i]:
            backward[i], backward_branch[i] = True, "d"
            consistent &= w[i] == p.beta_u[i] - p.beta_d[i] - p.b(j - 1)
        strict_backward[i] = (p.alpha_d[i - 1] + p.u(j - 1) < p.alpha_u[i - 1]
                              or p.alpha_u[i - 1] + p.b(j - 1) < p.alpha_d[i - 1])

    for j in range(1, m):
        i = j - 1
        if p.beta_u[i] == p.beta_d[i + 1] + p.b(j) + p.cs_plus[i]:
            forward[i], forward_branch[i] = True, "u"
            consistent &= w[i] == p.alpha_u[i] - p.alpha_d[i] + p.b(j)
        elif p.beta_d[i] == p.beta_u[i + 1] + p.u(j) + p.demand[i] + p.cs_minus[i]:
            forward[i], forward_branch[i] = True, "d"
            consistent &= w[i] == p.alpha_u[i] - p.alpha_d[i] - p.u(j)
        strict_forward[i] = (p.beta_d[i + 1] + p.b(j) < p.beta_u[i + 1]
                             or p.beta_u[i + 1] + p.u(j) < p.beta_d[i + 1])

    return IndependenceFlags(tuple(backward), tuple(forward), tuple(backward_branch),
                             tuple(forward_branch), bool(consistent), tuple(strict_backward), tuple(strict_forward))


def independence_flags(inst, sel):
    return flags_from_profile(compute_profile(inst, sel))


# ---------------------------------------------------------------------------
# Necessary conditions


@dataclass
class NecessaryVerdict:
    """Condition name -> True / False / None (vacuous), plus what failed where."""

    conditions: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)

    @property
    def holds(self):
        return all(v is not False for v in self.conditions.values())

    def failed(self):
        return [name for name, v in self.conditions.items() if v is False]


def _adjacent_pairs(first, second):
    """Nodes j in [2, m] with first[j-1] and second[j] both set (1-based)."""
    return [j for j in range(2, len(first) + 1) if first[j - 2] and second[j - 1]]


def _zero_nodes(view, coef):
    """Per node: it carries at least one coefficient arc and all of them are zero."""
    zero = []
    for j in range(1, view.n + 1):
        values = [coef[a.id] for a in view.incoming(j) + view.outgoing(j) if a.id in coef]
        zero.append(bool(values) and all(v == 0 for v in values))
    return zero


def _adjacency_conditions(verdict, flags, node_zero):
    """Conditions (iii)-(vi) shared by covers and packs.

    node_zero[i] is True when node i+1 has coefficient arcs and all of them vanish;
    a node without any leaves the zero-coefficient premise of (v)/(vi) unmet.
    Only strict independence counts: with a tie the split at the node can leave
    one side as an identity and the face need not drop a dimension.
    """
    backward, forward = flags.strict_backward, flags.strict_forward
    m = len(backward)
    pairs = _adjacent_pairs(backward, forward)
    verdict.conditions["iii"] = not pairs
    verdict.failures["iii"] = pairs
    verdict.conditions["iv"] = not pairs
    verdict.failures["iv"] = [j - 1 for j in pairs]

    bad_v = [p for p in range(2, m + 1) if all(node_zero[p - 1:]) and forward[p - 2]]
    verdict.conditions["v"] = not bad_v
    verdict.failures["v"] = bad_v
    bad_vi = [q for q in range(1, m) if all(node_zero[:q]) and backward[q]]
    verdict.conditions["vi"] = not bad_vi
    verdict.failures["vi"] = bad_vi


def _facet_view(inst, sel, mode):
    if sel.mode != mode:
        raise SelectionError(f"expected a {mode}-mode selection")
    if sel.l_minus:
        raise SelectionError("facet conditions are stated for L- empty")
    view = window_view(inst, *sel.window).instance
    if any(d < 0 for d in view.demand):
        raise SelectionError("facet conditions need nonnegative demands")
    return view


def check_cover_necessary(inst, sel):
    """
    Necessary facet conditions of a path cover inequality.

    (i) every S+ coefficient (c_t - lambda_j)+ is below c_t; (ii) some S+
    coefficient is positive; (iii)/(iv) no node j-1 backward independent next to
    a forward independent node j; (v)/(vi) if every coefficient from node p to
    the end (from the start to node q) is zero, node p-1 is not forward
    independent (node q+1 is not backward independent).

    Raises:
        SelectionError: If the selection is not a cover with L- empty.
    """
    view = _facet_view(inst, sel, COVER)
    profile = compute_profile(inst, sel)
    if not profile.is_cover():
        raise SelectionError(f"selection on {sel.window} is not a path cover")
    flags = flags_from_profile(profile)
    lam = profile.lambda_

    verdict = NecessaryVerdict()
    coef = {}
    for t in sel.s_plus:
        arc = view.arc_by_id[t]
        if not arc.is_dummy_supply:
            coef[t] = max(arc.capacity - lam[arc.node - 1], 0)
    too_big = sorted(t for t, rho in coef.items() if rho >= view.arc_by_id[t].capacity)
    verdict.conditions["i"] = not too_big
    verdict.failures["i"] = too_big
    verdict.conditions["ii"] = bool(coef) and max(coef.values()) > 0
    verdict.failures["ii"] = [] if verdict.conditions["ii"] else sorted(coef)

    node_zero = _zero_nodes(view, coef)
    _adjacency_conditions(verdict, flags, node_zero)
    return verdict


def check_pack_necessary(inst, sel):
    """
    Necessary facet conditions of a path pack inequality.

    (i) min(c_j, mu) < c_j for arcs of E+ outside S+; (ii) some S- coefficient
    (c_t - mu)+ is positive (vacuous, reported as None, when S- is empty);
    (iii)-(vi) as for covers with the pack coefficients.

    Raises:
        SelectionError: If the selection is not a pack with L- empty.
    """
    view = _facet_view(inst, sel, PACK)
    profile = compute_profile(inst, sel)
    if not profile.is_pack():
        raise SelectionError(f"selection on {sel.window} is not a path pack")
    flags = flags_from_profile(profile)
    mu = profile.mu

    verdict = NecessaryVerdict()
    coef = {}
    for arc in view.e_plus:
        if arc.id not in sel.s_plus and not arc.is_boundary:
            coef[arc.id] = min(arc.capacity, mu[arc.node - 1])
    too_big = sorted(t for t, rho in coef.items() if rho >= view.arc_by_id[t].capacity)
    verdict.conditions["i"] = not too_big
    verdict.failures["i"] = too_big

    s_minus_coef = {t: max(view.arc_by_id[t].capacity - mu[view.arc_by_id[t].node - 1], 0) for t in sel.s_minus}
    if s_minus_coef:
        verdict.conditions["ii"] = max(s_minus_coef.values()) > 0
        verdict.failures["ii"] = [] if verdict.conditions["ii"] else sorted(s_minus_coef)
    else:
        verdict.conditions["ii"] = None
        verdict.failures["ii"] = []
    coef.update(s_minus_coef)

    node_zero = _zero_nodes(view, coef)
    _adjacency_conditions(verdict, flags, node_zero)
    return verdict


# ---------------------------------------------------------------------------
# Sufficient conditions


@dataclass
class SufficientVerdict:
    status: str
    necessary: NecessaryVerdict | None = None
    conditions: dict = field(default_factory=dict)
    reason: str = ""


def _lot_sizing_shape(view):
    """Reason the window is not lot-sizing shaped, or '' if it is."""
    if view.e_minus:
        return "window has outgoing arcs"
    if any(d <= 0 for d in view.demand):
        return "some demand is not positive"
    if any(len(view.incoming(j)) != 1 for j in range(1, view.n + 1)):
        return "some node does not have exactly one incoming arc"
    if view.dummy_arcs:
        return "window has dummy supply arcs"
    return ""


def check_cover_sufficient(inst, sel):
    """
    Sufficient facet conditions of a path cover inequality on lot-sizing shaped windows.

    Besides the necessary conditions, every S+ coefficient (c_t - lambda_j)+
    must be positive and below c(E+ minus S+), and no node j-1 may be forward
    independent next to a backward independent node j. Such a pair puts both
    path arcs between them into minimum cuts, and the face then pins their
    flows whenever one S+ arc closes.
    """
    view = window_view(inst, *sel.window).instance
    reason = _lot_sizing_shape(view)
    if reason:
        return SufficientVerdict(NOT_APPLICABLE, reason=reason)
    necessary = check_cover_necessary(inst, sel)
    profile = compute_profile(inst, sel)
    lam = profile.lambda_
    flags = flags_from_profile(profile)
    outside = sum(a.capacity for a in view.e_plus if a.id not in sel.s_plus)
    coefs = [max(view.arc_by_id[t].capacity - lam[view.arc_by_id[t].node - 1], 0) for t in sel.s_plus]
    conditions = {
        "positive": all(c > 0 for c in coefs),
        "below_outside": all(c < outside for c in coefs),
        "crossing_slack": not _adjacent_pairs(flags.forward, flags.backward),
    }
    status = HOLDS if necessary.holds and all(conditions.values()) else FAILS
    return SufficientVerdict(status, necessary, conditions)


def _is_cover(inst, window, s_plus):
    return compute_profile(inst, ArcSelection(window, s_plus)).is_cover()


def check_pack_sufficient(inst, sel):
    """
    Sufficient facet conditions of a path pack inequality on lot-sizing shaped windows.

    (i) each j outside S+ either completes S+ to a path cover or has
    min(c_j, mu_j) = 0; (ii) each t in S+ can be swapped for some j outside S+
    to give a path cover; (iii) for each node j < n some k outside S+ makes
    S+ + k a path cover with node j not backward independent and node j+1
    not forward independent. Existence is checked by direct search.
    """
    view = window_view(inst, *sel.window).instance
    reason = _lot_sizing_shape(view)
    if reason:
        return SufficientVerdict(NOT_APPLICABLE, reason=reason)
    necessary = check_pack_necessary(inst, sel)
    mu = compute_profile(inst, sel).mu
    window = sel.window
    s_plus = set(sel.s_plus)
    outside = [a for a in view.e_plus if a.id not in s_plus]

    cond_i = all(
        _is_cover(inst, window, s_plus | {a.id}) or min(a.capacity, mu[a.node - 1]) == 0
        for a in outside
    )
    cond_ii = all(
        any(_is_cover(inst, window, (s_plus - {t}) | {a.id}) for a in outside)
        for t in s_plus
    )

    augmented = {}
    for a in outside:
        sp = s_plus | {a.id}
        if _is_cover(inst, window, sp):
            augmented[a.id] = independence_flags(inst, ArcSelection(window, sp))
    cond_iii = all(
        any(not f.backward[j - 1] and not f.forward[j] for f in augmented.values())
        for j in range(1, view.n)
    )
    conditions = {"i": cond_i, "ii": cond_ii, "iii": cond_iii}
    status = HOLDS if necessary.holds and all(conditions.values()) else FAILS
    return SufficientVerdict(status, necessary, conditions)


# ---------------------------------------------------------------------------
# Face dimension


def _rref(rows, ncols):
    """Reduced row echelon form over Fractions; returns (rows, pivot columns)."""
    mat = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        lead = mat[r][c]
        mat[r] = [v / lead for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                factor = mat[i][c]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def _nullspace(rows, ncols):
    reduced, pivots = _rref(rows, ncols) if rows else ([], [])
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[free]
        basis.append(vec)
    return basis


def _affine_rank(points):
    if not points:
        return -1
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    if not diffs:
        return 0
    return len(_rref(diffs, len(base))[1])


def _slice_spanning_points(tableau, ncols):
    """Affinely independent points spanning the affine hull of an LP's feasible set."""
    p0 = list(tableau.values())
    points = [p0]
    equations = []
    while True:
        constraints = [[a - b for a, b in zip(p, p0)] for p in points[1:]] + equations
        null = _nullspace(constraints, ncols)
        if not null:
            return points
        w = null[0]
        at_p0 = sum(a * b for a, b in zip(w, p0))
        low = tableau.with_cost(w)
        high = tableau.with_cost([-v for v in w])
        if low.objective < at_p0:
            points.append(list(low.values()))
        elif -high.objective > at_p0:
            points.append(list(high.values()))
        else:
            equations.append(w)


def face_dimension(inst, ineq=None, max_arcs=FACE_MAX_ARCS, max_nodes=FACE_MAX_NODES):
    """
    Dimension of conv(P) or of its face where an inequality is tight.

    For every open/closed pattern the continuous slice (restricted to the
    inequality's hyperplane) is spanned by points found with exact LPs along
    directions orthogonal to the points found so far. The affine rank of all
    points over every pattern is the dimension; -1 means an empty face.

    Raises:
        BudgetExceededError: Beyond max_arcs arcs or max_nodes nodes.
    """
    if inst.n > max_nodes:
        raise BudgetExceededError(f"{inst.n} nodes exceeds the enumeration budget of {max_nodes}")
    columns = FlowColumns(inst)
    arc_ids = sorted(a.id for a in inst.arcs)
    zero_cost = [Fraction(0)] * len(columns)
    points = []
    for pattern in x_patterns(inst, max_arcs):
        rows, senses, rhs = pattern_rows(inst, columns, pattern)
        if ineq is not None:
            row = {}
            for kind, idx, coef in ineq.terms():
                if kind != "x":
                    row[columns.index[(kind, idx)]] = Fraction(coef)
            constant = sum(Fraction(c) * pattern.get(t, 0) for t, c in ineq.x_coef.items())
            rows.append(row)
            senses.append(EQ)
            rhs.append(Fraction(ineq.rhs) - constant)
        try:
            tableau = Tableau(zero_cost, rows, senses, rhs, exact=True).optimize()
        except LpInfeasibleError:
            continue
        for flow in _slice_spanning_points(tableau, len(columns)):
            points.append([Fraction(pattern[t]) for t in arc_ids] + flow)
    return _affine_rank(points)


def polytope_dimension(inst):
    """2|E| + n - 2, the dimension of conv(P) when A.1 and A.2 hold."""
    return 2 * len(inst.arcs) + inst.n - 2


# ---------------------------------------------------------------------------
# Witness and separability


def build_cover_witness(inst, sel):
    """
    Feasible point tight at a path cover inequality (lot-sizing shaped windows).

    A backward pass moves each node's shortfall c(S_{j+1}+) < d_{j+1} onto the
    forward arc into it; a forward pass then moves any remaining shortfall of
    node j-1 onto the backward arc from j, netting it against forward flow on
    the same edge. Each S+ arc finally carries its node's effective demand.

    Returns:
        FeasiblePoint over the window view (local edges).

    Raises:
        SelectionError: If the window is not lot-sizing shaped or not a cover.
        InfeasibleFlowError: If the passes leave some demand unserved.
    """
    view = window_view(inst, *sel.window).instance
    reason = _lot_sizing_shape(view)
    if reason:
        raise SelectionError(f"cover witness needs a lot-sizing shaped window: {reason}")
    if not compute_profile(inst, sel).is_cover():
        raise SelectionError(f"selection on {sel.window} is not a path cover")

    m = view.n
    cap = [0] * (m + 2)
    for t in sel.s_plus:
        arc = view.arc_by_id[t]
        cap[arc.node] += arc.capacity
    dbar = [0] + list(view.demand) + [0]
    fwd = [0] * (m + 1)
    bwd = [0] * (m + 1)

    for j in range(m - 1, 0, -1):
        delta = min(view.u(j), max(dbar[j + 1] - cap[j + 1], 0))
        fwd[j] = delta
        dbar[j] += delta
        dbar[j + 1] -= delta
    for j in range(2, m + 1):
        delta = max(dbar[j - 1] - cap[j - 1], 0)
        cancel = min(delta, fwd[j - 1])
        fwd[j - 1] -= cancel
        bwd[j - 1] = delta - cancel
        dbar[j] += delta
        dbar[j - 1] -= delta

    point = FeasiblePoint(
        i={j: fwd[j] for j in range(1, m)},
        r={j: bwd[j] for j in range(1, m)},
    )
    for arc in view.arcs:
        open_ = arc.id in sel.s_plus
        point.x[arc.id] = 1 if open_ else 0
        point.y[arc.id] = dbar[arc.node] if open_ else 0
    problems = point.violations(view)
    if problems:
        raise InfeasibleFlowError("cover witness is infeasible: " + "; ".join(problems[:3]))
    return point


BOTH_PLUS = "both_plus"
BOTH_MINUS = "both_minus"
RIGHT_MIXED = "right_mixed"
LEFT_MIXED = "left_mixed"


@dataclass
class SplitResult:
    kind: str
    left: ArcSelection
    right: ArcSelection
    v: int
    v_left: int
    v_right: int

    @property
    def additive(self):
        return self.v == self.v_left + self.v_right


def split_at(inst, sel, j):
    """
    Split a selection between nodes j-1 and j when the cut separates there.

    The trigger equalities are checked in the order right_mixed, left_mixed, both_plus, both_minus:
      both_plus: node j backward independent on its u branch, or node j-1 forward
          independent on its u branch. Both crossing arcs join S+ (the
          backward arc on the left part, the forward arc on the right part).
      both_minus: the same on the d branches. Both crossing arcs join S- (the forward
          arc on the left, the backward arc on the right).
      right_mixed: node j backward independent on u and node j-1 forward independent
          on d. The right part gets the forward arc in S+ and the backward
          arc in S-.
      left_mixed: node j backward independent on d and node j-1 forward independent
          on u. The left part gets the backward arc in S+ and the forward arc
          in S-.

    Args:
        j: Global node with window[0] < j <= window[1].

    Returns:
        SplitResult, or None when no trigger holds at j.
    """
    k, l = sel.window
    if not k < j <= l:
        raise SelectionError(f"split node {j} must lie in ({k}, {l}]")
    p = compute_profile(inst, sel)
    i = j - k  # 0-based index of node j; i - 1 is node j-1
    e = j - 1
    u, b = p.u(i), p.b(i)

    bwd_u = p.alpha_u[i] == p.alpha_d[i - 1] + u + p.cs_plus[i]
    bwd_d = p.alpha_d[i] == p.alpha_u[i - 1] + b + p.demand[i] + p.cs_minus[i]
    fwd_u = p.beta_u[i - 1] == p.beta_d[i] + b + p.cs_plus[i - 1]
    fwd_d = p.beta_d[i - 1] == p.beta_u[i] + u + p.demand[i - 1] + p.cs_minus[i - 1]

    fwd_arc_id, bwd_arc_id = boundary_arc_id("i", e), boundary_arc_id("r", e)
    left_sp, left_sm, right_sp, right_sm = set(), set(), set(), set()
    if bwd_u and fwd_d:
        kind = RIGHT_MIXED
        right_sp.add(fwd_arc_id)
        right_sm.add(bwd_arc_id)
    elif bwd_d and fwd_u:
        kind = LEFT_MIXED
        left_sp.add(bwd_arc_id)
        left_sm.add(fwd_arc_id)
    elif bwd_u or fwd_u:
        kind = BOTH_PLUS
        left_sp.add(bwd_arc_id)
        right_sp.add(fwd_arc_id)
    elif bwd_d or fwd_d:
        kind = BOTH_MINUS
        left_sm.add(fwd_arc_id)
        right_sm.add(bwd_arc_id)
    else:
        return None

    def part(window, extra_sp, extra_sm):
        ids = {a.id for a in window_view(inst, *window).instance.arcs}
        return ArcSelection(
            window,
            (sel.s_plus & ids) | extra_sp,
            (sel.s_minus & ids) | extra_sm,
            sel.l_minus & ids,
            COVER,
        )

    left = part((k, j - 1), left_sp, left_sm)
    right = part((j, l), right_sp, right_sm)
    return SplitResult(kind, left, right, p.v, compute_profile(inst, left).v, compute_profile(inst, right).v)


# ---------------------------------------------------------------------------
# Concordance


@dataclass(frozen=True)
class Concordance:
    """Facet verdicts of one full-window selection next to its measured face dimension."""

    kind: str
    s_plus: frozenset
    necessary: bool
    sufficient: str
    dimension: int
    full: int

    @property
    def facet(self):
        return self.dimension == self.full - 1

    @property
    def discordant(self):
        return (self.sufficient == HOLDS and not self.facet) or (not self.necessary and self.facet)


def facet_concordance(inst, max_arcs=FACE_MAX_ARCS, max_nodes=FACE_MAX_NODES):
    """
    Every S+ over the whole path, checked against the exact face dimension.

    Covers and packs are both built with S- and L- empty. A pack whose value
    reaches the total demand is also a cover and is skipped. The reference
    dimension is that of conv(P) itself, so instances that break A.1 still
    compare honestly.

    Raises:
        BudgetExceededError: Beyond max_arcs arcs or max_nodes nodes.
    """
    full = face_dimension(inst, max_arcs=max_arcs, max_nodes=max_nodes)
    window = (1, inst.n)
    ids = sorted(a.id for a in inst.e_plus)
    records = []
    for size in range(len(ids) + 1):
        for combo in combinations(ids, size):
            s_plus = frozenset(combo)
            cover = ArcSelection(window, s_plus)
            if compute_profile(inst, cover).is_cover():
                ineq = build_path_cover(inst, cover)
                records.append(Concordance(
                    COVER, s_plus, check_cover_necessary(inst, cover).holds,
                    check_cover_sufficient(inst, cover).status,
                    face_dimension(inst, ineq, max_arcs, max_nodes), full))
                continue
            pack = ArcSelection(window, s_plus, mode=PACK)
            if compute_profile(inst, pack).is_pack():
                ineq = build_path_pack(inst, pack)
                records.append(Concordance(
                    PACK, s_plus, check_pack_necessary(inst, pack).holds,
                    check_pack_sufficient(inst, pack).status,
                    face_dimension(inst, ineq, max_arcs, max_nodes), full))
    return records
