"""
Path cover, path pack, flow cover, flow pack and generic submodular inequalities.

Every builder works on the standalone window view and then lifts the result to
the full instance: a boundary stand-in arc contributes its flow through the path
variable it represents (i_e or r_e) and its indicator is the constant 1.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import LpInfeasibleError, SelectionError
from .instance import merged_mode, window_view
from .mincut import COVER, PACK, compute_profile, set_value
from .polytope import FlowColumns, pattern_rows, point_from_values, x_patterns
from .simplex import Tableau

PATH_COVER = "PathCover"
PATH_PACK = "PathPack"
FLOW_COVER = "FlowCover"
FLOW_PACK = "FlowPack"
SUBMODULAR_GENERIC = "SubmodularGeneric"

FIRST = "first"
SECOND = "second"


@dataclass(frozen=True)
class Provenance:
    kind: str
    window: tuple
    s_plus: tuple = ()
    s_minus: tuple = ()
    l_minus: tuple = ()
    mode: str = COVER

    @classmethod
    def of(cls, kind, sel):
        return cls(kind, tuple(sel.window), tuple(sorted(sel.s_plus)), tuple(sorted(sel.s_minus)),
                   tuple(sorted(sel.l_minus)), sel.mode)

    def __str__(self):
        k, l = self.window
        parts = [f"{self.kind} [{k},{l}]", f"S+={{{','.join(map(str, self.s_plus))}}}"]
        if self.s_minus:
            parts.append(f"S-={{{','.join(map(str, self.s_minus))}}}")
        if self.l_minus:
            parts.append(f"L-={{{','.join(map(str, self.l_minus))}}}")
        return " ".join(parts)


@dataclass(frozen=True)
class LinearInequality:
    """sum y_coef*y + x_coef*x + i_coef*i + r_coef*r <= rhs over full-instance variables."""

    y_coef: dict = field(default_factory=dict)
    x_coef: dict = field(default_factory=dict)
    i_coef: dict = field(default_factory=dict)
    r_coef: dict = field(default_factory=dict)
    rhs: Fraction = Fraction(0)
    sense: str = "<="
    provenance: Provenance | None = None

    def terms(self):
        """(kind, index, coefficient) triples in a fixed order."""
        for kind in ("y", "x", "i", "r"):
            coefs = getattr(self, f"{kind}_coef")
            for idx in sorted(coefs):
                if coefs[idx]:
                    yield kind, idx, coefs[idx]

    def lhs(self, point):
        return sum(coef * getattr(point, kind).get(idx, 0) for kind, idx, coef in self.terms())

    def violation(self, point):
        """LHS - RHS at a point (positive means the point is cut off)."""
        return self.lhs(point) - self.rhs

    def normalized(self):
        """Canonical form: terms and rhs scaled by the magnitude of the leading coefficient."""
        terms = list(self.terms())
        if not terms:
            return ((), Fraction(self.rhs))
        scale = abs(Fraction(terms[0][2]))
        return (
            tuple((kind, idx, Fraction(coef) / scale) for kind, idx, coef in terms),
            Fraction(self.rhs) / scale,
        )

    def to_lp(self):
        """LP-file style text with the provenance as a trailing comment."""
        parts = []
        for kind, idx, coef in self.terms():
            sign = "-" if coef < 0 else "+"
            parts.append(f"{sign} {abs(coef)} {kind}{idx}")
        body = " ".join(parts) if parts else "0"
        text = f"{body} {self.sense} {self.rhs}"
        if self.provenance is not None:
            text += f"  \\ {self.provenance}"
        return text


def _lift(view, y, x, rhs, provenance):
    """Map window-local coefficients onto full-instance variables."""
    lifted = {"y": defaultdict(Fraction), "x": defaultdict(Fraction),
              "i": defaultdict(Fraction), "r": defaultdict(Fraction)}
    rhs = Fraction(rhs)
    for t, coef in y.items():
        arc = view.arc_by_id[t]
        if arc.is_boundary:
            kind, edge = arc.path_edge
            lifted[kind][edge] += coef
        else:
            lifted["y"][t] += coef
    for t, coef in x.items():
        if view.arc_by_id[t].is_boundary:
            rhs -= coef
        else:
            lifted["x"][t] += coef
    clean = {kind: {k: v for k, v in coefs.items() if v} for kind, coefs in lifted.items()}
    return LinearInequality(clean["y"], clean["x"], clean["i"], clean["r"], rhs, "<=", provenance)


def build_path_cover(inst, sel, kind=PATH_COVER):
    """
    Path cover inequality of a cover selection.

    y(S+) + sum_{S+} (c_t - lambda_j)+ (1 - x_t)
        <= d + c(S-) + sum_{L-} min(c_t, lambda_j) x_t + y(E- minus (L- u S-))

    Raises:
        SelectionError: If the selection is not in cover mode or (S+, S-) is
            not a path cover of its window.
    """
    if sel.mode != COVER:
        raise SelectionError("path cover inequalities need a cover-mode selection")
    view = window_view(inst, *sel.window).instance
    profile = compute_profile(inst, sel)
    if not profile.is_cover():
        raise SelectionError(f"selection on {sel.window} is not a path cover (v={profile.v})")
    lam = profile.lambda_

    y, x = {}, {}
    rhs = Fraction(sum(view.demand) + sum(profile.cs_minus))
    for t in sel.s_plus:
        arc = view.arc_by_id[t]
        y[t] = Fraction(1)
        if arc.is_dummy_supply:
            continue
        coef = max(arc.capacity - lam[arc.node - 1], 0)
        x[t] = Fraction(-coef)
        rhs -= coef
    for t in sel.l_minus:
        arc = view.arc_by_id[t]
        x[t] = Fraction(-min(arc.capacity, lam[arc.node - 1]))
    for t in sel.k_minus(view):
        y[t] = Fraction(-1)
    return _lift(view, y, x, rhs, Provenance.of(kind, sel))


def build_path_pack(inst, sel, kind=PATH_PACK):
    """
    Path pack inequality of a pack selection (L- must be empty).

    y(S+) + sum_{E+ minus S+} (y_t - min(c_t, mu_j) x_t) + sum_{S-} (c_t - mu_j)+ (1 - x_t)
        <= c(S+) + y(E- minus S-)

    Raises:
        SelectionError: If the selection is not a pack-mode path pack with L- empty.
    """
    if sel.mode != PACK:
        raise SelectionError("path pack inequalities need a pack-mode selection")
    if sel.l_minus:
        raise SelectionError("path pack inequalities are built with L- empty")
    view = window_view(inst, *sel.window).instance
    profile = compute_profile(inst, sel)
    if not profile.is_pack():
        raise SelectionError(f"selection on {sel.window} is not a path pack (v={profile.v})")
    mu = profile.mu

    y, x = {}, {}
    rhs = Fraction(sum(profile.cs_plus))
    for arc in view.e_plus:
        y[arc.id] = Fraction(1)
        if arc.id not in sel.s_plus:
            x[arc.id] = Fraction(-min(arc.capacity, mu[arc.node - 1]))
    for t in sel.s_minus:
        arc = view.arc_by_id[t]
        coef = max(arc.capacity - mu[arc.node - 1], 0)
        x[t] = Fraction(-coef)
        rhs -= coef
    for t in sel.k_minus(view):
        y[t] = Fraction(-1)
    return _lift(view, y, x, rhs, Provenance.of(kind, sel))


def _merged_profile(inst, sel):
    merged = merged_mode(inst, sel.window)
    return merged, compute_profile(merged, sel)


def build_flow_cover(inst, sel):
    """Flow cover inequality: the path cover inequality of the merged window.

    Raises:
        SelectionError: If lambda = c(S+) - d - c(S-) is not positive.
    """
    merged, profile = _merged_profile(inst, sel)
    lam = sum(profile.cs_plus) - sum(profile.demand) - sum(profile.cs_minus)
    if lam <= 0:
        raise SelectionError(f"merged window {sel.window} is not a flow cover (lambda={lam})")
    return build_path_cover(merged, sel, kind=FLOW_COVER)


def build_flow_pack(inst, sel):
    """Flow pack inequality: the path pack inequality of the merged window.

    Raises:
        SelectionError: If mu = d - c(S+) + c(S-) is not positive.
    """
    merged, profile = _merged_profile(inst, sel)
    mu = sum(profile.demand) - sum(profile.cs_plus) + sum(profile.cs_minus)
    if mu <= 0:
        raise SelectionError(f"merged window {sel.window} is not a flow pack (mu={mu})")
    return build_path_pack(merged, sel, kind=FLOW_PACK)


def build_submodular_generic(inst, sel, form=FIRST):
    """
    Submodular inequality with every coefficient taken from max-flow values.

    The coefficient sets are fixed by the selection (K+ = S+ in cover mode,
    E+ in pack mode; K- = E- minus S- and L-) while the objective set varies.
    The first form uses rho_t(C minus t) and rho_t(empty set); the second uses
    rho_t(E minus t) and rho_t(C). Dummy supply arcs stay in every objective set.

    Raises:
        InfeasibleFlowError: If some value-function problem is infeasible.
    """
    view = window_view(inst, *sel.window).instance
    sel.validate(view)
    k_plus = sel.k_plus(view)
    k_minus = sel.k_minus(view)
    out_ids = {a.id for a in view.e_minus}
    in_ids = {a.id for a in view.e_plus}
    dummies = {a.id for a in view.dummy_arcs}

    def value(s_plus, l_minus):
        return set_value(view, frozenset(s_plus) & k_plus, out_ids - k_minus - l_minus, frozenset(l_minus))

    def marginal_in(t, s_plus, l_minus, base):
        """v(C with t added) - v(C)."""
        arc = view.arc_by_id[t]
        if arc.incoming:
            return value(s_plus | {t}, l_minus) - base
        return value(s_plus, l_minus | {t}) - base

    def marginal_out(t, s_plus, l_minus, base):
        """v(C) - v(C with t removed)."""
        arc = view.arc_by_id[t]
        if arc.incoming:
            return base - value(s_plus - {t}, l_minus)
        return base - value(s_plus, l_minus - {t})

    s_plus, l_minus = set(sel.s_plus), set(sel.l_minus)
    v_c = value(s_plus, l_minus)
    members = (s_plus | l_minus) - dummies
    others = (in_ids | out_ids) - s_plus - l_minus

    if form == FIRST:
        inner = {t: marginal_out(t, s_plus, l_minus, v_c) for t in members}
        base_sp, base_lm = set(dummies), set()
        base_v = value(base_sp, base_lm)
        outer = {t: marginal_in(t, base_sp, base_lm, base_v) for t in others}
    elif form == SECOND:
        full_sp, full_lm = set(in_ids), out_ids - k_minus
        full_v = value(full_sp, full_lm)
        inner = {t: marginal_out(t, full_sp, full_lm, full_v) for t in members}
        outer = {t: marginal_in(t, s_plus, l_minus, v_c) for t in others}
    else:
        raise ValueError(f"unknown submodular form '{form}'")

    y = {t: Fraction(1) for t in k_plus}
    y.update({t: Fraction(-1) for t in k_minus})
    x = defaultdict(Fraction)
    rhs = Fraction(v_c)
    # rho * (1 - xbar) on the left; xbar = x for incoming arcs, 1 - x for outgoing
    for t, rho in inner.items():
        if view.arc_by_id[t].incoming:
            rhs -= rho
            x[t] -= rho
        else:
            x[t] += rho
    # rho * xbar on the right, moved left
    for t, rho in outer.items():
        if view.arc_by_id[t].incoming:
            x[t] -= rho
        else:
            rhs += rho
            x[t] += rho
    return _lift(view, y, dict(x), rhs, Provenance.of(SUBMODULAR_GENERIC, sel))


# ---------------------------------------------------------------------------
# Oracles


@dataclass
class ValidityCertificate:
    valid: bool
    max_violation: Fraction | None
    witness: object = None
    patterns_checked: int = 0


def check_validity(inst, ineq, max_arcs=8):
    """
    Exact validity check by enumerating every open/closed pattern.

    For each pattern, LHS - RHS is maximized over the continuous slice with an
    exact rational LP. The inequality is valid iff no slice exceeds 0.

    Returns:
        ValidityCertificate with the largest LHS - RHS found (None if the
        instance is infeasible) and a maximizing point when invalid.

    Raises:
        BudgetExceededError: If the instance has more than max_arcs arcs.
    """
    columns = FlowColumns(inst)
    objective = [Fraction(0)] * len(columns)
    for kind, idx, coef in ineq.terms():
        if kind != "x":
            objective[columns.index[(kind, idx)]] -= Fraction(coef)

    best, witness, checked = None, None, 0
    for pattern in x_patterns(inst, max_arcs):
        checked += 1
        rows, senses, rhs = pattern_rows(inst, columns, pattern)
        try:
            tableau = Tableau(objective, rows, senses, rhs, exact=True).optimize()
        except LpInfeasibleError:
            continue
        constant = sum(Fraction(c) * pattern.get(t, 0) for t, c in ineq.x_coef.items())
        gap = -tableau.objective + constant - Fraction(ineq.rhs)
        if best is None or gap > best:
            best = gap
            witness = point_from_values(columns, pattern, tableau.values())
    valid = best is None or best <= 0
    return ValidityCertificate(valid, best, None if valid else witness, checked)


@dataclass
class DominanceReport:
    """Per-node path coefficients against the uniform merged-window coefficient."""

    mode: str
    path: tuple
    merged: int
    holds: bool
    path_ineq: LinearInequality | None = None
    merged_ineq: LinearInequality | None = None


def dominance_report(inst, sel):
    """
    Compare lambda_j (cover) or mu_j (pack) with the merged-window value.

    Returns:
        DominanceReport; holds is True iff every path coefficient is at most the
        merged one. The inequalities are attached when they can be built.
    """
    profile = compute_profile(inst, sel)
    _, merged = _merged_profile(inst, sel)
    if sel.mode == COVER:
        path, merged_value = profile.lambda_, merged.lambda_[0]
        builders = (build_path_cover, build_flow_cover)
    else:
        path, merged_value = profile.mu, merged.mu[0]
        builders = (build_path_pack, build_flow_pack)

    built = []
    for builder in builders:
        try:
            built.append(builder(inst, sel))
        except SelectionError:
            built.append(None)
    return DominanceReport(sel.mode, path, merged_value, all(v <= merged_value for v in path), *built)
