"""
Heuristic separation of path cover and path pack inequalities.

For every subpath up to the configured length, two knapsack-style greedy
rankings pick cover candidates for S+ from the fractional point and a third
greedy picks a pack. The min-cut profile of each choice decides which outgoing
arcs go to L-, and the resulting inequalities are kept when the point violates
them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .config import CUT_MODE, MAX_CUTS_PER_ROUND, MAX_PATH_FRAC, SEP_EPS
from .cuts import build_flow_cover, build_flow_pack, build_path_cover, build_path_pack
from .exceptions import InfeasibleFlowError, SelectionError
from .instance import merged_mode, window_view
from .mincut import PACK, ArcSelection, compute_profile, maxflow_value

SPI = "spi"
MSPI = "mspi"
COV = "cov"
PAC = "pac"
NONE = "none"


@dataclass
class FractionalPoint:
    """LP values of y, x (by arc id) and i, r (by path edge)."""

    y: dict = field(default_factory=dict)
    x: dict = field(default_factory=dict)
    i: dict = field(default_factory=dict)
    r: dict = field(default_factory=dict)


@dataclass
class SeparationConfig:
    """Separation settings; max_path_len overrides max_path_frac when set."""

    max_path_frac: float = MAX_PATH_FRAC
    max_path_len: int | None = None
    eps: float = SEP_EPS
    max_cuts: int = MAX_CUTS_PER_ROUND
    mode: str = CUT_MODE
    verbose: bool = True

    def path_limit(self, n):
        if self.max_path_len is not None:
            return max(1, min(n, self.max_path_len))
        return max(1, min(n, math.ceil(self.max_path_frac * n - 1e-9)))


def by_score(arc, y, x):
    """Sort key: largest (y* - c(1 - x*)) / c first."""
    return (-(y - arc.capacity * (1.0 - x)) / arc.capacity, -arc.capacity, arc.id)


def by_slack(arc, y, x):
    """Sort key: smallest (1 - x*) / c first."""
    return ((1.0 - x) / arc.capacity, -arc.capacity, arc.id)


def _knapsack_order(view, pt, eps, rank=by_score):
    """Greedy S+ for a window view: (dummy ids, arcs added in order, cover closed?)."""
    capacity = sum(view.demand)
    dummies = [a for a in view.e_plus if a.is_dummy_supply]
    total = sum(a.capacity for a in dummies)
    candidates = []
    for arc in view.e_plus:
        if arc.is_boundary or arc.is_dummy_supply:
            continue
        x = pt.x.get(arc.id, 0.0)
        if x <= eps:
            continue
        candidates.append((rank(arc, pt.y.get(arc.id, 0.0), x), arc))
    candidates.sort(key=lambda item: item[0])

    added = []
    for _, arc in candidates:
        if total > capacity:
            break
        added.append(arc.id)
        total += arc.capacity
    return [a.id for a in dummies], added, total > capacity


def _pack_order(view, pt):
    """Nearly saturated arcs first ((c - y*) / c ascending), kept while c(S+) stays below the window demand."""
    capacity = sum(view.demand)
    s_plus = {a.id for a in view.e_plus if a.is_dummy_supply}
    total = sum(a.capacity for a in view.e_plus if a.is_dummy_supply)
    candidates = sorted(
        (a for a in view.e_plus if not a.is_boundary and not a.is_dummy_supply),
        key=lambda a: ((a.capacity - pt.y.get(a.id, 0.0)) / a.capacity, -a.capacity, a.id),
    )
    for arc in candidates:
        if total + arc.capacity < capacity:
            s_plus.add(arc.id)
            total += arc.capacity
    return frozenset(s_plus)


def knapsack_select(inst, window, pt, eps=SEP_EPS, rank=by_score):
    """
    Greedy S+ for a window.

    Incoming arcs with x* > eps are ranked by rank (by default (y* - c(1 - x*)) / c,
    largest first), ties going to the larger capacity and then the smaller id, and
    added until their capacity exceeds the window demand. Dummy supply arcs are
    always included.

    Returns:
        frozenset of arc ids.
    """
    view = window_view(inst, *window).instance
    dummies, added, _ = _knapsack_order(view, pt, eps, rank)
    return frozenset(dummies) | frozenset(added)


def pack_select(inst, window, pt):
    """Greedy pack S+ for a window (dummy supply arcs included)."""
    return _pack_order(window_view(inst, *window).instance, pt)


def _l_minus(view, profile, pt, lam=None):
    """Outgoing arcs t of node j with lambda_j x*_t < y*_t and lambda_j < c_t."""
    chosen = set()
    for arc in view.e_minus:
        if arc.is_boundary:
            continue
        lam_j = profile.lambda_[arc.node - 1] if lam is None else lam
        if lam_j * pt.x.get(arc.id, 0.0) < pt.y.get(arc.id, 0.0) and lam_j < arc.capacity:
            chosen.add(arc.id)
    return frozenset(chosen)


def _window_cuts(inst, window, pt, cfg):
    """Candidate inequalities of one window for the configured arm."""
    view = window_view(inst, *window).instance
    if sum(view.demand) < 0:
        return [], 0
    if view.dummy_arcs:
        try:
            maxflow_value(inst, ArcSelection(window, frozenset(a.id for a in view.dummy_arcs)))
        except InfeasibleFlowError:
            return [], 1

    cover_sets, pack_sets = [], []
    for rank in (by_score, by_slack):
        dummies, added, closed = _knapsack_order(view, pt, cfg.eps, rank)
        s_plus = frozenset(dummies) | frozenset(added)
        if s_plus not in cover_sets:
            cover_sets.append(s_plus)
        for sp in (s_plus, s_plus - {added[-1]} if closed and added else None):
            if sp is not None and sp not in pack_sets:
                pack_sets.append(sp)
    greedy_pack = _pack_order(view, pt)
    if greedy_pack not in pack_sets:
        pack_sets.append(greedy_pack)

    built = []
    merged = cfg.mode == MSPI
    base = merged_mode(inst, window) if merged else inst

    if cfg.mode in (SPI, COV, MSPI):
        for s_plus in cover_sets:
            profile = compute_profile(base, ArcSelection(window, s_plus))
            if profile.is_cover():
                lam = profile.lambda_[0] if merged else None
                sel = ArcSelection(window, s_plus, l_minus=_l_minus(view, profile, pt, lam))
                built.append((build_flow_cover if merged else build_path_cover, sel))

    if cfg.mode in (SPI, PAC, MSPI):
        for sp in pack_sets:
            sel = ArcSelection(window, sp, mode=PACK)
            if compute_profile(base, sel).is_pack():
                built.append((build_flow_pack if merged else build_path_pack, sel))

    cuts = []
    for builder, sel in built:
        try:
            cuts.append(builder(inst, sel))
        except SelectionError:
            # flow cover/pack with a zero coefficient, or a merged tie
            continue
    return cuts, 0


def separate(inst, pt, cfg=None):
    """
    Violated cover and pack inequalities at a fractional point.

    Windows are scanned by increasing length up to cfg.path_limit(n). Cuts are
    deduplicated on their normalized form, sorted by violation (then window and
    provenance) and capped at cfg.max_cuts.

    Returns:
        list of LinearInequality.
    """
    cfg = cfg or SeparationConfig()
    if cfg.mode == NONE:
        return []
    best = {}
    skipped = 0
    for length in range(1, cfg.path_limit(inst.n) + 1):
        for k in range(1, inst.n - length + 2):
            window = (k, k + length - 1)
            cuts, infeasible = _window_cuts(inst, window, pt, cfg)
            skipped += infeasible
            for cut in cuts:
                violation = float(cut.violation(pt))
                if violation <= cfg.eps:
                    continue
                key = cut.normalized()
                if key not in best or violation > best[key][0]:
                    best[key] = (violation, cut)

    if skipped and cfg.verbose:
        print(f"⚠️  Skipped {skipped} selections whose value-function problem is infeasible")

    ranked = sorted(best.values(), key=lambda item: (-item[0], item[1].provenance.window, str(item[1].provenance)))
    return [cut for _, cut in ranked[:cfg.max_cuts]]
