"""
Randomized oracle sweeps behind `main.py verify`.

Each suite draws small seeded instances, runs a fast routine and the matching
brute-force oracle, and collects a message for every disagreement.
"""

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction

from tqdm import tqdm

from .config import SHOW_PROGRESS
from .cuts import FIRST, SECOND, build_path_cover, build_path_pack, build_submodular_generic, check_validity, dominance_report
from .exceptions import InfeasibleFlowError, PathCutsError
from .facets import facet_concordance, split_at
from .instance import (INCOMING, OUTGOING, NonPathArc, PathInstance, check_a1, normalize_assumptions,
                       transform_supply, window_view)
from .mincut import ADD, DROP, PACK, ArcSelection, compute_profile, marginal, maxflow_value, set_value
from .solve import OPTIMAL, SolverConfig, branch_and_cut, mip_oracle

SCOPES = ["all", "mincut", "cuts", "facets", "solve"]

# Instances per suite at each scale
SCALES = {
    "quick": {"mincut": 200, "cuts": 40, "facets": 20, "solve": 15},
    "full": {"mincut": 10000, "cuts": 500, "facets": 200, "solve": 100},
}


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures


def random_small_instance(rng, n_max=4, max_in=2, max_out=1, demand_max=10, cap_max=15, path_max=10,
                          lot_sizing=False, max_arcs=None):
    """
    Seeded random path instance with nonnegative demands.

    lot_sizing gives exactly one incoming arc per node and no outgoing arcs.
    max_arcs caps the total arc count (arcs are dropped from the last nodes).
    """
    n = rng.randint(1, n_max)
    demand = [rng.randint(0, demand_max) for _ in range(n)]
    fwd = [rng.randint(1, path_max) for _ in range(n - 1)]
    bwd = [rng.randint(1, path_max) for _ in range(n - 1)]
    arcs = []
    next_id = 1
    for j in range(1, n + 1):
        n_in = 1 if lot_sizing else rng.randint(0, max_in)
        n_out = 0 if lot_sizing else rng.randint(0, max_out)
        for direction, count in ((INCOMING, n_in), (OUTGOING, n_out)):
            for _ in range(count):
                if max_arcs is not None and len(arcs) >= max_arcs:
                    break
                arcs.append(NonPathArc(next_id, j, direction, rng.randint(1, cap_max),
                                       Fraction(rng.randint(0, 50)), Fraction(rng.randint(0, 5))))
                next_id += 1
    fwd_cost = [rng.randint(0, 5) for _ in range(n - 1)]
    bwd_cost = [rng.randint(0, 5) for _ in range(n - 1)]
    return PathInstance(n, demand, fwd, bwd, arcs, fwd_cost, bwd_cost)


def random_selection(rng, inst, window=None, boundary=True):
    """Random window and (S+, S-, L-) on it; boundary stand-ins join S+/S- only if boundary is set."""
    if window is None:
        k = rng.randint(1, inst.n)
        window = (k, rng.randint(k, inst.n))
    view = window_view(inst, *window).instance
    ins = [a.id for a in view.e_plus if boundary or not a.is_boundary]
    outs = [a.id for a in view.e_minus if boundary or not a.is_boundary]
    s_plus = {t for t in ins if rng.random() < 0.5}
    s_minus = {t for t in outs if rng.random() < 0.4}
    l_minus = {t for t in outs if t not in s_minus and not view.arc_by_id[t].is_boundary and rng.random() < 0.4}
    return ArcSelection(window, s_plus, s_minus, l_minus)


def _with_supplies(rng, inst):
    """Negate some demands and replace them by dummy supply arcs."""
    demand = [-d if d and rng.random() < 0.3 else d for d in inst.demand]
    return transform_supply(replace(inst, demand=tuple(demand)))


def _marginal_oracle(view, sel, arc, profile):
    """(side, expected) for one arc by value differences, or None when the arc has no marginal to compare."""
    t = arc.id
    if arc.is_dummy_supply or (not arc.incoming and arc.is_boundary):
        return None
    if arc.incoming:
        if t in sel.s_plus:
            return DROP, profile.v - set_value(view, sel.s_plus - {t}, sel.s_minus, sel.l_minus)
        return ADD, set_value(view, sel.s_plus | {t}, sel.s_minus, sel.l_minus) - profile.v
    if t in sel.l_minus:
        return DROP, set_value(view, sel.s_plus, sel.s_minus | {t}, sel.l_minus - {t}) - profile.v
    return ADD, profile.v - set_value(view, sel.s_plus, sel.s_minus - {t}, sel.l_minus | {t})


def verify_mincut(rng, count, progress=None):
    """Recursion value against max flow, the constant min-cut invariant, and marginals against value differences."""
    result = SuiteResult("mincut")
    for _ in range(count):
        if progress:
            progress.update(1)
        inst = random_small_instance(rng, n_max=6)
        mixed = rng.random() < 0.25
        if mixed:
            inst = _with_supplies(rng, inst)
        sel = random_selection(rng, inst)
        if mixed:
            view = window_view(inst, *sel.window).instance
            sel = replace(sel, s_plus=sel.s_plus | {a.id for a in view.dummy_arcs})
        try:
            flow_value = maxflow_value(inst, sel)
        except InfeasibleFlowError:
            # the fixed dummy supply cannot be routed; no value to compare
            continue
        profile = compute_profile(inst, sel)
        result.checked += 1
        if profile.v != flow_value:
            result.failures.append(f"window {sel.window}: recursion {profile.v} != max flow {flow_value} ({sel.snapshot()})")
            continue
        if any(min(mu, md) != profile.v for mu, md in zip(profile.m_u, profile.m_d)):
            result.failures.append(f"window {sel.window}: min(m_u, m_d) not constant ({profile.m_u}, {profile.m_d})")
        view = window_view(inst, *sel.window).instance
        for arc in view.arcs:
            try:
                oracle = _marginal_oracle(view, sel, arc, profile)
                if oracle is None:
                    continue
                side, expected = oracle
                got = marginal(inst, sel, arc.id, side, profile)
            except InfeasibleFlowError:
                # closing a sink edge can strand dummy supply
                continue
            if got != expected:
                result.failures.append(f"window {sel.window}: marginal of arc {arc.id} is {got}, oracle {expected}")
    return result


def verify_cuts(rng, count, progress=None):
    """Every built inequality passes exact enumeration; path coefficients never exceed merged ones."""
    result = SuiteResult("cuts")
    for _ in range(count):
        inst = random_small_instance(rng, n_max=3, max_arcs=6)
        sel = random_selection(rng, inst, boundary=False)
        profile = compute_profile(inst, sel)
        candidates = []
        if profile.is_cover():
            candidates.append(build_path_cover(inst, sel))
            candidates.append(build_submodular_generic(inst, sel, FIRST))
        pack = ArcSelection(sel.window, sel.s_plus, sel.s_minus, mode=PACK)
        if compute_profile(inst, pack).is_pack():
            candidates.append(build_path_pack(inst, pack))
            candidates.append(build_submodular_generic(inst, pack, SECOND))
        for ineq in candidates:
            result.checked += 1
            cert = check_validity(inst, ineq)
            if not cert.valid:
                result.failures.append(f"{ineq.provenance} violated by {cert.max_violation}: {ineq.to_lp()}")
        view = window_view(inst, *sel.window).instance
        outside = {a.id for a in view.e_plus} - sel.s_plus
        if not view.e_minus and len(outside) == 1:
            second = build_submodular_generic(inst, ArcSelection(sel.window, sel.s_plus, mode=PACK), SECOND)
            first = build_submodular_generic(inst, ArcSelection(sel.window, sel.s_plus | outside), FIRST)
            result.checked += 1
            if second.normalized() != first.normalized():
                result.failures.append(f"one-arc pack on {sel.window} differs from the full cover: "
                                       f"{second.to_lp()} vs {first.to_lp()}")
        if sel.window[0] < sel.window[1]:
            for s in (ArcSelection(sel.window, sel.s_plus, sel.s_minus), pack):
                report = dominance_report(inst, s)
                result.checked += 1
                if not report.holds:
                    result.failures.append(f"dominance fails on {s.snapshot()}: {report.path} vs {report.merged}")
        if progress:
            progress.update(1)
    return result


def verify_facets(rng, count, progress=None):
    """Facet verdicts against exact face dimensions for every S+ of tiny instances, and additive splits."""
    result = SuiteResult("facets")
    for i in range(count):
        if progress:
            progress.update(1)
        inst = random_small_instance(rng, n_max=3, max_in=2, max_out=1, max_arcs=4, lot_sizing=i % 2 == 0,
                                     demand_max=8, cap_max=12, path_max=8)
        inst = replace(inst, demand=tuple(max(1, d) for d in inst.demand))
        inst, _ = normalize_assumptions(inst)
        if not inst.e_plus or not all(check_a1(inst).values()):
            continue
        for record in facet_concordance(inst):
            result.checked += 1
            if record.discordant:
                result.failures.append(
                    f"{record.kind} {sorted(record.s_plus)}: necessary={record.necessary}, "
                    f"sufficient={record.sufficient}, face dimension {record.dimension} of {record.full}")
        s_plus = {a.id for a in inst.e_plus if rng.random() < 0.6}
        sel = ArcSelection((1, inst.n), s_plus)
        for j in range(2, inst.n + 1):
            split = split_at(inst, sel, j)
            if split is not None:
                result.checked += 1
                if not split.additive:
                    result.failures.append(
                        f"{split.kind} split at {j} of {sorted(s_plus)}: {split.v} != {split.v_left} + {split.v_right}")
    return result


def verify_solve(rng, count, progress=None):
    """Branch-and-cut optimum against the enumeration oracle, with and without cuts."""
    result = SuiteResult("solve")
    for _ in range(count):
        inst = random_small_instance(rng, n_max=4, max_in=2, max_out=1, max_arcs=10)
        oracle = mip_oracle(inst)
        for mode in ("spi", "none"):
            report = branch_and_cut(inst, SolverConfig(mode=mode, show_progress=False))
            result.checked += 1
            if oracle.optimum is None:
                if report.z_ub is not None:
                    result.failures.append(f"{mode}: oracle infeasible but incumbent {report.z_ub}")
                continue
            if report.status != OPTIMAL or report.z_ub is None:
                result.failures.append(f"{mode}: status {report.status}, oracle optimum {oracle.optimum}")
                continue
            target = float(oracle.optimum)
            if abs(report.z_ub - target) > 1e-6 * max(1.0, abs(target)):
                result.failures.append(f"{mode}: branch-and-cut {report.z_ub} != oracle {target}")
        if progress:
            progress.update(1)
    return result


SUITES = {
    "mincut": verify_mincut,
    "cuts": verify_cuts,
    "facets": verify_facets,
    "solve": verify_solve,
}


def run_verification(scope="all", scale="quick", seed=0, show_progress=SHOW_PROGRESS):
    """Run the requested suites; returns a list of SuiteResult."""
    names = list(SUITES) if scope == "all" else [scope]
    results = []
    for name in names:
        count = SCALES[scale][name]
        rng = random.Random(f"{seed}-{name}")
        with tqdm(total=count, desc=f"🔍 {name}", unit="inst", disable=not show_progress, leave=False) as bar:
            try:
                results.append(SUITES[name](rng, count, bar))
            except (PathCutsError, InfeasibleFlowError) as e:
                suite = SuiteResult(name)
                suite.failures.append(f"{type(e).__name__}: {e}")
                results.append(suite)
    return results
