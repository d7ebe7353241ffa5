from fractions import Fraction

import pytest

from src.cuts import (
    FIRST,
    FLOW_COVER,
    PATH_COVER,
    LinearInequality,
    build_flow_cover,
    build_flow_pack,
    build_path_cover,
    build_path_pack,
    build_submodular_generic,
    check_validity,
    dominance_report,
)
from src.exceptions import BudgetExceededError, SelectionError
from src.mincut import PACK, ArcSelection


def as_ints(coefs):
    return {k: int(v) for k, v in coefs.items()}


def test_path_cover_example(example1, cover_sel):
    ineq = build_path_cover(example1, cover_sel)
    assert as_ints(ineq.y_coef) == {2: 1, 3: 1}
    assert as_ints(ineq.x_coef) == {2: -10, 3: -10}
    assert ineq.rhs == 20
    assert not ineq.i_coef and not ineq.r_coef
    assert ineq.provenance.kind == PATH_COVER


def test_path_pack_example_drops_zero_coefficient(example1, pack_sel):
    ineq = build_path_pack(example1, pack_sel)
    assert as_ints(ineq.y_coef) == {1: 1, 2: 1, 3: 1, 4: 1}
    assert as_ints(ineq.x_coef) == {1: -10, 2: -10}
    assert ineq.rhs == 30


def test_flow_cover_uses_merged_lambda(example1, cover_sel):
    ineq = build_flow_cover(example1, cover_sel)
    assert as_ints(ineq.x_coef) == {2: -10, 3: -5}
    assert ineq.rhs == 25
    assert ineq.provenance.kind == FLOW_COVER


def test_flow_pack_uses_merged_mu(example1, pack_sel):
    ineq = build_flow_pack(example1, pack_sel)
    assert as_ints(ineq.x_coef) == {1: -10, 2: -10, 4: -10}
    assert ineq.rhs == 30


def test_path_cuts_are_valid(example1, cover_sel, pack_sel):
    for ineq in (build_path_cover(example1, cover_sel), build_path_pack(example1, pack_sel),
                 build_flow_cover(example1, cover_sel), build_flow_pack(example1, pack_sel)):
        cert = check_validity(example1, ineq)
        assert cert.valid, ineq.to_lp()
        assert cert.patterns_checked == 16
        assert cert.max_violation <= 0


def test_cover_is_tight_somewhere(example1, cover_sel):
    cert = check_validity(example1, build_path_cover(example1, cover_sel))
    assert cert.max_violation == 0


def test_invalid_inequality_is_caught(example1):
    ineq = LinearInequality(y_coef={2: Fraction(1)}, rhs=Fraction(5))
    cert = check_validity(example1, ineq)
    assert not cert.valid
    assert cert.max_violation == 25
    assert cert.witness.y[2] == 30


def test_validity_budget(example1):
    ineq = LinearInequality(y_coef={1: Fraction(1)}, rhs=Fraction(100))
    with pytest.raises(BudgetExceededError):
        check_validity(example1, ineq, max_arcs=3)


def test_generic_first_form_matches_cover_on_selected_arcs(example1, cover_sel):
    generic = build_submodular_generic(example1, cover_sel, FIRST)
    cover = build_path_cover(example1, cover_sel)
    assert generic.y_coef == cover.y_coef
    assert generic.rhs == cover.rhs
    assert generic.x_coef[2] == cover.x_coef[2]
    assert generic.x_coef[3] == cover.x_coef[3]
    # arcs outside S+ enter with their stand-alone value
    assert generic.x_coef[1] == -20
    assert generic.x_coef[4] == -20
    assert check_validity(example1, generic).valid


def test_generic_unknown_form(example1, cover_sel):
    with pytest.raises(ValueError):
        build_submodular_generic(example1, cover_sel, "third")


def test_normalized_is_scale_free():
    a = LinearInequality(y_coef={1: Fraction(2)}, x_coef={1: Fraction(-4)}, rhs=Fraction(6))
    b = LinearInequality(y_coef={1: Fraction(1)}, x_coef={1: Fraction(-2)}, rhs=Fraction(3))
    assert a.normalized() == b.normalized()


def test_to_lp_carries_provenance(example1, cover_sel):
    text = build_path_cover(example1, cover_sel).to_lp()
    assert text.startswith("+ 1 y2 + 1 y3 - 10 x2 - 10 x3 <= 20")
    assert "PathCover [1,4] S+={2,3}" in text


def test_violation_at_point(example1, cover_sel):
    from src.instance import FeasiblePoint

    ineq = build_path_cover(example1, cover_sel)
    point = FeasiblePoint(y={2: Fraction(35, 2), 3: Fraction(15)}, x={2: Fraction(1, 2), 3: Fraction(1, 2)})
    assert ineq.violation(point) == Fraction(5, 2)


def test_dominance_report(example1, cover_sel, pack_sel):
    cover = dominance_report(example1, cover_sel)
    assert cover.path == (5, 25, 20, 5)
    assert cover.merged == 25
    assert cover.holds
    assert cover.path_ineq is not None and cover.merged_ineq is not None

    pack = dominance_report(example1, pack_sel)
    assert pack.path == (10, 10, 0, 0)
    assert pack.merged == 10
    assert pack.holds


def test_non_cover_is_rejected(example1):
    with pytest.raises(SelectionError):
        build_path_cover(example1, ArcSelection((1, 4), {1}))


def test_mode_mismatch_is_rejected(example1, cover_sel, pack_sel):
    with pytest.raises(SelectionError):
        build_path_pack(example1, cover_sel)
    with pytest.raises(SelectionError):
        build_path_cover(example1, pack_sel)


def test_pack_rejects_l_minus():
    from src.instance import INCOMING, OUTGOING, NonPathArc, PathInstance

    inst = PathInstance(1, [5], [], [], [NonPathArc(1, 1, INCOMING, 3), NonPathArc(2, 1, OUTGOING, 4)])
    with pytest.raises(SelectionError):
        build_path_pack(inst, ArcSelection((1, 1), {1}, l_minus={2}, mode=PACK))


def test_random_cuts_are_valid(small_instances):
    import random

    from src.mincut import compute_profile
    from src.verify import random_selection

    rng = random.Random(3)
    checked = 0
    for inst in small_instances(60, seed=11, n_max=3, max_arcs=6):
        sel = random_selection(rng, inst, boundary=False)
        if compute_profile(inst, sel).is_cover():
            assert check_validity(inst, build_path_cover(inst, sel)).valid
            checked += 1
    assert checked > 0


def test_single_outside_arc_pack_equals_full_cover(small_instances):
    """With one incoming arc outside S+ and S- empty, both submodular forms give the same cut."""
    from src.cuts import SECOND

    compared = 0
    for inst in small_instances(30, seed=41, n_max=3, lot_sizing=True):
        ids = sorted(a.id for a in inst.arcs)
        window = (1, inst.n)
        for j in ids:
            pack = build_submodular_generic(inst, ArcSelection(window, set(ids) - {j}, mode=PACK), SECOND)
            cover = build_submodular_generic(inst, ArcSelection(window, set(ids)), FIRST)
            assert pack.normalized() == cover.normalized()
            compared += 1
    assert compared > 0
