"""Weight functions, decreasing systems, and admissibility machinery."""

import numpy as np
import pytest

from ultranorm import sequences as sq
from ultranorm import weights as wt
from ultranorm.grids import BoxGrid

GEVREY = sq.WeightSequence.gevrey(1.0)
GRID = BoxGrid(20.0, 201, 1)


def make_assoc_system():
    return wt.AssociatedExpSystem(GEVREY, 1)


def test_weight_eval_shapes_and_values():
    w = wt.ExponentialWeight(1.0, 1)
    pts = np.array([[0.0], [2.0], [-3.0]])
    assert np.allclose(w.log_eval(pts), [0.0, 2.0, 3.0])
    g = wt.GaussianWeight(0.5, 2)
    assert g.log_eval(np.array([[3.0, 4.0]]))[0] == pytest.approx(-0.5 * 25.0)


def test_infimum_weight_monotone_in_term_count():
    sys_ = make_assoc_system()
    terms = [(np.log(j + 1.0), sys_.member(j)) for j in (1, 2, 3)]
    two = wt.InfimumWeight(terms[:2])
    three = wt.InfimumWeight(terms)
    pts = GRID.points()
    assert np.all(three.log_eval(pts) <= two.log_eval(pts) + 1e-12)


def test_check_decreasing_accepts_assoc_and_rejects_increasing():
    res = wt.check_decreasing(make_assoc_system(), 5, GRID)
    assert res.ok
    bad = wt.ExplicitSystem([wt.ConstantWeight(1.0, 1),
                             wt.ConstantWeight(2.0, 1)])
    res = wt.check_decreasing(bad, 2, GRID)
    assert not res.ok
    assert res.worst_gap == pytest.approx(np.log(2.0), abs=1e-12)
    assert res.worst_n == 1


def test_condition_s_passes_for_shrinking_quotients():
    for n, m in ((1, 2), (2, 4)):
        res = wt.condition_s_check(make_assoc_system(), n, m, GRID)
        assert res.ok and res.monotone_beyond and res.dropped
    res = wt.condition_s_check(wt.PolynomialDecaySystem(1), 1, 3, GRID)
    assert res.ok


def test_condition_s_fails_for_constant_system():
    const = wt.ConstantSystem(wt.ConstantWeight(1.0, 1))
    res = wt.condition_s_check(const, 1, 2, GRID)
    assert not res.ok and not res.dropped   # quotient never drops below 1/2


def test_condition_v_witness_audit():
    sys_ = make_assoc_system()
    floor = wt.ConstantWeight(1e-6, 1)
    # lambda_2 = 0.4 pushes the infimum under v_2 / 2 everywhere
    good = wt.check_condition_v(sys_, 2, (1.0, 0.4), floor, GRID)
    assert good.ok
    # unit coefficients leave min = v_2 > v_2 / 2 at large |x|
    bad = wt.check_condition_v(sys_, 2, (1.0, 1.0), floor, GRID)
    assert not bad.ok
    assert bad.max_violation == pytest.approx(np.log(2.0), abs=1e-9)
    # a large floor absorbs the violation
    rescued = wt.check_condition_v(sys_, 2, (1.0, 1.0), sys_.member(1), GRID)
    assert rescued.ok


def test_condition_v_multi_index_wrapper():
    sys_ = make_assoc_system()
    floor = wt.ConstantWeight(1e-6, 1)
    ok, results = wt.condition_v_witness_check(
        sys_, (1.0, 0.4, 0.2), floor, {1: 1, 2: 2, 3: 3}, GRID)
    assert ok and set(results) == {1, 2, 3}
    with pytest.raises(ValueError):
        wt.condition_v_witness_check(sys_, (1.0,), floor, {2: 2}, GRID)


def test_admissibility_ap_pairs_exact_constant_one():
    # v_{2n}(x + y) <= v_n(x) e^{M(|y|)} holds with C = 1 exactly since
    # |x + y| / 2n <= max(|x| / n, |y| / n) and M is monotone
    res = wt.admissibility_check(make_assoc_system(), GEVREY,
                                 [(1, 2), (2, 4), (3, 6), (4, 8)], 1.0,
                                 GRID, GRID)
    assert res.ok
    assert res.worst_c == 1.0
    assert [c for _, _, c in res.pairs] == [1.0, 1.0, 1.0, 1.0]


def test_admissibility_tiny_tau_exceeds_bound():
    res = wt.admissibility_check(make_assoc_system(), GEVREY, [(1, 2)], 0.2,
                                 GRID, GRID, bound=10.0)
    assert not res.ok
    assert res.worst_c == pytest.approx(420.82471136569916, rel=1e-10)


def test_admissibility_constant_exponential_system():
    # e^{|x+y|} <= C e^{|x|} e^{M(2 |y|)}: the gap |y| - M(2|y|) peaks
    # near |y| = 1/2, giving a finite C strictly above 1
    const = wt.ConstantSystem(wt.ExponentialWeight(1.0, 1))
    res = wt.admissibility_check(const, GEVREY, [(1, 2)], 2.0, GRID, GRID)
    assert res.ok
    assert res.worst_c == pytest.approx(1.51843233365876, rel=1e-12)


def test_exact_admissibility_from_grid_resolution():
    # M_p = (p / 4e)^p has M(t) = 0 for t <= 4e and grows afterwards, so
    # with tau = 4 and y-steps of 0.2 the translation cost is absorbed
    # with constant exactly 1 on the grid
    seq = sq.WeightSequence.from_log_generator(
        lambda p: np.where(np.asarray(p) > 0,
                           np.asarray(p, dtype=float)
                           * (np.log(np.maximum(np.asarray(p), 1))
                              - np.log(4.0 * np.e)), 0.0),
        log_convex=True, name="quarter-stirling")
    sys_ = wt.AssociatedExpSystem(seq, 1)
    res = wt.admissibility_check(sys_, seq, [(1, 2)], 4.0,
                                 BoxGrid(10.0, 101, 1), BoxGrid(10.0, 101, 1))
    assert res.ok and res.worst_c == 1.0


def test_membership_statuses():
    sys_ = make_assoc_system()
    assert wt.nachbin_membership(sys_.member(5), sys_, 4, GRID).ok
    inf_w = wt.InfimumWeight([(np.log(j + 1.0), sys_.member(j))
                              for j in (1, 2, 3)])
    assert wt.nachbin_membership(inf_w, sys_, 3, GRID).ok
    # e^{M(2|x|)} outruns every member: quotients rise monotonically
    runaway = wt.AssociatedExpWeight(GEVREY, scale=2.0, dim=1)
    res = wt.nachbin_membership(runaway, sys_, 3, GRID)
    assert res.status == "fail" and res.diverging_n is not None


def test_measure_chain_and_vbar_domination():
    sys_ = make_assoc_system()
    cand = sys_.member(1)
    links = wt.measure_chain(sys_, [1, 2, 4, 8], cand, GEVREY, 1.0, GRID, GRID)
    assert [l.n for l in links] == [1, 2, 4]
    assert [l.step_constant for l in links] == [1.0, 1.0, 1.0]
    # frozen membership constants sup v_1 / v_{2, 4, 8}
    want = (15640.056919726558, 1655032.4782779468, 13791937.318982901)
    for link, ref in zip(links, want):
        assert link.membership_constant == pytest.approx(ref, rel=1e-10)
    vbar = wt.build_vbar(sys_, links)
    td = wt.check_translation_domination(cand, vbar, GEVREY, 1.0, GRID, GRID)
    assert td.ok
    assert td.max_log_gap == pytest.approx(-0.043783107052682624, rel=1e-9)
    # a flat tiny "vbar" cannot dominate translates
    bad = wt.check_translation_domination(cand, wt.ConstantWeight(1e-8, 1),
                                          GEVREY, 1.0, GRID, GRID)
    assert not bad.ok and bad.max_log_gap > 0


def test_chain_requires_two_indices():
    sys_ = make_assoc_system()
    with pytest.raises(ValueError):
        wt.measure_chain(sys_, [1], sys_.member(1), GEVREY, 1.0, GRID, GRID)


def test_mollify_stays_in_local_band():
    axis = np.linspace(-10.0, 10.0, 1001)
    member = make_assoc_system().member(1)
    vals = np.exp(member.log_eval(axis[:, None]))
    smooth = wt.mollify_weight(axis, vals, wt.standard_bump(0.5))
    sm = np.exp(smooth.log_eval(axis[:, None]))
    step = axis[1] - axis[0]
    pad = int(np.ceil((0.5 + step) / step))
    inside = slice(pad, axis.size - pad)
    lo = np.array([vals[max(0, i - pad):i + pad + 1].min()
                   for i in range(axis.size)])
    hi = np.array([vals[max(0, i - pad):i + pad + 1].max()
                   for i in range(axis.size)])
    assert np.all(sm[inside] >= lo[inside] * (1 - 1e-6))
    assert np.all(sm[inside] <= hi[inside] * (1 + 1e-6))


def test_mollify_smooths_a_jump():
    axis = np.linspace(-5.0, 5.0, 2001)
    vals = np.where(axis < 0.0, 1.0, np.exp(2.0))
    smooth = wt.mollify_weight(axis, vals, wt.standard_bump(1.0))
    sm = np.exp(smooth.log_eval(axis[:, None]))
    assert np.all(sm >= 1.0 - 1e-9) and np.all(sm <= np.exp(2.0) + 1e-9)
    # the per-node jump collapses from the full step to a mollified slope
    assert np.abs(np.diff(np.log(sm))).max() < 0.25 * 2.0
    assert np.abs(np.diff(np.log(vals))).max() == pytest.approx(2.0)


def test_mollify_rejects_off_mass_bump():
    axis = np.linspace(-1.0, 1.0, 101)
    vals = np.ones(101)
    with pytest.raises(ValueError):
        wt.mollify_weight(axis, vals, lambda u: np.ones_like(u), radius=1.0)


def test_alias_names():
    assert wt.NachbinWeight is wt.InfimumWeight
    assert wt.condition_s_check is wt.check_condition_s
    assert wt.build_vbar is wt.build_dominating_weight
